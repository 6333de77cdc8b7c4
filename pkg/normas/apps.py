from django.apps import AppConfig


class NormasConfig(AppConfig):
    name = 'normas'
    verbose_name = "Normas L^p, Sobolev, BMO e funções maximais"
