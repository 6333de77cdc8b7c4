from django.apps import AppConfig


class GeometriaConfig(AppConfig):
    name = 'geometria'
    verbose_name = "Espaços métricos-medidos discretos"
