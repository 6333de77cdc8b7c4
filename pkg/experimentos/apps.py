from django.apps import AppConfig


class ExperimentosConfig(AppConfig):
    name = 'experimentos'
    verbose_name = "Orquestração de experimentos"
