from django.apps import AppConfig


class FuncionaisConfig(AppConfig):
    name = 'funcionais'
    verbose_name = "Funcionais quadráticos de Strichartz"
