from django.apps import AppConfig


class EdpConfig(AppConfig):
    name = 'edp'
    verbose_name = "Calor e Schrödinger semilineares"
