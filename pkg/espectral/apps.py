from django.apps import AppConfig


class EspectralConfig(AppConfig):
    name = 'espectral'
    verbose_name = "Cálculo funcional espectral do gerador L"
