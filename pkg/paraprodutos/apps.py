from django.apps import AppConfig


class ParaprodutosConfig(AppConfig):
    name = 'paraprodutos'
    verbose_name = "Paraprodutos de semigrupo e regra de Leibniz"
