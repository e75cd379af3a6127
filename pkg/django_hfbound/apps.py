from django.apps import AppConfig


class DjangoHfboundConfig(AppConfig):
    name = "django_hfbound"
    verbose_name = "Homopolymer-free bounds"
