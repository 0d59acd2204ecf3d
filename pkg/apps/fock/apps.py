from django.apps import AppConfig


class FockConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.fock'
    verbose_name = 'Espace de Fock'
