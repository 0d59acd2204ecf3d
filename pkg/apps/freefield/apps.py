from django.apps import AppConfig


class FreefieldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.freefield'
    verbose_name = 'Champs libres'
