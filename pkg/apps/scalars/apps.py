from django.apps import AppConfig


class ScalarsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.scalars'
    verbose_name = 'Scalaires exacts'
