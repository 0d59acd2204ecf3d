from django.apps import AppConfig


class CurvesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.curves'
    verbose_name = 'Courbes de troncature'
