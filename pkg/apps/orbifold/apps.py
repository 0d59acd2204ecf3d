from django.apps import AppConfig


class OrbifoldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.orbifold'
    verbose_name = 'Orbifolds Z2'
