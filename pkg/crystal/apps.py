from django.apps import AppConfig


class CrystalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'crystal'
