from django.apps import AppConfig


class PbwConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pbw'
