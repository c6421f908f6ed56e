from django.apps import AppConfig


class UqminusConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'uqminus'
