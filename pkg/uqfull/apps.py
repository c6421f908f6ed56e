from django.apps import AppConfig


class UqfullConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'uqfull'
