from django.apps import AppConfig


class RootsystemConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'rootsystem'
