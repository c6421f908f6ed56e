from django.apps import AppConfig


class QscalarConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'qscalar'
