# cli/apps.py

from django.apps import AppConfig


class CliConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'cli'

    def ready(self):
        """Registers the receiver that logs every verification result."""
        import cli.signals  # noqa: F401
