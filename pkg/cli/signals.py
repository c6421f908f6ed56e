# cli/signals.py

import logging

from django.dispatch import Signal, receiver

logger = logging.getLogger(__name__)

# Sent once per checked property with suite, name, passed and detail.
property_checked = Signal()


@receiver(property_checked)
def log_property_result(sender, suite, name, passed, detail=None, **kwargs):
    if passed:
        logger.info("[%s] %s: pass", suite, name)
    else:
        logger.warning("[%s] %s: FAIL %s", suite, name, detail or '')
