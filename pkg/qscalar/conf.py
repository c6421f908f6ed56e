# qscalar/conf.py

from django.conf import settings

# Used when settings.QUANTUM leaves a key out.
DEFAULTS = {
    'HEIGHT_BOUND': 8,
    'MAX_FULL_RANK': 5,
    'VERMA_HEIGHT': 2,
    'REFERENCE_WORDS': {},
    'OUTPUT_FORMAT': 'json',
    'SEED': 0,
    'SECOND_ORDER_ORIENTATION': 'descending',
    'VALIDATE_DIMENSIONS': True,
    'VERIFY_ROOT_VECTORS': True,
    'SWEEP_HEIGHT': 3,
}


def quantum_setting(name):
    """Reads one computation default, honouring override_settings in tests."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown QUANTUM setting '{name}'.")
    return getattr(settings, 'QUANTUM', {}).get(name, DEFAULTS[name])
