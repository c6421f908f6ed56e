import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Nothing is signed or served; the key only satisfies Django's startup checks.
SECRET_KEY = os.environ.get('QUANTUM_SECRET_KEY', 'quantum-canonical-local-only')

DEBUG = False

ALLOWED_HOSTS = []


# ==============================================================================
# 1. APPLICATION DEFINITION (INSTALLED_APPS)
# ==============================================================================

INSTALLED_APPS = [
    # 3rd Party Apps
    'rest_framework',

    # Scalars and linear algebra
    'qscalar',
    'exactla',

    # Combinatorics and algebras
    'rootsystem',
    'uqminus',
    'uqfull',

    # Bases and crystals
    'pbw',
    'canonical',
    'crystal',

    # Command-line front end
    'cli',
]


# ==============================================================================
# 2. DATABASE AND INTERNATIONALIZATION
# ==============================================================================

# Every value is computed on demand; nothing is persisted.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# ==============================================================================
# 3. REST FRAMEWORK (serializers only, no views are mounted)
# ==============================================================================

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': True,
}


# ==============================================================================
# 4. COMPUTATION DEFAULTS
# ==============================================================================

QUANTUM = {
    # Largest weight height any U_q^- computation accepts.
    'HEIGHT_BOUND': 8,

    # Operations on full reduced words of w0 refuse larger ranks unless raised here.
    'MAX_FULL_RANK': 5,

    # Height of the word basis used by the generic Verma zero-test.
    'VERMA_HEIGHT': 2,

    # Reference reduced word per diagram for crystal data.
    'REFERENCE_WORDS': {
        'A1': '1',
        'A2': '1,2,1',
        'A3': '1,2,3,1,2,1',
    },

    'OUTPUT_FORMAT': 'json',
    'SEED': 0,

    # Orientation of the last-to-first comparison in the partial order on Lusztig data.
    'SECOND_ORDER_ORIENTATION': 'descending',

    # Abort when a weight space's pairing rank differs from Kostant's count.
    'VALIDATE_DIMENSIONS': True,

    # Cross-check braid-operator root vectors against the three-term recursion.
    'VERIFY_ROOT_VECTORS': True,

    # Default sweep height of `manage.py verify` when --max-height is not given.
    'SWEEP_HEIGHT': 3,
}


# ==============================================================================
# 5. LOGGING (status stream is stderr; data goes to stdout or --out)
# ==============================================================================

LOG_LEVEL = os.environ.get('QUANTUM_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'status': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {'handlers': ['status'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('qscalar', 'exactla', 'rootsystem', 'uqminus', 'uqfull',
                    'pbw', 'canonical', 'crystal', 'cli')
    },
}
