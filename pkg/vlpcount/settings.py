import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = 'vlpcount-offline-toolkit'

DEBUG = False

ALLOWED_HOSTS: list[str] = []

INSTALLED_APPS = [
    'lattice',
]

# Batch toolkit: no database, no URLs, no middleware.
DATABASES: dict = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(asctime)s %(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'lattice': {
            'handlers': ['stderr'],
            'level': os.environ.get('VLP_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

# Toolkit knobs
VLP_WORKERS = int(os.environ.get('VLP_WORKERS', '1'))

VLP_SIEVE_MAX_LIMIT = 50_000_000
VLP_SIEVE_SEGMENT_THRESHOLD = 2 ** 22
VLP_SIEVE_SEGMENT_SIZE = 2 ** 20
VLP_TABLE_CACHE_SIZE = 8

VLP_ORACLE_MAX_NORM = 10_000
VLP_ORACLE_TUPLE_BUDGET = 10 ** 8

VLP_CONSTANT_TOL = 1e-10
VLP_LINE_TOL = 1e-3
VLP_L_MAX_BLOCKS = 1_000_000
VLP_ZETA_MAX_TERMS = 1_000_000

VLP_PERRON_NODE_BUDGET = 2 ** 22
VLP_PERRON_CUT_FACTOR = 2

VLP_GRID_RATIO = 1.25
