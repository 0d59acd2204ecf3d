"""
Configuration Django pour le projet vawbench.

Le projet n'expose ni API HTTP ni base de données métier : Django fournit ici
le chargement de la configuration, les journaux, le cache disque des bases
graduées et la commande de gestion ``vaw``. Tous les réglages ajustables
passent par python-decouple (variables d'environnement ou fichier ``.env``).
"""

from pathlib import Path
from decouple import config
import os

# Répertoire de base du projet
BASE_DIR = Path(__file__).resolve().parent.parent

# Configuration de sécurité (aucun service réseau, la clé ne protège rien)
SECRET_KEY = config('SECRET_KEY', default='vawbench-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Applications Django installées
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Applications tierces
    'rest_framework',

    # Applications locales
    'apps.core',
    'apps.scalars',
    'apps.freefield',
    'apps.fock',
    'apps.orbifold',
    'apps.relations',
    'apps.series',
    'apps.curves',
    'apps.cli',
]

MIDDLEWARE = []

# Base SQLite minimale : seule la suite de tests de Django l'exige
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DB_NAME', default=BASE_DIR / 'db.sqlite3'),
    }
}

LANGUAGE_CODE = 'fr-fr'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Cache mémoire par défaut ; le cache disque des bases est ouvert à la demande
CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'vawbench-default',
    }
}

# Configuration de Django REST Framework (sérialisation JSON uniquement)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
}

# Configuration des logs
LOG_LEVEL = config('VAW_LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'vawbench.log',
            'formatter': 'verbose',
            'delay': True,
        },
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'vawbench': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'apps': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Configuration spécifique à vawbench
VAW_SETTINGS = {
    # Répertoire du cache disque des bases graduées (vide = désactivé)
    'CACHE_DIR': config('VAW_CACHE', default=''),

    # Active les longues vérifications de la suite de tests
    'SLOW': config('VAW_SLOW', default=False, cast=bool),

    # Ordre de troncature par défaut des séries de dimensions
    'SERIES_ORDER': config('VAW_SERIES_ORDER', default=24, cast=int),

    # Degré maximal des mots normalement ordonnés dans les découplages
    'MAX_WORD_DEGREE': config('VAW_MAX_WORD_DEGREE', default=4, cast=int),

    # Taille de la mémoïsation des produits de monômes (0 = désactivée)
    'MEMO_SIZE': config('VAW_MEMO_SIZE', default=200000, cast=int),

    # Moteurs de Wick conservés simultanément (un par algèbre)
    'MAX_ENGINES': config('VAW_MAX_ENGINES', default=16, cast=int),

    # Entrées du cache disque avant élagage
    'CACHE_MAX_ENTRIES': config('VAW_CACHE_MAX_ENTRIES', default=100000, cast=int),

    # Version des schémas JSON émis
    'SCHEMA_VERSION': '1',
}

# Création du dossier logs s'il n'existe pas
os.makedirs(BASE_DIR / 'logs', exist_ok=True)
