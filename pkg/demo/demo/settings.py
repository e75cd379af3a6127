from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = "django-insecure-demo-only-do-not-use-in-production"

DEBUG = True

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django_hfbound",
]

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_TZ = True

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "django_hfbound": {"handlers": ["console"], "level": "INFO"},
    },
}

# ---------------------------------------------------------------------------
# Homopolymer-free bounds configuration
# ---------------------------------------------------------------------------
HFBOUND_BUDGET = 1_000_000
HFBOUND_WORKERS = 4
HFBOUND_EXACT_LENGTH_LIMIT = 64
