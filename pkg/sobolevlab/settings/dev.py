from .base import *

ENVIRONMENT = "dev"
DEBUG = True

LOGGING["root"]["level"] = os.getenv("SOBOLEV_LAB_LOG", "DEBUG").upper()
