from .base import *

ENVIRONMENT = "prod"
DEBUG = False

# Em lote (cluster/cron) só o essencial no console
LOGGING["root"]["level"] = os.getenv("SOBOLEV_LAB_LOG", "INFO").upper()
