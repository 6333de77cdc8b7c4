import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "sobolevlab.settings")
django.setup()
