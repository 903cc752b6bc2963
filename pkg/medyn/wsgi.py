"""
WSGI entry point for the medyn REST service (stored networks and experiment runs).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "medyn.settings")

application = get_wsgi_application()
