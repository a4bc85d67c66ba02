import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'vlpcount.settings')
django.setup()
