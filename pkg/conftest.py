import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'quantum_canonical_project.settings')
django.setup()
