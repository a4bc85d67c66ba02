import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'vlpcount.settings')
    import django
    django.setup()
    from lattice.cli import run
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
