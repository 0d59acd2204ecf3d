"""
Commande ``python manage.py vaw <sous-commande> [options]``.

Le document JSON est écrit sur la sortie standard et le processus se
termine avec le code du ``CommandResult``.
"""

import argparse

from django.core.management.base import BaseCommand

from apps.cli.services import run
from apps.core.serializers import render_json


class Command(BaseCommand):
    help = ("Atelier d'algèbres vertex libres : ope, verify, decouple, catalog, hilbert, "
            "minimal, weak-closure, curves, suite")

    def add_arguments(self, parser):
        parser.add_argument('argv', nargs=argparse.REMAINDER,
                            help='sous-commande et ses options')

    def handle(self, *args, **options):
        result = run(options['argv'])
        self.stdout.write(render_json(result.payload))
        if result.code:
            raise SystemExit(result.code)
