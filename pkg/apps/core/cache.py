"""
Cache disque des calculs réutilisables.

Les bases graduées des grandes algèbres (poids 16 et plus pour sl_7) dominent
le coût des calculs ; elles sont conservées sur disque dans un
``FileBasedCache`` Django, une entrée par (algèbre, poids, secteur). Les clés
incluent l'empreinte de la spécification d'algèbre : une algèbre modifiée ne
relit jamais les entrées d'une autre.
"""

import logging

from django.conf import settings
from django.core.cache.backends.filebased import FileBasedCache

logger = logging.getLogger(__name__)


class BasisCache:
    """Accès typé au cache disque des bases."""

    def __init__(self, directory, max_entries=None):
        self.directory = str(directory)
        if max_entries is None:
            max_entries = settings.VAW_SETTINGS['CACHE_MAX_ENTRIES']
        self.max_entries = max_entries
        self._backend = FileBasedCache(self.directory, {
            'TIMEOUT': None,
            'OPTIONS': {'MAX_ENTRIES': max_entries},
        })

    @classmethod
    def from_settings(cls, directory=None):
        """Ouvre le cache désigné par ``directory`` ou par ``VAW_CACHE``.

        Retourne ``None`` quand aucun répertoire n'est configuré.
        """
        directory = directory or settings.VAW_SETTINGS['CACHE_DIR']
        if not directory:
            return None
        return cls(directory)

    @staticmethod
    def make_key(namespace, digest, *parts):
        return ':'.join([namespace, digest, *(str(part) for part in parts)])

    def get(self, namespace, digest, *parts):
        key = self.make_key(namespace, digest, *parts)
        try:
            value = self._backend.get(key)
        except Exception as e:
            logger.error(f'Basis cache read error for {key}: {e}')
            return None
        if value is not None:
            logger.debug(f'Basis cache hit: {key}')
        return value

    def set(self, value, namespace, digest, *parts):
        key = self.make_key(namespace, digest, *parts)
        try:
            self._backend.set(key, value)
        except Exception as e:
            logger.error(f'Basis cache write error for {key}: {e}')

    def clear(self):
        self._backend.clear()
