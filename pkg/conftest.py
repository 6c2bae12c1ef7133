import os

import pytest

from plugins.module_utils.congruence import SeriesCache

CORPUS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'corpus')


@pytest.fixture(scope='session')
def series_cache():
    """Catalog expansions shared by every test; CP3 and DQ are expanded once to order 2000."""
    cache = SeriesCache()
    cache.get('CP3', 2000)
    cache.get('DQ', 2000)
    return cache


@pytest.fixture(scope='session')
def cp3(series_cache):
    return series_cache.get('CP3', 2000)


@pytest.fixture
def corpus_path():
    def path(name):
        return os.path.join(CORPUS_DIR, name)
    return path
