"""
Unit Tests for Cache Manager
"""

import pytest
import tempfile
import os
from cache_manager import CacheManager


IDEAL_KEY = "x1|x2|x3#0,1;1,2"


@pytest.fixture
def temp_cache():
    """Create temporary cache for testing"""
    with tempfile.NamedTemporaryFile(delete=False, suffix='.db') as f:
        db_path = f.name

    cache = CacheManager(db_path=db_path)
    yield cache

    # Cleanup
    if os.path.exists(db_path):
        os.unlink(db_path)


def test_cache_initialization(temp_cache):
    """Test cache database initialization"""
    assert temp_cache.db_path
    assert os.path.exists(temp_cache.db_path)


def test_betti_caching(temp_cache):
    """Test Betti table cache operations"""
    entries = [[0, 2, 2], [1, 3, 1]]

    result = temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', entries)
    assert result is True

    assert temp_cache.get_betti_cache(IDEAL_KEY, 'q', 'ideal') == entries


def test_cache_miss(temp_cache):
    """Tables are keyed by ideal, field and kind"""
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 2]])

    assert temp_cache.get_betti_cache(IDEAL_KEY, 'f2', 'ideal') is None
    assert temp_cache.get_betti_cache(IDEAL_KEY, 'q', 'quotient') is None
    assert temp_cache.get_betti_cache("x1#0", 'q', 'ideal') is None


def test_cache_overwrite(temp_cache):
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 1]])
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 2]])

    assert temp_cache.get_betti_cache(IDEAL_KEY, 'q', 'ideal') == [[0, 2, 2]]
    assert temp_cache.get_cache_stats()['betti_tables'] == 1


def test_delete_betti_cache(temp_cache):
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 2]])
    temp_cache.cache_betti(IDEAL_KEY, 'f2', 'quotient', [[0, 0, 1]])

    assert temp_cache.delete_betti_cache(IDEAL_KEY) is True
    assert temp_cache.get_betti_cache(IDEAL_KEY, 'q', 'ideal') is None
    assert temp_cache.get_betti_cache(IDEAL_KEY, 'f2', 'quotient') is None


def test_cache_stats(temp_cache):
    """Test cache statistics"""
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 2]])
    temp_cache.cache_betti(IDEAL_KEY, 'f2', 'ideal', [[0, 2, 2]])
    temp_cache.cache_betti("x1#0", 'q', 'ideal', [[0, 1, 1]])

    stats = temp_cache.get_cache_stats()

    assert stats['betti_tables'] == 3
    assert stats['by_field'] == {'f2': 1, 'q': 2}


def test_clear_all_cache(temp_cache):
    """Test clearing all cache"""
    temp_cache.cache_betti(IDEAL_KEY, 'q', 'ideal', [[0, 2, 2]])

    result = temp_cache.clear_all_cache()
    assert result is True

    assert temp_cache.get_cache_stats()['betti_tables'] == 0


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
