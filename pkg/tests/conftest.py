"""
Test configuration for pytest
"""

import pytest
import logging


def pytest_configure(config):
    """Configure pytest"""
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests (run the CLI end to end)"
    )
    config.addinivalue_line(
        "markers", "slow: marks tests that run whole verification suites"
    )


@pytest.fixture(autouse=True)
def setup_logging():
    """Setup logging for tests"""
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


@pytest.fixture
def test_config(tmp_path):
    """Verifier configuration writing into a temporary directory"""
    return {
        'engine': {
            'hochster_max_variables': 16,
            'lq_max_generators': 12,
            'shelling_max_facets': 10,
            'default_fields': ['q', 'f2'],
        },
        'verification': {
            'trials': 3,
            'seed': 0,
            'max_vertices': 4,
            'max_facets': 4,
            'max_graph_vertices': 5,
            'max_multiplicity': 2,
            'max_ambient': 10,
            'use_parallel_processing': False,
        },
        'output': {
            'save_failures': True,
            'output_directory': str(tmp_path / 'results'),
            'json_indent': 2,
        },
        'cache': {
            'enabled': True,
            'db_path': str(tmp_path / 'cache' / 'test_cache.db'),
        },
        'logging': {
            'level': 'INFO',
        },
    }
