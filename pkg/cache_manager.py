"""
Cache Manager Module - SQLite-based caching for Betti tables
Hochster computations are exact and deterministic, so entries never expire
"""

import sqlite3
import json
import logging
from datetime import datetime
from typing import Optional, Dict, Any, List
from pathlib import Path


class CacheManager:
    """Manages SQLite-based caching of Hochster-formula Betti tables"""

    def __init__(self, db_path: str = 'expansion_cache.db'):
        """
        Initialize cache manager with SQLite database

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = db_path
        self.logger = logging.getLogger(__name__)

        Path(db_path).parent.mkdir(parents=True, exist_ok=True)

        self._init_database()

    def _init_database(self) -> None:
        """Create database tables if they don't exist"""
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()

                cursor.execute('''
                    CREATE TABLE IF NOT EXISTS betti_tables (
                        ideal_key TEXT NOT NULL,
                        field TEXT NOT NULL,
                        kind TEXT NOT NULL,
                        entries TEXT NOT NULL,
                        timestamp DATETIME DEFAULT CURRENT_TIMESTAMP,
                        PRIMARY KEY (ideal_key, field, kind)
                    )
                ''')

                conn.commit()
                self.logger.info(f"Cache database initialized at {self.db_path}")

        except sqlite3.Error as e:
            self.logger.error(f"Database initialization error: {e}")
            raise

    def get_betti_cache(self, ideal_key: str, field: str, kind: str) -> Optional[List[List[int]]]:
        """
        Retrieve a cached Betti table

        Args:
            ideal_key: Canonical key of the ideal
            field: Field code (q, f2, ...)
            kind: 'ideal' or 'quotient'

        Returns:
            List of [i, j, value] entries or None if not cached
        """
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute(
                    'SELECT entries FROM betti_tables WHERE ideal_key = ? AND field = ? AND kind = ?',
                    (ideal_key, field, kind)
                )
                result = cursor.fetchone()

                if result:
                    self.logger.debug(f"Cache hit for {kind} table over {field}")
                    return json.loads(result[0])

                return None

        except (sqlite3.Error, json.JSONDecodeError) as e:
            self.logger.error(f"Error retrieving Betti cache: {e}")
            return None

    def cache_betti(self, ideal_key: str, field: str, kind: str, entries: List[List[int]]) -> bool:
        """
        Cache a Betti table

        Args:
            ideal_key: Canonical key of the ideal
            field: Field code
            kind: 'ideal' or 'quotient'
            entries: [i, j, value] entries

        Returns:
            True if successful, False otherwise
        """
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute(
                    '''INSERT OR REPLACE INTO betti_tables
                       (ideal_key, field, kind, entries, timestamp)
                       VALUES (?, ?, ?, ?, ?)''',
                    (ideal_key, field, kind, json.dumps(entries), datetime.now().isoformat())
                )
                conn.commit()
                self.logger.debug(f"Cached {kind} table over {field}")
                return True

        except (sqlite3.Error, TypeError) as e:
            self.logger.error(f"Error caching Betti table: {e}")
            return False

    def delete_betti_cache(self, ideal_key: str) -> bool:
        """Delete every cached table of one ideal"""
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute('DELETE FROM betti_tables WHERE ideal_key = ?', (ideal_key,))
                conn.commit()
                return True
        except sqlite3.Error as e:
            self.logger.error(f"Error deleting Betti cache: {e}")
            return False

    def get_cache_stats(self) -> Dict[str, Any]:
        """
        Get cache statistics

        Returns:
            Dict with the entry count and per-field counts
        """
        stats: Dict[str, Any] = {}

        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute('SELECT COUNT(*) FROM betti_tables')
                stats['betti_tables'] = cursor.fetchone()[0]
                cursor.execute('SELECT field, COUNT(*) FROM betti_tables GROUP BY field ORDER BY field')
                stats['by_field'] = {field: count for field, count in cursor.fetchall()}
                return stats

        except sqlite3.Error as e:
            self.logger.error(f"Error getting cache stats: {e}")
            return {}

    def clear_all_cache(self) -> bool:
        """Clear all cache entries"""
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute('DELETE FROM betti_tables')
                conn.commit()
                self.logger.warning("All cache entries cleared")
                return True
        except sqlite3.Error as e:
            self.logger.error(f"Error clearing all cache: {e}")
            return False
