"""
Golden Run History for the Milnor constraint analyzer
Records the outcome of every golden fixture run in a JSON file.
"""

import json
from pathlib import Path
from datetime import datetime
from typing import Dict, List, Optional


class GoldenRunCache:
    """
    History of golden fixture runs.
    Stores the last outcome per fixture along with a fingerprint of the
    fixture file, so drift between runs can be traced.
    """

    def __init__(self, cache_file: Path):
        """
        Initialize the cache.

        Args:
            cache_file: Path to the JSON cache file
        """
        self.cache_file = Path(cache_file)
        self.cache: Dict = self._load_cache()

    def _load_cache(self) -> Dict:
        """Load cache from disk or create empty cache."""
        if self.cache_file.exists():
            try:
                with open(self.cache_file, 'r', encoding='utf-8') as f:
                    return json.load(f)
            except (json.JSONDecodeError, IOError):
                return {'fixtures': {}, 'metadata': {'last_updated': None}}
        return {'fixtures': {}, 'metadata': {'last_updated': None}}

    def save(self) -> None:
        """Save cache to disk."""
        self.cache['metadata']['last_updated'] = datetime.now().isoformat()
        self.cache_file.parent.mkdir(parents=True, exist_ok=True)
        with open(self.cache_file, 'w', encoding='utf-8') as f:
            json.dump(self.cache, f, indent=2)

    def mark_passed(self, name: str, fingerprint: str, elapsed: float) -> None:
        """
        Mark a fixture as passing.

        Args:
            name: Fixture name
            fingerprint: Hash of the fixture file
            elapsed: Run time in seconds
        """
        self.cache['fixtures'][name] = {
            'passed': True,
            'fingerprint': fingerprint,
            'elapsed': round(elapsed, 3),
            'run_time': datetime.now().isoformat(),
        }

    def mark_failed(self, name: str, fingerprint: str, diff: List[str]) -> None:
        """
        Mark a fixture as failing.

        Args:
            name: Fixture name
            fingerprint: Hash of the fixture file
            diff: Field-level differences (or the error message)
        """
        self.cache['fixtures'][name] = {
            'passed': False,
            'fingerprint': fingerprint,
            'diff': list(diff),
            'run_time': datetime.now().isoformat(),
        }

    def get_fixture_info(self, name: str) -> Optional[Dict]:
        return self.cache['fixtures'].get(name)

    def get_failing(self) -> List[str]:
        return sorted(name for name, info in self.cache['fixtures'].items() if not info.get('passed'))

    def clear(self) -> None:
        """Clear the cache."""
        self.cache = {'fixtures': {}, 'metadata': {'last_updated': None}}
        self.save()

    def get_stats(self) -> Dict:
        """Get cache statistics."""
        fixtures = self.cache['fixtures']
        return {
            'total_fixtures': len(fixtures),
            'passed': sum(1 for f in fixtures.values() if f.get('passed')),
            'failed': sum(1 for f in fixtures.values() if not f.get('passed')),
            'last_updated': self.cache['metadata'].get('last_updated')
        }
