"""
Golden Fixture Runner for the Milnor constraint analyzer
Runs committed fixtures concurrently and compares structured reports
against their expected field values.

Fixture layout (golden/<name>.json)::

    {
      "description": "...",
      "config": { AnalysisConfig fields },
      "expect": [
        {"path": "invariants.tau", "equals": 3},
        {"path": "options.#", "equals": 2},
        {"path": "options.0.char_im", "char": "(L^4+1)"},
        {"path": "audit.*.rule", "contains": "swing"},
        {"path": "cycles.gamma.1.0.support", "ideal": ["t", "x"]}
      ],
      "expect_error": "not-semisimple"      (optional)
    }

Paths are dotted; ``#`` is the length of a list, ``*`` maps over one.
An ``ideal`` check compares a cycle support such as ``V(x, y - z)`` with
the listed generators up to ideal equality; ``[]`` is the whole space.
"""

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from sympy import Symbol, groebner

from cli.analysis import AnalysisConfig, run_analysis
from cli.parser import parse_polynomial
from cli.render import report_to_dict
from config import CACHE_FILE, GOLDEN_CONFIG
from monodromy.charpoly import parse_factorspec
from utils.cache import GoldenRunCache
from utils.errors import ConfigError, MilnorError, UnknownFixture
from utils.logger import StageLogger, get_logger

_MISSING = object()


@dataclass
class FixtureResult:
    name: str
    passed: bool
    diff: List[str] = field(default_factory=list)
    elapsed: float = 0.0


@dataclass
class GoldenSummary:
    results: List[FixtureResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.passed)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def resolve_path(document, path: str):
    """Value at a dotted path; lists support integer indices, '#' and '*'."""
    current = document
    parts = path.split('.')
    for i, part in enumerate(parts):
        if part == '#':
            return len(current) if isinstance(current, (list, dict)) else _MISSING
        if part == '*':
            if not isinstance(current, list):
                return _MISSING
            rest = '.'.join(parts[i + 1:])
            return [resolve_path(item, rest) if rest else item for item in current]
        if isinstance(current, list):
            if not part.lstrip('-').isdigit() or int(part) >= len(current):
                return _MISSING
            current = current[int(part)]
        elif isinstance(current, dict):
            if part not in current:
                return _MISSING
            current = current[part]
        else:
            return _MISSING
    return current


def _same_char(expected: str, actual) -> bool:
    if not isinstance(actual, str):
        return False
    try:
        return parse_factorspec(expected).same_as(parse_factorspec(actual))
    except ConfigError:
        return False


def _support_generators(support: str, symbols: Sequence[Symbol]) -> Optional[List]:
    if support == 'whole space':
        return []
    if not (support.startswith('V(') and support.endswith(')')):
        return None
    return [parse_polynomial(g, symbols).as_expr() for g in support[2:-1].split(',')]


def _same_ideal(expected: Sequence[str], actual, coords) -> bool:
    if not isinstance(actual, str) or not isinstance(coords, list):
        return False
    symbols = [Symbol(c) for c in coords]
    try:
        mine = [parse_polynomial(g, symbols).as_expr() for g in expected]
        theirs = _support_generators(actual, symbols)
    except ConfigError:
        return False
    if theirs is None:
        return False
    if not mine or not theirs:
        return not mine and not theirs
    left = groebner(mine, *symbols, order='grevlex', domain='QQ')
    right = groebner(theirs, *symbols, order='grevlex', domain='QQ')
    return all(right.contains(p) for p in mine) and all(left.contains(p) for p in theirs)


def compare(document: Dict, checks: List[Dict]) -> List[str]:
    """Field-level differences between a structured report and the expected values."""
    diff = []
    for check in checks:
        path = check['path']
        actual = resolve_path(document, path)
        shown = '<missing>' if actual is _MISSING else json.dumps(actual)
        if 'equals' in check:
            if actual is _MISSING or actual != check['equals']:
                diff.append(f"{path}: expected {json.dumps(check['equals'])}, got {shown}")
        elif 'char' in check:
            if not _same_char(check['char'], actual):
                diff.append(f"{path}: expected char {check['char']}, got {shown}")
        elif 'ideal' in check:
            if not _same_ideal(check['ideal'], actual, document.get('coords')):
                diff.append(f"{path}: expected V({', '.join(check['ideal'])}), got {shown}")
        elif 'contains' in check:
            if not isinstance(actual, list) or check['contains'] not in actual:
                diff.append(f"{path}: expected to contain {json.dumps(check['contains'])}, got {shown}")
        else:
            diff.append(f"{path}: check has no 'equals', 'char', 'ideal' or 'contains'")
    return diff


def fixture_names(fixture_dir: Path = None) -> List[str]:
    fixture_dir = Path(fixture_dir or GOLDEN_CONFIG['fixture_dir'])
    return sorted(p.stem for p in fixture_dir.glob('*.json'))


def load_fixture(name: str, fixture_dir: Path = None) -> Dict:
    """
    Raises:
        UnknownFixture: no fixture file with this name
    """
    fixture_dir = Path(fixture_dir or GOLDEN_CONFIG['fixture_dir'])
    path = fixture_dir / f"{name}.json"
    if not path.exists():
        raise UnknownFixture(f"no golden fixture named {name!r} in {fixture_dir}", module='cli')
    fixture = json.loads(path.read_text(encoding='utf-8'))
    fixture['name'] = name
    fixture['fingerprint'] = hashlib.sha256(path.read_bytes()).hexdigest()[:16]
    return fixture


def run_fixture(fixture: Dict) -> FixtureResult:
    """Run one fixture; analysis errors become failures unless the fixture expects them."""
    start = time.perf_counter()
    name = fixture['name']
    expected_error = fixture.get('expect_error')
    try:
        report = run_analysis(AnalysisConfig.from_dict(fixture['config']))
    except MilnorError as exc:
        elapsed = time.perf_counter() - start
        if expected_error == exc.code:
            return FixtureResult(name, True, [], elapsed)
        return FixtureResult(name, False, [f"error [{exc.code}]: {exc.message}"], elapsed)

    elapsed = time.perf_counter() - start
    if expected_error:
        return FixtureResult(name, False, [f"expected error [{expected_error}], analysis succeeded"], elapsed)
    diff = compare(report_to_dict(report), fixture.get('expect', []))
    return FixtureResult(name, not diff, diff, elapsed)


def run_golden(name: str = 'all',
               fixture_dir: Path = None,
               progress_callback: Optional[Callable] = None,
               max_workers: int = None,
               cache_file: Path = None) -> GoldenSummary:
    """
    Run one fixture, or all of them concurrently.

    Args:
        name: Fixture name or 'all'
        fixture_dir: Directory holding the fixtures (default from config)
        progress_callback: Optional callback(completed, total, name, passed)
        max_workers: Number of concurrent workers (default from config)
        cache_file: Run history file (default from config)

    Returns:
        GoldenSummary with one result per fixture, in name order

    Raises:
        UnknownFixture: the named fixture does not exist
    """
    logger = get_logger()
    names = fixture_names(fixture_dir) if name == 'all' else [name]
    fixtures = [load_fixture(n, fixture_dir) for n in names]
    if max_workers is None:
        max_workers = GOLDEN_CONFIG['max_workers']
    cache = GoldenRunCache(cache_file or CACHE_FILE)

    results: List[FixtureResult] = []
    total = len(fixtures)
    completed = 0

    with StageLogger(f"Golden run ({total} fixture(s))"):
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_fixture = {executor.submit(run_fixture, fx): fx for fx in fixtures}

            for future in as_completed(future_to_fixture):
                fixture = future_to_fixture[future]
                completed += 1
                try:
                    result = future.result()
                except Exception as exc:
                    result = FixtureResult(fixture['name'], False, [f"unexpected error: {exc}"])

                if result.passed:
                    cache.mark_passed(result.name, fixture['fingerprint'], result.elapsed)
                    logger.info(f"Passed: {result.name} ({completed}/{total})")
                else:
                    cache.mark_failed(result.name, fixture['fingerprint'], result.diff)
                    logger.warning(f"Failed: {result.name} - {'; '.join(result.diff)}")
                results.append(result)

                if progress_callback:
                    progress_callback(completed, total, result.name, result.passed)

    cache.save()
    results.sort(key=lambda r: r.name)
    summary = GoldenSummary(results)
    logger.info(f"Golden run: {summary.passed} passed, {summary.failed} failed")
    return summary
