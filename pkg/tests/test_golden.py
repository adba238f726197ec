import pytest

from cli.golden import fixture_names, load_fixture, run_fixture, run_golden
from utils.cache import GoldenRunCache
from utils.errors import UnknownFixture


@pytest.mark.parametrize('name', fixture_names())
def test_fixture(name):
    result = run_fixture(load_fixture(name))
    assert result.passed, '\n'.join(result.diff)


def test_fixture_set_is_complete():
    names = set(fixture_names())
    assert {'whitney', 'cusp', 'siersma', 'four-variable', 'four-variable-strict'} <= names


def test_run_golden_records_history(tmp_path):
    seen = []
    summary = run_golden('cusp', progress_callback=lambda *args: seen.append(args),
                         cache_file=tmp_path / 'runs.json')
    assert summary.ok
    assert seen == [(1, 1, 'cusp', True)]
    stats = GoldenRunCache(tmp_path / 'runs.json').get_stats()
    assert (stats['total_fixtures'], stats['passed']) == (1, 1)


def test_expected_error_fixture(tmp_path):
    (tmp_path / 'smooth.json').write_text(
        '{"config": {"polynomial": "x + y^2", "variables": "x,y"}, "expect_error": "not-critical-point"}',
        encoding='utf-8')
    result = run_fixture(load_fixture('smooth', tmp_path))
    assert result.passed, result.diff


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        load_fixture('nonexistent')
