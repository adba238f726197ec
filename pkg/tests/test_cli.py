import argparse
import json

import pytest
from sympy import Rational, Symbol, symbols

from cli.analysis import AnalysisConfig, with_overrides
from cli.golden import _MISSING, compare, resolve_path
from cli.hints import parse_hints
from cli.main import _betti_pair, main
from cli.parser import parse_polynomial, print_polynomial
from cli.render import load_structured, render, render_error, report_to_dict
from config import EXIT_CODES
from utils.cache import GoldenRunCache
from utils.errors import (ExpressionSyntaxError, HintSyntaxError, InvalidConfig,
                          UnknownIdentifier)

# ============== parser ==============


def test_parse_and_print(xy):
    x, y = xy
    p = parse_polynomial('y^2 - x**3 - 3/2*x*y', xy)
    assert p.as_expr() == y**2 - x**3 - Rational(3, 2) * x * y
    assert parse_polynomial(print_polynomial(p), xy) == p


def test_parse_products_expand():
    s, t, x, y = symbols('s t x y')
    p = parse_polynomial('y^2 - x^4 + (s^3 - t^2)*x^3', (s, t, x, y))
    assert p.as_expr() == y**2 - x**4 + s**3 * x**3 - t**2 * x**3


def test_negative_exponent_position(xy):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_polynomial('x^-1', xy)
    assert (info.value.line, info.value.column) == (1, 3)


@pytest.mark.parametrize('text', ['', 'x +', '(x + y', 'x/0', 'x $ y'])
def test_syntax_errors(xy, text):
    with pytest.raises(ExpressionSyntaxError):
        parse_polynomial(text, xy)


def test_unknown_identifier(xy):
    with pytest.raises(UnknownIdentifier):
        parse_polynomial('x + z', xy)


# ============== hints ==============

HINTS = """
# polar branch of the umbrella
component G1.1: t = T^2, x = T^3, y = 0
decompose x^3 - x*y^2: (x)^1 * (x - y) * (x + y)
"""


def test_parse_hints(txy):
    t, x, y = txy
    hints = parse_hints(HINTS, txy)
    T = Symbol('T')
    assert hints.component('G1.1') == {'t': T**2, 'x': T**3, 'y': 0}
    assert hints.decomposition(x * y**2 - x**3) is None
    assert hints.decomposition(t, x**3 - x * y**2) == [(x, 1), (x - y, 1), (x + y, 1)]
    assert hints.component('G9') is None


@pytest.mark.parametrize('text', [
    'component G1.1 t = T',
    'frobnicate x: y',
    'component G1.1: z = T',
    'decompose x^2: (x',
])
def test_bad_hints(txy, text):
    with pytest.raises(HintSyntaxError):
        parse_hints(text, txy)


# ============== configuration ==============

def test_config_from_dict():
    cfg = AnalysisConfig.from_dict({'polynomial': 'y^2 - x^3', 'variables': 'x, y',
                                    'observed_betti': {'1': 2}})
    assert cfg.variables == ['x', 'y']
    assert cfg.observed_betti == {1: 2}


def test_config_rejects_unknown_keys():
    with pytest.raises(InvalidConfig):
        AnalysisConfig.from_dict({'polynomial': 'x', 'variables': ['x'], 'colour': 'blue'})


def test_config_validation():
    with pytest.raises(InvalidConfig):
        AnalysisConfig('x^2', ['x', 'y'], z0='z').validate()
    with pytest.raises(InvalidConfig):
        AnalysisConfig('x^2', ['x', 'x']).validate()
    with pytest.raises(InvalidConfig):
        AnalysisConfig('x^2', ['x'], profile='loose').validate()


def test_z0_moves_to_front():
    cfg = with_overrides(AnalysisConfig('x^2 + y^2', ['x', 'y']), z0='y', chi_link=None)
    assert cfg.ordered_variables() == ('y', 'x')
    assert cfg.chi_link is None


# ============== rendering ==============

def test_text_report_sections_in_order(whitney_report):
    text = render(whitney_report, 'text')
    titles = ['Polar and Le cycles', 'Le numbers', 'Invariants', 'Classification', 'Candidates', 'Cases', 'Audit']
    positions = [text.index(f"== {title} ==") for title in titles]
    assert positions == sorted(positions)
    assert 'Case1b' in text


def test_structured_report(whitney_report):
    text = render(whitney_report, 'structured')
    document = load_structured(text)
    assert document == report_to_dict(whitney_report)
    assert document['status'] == 'clean'
    assert document['invariants']['tau'] == 3
    assert document['cases'] == {'prime': 3, 'admissible': ['1b']}
    assert render(whitney_report, 'structured') == text


def test_structured_report_carries_generic_le_and_prepolarity(whitney_report):
    document = report_to_dict(whitney_report)
    assert document['cycles']['generic_le'] == {'1': [{'name': 'L1.1', 'support': 'V(x, y)', 'value': 1}]}
    assert document['prepolarity']['verdict'] == 'yes'
    assert 'generic Le numbers:' in render(whitney_report, 'text')


def test_render_error():
    document = json.loads(render_error(InvalidConfig('no polynomial', module='cli'), 'structured'))
    assert document['status'] == 'error'
    assert document['error']['code'] == 'invalid-config'
    assert render_error(InvalidConfig('no polynomial'), 'text').startswith('error [invalid-config] (config)')


# ============== command line ==============

def test_missing_input_is_a_config_error(capsys):
    assert main(['analyze']) == EXIT_CODES['config']
    assert 'invalid-config' in capsys.readouterr().out


@pytest.mark.parametrize('flags', [
    ['--trace', 'abc'],
    ['--profile', 'bogus'],
    ['--sigma-dim', '1.5'],
    ['--frobnicate'],
])
def test_bad_flags_are_config_errors(tmp_path, capsys, flags):
    source = tmp_path / 'cusp.txt'
    source.write_text('y^2 - x^3\n', encoding='utf-8')
    assert main(['analyze', '--input', str(source), '--vars', 'x,y', *flags]) == EXIT_CODES['config']
    assert 'invalid-config' in capsys.readouterr().out


def test_unknown_command_is_a_config_error(capsys):
    assert main(['frobnicate']) == EXIT_CODES['config']
    assert 'invalid-config' in capsys.readouterr().out


def test_paper_profile_alias(tmp_path, capsys):
    source = tmp_path / 'cusp.txt'
    source.write_text('y^2 - x^3\n', encoding='utf-8')
    code = main(['analyze', '--input', str(source), '--vars', 'x,y', '--profile', 'paper',
                 '--format', 'structured'])
    document = json.loads(capsys.readouterr().out)
    assert code in (EXIT_CODES['clean'], EXIT_CODES['warnings'])
    assert document['profile'] == 'standard'
    assert AnalysisConfig('x^2', ['x'], profile='paper').profile == 'standard'


def test_analyze_command(tmp_path, capsys):
    source = tmp_path / 'whitney.txt'
    source.write_text('y^2 - x^3 - t*x^2\n', encoding='utf-8')
    code = main(['analyze', '--input', str(source), '--vars', 't,x,y', '--chi-link', '1',
                 '--format', 'structured'])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_CODES['clean']
    assert document['invariants']['gamma1'] == 1
    assert len(document['options']) == 1


def test_betti_pair():
    assert _betti_pair('2=0') == (2, 0)
    with pytest.raises(argparse.ArgumentTypeError):
        _betti_pair('2:0')


# ============== golden comparison ==============

DOCUMENT = {'options': [{'betti': {'2': 1}, 'char_n': '(L^3+1)/(L+1)'}, {'betti': {'2': 0}}]}


def test_resolve_path():
    assert resolve_path(DOCUMENT, 'options.#') == 2
    assert resolve_path(DOCUMENT, 'options.*.betti.2') == [1, 0]
    assert resolve_path(DOCUMENT, 'options.5') is _MISSING
    assert resolve_path(DOCUMENT, 'options.0.betti.3') is _MISSING


def test_compare():
    checks = [
        {'path': 'options.#', 'equals': 2},
        {'path': 'options.*.betti.2', 'contains': 0},
        {'path': 'options.0.char_n', 'char': '(L^6-1)(L-1)/((L^2-1)(L^3-1))'},
    ]
    assert compare(DOCUMENT, checks) == []
    diff = compare(DOCUMENT, [{'path': 'options.#', 'equals': 1}, {'path': 'options.1.char_n', 'char': '(L+1)'}])
    assert len(diff) == 2
    assert 'expected 1, got 2' in diff[0]
    assert '<missing>' in diff[1]


def test_compare_ideals():
    document = {'coords': ['s', 't', 'x', 'y'],
                'cycles': {'gamma': {'1': [{'support': 'V(t, -3*s^3/4 + x, y)'}], '4': [{'support': 'whole space'}]}}}
    checks = [
        {'path': 'cycles.gamma.1.0.support', 'ideal': ['y', 'x - 3*s^3/4 + t', 't']},
        {'path': 'cycles.gamma.4.0.support', 'ideal': []},
    ]
    assert compare(document, checks) == []
    diff = compare(document, [{'path': 'cycles.gamma.1.0.support', 'ideal': ['t', 'x', 'y']},
                              {'path': 'cycles.gamma.4.0.support', 'ideal': ['s']},
                              {'path': 'cycles.gamma.2.0.support', 'ideal': ['s']}])
    assert len(diff) == 3
    assert diff[0].startswith('cycles.gamma.1.0.support: expected V(t, x, y)')


def test_run_cache(tmp_path):
    cache = GoldenRunCache(tmp_path / 'runs.json')
    cache.mark_passed('cusp', 'abc', 0.1234)
    cache.mark_failed('whitney', 'def', ['invariants.tau: expected 3, got 2'])
    cache.save()

    reloaded = GoldenRunCache(tmp_path / 'runs.json')
    stats = reloaded.get_stats()
    assert (stats['total_fixtures'], stats['passed'], stats['failed']) == (2, 1, 1)
    assert stats['last_updated'] is not None
    assert reloaded.get_failing() == ['whitney']
    assert reloaded.get_fixture_info('cusp')['elapsed'] == 0.123

    reloaded.clear()
    assert reloaded.get_stats()['total_fixtures'] == 0
