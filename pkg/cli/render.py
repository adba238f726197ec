"""
Report rendering.

Text reports follow the order cycles, Le numbers, invariants,
classification, candidates, cases. Structured reports are one JSON
document with fixed keys; integer-indexed maps use string keys so that
a dumped document loads back unchanged.
"""

import json
from typing import Dict, List, Optional

import pandas as pd

from config import REPORT_SCHEMA_VERSION
from cycles.cascade import Cycle, LeNumbers, Prepolarity
from monodromy.report import ConstraintReport, DerivedValue
from utils.errors import MilnorError


def _value(item: Optional[DerivedValue]):
    if item is None:
        return None
    return {'value': str(item.value) if not isinstance(item.value, int) else item.value, 'source': item.source}


def _cycle(cycle: Cycle) -> List[Dict]:
    return [{
        'name': c.name,
        'support': c.form.describe(),
        'multiplicity': c.multiplicity,
        'dimension': c.dimension,
    } for c in cycle.components]


def _generic(le: LeNumbers) -> Dict[str, List[Dict]]:
    supports = {c.name: c.form.describe() for cyc in le.cycles.values() for c in cyc.components}
    return {str(k): [{'name': name, 'support': supports[name], 'value': value} for name, value in parts]
            for k, parts in sorted(le.generic.items())}


def _prepolarity(item: Optional[Prepolarity]) -> Optional[Dict]:
    if item is None:
        return None
    return {'verdict': item.verdict, 'slice_sigma_dim': item.slice_sigma_dim, 'reason': item.reason}


def _betti(betti: Dict[int, int]) -> Dict[str, int]:
    return {str(k): v for k, v in sorted(betti.items(), reverse=True)}


def report_to_dict(report: ConstraintReport) -> Dict:
    inter = report.intersections
    d = report.derived
    case_verdict = report.case_verdict
    return {
        'schema_version': REPORT_SCHEMA_VERSION,
        'status': 'warnings' if report.warnings else 'clean',
        'polynomial': report.polynomial.replace('**', '^'),
        'coords': list(report.coords),
        'profile': report.profile,
        'cycles': {
            'gamma': {str(k): _cycle(c) for k, c in sorted(report.cascade.gammas.items())},
            'lambda': {str(k): _cycle(c) for k, c in sorted(report.cascade.lambdas.items())},
            'generic_le': _generic(report.le),
        },
        'le_numbers': {str(k): v for k, v in sorted(report.le.values.items(), reverse=True)},
        'prepolarity': _prepolarity(report.prepolarity),
        'invariants': {
            'gamma1': inter.gamma1,
            'lambda0': inter.lambda0,
            'tau': inter.tau,
            'totals_coprime': inter.totals_coprime,
            'polar_branches': [{'name': b.name, 'm': b.m, 'n': b.n, 'l': b.l, 'weight': b.weight}
                               for b in inter.components],
            'le_greuel': report.le_greuel,
        },
        'classification': {
            'carrousel_form': report.verdict.carrousel_form.value,
            'semi_simple': report.verdict.semi_simple.value,
            'reasons': list(report.verdict.reasons),
            'components': [{
                'name': c.name, 'm': c.m, 'n': c.n, 'conjugacy': c.conjugacy,
                'beta': None if c.beta is None else str(c.beta),
                'flags': [] if c.flags is None else c.flags.labels(),
            } for c in report.cerf],
        },
        'derived': {
            'sigma_dim': _value(d.sigma_dim),
            'chi_link': _value(d.chi_link),
            'b_slice': _value(d.b_slice),
            'slice_char': _value(d.slice_char),
            'transversal_chars': {name: str(c) for name, c in d.transversal_chars},
            'extra_slice_chars': [str(c) for c in d.extra_slice_chars],
            'lower_betti': _betti(d.lower_betti),
            'observed_trace': d.observed_trace,
            'observed_betti': _betti(d.observed_betti),
        },
        'ranks': {
            'rank_im': list(report.rank_state.rank_im_bounds),
            'betti_n': list(report.rank_state.betti_bounds),
        },
        'char_rel_candidates': [str(c) for c in report.char_rel],
        'options': [{
            'label': o.label,
            'rank_im': o.rank_im,
            'char_rel': None if o.char_rel is None else str(o.char_rel),
            'char_im': None if o.char_im is None else str(o.char_im),
            'char_n': None if o.char_n is None else str(o.char_n),
            'betti': _betti(o.betti),
            'cases': [c.value for c in o.cases],
        } for o in report.options],
        'cases': None if case_verdict is None else {
            'prime': case_verdict.prime,
            'admissible': [c.value for c in case_verdict.admissible],
        },
        'warnings': list(report.warnings),
        'audit': [a.to_dict() for a in report.audit],
    }


def error_to_dict(error: MilnorError) -> Dict:
    document = {'schema_version': REPORT_SCHEMA_VERSION, 'status': 'error', 'error': error.to_dict()}
    audit = getattr(error, 'audit', None)
    if audit:
        document['audit'] = [a.to_dict() for a in audit]
    return document


def dump_structured(document: Dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)


def load_structured(text: str) -> Dict:
    return json.loads(text)


# ============== text ==============

def _table(rows: List[Dict], columns: List[str]) -> str:
    if not rows:
        return '  (none)'
    frame = pd.DataFrame(rows, columns=columns)
    return frame.to_string(index=False)


def _section(title: str, body: str) -> List[str]:
    return [f"== {title} ==", body, '']


def render_text(report: ConstraintReport) -> str:
    doc = report_to_dict(report)
    n = report.n
    lines = [f"f = {doc['polynomial']}  in ({', '.join(report.coords)}), z0 = {report.coords[0]}",
             f"profile: {report.profile}", '']

    cycle_rows = []
    for kind, symbol in (('gamma', 'Gamma'), ('lambda', 'Lambda')):
        for k, comps in doc['cycles'][kind].items():
            for c in comps:
                cycle_rows.append({'cycle': f"{symbol}^{k}", **c})
    lines += _section('Polar and Le cycles', _table(cycle_rows, ['cycle', 'name', 'support', 'multiplicity', 'dimension']))

    le_rows = [{'k': int(k), 'lambda^k': v} for k, v in doc['le_numbers'].items()]
    generic_rows = [{'cycle': f"Lambda^{k}", **c} for k, comps in doc['cycles']['generic_le'].items() for c in comps]
    le_lines = [_table(le_rows, ['k', 'lambda^k'])]
    if generic_rows:
        le_lines += ['generic Le numbers:', _table(generic_rows, ['cycle', 'name', 'support', 'value'])]
    lines += _section('Le numbers', '\n'.join(le_lines))

    inv = doc['invariants']
    inv_lines = [f"gamma^1 = {inv['gamma1']}, lambda^0 = {inv['lambda0']}, tau = {inv['tau']}",
                 f"gcd(gamma^1, tau) = 1: {'yes' if inv['totals_coprime'] else 'no'}"]
    if inv['le_greuel'] is not None:
        inv_lines.append(f"Le-Greuel identity: {'holds' if inv['le_greuel'] else 'fails'}")
    prepolar = doc['prepolarity']
    if prepolar is not None:
        inv_lines.append(f"V({report.coords[0]}) prepolar: {prepolar['verdict']} ({prepolar['reason']})")
    inv_lines.append(_table(inv['polar_branches'], ['name', 'm', 'n', 'l', 'weight']))
    derived_rows = [{'input': k, 'value': v['value'], 'source': v['source']}
                    for k, v in doc['derived'].items() if isinstance(v, dict) and 'source' in v]
    inv_lines.append(_table(derived_rows, ['input', 'value', 'source']))
    lines += _section('Invariants', '\n'.join(inv_lines))

    cls = doc['classification']
    cls_rows = [{**c, 'flags': ', '.join(c['flags'])} for c in cls['components']]
    lines += _section('Classification', '\n'.join([
        f"carrousel form: {cls['carrousel_form']}, semi-simple: {cls['semi_simple']} "
        f"({', '.join(cls['reasons'])})",
        _table(cls_rows, ['name', 'm', 'n', 'conjugacy', 'beta', 'flags']),
    ]))

    ranks = doc['ranks']
    option_rows = []
    for o in doc['options']:
        row = {'option': o['label'], 'rank(im)': o['rank_im'], 'char_rel': o['char_rel'],
               'char_im': o['char_im'], f'char^{n}': o['char_n']}
        row.update({f"b~_{k}": v for k, v in o['betti'].items()})
        option_rows.append(row)
    columns = list(option_rows[0]) if option_rows else ['option']
    lines += _section('Candidates', '\n'.join([
        f"rank(im) in {ranks['rank_im']}, b~_{n} in {ranks['betti_n']}",
        _table(option_rows, columns),
    ]))

    if doc['cases'] is not None:
        cases = doc['cases']
        lines += _section('Cases', f"prime order {cases['prime']}: admissible "
                                   f"{', '.join('Case' + c for c in cases['admissible'])}")

    if doc['warnings']:
        lines += _section('Warnings', '\n'.join(f"- {w}" for w in doc['warnings']))
    lines += _section('Audit', _table(doc['audit'], ['module', 'rule', 'subject', 'detail']))
    return '\n'.join(lines).rstrip() + '\n'


def render(report: ConstraintReport, output_format: str) -> str:
    if output_format == 'structured':
        return dump_structured(report_to_dict(report))
    return render_text(report)


def render_error(error: MilnorError, output_format: str) -> str:
    if output_format == 'structured':
        return dump_structured(error_to_dict(error))
    lines = [f"error [{error.code}] ({error.category}): {error.message}"]
    for entry in getattr(error, 'audit', None) or []:
        lines.append(f"  {entry.module}/{entry.rule}: {entry.subject}: {entry.detail}")
    return '\n'.join(lines) + '\n'


