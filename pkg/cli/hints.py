"""
Hint files.

    # comment
    component G1.1: t = T^2, x = T^3, y = 0
    decompose x^3 - x*y^2: (x)^1 * (x - y) * (x + y)

A component hint gives every ambient coordinate as a polynomial in T.
A decompose hint states how V(h) splits; the polynomial is matched
after expansion, either as given or restricted to the component.
"""

import re
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from sympy import Symbol

from cli.parser import parse_expression
from puiseux.components import HintSet
from utils.errors import ConfigError, HintSyntaxError, InvalidConfig
from utils.logger import get_logger

logger = get_logger()

_FACTOR_RE = re.compile(r'^\((?P<body>.+)\)(?:\^(?P<mult>\d+))?$|^(?P<ident>[A-Za-z_]\w*)(?:\^(?P<imult>\d+))?$')


def _split_top_level(text: str, separator: str) -> List[str]:
    parts, depth, current = [], 0, []
    for char in text:
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        if char == separator and depth == 0:
            parts.append(''.join(current).strip())
            current = []
        else:
            current.append(char)
    parts.append(''.join(current).strip())
    return parts


def _parse(text: str, symbols: Sequence[Symbol], line_no: int):
    try:
        return parse_expression(text, symbols)
    except ConfigError as exc:
        raise HintSyntaxError(f"line {line_no}: {exc.message}", module='cli') from exc


def _factors(text: str, symbols: Sequence[Symbol], line_no: int) -> List[Tuple[object, int]]:
    out = []
    for piece in _split_top_level(text, '*'):
        match = _FACTOR_RE.match(piece.replace(' ', ''))
        if not match:
            raise HintSyntaxError(f"line {line_no}: cannot read factor {piece!r}", module='cli')
        body = match.group('body') or match.group('ident')
        mult = int(match.group('mult') or match.group('imult') or 1)
        if mult < 1:
            raise HintSyntaxError(f"line {line_no}: multiplicity must be positive", module='cli')
        out.append((_parse(body, symbols, line_no), mult))
    return out


def parse_hints(text: str, variables: Sequence) -> HintSet:
    """
    Raises:
        HintSyntaxError: a line is neither a component nor a decompose hint
    """
    symbols = [v if isinstance(v, Symbol) else Symbol(str(v)) for v in variables]
    with_parameter = symbols + [Symbol('T')]
    hints = HintSet()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(' ')
        head, sep, body = rest.partition(':')
        if not sep:
            raise HintSyntaxError(f"line {line_no}: missing ':'", module='cli')

        if keyword == 'component':
            name = head.strip()
            assignment = {}
            for item in _split_top_level(body, ','):
                var, eq, value = item.partition('=')
                var = var.strip()
                if not eq or var not in {str(s) for s in symbols}:
                    raise HintSyntaxError(f"line {line_no}: expected '<variable> = <polynomial in T>'",
                                          module='cli')
                assignment[var] = _parse(value, with_parameter, line_no)
            hints.components[name] = assignment
        elif keyword == 'decompose':
            key = str(_parse(head, symbols, line_no))
            hints.decompositions[key] = _factors(body, symbols, line_no)
        else:
            raise HintSyntaxError(f"line {line_no}: unknown hint {keyword!r}", module='cli')

    logger.debug(f"hints: {len(hints.components)} component(s), {len(hints.decompositions)} decomposition(s)")
    return hints


def load_hints(path: Union[str, Path], variables: Sequence) -> HintSet:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise InvalidConfig(f"cannot read hints {path}: {exc}", module='cli') from exc
    return parse_hints(text, variables)
