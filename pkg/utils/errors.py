"""
Error hierarchy for the Milnor constraint analyzer.

Every error carries a stable ``code`` (reported verbatim in structured
output) and a ``category`` that the command line maps to an exit status.
"""

from typing import Optional


class MilnorError(Exception):
    """Base class for all analyzer errors."""

    code = 'error'
    category = 'analysis'

    def __init__(self, message: str = '', module: Optional[str] = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.module = module

    def to_dict(self) -> dict:
        return {
            'code': self.code,
            'category': self.category,
            'module': self.module,
            'message': self.message,
        }


class AnalysisError(MilnorError):
    category = 'analysis'


class ConfigError(MilnorError):
    category = 'config'


# ============== poly_core ==============

class UnknownVariable(AnalysisError):
    code = 'unknown-variable'


class ZeroPolynomial(AnalysisError):
    code = 'zero-polynomial'


class DegenerateResultant(AnalysisError):
    code = 'degenerate-resultant'


class NotDivisible(AnalysisError):
    code = 'not-divisible'


class IndeterminateOrder(AnalysisError):
    code = 'indeterminate-order'


class MixedParameters(AnalysisError):
    code = 'mixed-parameters'


class IncompatibleFields(AnalysisError):
    code = 'incompatible-fields'


# ============== puiseux ==============

class NonSquareFree(AnalysisError):
    code = 'non-square-free'


class UnsupportedShape(AnalysisError):
    code = 'unsupported-shape'


class NotNormalForm(AnalysisError):
    code = 'not-normal-form'


class InfiniteContact(AnalysisError):
    code = 'infinite-contact'


# ============== cycles ==============

class NotCriticalPoint(AnalysisError):
    code = 'not-critical-point'


class ImproperIntersection(AnalysisError):
    code = 'improper-intersection'


class DecompositionFailure(AnalysisError):
    code = 'decomposition-failure'


class TeissierViolation(AnalysisError):
    code = 'teissier-violation'


# ============== cerf ==============

class NonReducedComponent(AnalysisError):
    code = 'non-reduced-component'


# ============== monodromy ==============

class NotSemisimple(AnalysisError):
    code = 'not-semisimple'


class NotPrime(AnalysisError):
    code = 'not-prime'


class InconsistentInputs(AnalysisError):
    code = 'inconsistent-inputs'


class NonPolynomial(AnalysisError):
    code = 'non-polynomial'


class NotAJoin(AnalysisError):
    code = 'not-a-join'


class EmptyAdmissibleSet(AnalysisError):
    code = 'empty-admissible-set'

    def __init__(self, message: str = '', module: Optional[str] = None, audit=None):
        super().__init__(message, module)
        self.audit = list(audit or [])


# ============== cli ==============

class ExpressionSyntaxError(ConfigError):
    code = 'syntax-error'

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} at line {line}, column {column}", module='cli')
        self.line = line
        self.column = column


class UnknownIdentifier(ConfigError):
    code = 'unknown-identifier'


class UnknownFixture(ConfigError):
    code = 'unknown-fixture'


class HintSyntaxError(ConfigError):
    code = 'hint-syntax-error'


class InvalidConfig(ConfigError):
    code = 'invalid-config'
