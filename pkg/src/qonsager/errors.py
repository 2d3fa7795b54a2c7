"""Exception types shared across the package."""


class QonsagerError(Exception):
    """Base class for all package errors."""


class DivisionByZero(QonsagerError):
    """Division by a zero scalar."""


class EvaluationSingular(QonsagerError):
    """A substitution made a denominator vanish."""


class PoleAtZero(QonsagerError):
    """A variable assigned 0 occurs with a negative exponent."""


class NotPolynomialInVariable(QonsagerError):
    """Coefficient extraction requested in a variable that occurs with
    negative exponents (or in the denominator)."""


class NotDivisible(QonsagerError):
    """A division-then-limit found a nonzero lower-order part."""


class AlphabetMismatch(QonsagerError):
    """Operands over different letter alphabets were combined."""


class NoSuchDescendant(QonsagerError):
    """Unknown descendant generator name."""


class InvalidEvaluationPoint(QonsagerError):
    """The spectral parameter of an evaluation representation is zero."""


class BoundarySingular(QonsagerError):
    """Boundary parameters with identically vanishing ep + em."""


class DimMismatch(QonsagerError):
    """Matrix operands of different dimension."""


class FeasibilityExceeded(QonsagerError):
    """Requested site count beyond the documented bound for the mode."""
