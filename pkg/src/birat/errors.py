"""Exception types shared across the package.

Every error that can reach a user carries enough structured data to be
reported by the CLI (and serialized into its error payload).  Internal
consistency guards raise too: an exact engine must fail loudly, never
return an approximate answer.
"""

from __future__ import annotations


class BiratError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# polynomial layer


class PolySyntaxError(BiratError):
    """Malformed polynomial expression; carries the offending position."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class UnknownVariableError(BiratError):
    """Expression uses a name that is not a declared variable."""

    def __init__(self, name: str, variables, position: int | None = None):
        self.name = name
        self.variables = tuple(variables)
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown variable {name!r}{where}; declared: {self.variables}")


class VariableMismatchError(BiratError):
    """Arithmetic attempted between polynomials over different variable lists."""


class DegreeTooSmallError(BiratError):
    """A degree parameter is below the minimum the operation requires."""


class ExactnessViolationError(BiratError):
    """An exact division did not divide; signals an internal engine bug."""


# ---------------------------------------------------------------------------
# automorphism layer


class NotInverseError(BiratError):
    """The supplied map pair does not compose to the identity.

    ``residual`` is a nonzero polynomial witnessing the failure.
    """

    def __init__(self, message: str, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message}; residual {residual}"
        super().__init__(message)


class DegenerateParameterError(BiratError):
    """Builder parameters outside the family (zero coefficient, low degree)."""


class BudgetExceededError(BiratError):
    """A configured resource cap was hit (term count, iterate count)."""


class StepBudgetExceededError(BudgetExceededError):
    """The blow-up loop passed its step cap without terminating."""


class NonRationalIndeterminacyError(BiratError):
    """A base point exists but its coordinates are not rational.

    ``min_poly_coeffs`` are the coefficients (constant term first) of the
    univariate polynomial over Q whose roots are the missing coordinates.
    """

    def __init__(self, message: str, min_poly_coeffs=None):
        self.min_poly_coeffs = tuple(min_poly_coeffs) if min_poly_coeffs else None
        if self.min_poly_coeffs:
            message = f"{message}; defining polynomial coefficients {self.min_poly_coeffs}"
        super().__init__(message)


class UniquenessViolatedError(BiratError):
    """More than one base point found where exactly one is expected.

    This cannot happen for a genuine plane automorphism; it flags bad input.
    """

    def __init__(self, message: str, points=()):
        self.points = tuple(points)
        super().__init__(f"{message}: {list(self.points)}")


# ---------------------------------------------------------------------------
# blow-up / lattice layer


class DuplicateCenterError(BiratError):
    """Attempt to blow up a point that was already blown up."""


class GenericityFailureError(BiratError):
    """The two independent random test lines disagreed; re-run with a new seed."""


class DimensionMismatchError(BiratError):
    """Divisor classes from lattices of different rank were combined."""


class InfeasibleAtZeroError(BiratError):
    """The manifestly effective class at alpha = 0 failed the feasibility test.

    Only an engine bug can cause this.
    """


class ConsistencyError(BiratError):
    """An exact internal invariant failed; the computation cannot be trusted."""
