"""Plane polynomial automorphisms: validation, builders, iterates, projective lifts.

An automorphism of the affine plane extends to a rational self-map of the
projective plane.  Its undefined locus is a finite set on the line at
infinity; for a genuine automorphism of degree at least two it is a single
point, and the sets for the map and its inverse overlap in at most two
points total.  This module computes those loci exactly and exposes the
degree-growth data used downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BudgetExceededError,
    DegenerateParameterError,
    DegreeTooSmallError,
    NonRationalIndeterminacyError,
    NotInverseError,
    UniquenessViolatedError,
)
from .polyalg import (
    MINUS_INFINITY,
    PolyMap,
    Polynomial,
    parse_poly,
    uni_degree,
    uni_from_poly,
    uni_gcd,
    uni_rational_roots,
)

DEFAULT_TERM_BUDGET = 10**6

_XY = PolyMap.VARIABLES
_XYZ = ("X", "Y", "Z")


def _identity_map() -> PolyMap:
    return PolyMap(Polynomial.variable(_XY, "x"), Polynomial.variable(_XY, "y"))


@dataclass(frozen=True)
class InfinityPoint:
    """A point [u : v : 0] on the line at infinity, normalized so the first
    nonzero coordinate is 1."""

    u: Fraction
    v: Fraction

    @staticmethod
    def of(u, v) -> "InfinityPoint":
        u, v = Fraction(u), Fraction(v)
        if u != 0:
            return InfinityPoint(Fraction(1), v / u)
        if v != 0:
            return InfinityPoint(Fraction(0), Fraction(1))
        raise ValueError("[0 : 0 : 0] is not a projective point")

    def __str__(self) -> str:
        return f"[{self.u}:{self.v}:0]"


class AffineAutomorphism:
    """A validated automorphism: forward and inverse compose to the identity."""

    __slots__ = ("forward", "inverse", "degree_fwd", "degree_inv")

    def __init__(self, forward: PolyMap, inverse: PolyMap):
        for label, m in (("forward", forward), ("inverse", inverse)):
            if m.p1.is_constant() and m.p2.is_constant():
                raise NotInverseError(f"{label} map is constant; not an automorphism")
        for a, b, label in ((forward, inverse, "forward∘inverse"), (inverse, forward, "inverse∘forward")):
            composed = a.compose(b)
            x = Polynomial.variable(_XY, "x")
            y = Polynomial.variable(_XY, "y")
            r1 = composed.p1 - x
            r2 = composed.p2 - y
            if r1 or r2:
                raise NotInverseError(f"{label} is not the identity", residual=(r1 if r1 else r2))
        object.__setattr__(self, "forward", forward)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "degree_fwd", forward.degree())
        object.__setattr__(self, "degree_inv", inverse.degree())

    def __setattr__(self, *_):
        raise AttributeError("AffineAutomorphism is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def inverted(self) -> "AffineAutomorphism":
        return AffineAutomorphism(self.inverse, self.forward)

    def __str__(self) -> str:
        return f"{self.forward} with inverse {self.inverse}"

    def as_text(self) -> str:
        return "; ".join(str(p) for p in (self.forward.p1, self.forward.p2, self.inverse.p1, self.inverse.p2))


def new_automorphism(forward: PolyMap, inverse: PolyMap) -> AffineAutomorphism:
    return AffineAutomorphism(forward, inverse)


def automorphism_from_text(text: str) -> AffineAutomorphism:
    """Parse the CLI map format "P1; P2; Q1; Q2" in variables x, y."""
    parts = text.split(";")
    if len(parts) != 4:
        raise NotInverseError(f"expected four ';'-separated polynomials, got {len(parts)}")
    polys = [parse_poly(part, _XY) for part in parts]
    return AffineAutomorphism(PolyMap(polys[0], polys[1]), PolyMap(polys[2], polys[3]))


# ---------------------------------------------------------------------------
# builders for the standard families


def henon_builder(q: Polynomial, a) -> AffineAutomorphism:
    """(x, y) -> (y, q(y) + a*x) with polynomial q of degree >= 2 and a != 0.

    The inverse is ((y - q(x))/a, x).
    """
    a = Fraction(a)
    if a == 0:
        raise DegenerateParameterError("coefficient a must be nonzero")
    if q.variables == ("y",):
        q = Polynomial(_XY, {(0, e[0]): c for e, c in q.terms.items()})
    if q.variables != _XY:
        raise DegenerateParameterError("q must be a polynomial in y")
    if q.degree_in("x") != 0:
        raise DegenerateParameterError("q must not involve x")
    d = q.total_degree()
    if d is MINUS_INFINITY or d < 2:
        raise DegenerateParameterError("q must have degree >= 2")
    x = Polynomial.variable(_XY, "x")
    y = Polynomial.variable(_XY, "y")
    q_of_x = q.compose(x, x)  # swap y -> x
    forward = PolyMap(y, q + x.scale(a))
    inverse = PolyMap((y - q_of_x).scale(1 / a), x)
    return AffineAutomorphism(forward, inverse)


def transposed_henon_builder(d: int, a) -> AffineAutomorphism:
    """(x, y) -> (y + a*x^d, x) with d >= 2 and a != 0; inverse (y, x - a*y^d)."""
    a = Fraction(a)
    if a == 0:
        raise DegenerateParameterError("coefficient a must be nonzero")
    if d < 2:
        raise DegenerateParameterError("exponent d must be >= 2")
    x = Polynomial.variable(_XY, "x")
    y = Polynomial.variable(_XY, "y")
    forward = PolyMap(y + (x**d).scale(a), x)
    inverse = PolyMap(y, x - (y**d).scale(a))
    return AffineAutomorphism(forward, inverse)


def compose_automorphisms(phi: AffineAutomorphism, psi: AffineAutomorphism) -> AffineAutomorphism:
    """phi after psi, revalidated."""
    return AffineAutomorphism(phi.forward.compose(psi.forward), psi.inverse.compose(phi.inverse))


# ---------------------------------------------------------------------------
# degree growth


def degree_sequence(phi: AffineAutomorphism, n_iterates: int, term_budget: int = DEFAULT_TERM_BUDGET) -> list[int]:
    """Exact algebraic degrees [deg(phi), deg(phi^2), ..., deg(phi^N)]."""
    if n_iterates < 1:
        raise ValueError("need at least one iterate")
    degrees = []
    current = _identity_map()
    for _ in range(n_iterates):
        current = phi.forward.compose(current)
        if current.term_count() > term_budget:
            raise BudgetExceededError(
                f"iterate exceeds the term budget ({current.term_count()} > {term_budget})"
            )
        degrees.append(current.degree())
    return degrees


@dataclass(frozen=True)
class DynamicalDegreeEstimate:
    """Degree-growth summary for the sampled iterates.

    ``estimate`` is exact when the one-step degree ratio is the same constant
    across every sampled step; otherwise it is None and ``last_degree`` with
    ``n_iterates`` carry the raw data point deg(phi^N) at N.
    """

    degrees: tuple[int, ...]
    estimate: Fraction | None
    stabilized: bool

    @property
    def n_iterates(self) -> int:
        return len(self.degrees)

    @property
    def last_degree(self) -> int:
        return self.degrees[-1]

    def presentation(self) -> str:
        if self.estimate is not None:
            return str(self.estimate)
        root = self.last_degree ** (1.0 / self.n_iterates)
        return f"{self.last_degree}^(1/{self.n_iterates}) ~ {root:.6g}"


def dynamical_degree_estimate(
    phi: AffineAutomorphism, n_iterates: int, term_budget: int = DEFAULT_TERM_BUDGET
) -> DynamicalDegreeEstimate:
    if n_iterates < 2:
        raise ValueError("need at least two iterates")
    degrees = degree_sequence(phi, n_iterates, term_budget)
    ratios = [Fraction(degrees[i + 1], degrees[i]) for i in range(len(degrees) - 1)]
    stabilized = len(ratios) >= 3 and len(set(ratios[-3:])) == 1
    estimate = ratios[0] if len(set(ratios)) == 1 and len(ratios) >= 3 else None
    return DynamicalDegreeEstimate(tuple(degrees), estimate, stabilized)


# ---------------------------------------------------------------------------
# projective lift and base points on the line at infinity


class ProjectiveMapLift:
    """Homogeneous lift [G0 : G1 : G2] of a plane map, with common monomial
    factors removed."""

    __slots__ = ("components", "degree")

    def __init__(self, g0: Polynomial, g1: Polynomial, g2: Polynomial):
        comps = [g0, g1, g2]
        for g in comps:
            if g.variables != _XYZ:
                raise ValueError("lift components must be polynomials in (X, Y, Z)")
        comps = _strip_common_monomial(comps)
        degs = {g.total_degree() for g in comps if g}
        if len(degs) != 1:
            raise ValueError(f"lift components must share one degree, got {degs}")
        for g in comps:
            if any(sum(m) != g.total_degree() for m in g.terms):
                raise ValueError("lift components must be homogeneous")
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "degree", int(degs.pop()))

    def __setattr__(self, *_):
        raise AttributeError("ProjectiveMapLift is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def restrict_to_infinity(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        """The three components with Z = 0, as binary forms in (X, Y)."""
        return tuple(g.substitute_one("Z", 0) for g in self.components)

    def evaluate(self, point: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(g.evaluate(point) for g in self.components)

    def __str__(self) -> str:
        return "[" + " : ".join(str(g) for g in self.components) + "]"


def _strip_common_monomial(comps: list[Polynomial]) -> list[Polynomial]:
    nonzero = [g for g in comps if g]
    if not nonzero:
        return comps
    for idx, name in enumerate(_XYZ):
        power = min(min(m[idx] for m in g.terms) for g in nonzero)
        if power:
            comps = [g.divide_by_variable_power(name, power) if g else g for g in comps]
    return comps


def projective_lift(m: PolyMap) -> ProjectiveMapLift:
    """[homog(P1, d) : homog(P2, d) : Z^d] for d the degree of the map."""
    d = m.degree()
    z_power = Polynomial(_XYZ, {(0, 0, d): Fraction(1)})
    return ProjectiveMapLift(m.p1.homogenize(d), m.p2.homogenize(d), z_power)


def indeterminacy_on_infinity(lift: ProjectiveMapLift) -> list[InfinityPoint]:
    """Common zeros of the lift on the line Z = 0.

    Raises NonRationalIndeterminacyError if a common zero exists outside Q,
    and returns all rational ones (the caller enforces cardinality).
    """
    forms = lift.restrict_to_infinity()
    points: list[InfinityPoint] = []
    # Chart X = 1 covers every direction except [0 : 1]; a common irrational
    # zero shows up as a nonlinear leftover factor there.
    restrictions = [f.substitute_one("X", 1) for f in forms]
    unis = [uni_from_poly(r, "Y") for r in restrictions]
    if all(not u for u in unis):
        raise NonRationalIndeterminacyError("all components vanish on the line at infinity")
    g: list[Fraction] = []
    for u in unis:
        if u:
            g = list(u) if not g else uni_gcd(g, u)
    if uni_degree(g) >= 1:
        roots, leftover = uni_rational_roots(g)
        for r in roots:
            points.append(InfinityPoint.of(1, r))
        if uni_degree(leftover) >= 1:
            raise NonRationalIndeterminacyError(
                "common zero with irrational coordinates on the line at infinity",
                min_poly_coeffs=leftover,
            )
    if all(f.evaluate((0, 1, 0)) == 0 for f in lift.components):
        points.append(InfinityPoint.of(0, 1))
    return points


def indeterminacy_of(phi: AffineAutomorphism, which: str = "forward") -> InfinityPoint | None:
    """The single base point of the lifted map on the line at infinity.

    Degree-1 automorphisms are morphisms on the projective plane and return
    None.  More than one point contradicts what holds for plane automorphisms
    and raises UniquenessViolatedError.
    """
    m = phi.forward if which == "forward" else phi.inverse
    if m.degree() < 2:
        return None
    points = indeterminacy_on_infinity(projective_lift(m))
    if not points:
        raise UniquenessViolatedError(
            f"degree >= 2 map has no base point on the line at infinity; {which} map is not "
            "induced by an automorphism",
            points,
        )
    if len(points) > 1:
        raise UniquenessViolatedError(
            f"{which} map has several base points on the line at infinity", points
        )
    return points[0]


def is_regular(phi: AffineAutomorphism) -> bool:
    """True iff the base points of the map and its inverse differ."""
    if phi.degree_fwd < 2:
        raise DegreeTooSmallError("regularity is defined for degree >= 2")
    return indeterminacy_of(phi, "forward") != indeterminacy_of(phi, "inverse")


def infinity_image(phi: AffineAutomorphism, point: InfinityPoint) -> InfinityPoint:
    """Image of a point of the line at infinity under the lifted map.

    Defined away from the base point; the image stays on the line at infinity.
    """
    lift = projective_lift(phi.forward)
    values = lift.evaluate((point.u, point.v, Fraction(0)))
    if all(v == 0 for v in values):
        raise ValueError(f"{point} is a base point; no image")
    if values[2] != 0:
        raise ValueError(f"image of {point} left the line at infinity")
    return InfinityPoint.of(values[0], values[1])


def check_infinity_collapse(phi: AffineAutomorphism, samples: int = 20, rng=None) -> bool:
    """Sample points of the line at infinity away from the base point and
    verify they all map to the base point of the inverse."""
    import random

    rng = rng or random.Random(0)
    z_fwd = indeterminacy_of(phi, "forward")
    z_inv = indeterminacy_of(phi, "inverse")
    tested = 0
    while tested < samples:
        p = InfinityPoint.of(1, Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3)))
        if p == z_fwd:
            continue
        if infinity_image(phi, p) != z_inv:
            return False
        tested += 1
    extra = InfinityPoint.of(0, 1)
    if extra != z_fwd and infinity_image(phi, extra) != z_inv:
        return False
    return True
