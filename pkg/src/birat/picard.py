"""Divisor classes on the resolved surface: intersection form, pullbacks, indices.

Internally every class lives in the orthogonal basis (line class, one class
of square -1 per blow-up) where the intersection form is diag(1, -1, ..., -1).
The displayed basis consists of the strict transform of the line at infinity
and the irreducible exceptional curves; the change of basis is unimodular, so
all conversions stay integral.

From the ledger of a resolution tower this module computes the pullbacks of
the line class under the two lifted maps, the canonical class, the identity
suite tying them together, the ample-index bound, the effective-index
bracket, and the polyhedrality verdict for the effective cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .blowup import ResolutionTower
from .errors import (
    ConsistencyError,
    DimensionMismatchError,
    InfeasibleAtZeroError,
)
from .feasibility import nonnegative_combination, verify_combination

LINE_LABEL = "H#"

BISECTION_DENOMINATOR_CAP = 10**4


@dataclass(frozen=True)
class DivisorClass:
    """Coefficient vector over the lattice's displayed basis."""

    lattice: "IntersectionLattice"
    coeffs: tuple[Fraction, ...]
    label: str | None = None

    def dot(self, other: "DivisorClass") -> Fraction:
        return self.lattice.intersect(self, other)

    def self_intersection(self) -> Fraction:
        return self.dot(self)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self.lattice._require_same(other.lattice)
        return DivisorClass(
            self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self.lattice._require_same(other.lattice)
        return DivisorClass(
            self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def scale(self, value) -> "DivisorClass":
        value = Fraction(value)
        return DivisorClass(self.lattice, tuple(value * a for a in self.coeffs))

    def orthogonal(self) -> tuple[Fraction, ...]:
        return self.lattice.display_to_orthogonal(self.coeffs)

    def __str__(self) -> str:
        pieces = []
        for coeff, name in zip(self.coeffs, self.lattice.labels):
            if coeff == 0:
                continue
            pieces.append(f"{coeff}*{name}")
        return " + ".join(pieces) if pieces else "0"


class IntersectionLattice:
    """Integer intersection lattice of the resolved surface."""

    def __init__(self, labels: Sequence[str], display_in_orthogonal: Sequence[Sequence[int]]):
        self.labels = list(labels)
        self.rank = len(self.labels)
        # column j = orthogonal coordinates of displayed basis vector j
        self._to_orth = [list(col) for col in display_in_orthogonal]
        if any(len(col) != self.rank for col in self._to_orth):
            raise DimensionMismatchError("basis matrix is not square")
        self._from_orth = _invert_unimodular(self._to_orth)
        j_signs = [1] + [-1] * (self.rank - 1)
        self.gram = [
            [
                sum(s * a * b for s, a, b in zip(j_signs, self._to_orth[i], self._to_orth[j]))
                for j in range(self.rank)
            ]
            for i in range(self.rank)
        ]

    @property
    def orthogonal_change_of_basis(self) -> list[list[int]]:
        """Columns are the displayed basis vectors in the orthogonal basis."""
        return [list(col) for col in self._to_orth]

    def _require_same(self, other: "IntersectionLattice"):
        if other is not self:
            raise DimensionMismatchError("divisor classes belong to different lattices")

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def basis_class(self, label: str) -> DivisorClass:
        idx = self.index_of(label)
        coeffs = tuple(Fraction(1 if k == idx else 0) for k in range(self.rank))
        return DivisorClass(self, coeffs, label=label)

    def divisor(self, coeffs: Iterable, label: str | None = None) -> DivisorClass:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.rank:
            raise DimensionMismatchError(
                f"expected {self.rank} coefficients, got {len(coeffs)}"
            )
        return DivisorClass(self, coeffs, label=label)

    def from_orthogonal(self, vec: Sequence, label: str | None = None) -> DivisorClass:
        vec = [Fraction(v) for v in vec]
        if len(vec) != self.rank:
            raise DimensionMismatchError("orthogonal vector has wrong length")
        coeffs = tuple(
            sum(self._from_orth[i][k] * vec[k] for k in range(self.rank))
            for i in range(self.rank)
        )
        return DivisorClass(self, coeffs, label=label)

    def display_to_orthogonal(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            sum(self._to_orth[j][k] * coeffs[j] for j in range(self.rank))
            for k in range(self.rank)
        )

    def intersect(self, u: DivisorClass, v: DivisorClass) -> Fraction:
        self._require_same(u.lattice)
        self._require_same(v.lattice)
        total = Fraction(0)
        for i, a in enumerate(u.coeffs):
            if a == 0:
                continue
            row = self.gram[i]
            for j, b in enumerate(v.coeffs):
                if b:
                    total += a * b * row[j]
        return total

    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) inertia of the Gram matrix, computed by
        exact symmetric reduction; independent of the unimodular construction."""
        return _signature(self.gram)


def _invert_unimodular(columns: list[list[int]]) -> list[list[Fraction]]:
    n = len(columns)
    # Row-major matrix M with M[i][j] = columns[j][i]; invert by elimination.
    m = [[Fraction(columns[j][i]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            raise ConsistencyError("displayed basis is singular")
        m[col], m[pivot_row] = m[pivot_row], m[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = m[col][col]
        m[col] = [v / pivot for v in m[col]]
        inv[col] = [v / pivot for v in inv[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
                inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return inv


def _signature(gram: Sequence[Sequence]) -> tuple[int, int, int]:
    # Symmetric congruence reduction (Sylvester): each step applies one row
    # operation and the matching column operation, keeping the form exact.
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][r] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
                if off is None:
                    zero += 1
                    continue
                # Zero diagonal but a[off][k] != 0: adding row and column off
                # to k makes the diagonal entry 2*a[off][k] != 0 over Q.
                for j in range(n):
                    a[k][j] += a[off][j]
                for i in range(n):
                    a[i][k] += a[i][off]
        pivot = a[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if a[r][k] != 0:
                factor = a[r][k] / pivot
                for j in range(n):
                    a[r][j] -= factor * a[k][j]
                for i in range(n):
                    a[i][r] -= factor * a[i][k]
    return pos, neg, zero


# ---------------------------------------------------------------------------
# lattice construction from a tower


def build_lattice(tower: ResolutionTower) -> IntersectionLattice:
    """Displayed basis: strict transform of the line at infinity, then the
    irreducible exceptional curves (shared-prefix curves once, E-labels)."""
    records = tower.records
    n_blowups = len(records)
    rank = n_blowups + 1

    def orth_unit(k: int) -> list[int]:
        vec = [0] * rank
        vec[k] = 1
        return vec

    line = orth_unit(0)
    h_sharp = list(line)
    for rec in records:
        if rec.on_line_at_infinity:
            h_sharp[rec.index + 1] -= 1

    strict = {}
    for rec in records:
        vec = orth_unit(rec.index + 1)
        for other in records:
            if rec.index in other.proximate_to:
                vec[other.index + 1] -= 1
        strict[rec.index] = vec

    labels = [LINE_LABEL]
    columns = [h_sharp]
    for idx in tower.family_indices("E"):
        labels.append(tower.records[idx].label)
        columns.append(strict[idx])
    for idx in tower.family_indices("F"):
        rec = tower.records[idx]
        if rec.family == "inverse":
            labels.append(rec.label)
            columns.append(strict[idx])
    return IntersectionLattice(labels, columns)


@dataclass
class ResolutionInvariants:
    """Pullback and canonical-class coefficients over the displayed basis."""

    n: int
    m: int
    i0: int
    degree_fwd: int
    degree_inv: int
    b: int
    c: int
    e: int
    b_vec: list[int]
    c_vec: list[int]
    e_vec: list[int]
    bp_vec: list[int]
    cp_vec: list[int]
    ep_vec: list[int]
    a_vec: list[int]
    ap_vec: list[int]
    psi_pull: DivisorClass
    psi_prime_pull: DivisorClass
    pi_pull: DivisorClass
    canonical: DivisorClass

    @property
    def c_n(self) -> int:
        return self.c_vec[-1]

    @property
    def b_prime_m(self) -> int:
        return self._f_coeff(self.b_vec, self.bp_vec)

    @property
    def e_n(self) -> int:
        return self.e_vec[-1]

    @property
    def e_prime_m(self) -> int:
        return self._f_coeff(self.e_vec, self.ep_vec)

    @property
    def a_n(self) -> int:
        return self.a_vec[-1]

    @property
    def a_prime_m(self) -> int:
        return self._f_coeff(self.a_vec, self.ap_vec)

    def _f_coeff(self, e_side: list[int], f_side: list[int]) -> int:
        # The m-th inverse-family curve is a shared curve when m <= i0 (a
        # fully shared tower); its coefficient then lives on the E side.
        if self.m <= self.i0:
            return e_side[self.m - 1]
        return f_side[self.m - 1]


def pullback_classes(tower: ResolutionTower, lattice: IntersectionLattice) -> ResolutionInvariants:
    records = tower.records
    rank = len(records) + 1

    psi_orth = [Fraction(tower.deg_psi)] + [Fraction(-r.mult_psi) for r in records]
    psi_prime_orth = [Fraction(tower.deg_psi_prime)] + [
        Fraction(-r.mult_psi_prime) for r in records
    ]
    pi_orth = [Fraction(1)] + [Fraction(0)] * (rank - 1)
    k_orth = [Fraction(-3)] + [Fraction(1)] * (rank - 1)

    psi = lattice.from_orthogonal(psi_orth, label="psi*H")
    psi_prime = lattice.from_orthogonal(psi_prime_orth, label="psi'*H")
    pi = lattice.from_orthogonal(pi_orth, label="pi*H")
    canonical = lattice.from_orthogonal(k_orth, label="K")

    for cls in (psi, psi_prime, pi, canonical):
        for coeff in cls.coeffs:
            if coeff.denominator != 1:
                raise ConsistencyError(f"non-integral coefficient in {cls.label}")

    def split(cls: DivisorClass) -> tuple[int, list[int], list[int]]:
        head = int(cls.coeffs[0])
        e_part = []
        f_part = []
        e_labels = [tower.records[i].label for i in tower.family_indices("E")]
        f_labels = [tower.records[i].label for i in tower.family_indices("F")]
        for label in e_labels:
            e_part.append(int(cls.coeffs[lattice.index_of(label)]))
        for j, label in enumerate(f_labels):
            if j < tower.i0:
                f_part.append(0)  # shared-prefix coefficients are carried by the E side
            else:
                f_part.append(int(cls.coeffs[lattice.index_of(label)]))
        return head, e_part, f_part

    b, b_vec, bp_vec = split(psi)
    c, c_vec, cp_vec = split(psi_prime)
    e, e_vec, ep_vec = split(pi)
    neg3, a_vec, ap_vec = split(canonical)

    if e != 1:
        raise ConsistencyError(
            f"pulled-back line class has coefficient {e} on the strict transform of the "
            "line at infinity; a center escaped the line's transform chain"
        )
    if neg3 != -3:
        raise ConsistencyError("canonical class does not restrict to -3 on the line class")

    return ResolutionInvariants(
        n=tower.n,
        m=tower.m,
        i0=tower.i0,
        degree_fwd=tower.deg_psi,
        degree_inv=tower.deg_psi_prime,
        b=b,
        c=c,
        e=e,
        b_vec=b_vec,
        c_vec=c_vec,
        e_vec=e_vec,
        bp_vec=bp_vec,
        cp_vec=cp_vec,
        ep_vec=ep_vec,
        a_vec=a_vec,
        ap_vec=ap_vec,
        psi_pull=psi,
        psi_prime_pull=psi_prime,
        pi_pull=pi,
        canonical=canonical,
    )


def canonical_class(tower: ResolutionTower, lattice: IntersectionLattice) -> DivisorClass:
    rank = len(tower.records) + 1
    return lattice.from_orthogonal(
        [Fraction(-3)] + [Fraction(1)] * (rank - 1), label="K"
    )


def index_class(inv: ResolutionInvariants, alpha) -> DivisorClass:
    """The class (pullback under the map) + (pullback under the inverse)
    - alpha * (pullback of a line); its effectivity and amplitude thresholds
    are the two indices."""
    return inv.psi_pull + inv.psi_prime_pull - inv.pi_pull.scale(Fraction(alpha))


# ---------------------------------------------------------------------------
# identity suite


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def verify_identities(
    inv: ResolutionInvariants,
    lattice: IntersectionLattice,
    alphas: Sequence = (),
) -> list[IdentityCheck]:
    """Evaluate every intersection identity exactly; failures are data."""
    checks: list[IdentityCheck] = []

    def add(name: str, lhs, rhs):
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        checks.append(IdentityCheck(name, lhs == rhs, lhs, rhs))

    psi, psip, pi, K = inv.psi_pull, inv.psi_prime_pull, inv.pi_pull, inv.canonical
    h_sharp = lattice.basis_class(LINE_LABEL)
    e_labels = [lab for lab in lattice.labels if lab.startswith("E")]
    f_only_labels = [lab for lab in lattice.labels if lab.startswith("F")]

    def f_label(j: int) -> str:  # 1-based position in the F-family
        return e_labels[j - 1] if j <= inv.i0 else f"F{j}"

    e_n_label = e_labels[-1]
    f_m_label = f_label(inv.m)

    add("(psi*H)^2 == 1", psi.dot(psi), 1)
    add("(psi'*H)^2 == 1", psip.dot(psip), 1)
    add("(pi*H)^2 == 1", pi.dot(pi), 1)
    add("e == 1", inv.e, 1)
    add("b == deg", inv.b, inv.degree_fwd)
    add("c == deg of inverse", inv.c, inv.degree_inv)
    add("psi*H . psi'*H == c_n", psi.dot(psip), inv.c_n)
    add("c_n == b'_m", inv.c_n, inv.b_prime_m)
    add("psi*H . pi*H == e_n", psi.dot(pi), inv.e_n)
    add("e_n == b", inv.e_n, inv.b)
    add("psi'*H . pi*H == e'_m", psip.dot(pi), inv.e_prime_m)
    add("e'_m == c", inv.e_prime_m, inv.c)

    for i, lab in enumerate(e_labels, start=1):
        cls = lattice.basis_class(lab)
        if i < inv.n:
            add(f"psi*H . {lab} == 0", psi.dot(cls), 0)
        else:
            add(f"psi*H . {lab} == 1", psi.dot(cls), 1)
        if lab != f_m_label:
            add(f"psi'*H . {lab} == 0", psip.dot(cls), 0)
    for j in range(inv.i0 + 1, inv.m + 1):
        lab = f_label(j)
        cls = lattice.basis_class(lab)
        if j < inv.m:
            add(f"psi'*H . {lab} == 0", psip.dot(cls), 0)
        else:
            add(f"psi'*H . {lab} == 1", psip.dot(cls), 1)
        if lab != e_n_label:
            add(f"psi*H . {lab} == 0", psi.dot(cls), 0)

    for alpha in alphas:
        alpha = Fraction(alpha)
        d_cls = index_class(inv, alpha)
        tag = f"[a={alpha}]"
        add(f"D{tag} . H# == -a", d_cls.dot(h_sharp), -alpha)
        for i, lab in enumerate(e_labels, start=1):
            target = 1 if i == inv.n else 0
            add(f"D{tag} . {lab} == {target}", d_cls.dot(lattice.basis_class(lab)), target)
        for j in range(inv.i0 + 1, inv.m + 1):
            lab = f_label(j)
            target = 1 if j == inv.m else 0
            add(f"D{tag} . {lab} == {target}", d_cls.dot(lattice.basis_class(lab)), target)
        add(
            f"D{tag}^2 == 2(1+c_n) - 2a(b+c) + a^2",
            d_cls.dot(d_cls),
            2 * (1 + inv.c_n) - 2 * alpha * (inv.b + inv.c) + alpha**2,
        )
        add(
            f"D{tag} . K == a_n + a'_m + 3a",
            d_cls.dot(K),
            inv.a_n + inv.a_prime_m + 3 * alpha,
        )
    return checks


# ---------------------------------------------------------------------------
# indices and cone structure


@dataclass(frozen=True)
class AmpleBoundWitness:
    alpha: Fraction
    intersection_with_line_transform: Fraction


def ample_index_upper_bound(
    inv: ResolutionInvariants,
    lattice: IntersectionLattice,
    alphas: Sequence = (Fraction(1, 2), Fraction(1), Fraction(2)),
) -> tuple[Fraction, list[AmpleBoundWitness]]:
    """Zero, witnessed on the strict transform of the line at infinity.

    That curve meets the alpha-class in exactly -alpha, so every positive
    alpha fails amplitude (an ample class is positive on every curve, and the
    nef cone is the closure of the ample one); the supremum is at most 0.
    """
    h_sharp = lattice.basis_class(LINE_LABEL)
    witnesses = []
    for alpha in alphas:
        alpha = Fraction(alpha)
        value = index_class(inv, alpha).dot(h_sharp)
        if value != -alpha:
            raise ConsistencyError(f"expected intersection -{alpha}, got {value}")
        witnesses.append(AmpleBoundWitness(alpha, value))
    return Fraction(0), witnesses


def known_effective_generators(
    inv: ResolutionInvariants, lattice: IntersectionLattice
) -> list[DivisorClass]:
    """Classes known to be effective: the boundary curves and the three
    pulled-back line classes (nef, and effective as pullbacks of lines)."""
    gens = [lattice.basis_class(lab) for lab in lattice.labels]
    gens += [inv.pi_pull, inv.psi_pull, inv.psi_prime_pull]
    return gens


def decomposes_over_known_effectives(
    inv: ResolutionInvariants, lattice: IntersectionLattice, alpha
) -> list[Fraction] | None:
    """Nonnegative rational decomposition of the alpha-class over the known
    effective classes, or None when no such decomposition exists.

    "None" does not certify non-effectivity: unknown irreducible negative
    curves may exist beyond the boundary list.
    """
    target = index_class(inv, alpha).coeffs
    columns = [g.coeffs for g in known_effective_generators(inv, lattice)]
    solution = nonnegative_combination(columns, target)
    if solution is not None and not verify_combination(columns, target, solution):
        raise ConsistencyError("feasibility solution failed exact re-verification")
    return solution


def effective_index_bracket(
    inv: ResolutionInvariants, lattice: IntersectionLattice
) -> tuple[Fraction, Fraction]:
    """(lower, upper) bounds for the effective threshold on this resolution.

    Upper bound: the alpha-class must meet the three nef pulled-back line
    classes nonnegatively.  Lower bound: explicit nonnegative decomposition
    over known effective classes, certified first at the upper bound (which
    collapses the bracket), otherwise refined by bisection on a rational grid
    with denominators up to 10^4.
    """
    upper = min(
        Fraction(inv.b + inv.c),
        Fraction(1 + inv.c_n, inv.b),
        Fraction(1 + inv.b_prime_m, inv.c),
    )
    if decomposes_over_known_effectives(inv, lattice, 0) is None:
        raise InfeasibleAtZeroError(
            "the manifestly effective class at alpha = 0 failed feasibility"
        )
    if decomposes_over_known_effectives(inv, lattice, upper) is not None:
        return upper, upper
    lo, hi = Fraction(0), upper
    while True:
        mid = (lo + hi) / 2
        if mid.denominator > BISECTION_DENOMINATOR_CAP:
            break
        if decomposes_over_known_effectives(inv, lattice, mid) is not None:
            lo = mid
        else:
            hi = mid
    return lo, upper


def classify_effective_cone(
    eff_lower: Fraction, eff_upper: Fraction, a_n: int, a_prime_m: int
) -> str:
    """Polyhedrality verdict for the effective cone at threshold
    -(a_n + a'_m)/3.

    Strictly above the threshold the cone is not polyhedral; exactly at the
    threshold it is.  "Boundary" flags an uncollapsed bracket whose upper end
    sits on the threshold; anything else the dichotomy does not decide.
    """
    threshold = Fraction(-(a_n + a_prime_m), 3)
    if eff_lower > threshold:
        return "NotPolyhedral"
    if eff_lower == eff_upper == threshold:
        return "Polyhedral"
    if eff_upper == threshold:
        return "Boundary"
    return "Inconclusive"


def effective_cone_threshold(inv: ResolutionInvariants) -> Fraction:
    return Fraction(-(inv.a_n + inv.a_prime_m), 3)


def dapv_region(inv: ResolutionInvariants, alpha) -> str:
    """Locate the alpha-class relative to the canonical-sign decomposition of
    the effective cone: below the threshold it lies in the polyhedral part,
    at it on the canonical-degree-zero boundary, above in the round part."""
    alpha = Fraction(alpha)
    value = inv.a_n + inv.a_prime_m + 3 * alpha
    if value < 0:
        return "PolyhedralPart"
    if value == 0:
        return "K_zero_boundary"
    return "K_positive_part"


def negative_curves(lattice: IntersectionLattice) -> list[DivisorClass]:
    """Known irreducible curves of negative self-intersection.

    Partial by construction: only the displayed boundary curves are examined;
    other negative curves may exist on the surface.
    """
    out = []
    for label in lattice.labels:
        cls = lattice.basis_class(label)
        if cls.self_intersection() < 0:
            out.append(cls)
    return out


# ---------------------------------------------------------------------------
# aggregated report


@dataclass
class IndexReport:
    map_text: str
    degree: int
    delta_estimate: str
    delta_exact: Fraction | None
    degree_sequence: list[int]
    n: int
    m: int
    i0: int
    regular: bool
    invariants: ResolutionInvariants
    identity_checks: list[IdentityCheck]
    ample_bound: Fraction
    ample_witnesses: list[AmpleBoundWitness]
    eff_lower: Fraction
    eff_upper: Fraction
    theorem_b_verdict: str
    threshold: Fraction
    negative_curve_labels: list[tuple[str, Fraction]]
    observed_delta_relation: bool | None

    @property
    def eff_exact(self) -> Fraction | None:
        return self.eff_lower if self.eff_lower == self.eff_upper else None

    def all_identities_pass(self) -> bool:
        return all(c.passed for c in self.identity_checks)

    def to_dict(self) -> dict:
        inv = self.invariants
        payload = {
            "map": self.map_text,
            "degree": self.degree,
            "delta_estimate": self.delta_estimate,
            "degree_sequence": self.degree_sequence,
            "n": self.n,
            "m": self.m,
            "i0": self.i0,
            "regular": self.regular,
            "coefficients": {
                "b": inv.b,
                "c": inv.c,
                "e": inv.e,
                "b_vec": inv.b_vec,
                "c_vec": inv.c_vec,
                "e_vec": inv.e_vec,
                "bp_vec": inv.bp_vec,
                "cp_vec": inv.cp_vec,
                "ep_vec": inv.ep_vec,
                "a_vec": inv.a_vec,
                "ap_vec": inv.ap_vec,
            },
            "identity_checks": [c.to_dict() for c in self.identity_checks],
            "ample_bound": str(self.ample_bound),
            "eff_lower": str(self.eff_lower),
            "eff_upper": str(self.eff_upper),
            "theorem_b_verdict": self.theorem_b_verdict,
            "effective_cone_threshold": str(self.threshold),
            "negative_curves": [
                {"label": lab, "self_intersection": str(sq)}
                for lab, sq in self.negative_curve_labels
            ],
        }
        if self.eff_exact is not None:
            payload["eff_exact"] = str(self.eff_exact)
        if self.observed_delta_relation is not None:
            payload["delta_plus_inverse_degree_matches_eff"] = self.observed_delta_relation
        return payload
