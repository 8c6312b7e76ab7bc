"""Iterated blow-ups resolving a plane automorphism and its inverse at once.

The tower starts from the three affine charts of the projective plane and
repeatedly blows up the unique base point of whichever lifted map is not yet
a morphism.  While the two maps share their base point the blow-up is
recorded once (the shared prefix, length ``i0``); after they split, each map
grows its own chain of infinitely-near centers.  Every blow-up appends two
standard charts and a ledger entry holding the powers of the exceptional
coordinate divided out of each lifted map and of two random test lines.

Coordinates are exact rationals throughout.  A base point that leaves the
rationals aborts with its defining univariate polynomial rather than ever
approximating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .automap import (
    AffineAutomorphism,
    InfinityPoint,
    ProjectiveMapLift,
    indeterminacy_of,
    projective_lift,
)
from .errors import (
    ConsistencyError,
    DegreeTooSmallError,
    DuplicateCenterError,
    ExactnessViolationError,
    GenericityFailureError,
    NonRationalIndeterminacyError,
    StepBudgetExceededError,
    UniquenessViolatedError,
)
from .polyalg import (
    Polynomial,
    uni_degree,
    uni_from_poly,
    uni_gcd,
    uni_rational_roots,
)

DEFAULT_STEP_BUDGET = 64

_UV = ("u", "v")

Point = tuple[Fraction, Fraction]
Triple = tuple[Polynomial, Polynomial, Polynomial]


def _uv(poly_2vars: Polynomial) -> Polynomial:
    """Re-tag a bivariate polynomial onto the chart variables (u, v)."""
    return Polynomial(_UV, dict(poly_2vars.terms))


def _u() -> Polynomial:
    return Polynomial.variable(_UV, "u")


def _v() -> Polynomial:
    return Polynomial.variable(_UV, "v")


@dataclass
class Chart:
    """One affine chart of the tower.

    ``transition`` expresses the parent chart's coordinates as polynomials in
    this chart's (u, v); composing transitions walks back to a root chart,
    whose ``root_axis`` says which homogeneous coordinate of the plane is 1.
    ``exc_coord`` is the chart variable cutting out the exceptional curve
    created together with this chart (None for roots).
    """

    id: int
    parent: int | None
    transition: tuple[Polynomial, Polynomial] | None
    exc_coord: str | None
    root_axis: int | None = None


@dataclass(frozen=True)
class TowerPoint:
    chart: int
    coords: Point

    def __str__(self) -> str:
        return f"chart {self.chart} at ({self.coords[0]}, {self.coords[1]})"


@dataclass
class ExceptionalRecord:
    """Ledger entry for one blow-up."""

    index: int
    family: str  # "shared" | "forward" | "inverse"
    center_chart: int
    center: Point
    on_line_at_infinity: bool
    proximate_to: list[int]  # indices of earlier records whose curve holds the center
    mult_psi: int
    mult_psi_prime: int
    mult_pi: int
    chart_a: int
    chart_b: int
    label: str = ""
    parent_label: str | None = None


class ResolutionTower:
    """Chart forest plus the blow-up ledger for one automorphism.

    Per-chart state (the two cleaned lifted triples and the strict-transform
    equations of the line at infinity, of every exceptional curve and of the
    two test lines) is retained so that truncation checks and report
    generation can re-examine any stage.
    """

    def __init__(self, phi: AffineAutomorphism | None = None):
        self.phi = phi
        self.charts: dict[int, Chart] = {}
        self.records: list[ExceptionalRecord] = []
        self.i0 = 0
        self.swapped = False
        self.deg_psi = phi.degree_fwd if phi else 0
        self.deg_psi_prime = phi.degree_inv if phi else 0
        # chart id -> cleaned data
        self.psi_triples: dict[int, Triple] = {}
        self.psi_prime_triples: dict[int, Triple] = {}
        self.curve_eqs: dict[int, dict[object, Polynomial]] = {}  # key "H" or record index
        self.line_eqs: dict[int, tuple[Polynomial, Polynomial]] = {}
        self._blown: set[tuple[int, Point]] = set()
        self._next_chart = 0

    # -- derived views -----------------------------------------------------

    @property
    def regular(self) -> bool:
        return self.i0 == 0

    def family_indices(self, family: str) -> list[int]:
        keep = {"E": ("shared", "forward"), "F": ("shared", "inverse")}[family]
        return [r.index for r in self.records if r.family in keep]

    def family_records(self, family: str) -> list[ExceptionalRecord]:
        return [self.records[i] for i in self.family_indices(family)]

    @property
    def forward_family(self) -> list[ExceptionalRecord]:
        return self.family_records("E")

    @property
    def inverse_family(self) -> list[ExceptionalRecord]:
        return self.family_records("F")

    @property
    def n(self) -> int:
        return len(self.family_indices("E"))

    @property
    def m(self) -> int:
        return len(self.family_indices("F"))

    # -- construction ------------------------------------------------------

    def _new_chart(self, **kwargs) -> Chart:
        chart = Chart(id=self._next_chart, **kwargs)
        self.charts[chart.id] = chart
        self._next_chart += 1
        return chart

    def init_roots(self, lift_fwd: ProjectiveMapLift, lift_inv: ProjectiveMapLift, lines):
        """Create the three standard affine charts and seed the chart state."""
        for axis in (0, 1, 2):
            self._new_chart(parent=None, transition=None, exc_coord=None, root_axis=axis)
        axis_subs = [("X", ("Y", "Z")), ("Y", ("X", "Z")), ("Z", ("X", "Y"))]
        for chart_id, (one_var, _) in enumerate(axis_subs):
            def into_chart(g: Polynomial) -> Polynomial:
                return _uv(g.substitute_one(one_var, 1))

            self.psi_triples[chart_id] = tuple(into_chart(g) for g in lift_fwd.components)
            self.psi_prime_triples[chart_id] = tuple(into_chart(g) for g in lift_inv.components)
            eqs: dict[object, Polynomial] = {}
            if chart_id in (0, 1):
                eqs["H"] = _v()  # the line at infinity is {Z/X = 0} resp. {Z/Y = 0}
            self.curve_eqs[chart_id] = eqs
            self.line_eqs[chart_id] = tuple(into_chart(line) for line in lines)

    def blow_up_at(self, chart_id: int, center: Point, family: str) -> ExceptionalRecord:
        """Blow up one point; extends the chart forest and the ledger."""
        center = (Fraction(center[0]), Fraction(center[1]))
        key = (chart_id, center)
        if key in self._blown:
            raise DuplicateCenterError(f"chart {chart_id} point {center} was already blown up")
        self._blown.add(key)

        parent_curves = self.curve_eqs[chart_id]
        on_h = "H" in parent_curves and parent_curves["H"].evaluate(center) == 0
        prox = sorted(
            k for k, eq in parent_curves.items() if k != "H" and eq.evaluate(center) == 0
        )

        a, b = center
        u, v = _u(), _v()
        const = lambda c: Polynomial.constant(_UV, c)
        chart_a = self._new_chart(
            parent=chart_id,
            transition=(u + const(a), u * v + const(b)),
            exc_coord="u",
        )
        chart_b = self._new_chart(
            parent=chart_id,
            transition=(u * v + const(a), v + const(b)),
            exc_coord="v",
        )

        mults: dict[str, int] = {}
        for chart in (chart_a, chart_b):
            sub = chart.transition
            exc = chart.exc_coord

            def pull(p: Polynomial) -> Polynomial:
                return p.compose(*sub)

            new_curves: dict[object, Polynomial] = {}
            for label, eq in parent_curves.items():
                lifted = pull(eq)
                val = lifted.valuation_in(exc)
                stripped = lifted.divide_by_variable_power(exc, val)
                if not stripped.is_constant():
                    new_curves[label] = stripped
                mults.setdefault(f"curve:{label}", val)
                if mults[f"curve:{label}"] != val:
                    raise ConsistencyError(f"curve {label}: valuation differs between charts")
            new_curves[len(self.records)] = (
                Polynomial.variable(_UV, exc)
            )
            self.curve_eqs[chart.id] = new_curves

            for name, store in (("psi", self.psi_triples), ("psi_prime", self.psi_prime_triples)):
                lifted = tuple(pull(g) for g in store[chart_id])
                val = min(g.valuation_in(exc) for g in lifted if g) if any(lifted) else 0
                store[chart.id] = tuple(
                    g.divide_by_variable_power(exc, val) if g else g for g in lifted
                )
                mults.setdefault(name, val)
                if mults[name] != val:
                    raise ConsistencyError(f"{name}: valuation differs between charts")

            line_vals = []
            new_lines = []
            for line in self.line_eqs[chart_id]:
                lifted = pull(line)
                val = lifted.valuation_in(exc)
                line_vals.append(val)
                new_lines.append(lifted.divide_by_variable_power(exc, val))
            self.line_eqs[chart.id] = tuple(new_lines)
            mults.setdefault("line0", line_vals[0])
            mults.setdefault("line1", line_vals[1])

        if mults["line0"] != mults["line1"]:
            raise GenericityFailureError(
                "the two random test lines have different multiplicities at a center; "
                "re-run with a different seed"
            )

        record = ExceptionalRecord(
            index=len(self.records),
            family=family,
            center_chart=chart_id,
            center=center,
            on_line_at_infinity=on_h,
            proximate_to=[k for k in prox if isinstance(k, int)],
            mult_psi=mults["psi"],
            mult_psi_prime=mults["psi_prime"],
            mult_pi=mults["line0"],
            chart_a=chart_a.id,
            chart_b=chart_b.id,
        )
        self.records.append(record)
        return record

    def search_on_new_curve(self, which: str, record: ExceptionalRecord) -> TowerPoint | None:
        """Unique base point of one lifted map on the just-created exceptional
        curve, or None when the map became a morphism.

        The curve is covered by chart A (all directions but one) and the
        origin of chart B; candidates found in the overlap are canonical in
        chart A, so no deduplication is needed.
        """
        store = self.psi_triples if which == "psi" else self.psi_prime_triples
        candidates: list[TowerPoint] = []

        triple_a = store[record.chart_a]
        restricted = [g.substitute_one("u", 0) for g in triple_a]
        unis = [uni_from_poly(r, "v") for r in restricted]
        if all(not un for un in unis):
            raise ExactnessViolationError(
                "cleaned map vanishes on the whole exceptional curve; division was not maximal"
            )
        g: list[Fraction] = []
        for un in unis:
            if un:
                g = list(un) if not g else uni_gcd(g, un)
        if uni_degree(g) >= 1:
            roots, leftover = uni_rational_roots(g)
            for r in roots:
                candidates.append(TowerPoint(record.chart_a, (Fraction(0), r)))
            if uni_degree(leftover) >= 1:
                raise NonRationalIndeterminacyError(
                    "base point with irrational coordinate on the exceptional curve",
                    min_poly_coeffs=leftover,
                )
        triple_b = store[record.chart_b]
        if all(t.evaluate((Fraction(0), Fraction(0))) == 0 for t in triple_b):
            candidates.append(TowerPoint(record.chart_b, (Fraction(0), Fraction(0))))

        if not candidates:
            return None
        if len(candidates) > 1:
            raise UniquenessViolatedError(
                "several base points on one exceptional curve", candidates
            )
        return candidates[0]

    # -- post-construction checks -------------------------------------------

    def truncation_keeps_base_point(self, family: str) -> bool:
        """True iff removing the family's last blow-up leaves a non-morphism.

        The state stored in the last center's chart predates that blow-up, so
        evaluating it at the center re-checks the truncated tower directly.
        """
        recs = self.family_records(family)
        if not recs:
            return False
        last = recs[-1]
        store = self.psi_triples if family == "E" else self.psi_prime_triples
        triple = store[last.center_chart]
        return all(g.evaluate(last.center) == 0 for g in triple)

    def chart_lineage(self, chart_id: int) -> list[int]:
        path = [chart_id]
        while self.charts[path[-1]].parent is not None:
            path.append(self.charts[path[-1]].parent)
        return list(reversed(path))

    # -- serialization -------------------------------------------------------

    def to_report(self) -> dict:
        def fr(x) -> str:
            return str(Fraction(x))

        return {
            "degree_forward": self.deg_psi,
            "degree_inverse": self.deg_psi_prime,
            "regular": self.regular,
            "i0": self.i0,
            "n": self.n,
            "m": self.m,
            "families_swapped": self.swapped,
            "records": [
                {
                    "label": r.label,
                    "family": r.family,
                    "center": {
                        "chart": r.center_chart,
                        "u": fr(r.center[0]),
                        "v": fr(r.center[1]),
                    },
                    "parent_label": r.parent_label,
                    "on_line_at_infinity": r.on_line_at_infinity,
                    "proximate_to": [self.records[k].label for k in r.proximate_to],
                    "mult_psi": r.mult_psi,
                    "mult_psi_prime": r.mult_psi_prime,
                    "mult_pi": r.mult_pi,
                    "charts": [r.chart_a, r.chart_b],
                }
                for r in self.records
            ],
            "charts": [
                {
                    "id": c.id,
                    "parent": c.parent,
                    "transition": [str(t) for t in c.transition] if c.transition else None,
                    "exceptional_coordinate": c.exc_coord,
                    "root_axis": c.root_axis,
                }
                for c in sorted(self.charts.values(), key=lambda c: c.id)
            ],
        }


def _root_tower_point(z: InfinityPoint) -> TowerPoint:
    if z.u != 0:
        # [1 : t : 0] sits in the chart X != 0 at (Y/X, Z/X) = (t, 0).
        return TowerPoint(0, (z.v, Fraction(0)))
    # [0 : 1 : 0] sits in the chart Y != 0 at the origin.
    return TowerPoint(1, (Fraction(0), Fraction(0)))


def _random_lines(seed) -> tuple[Polynomial, Polynomial]:
    rng = random.Random(f"birat-lines:{seed}")
    lines = []
    while len(lines) < 2:
        coeffs = [Fraction(rng.randint(-999, 999)) for _ in range(3)]
        if all(c == 0 for c in coeffs):
            continue
        line = Polynomial(
            ("X", "Y", "Z"),
            {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]},
        )
        if lines and lines[0] == line:
            continue
        lines.append(line)
    return tuple(lines)


def canonical_resolution(
    phi: AffineAutomorphism,
    seed=0,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> ResolutionTower:
    """Build the minimal tower making both lifted maps morphisms.

    Shared base points are blown up once and counted into the shared prefix;
    afterwards the two chains grow independently.  Families are labeled so
    that the E-chain is never longer than the F-chain (swapping the roles of
    the map and its inverse if necessary).
    """
    if phi.degree_fwd < 2:
        raise DegreeTooSmallError("resolution needs an automorphism of degree >= 2")

    tower = ResolutionTower(phi)
    tower.init_roots(
        projective_lift(phi.forward), projective_lift(phi.inverse), _random_lines(seed)
    )

    z_fwd = indeterminacy_of(phi, "forward")
    z_inv = indeterminacy_of(phi, "inverse")
    fwd_pending: TowerPoint | None = _root_tower_point(z_fwd)
    inv_pending: TowerPoint | None = _root_tower_point(z_inv)
    shared = z_fwd == z_inv

    while fwd_pending is not None or inv_pending is not None:
        if len(tower.records) >= step_budget:
            raise StepBudgetExceededError(
                f"resolution exceeded {step_budget} blow-ups; raise the step budget"
            )
        if shared:
            record = tower.blow_up_at(fwd_pending.chart, fwd_pending.coords, "shared")
            tower.i0 += 1
            fwd_pending = tower.search_on_new_curve("psi", record)
            inv_pending = tower.search_on_new_curve("psi_prime", record)
            if fwd_pending is None or inv_pending is None or fwd_pending != inv_pending:
                shared = False
        else:
            if fwd_pending is not None:
                record = tower.blow_up_at(fwd_pending.chart, fwd_pending.coords, "forward")
                fwd_pending = tower.search_on_new_curve("psi", record)
            if inv_pending is not None:
                record = tower.blow_up_at(inv_pending.chart, inv_pending.coords, "inverse")
                inv_pending = tower.search_on_new_curve("psi_prime", record)

    _finalize(tower)
    return tower


def _finalize(tower: ResolutionTower):
    if tower.n > tower.m:
        _swap_families(tower)
    _assign_labels(tower)
    _consistency_checks(tower)


def _swap_families(tower: ResolutionTower):
    tower.swapped = True
    for r in tower.records:
        if r.family == "forward":
            r.family = "inverse"
        elif r.family == "inverse":
            r.family = "forward"
        r.mult_psi, r.mult_psi_prime = r.mult_psi_prime, r.mult_psi
    tower.psi_triples, tower.psi_prime_triples = (
        tower.psi_prime_triples,
        tower.psi_triples,
    )
    tower.deg_psi, tower.deg_psi_prime = tower.deg_psi_prime, tower.deg_psi


def _assign_labels(tower: ResolutionTower):
    for pos, rec in enumerate(tower.family_records("E")):
        rec.label = f"E{pos + 1}"
    for pos, rec in enumerate(tower.family_records("F")):
        if rec.family == "inverse":
            rec.label = f"F{pos + 1}"
    for rec in tower.records:
        if rec.proximate_to:
            rec.parent_label = tower.records[max(rec.proximate_to)].label
        else:
            rec.parent_label = None


def _consistency_checks(tower: ResolutionTower):
    for rec in tower.records:
        if rec.family in ("shared", "forward") and rec.mult_psi < 1:
            raise ConsistencyError(f"{rec.label}: forward multiplicity vanished at its own center")
        if rec.family in ("shared", "inverse") and rec.mult_psi_prime < 1:
            raise ConsistencyError(f"{rec.label}: inverse multiplicity vanished at its own center")
        if rec.family == "forward" and rec.mult_psi_prime != 0:
            raise ConsistencyError(f"{rec.label}: inverse map had a base point off its own chain")
        if rec.family == "inverse" and rec.mult_psi != 0:
            raise ConsistencyError(f"{rec.label}: forward map had a base point off its own chain")
    for family in ("E", "F"):
        recs = tower.family_records(family)
        for prev, cur in zip(recs, recs[1:]):
            if prev.index not in cur.proximate_to:
                raise ConsistencyError(
                    f"chain broken: center of {cur.label} is not on the curve of {prev.label}"
                )
    if tower.records and not tower.records[0].on_line_at_infinity:
        raise ConsistencyError("the first center must lie on the line at infinity")


def lift_into_chart(
    tower: ResolutionTower, lift: ProjectiveMapLift, chart_id: int
) -> tuple[Triple, int]:
    """Recompute one lifted map's cleaned triple in a chart from scratch.

    Walks the chart lineage from its root, substituting each transition and
    dividing by the maximal common power of the exceptional coordinate at
    every level.  Returns the cleaned triple and the power divided at the
    final level.  Independent of the state the tower stored while building,
    so it doubles as a cross-check of the engine.
    """
    path = tower.chart_lineage(chart_id)
    root = tower.charts[path[0]]
    if root.root_axis is None:
        raise ValueError("lineage did not end at a root chart")
    one_var = ("X", "Y", "Z")[root.root_axis]
    triple = tuple(_uv(g.substitute_one(one_var, 1)) for g in lift.components)
    last_power = 0
    for cid in path[1:]:
        chart = tower.charts[cid]
        lifted = tuple(g.compose(*chart.transition) for g in triple)
        power = min(g.valuation_in(chart.exc_coord) for g in lifted if g) if any(lifted) else 0
        triple = tuple(
            g.divide_by_variable_power(chart.exc_coord, power) if g else g for g in lifted
        )
        last_power = power
    return triple, last_power
