import pytest

from birat import (
    AffineAutomorphism,
    Polynomial,
    automorphism_from_text,
    build_lattice,
    canonical_resolution,
    henon_builder,
    parse_poly,
    pullback_classes,
    transposed_henon_builder,
)

XY = ("x", "y")


def quadratic_henon(a=1, b=1) -> AffineAutomorphism:
    q = parse_poly("y^2", XY) + Polynomial.constant(XY, b)
    return henon_builder(q, a)


@pytest.fixture(scope="session")
def henon():
    return quadratic_henon()


@pytest.fixture(scope="session")
def cubic():
    return transposed_henon_builder(3, 1)


@pytest.fixture(scope="session")
def quartic():
    return transposed_henon_builder(4, 1)


@pytest.fixture(scope="session")
def elementary():
    return automorphism_from_text("x; y + x^2; x; y - x^2")


@pytest.fixture(scope="session")
def corpus(henon, cubic, quartic, elementary):
    return {"henon": henon, "cubic": cubic, "quartic": quartic, "elementary": elementary}


@pytest.fixture(scope="session")
def resolved(corpus):
    """(tower, lattice, invariants) per corpus map, resolved once."""
    out = {}
    for name, phi in corpus.items():
        tower = canonical_resolution(phi)
        lattice = build_lattice(tower)
        out[name] = (tower, lattice, pullback_classes(tower, lattice))
    return out
