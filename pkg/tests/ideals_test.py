import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from algebra.errors import InfiniteLengthError, NotLocalError, StructuralError
from algebra.field import galois_field
from algebra.groebner import INFINITE
from algebra.polynomial import PolyRing, Polynomial
from ideals.calculus import (
    POWER_ZERO_NOTE,
    colon,
    eliminate,
    exact_quotient,
    frobenius_power,
    ideal_power,
    intersection,
    is_power_of,
    kernel_of_map,
    saturation,
)
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing, edim, length, local_length, min_gens
from fixtures.loader import corpus_files, load_fixture


@pytest.fixture
def plane():
    return PolyRing(galois_field(3), ("x", "y"))


@pytest.fixture
def cusp():
    ring = PolyRing(galois_field(2), ("x", "y"))
    x, y = ring.gens()
    return QuotientRing.of(ring, [y ** 2 - x ** 3])


# --- Ideal calculus ---

def test_ideal_power_zero_is_unit(plane):
    """I^0 is the unit ideal and says so."""
    power = ideal_power(Ideal.maximal(plane), 0)
    assert power.is_unit()
    assert power.note == POWER_ZERO_NOTE


def test_ideal_power_square(plane):
    """(x, y)^2 = (x^2, xy, y^2)."""
    x, y = plane.gens()
    assert ideal_power(Ideal.maximal(plane), 2) == Ideal(plane, [x ** 2, x * y, y ** 2])


def test_negative_power(plane):
    """Negative exponents are rejected."""
    with pytest.raises(ValueError):
        ideal_power(Ideal.maximal(plane), -1)


def test_frobenius_power(plane):
    """(x + y, xy)^[3] = (x^3 + y^3, x^3 y^3)."""
    x, y = plane.gens()
    powered = frobenius_power(Ideal(plane, [x + y, x * y]), 3)
    assert powered == Ideal(plane, [x ** 3 + y ** 3, x ** 3 * y ** 3])


def test_frobenius_power_needs_power_of_p(plane):
    """q must be a power of the characteristic."""
    assert is_power_of(27, 3)
    assert not is_power_of(6, 3)
    with pytest.raises(ValueError):
        frobenius_power(Ideal.maximal(plane), 4)


monomial = st.tuples(st.integers(0, 2), st.integers(0, 2))
small_poly = st.dictionaries(monomial, st.integers(1, 2), min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=2), small_poly)
def test_frobenius_power_ignores_generating_set(raw, multiplier):
    """Adding a multiple of a generator changes neither I nor I^[q]."""
    ring = PolyRing(galois_field(3), ("x", "y"))
    gens = [Polynomial(ring, terms) for terms in raw]
    padded = gens + [gens[0] * Polynomial(ring, multiplier)]
    assert frobenius_power(Ideal(ring, padded), 3) == frobenius_power(Ideal(ring, gens), 3)


@settings(max_examples=15, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=2))
def test_frobenius_powers_compose(raw):
    """(I^[3])^[3] = I^[9], and I^[3] sits inside I^3."""
    ring = PolyRing(galois_field(3), ("x", "y"))
    ideal = Ideal(ring, [Polynomial(ring, terms) for terms in raw])
    once = frobenius_power(ideal, 3)
    assert frobenius_power(once, 3) == frobenius_power(ideal, 9)
    assert once.issubset(ideal_power(ideal, 3))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_colength_adds_over_comaximal_ideals(a, b, c):
    """I + J = (1) gives colength(I ∩ J) = colength(I) + colength(J)."""
    ring = PolyRing(galois_field(3), ("x", "y"))
    x, y = ring.gens()
    near = Ideal(ring, [x ** a, y ** b])
    far = Ideal(ring, [(x - 1) ** c, y])
    assert (near + far).is_unit()
    assert intersection(near, far).colength() == near.colength() + far.colength() == a * b + c


def test_intersection(plane):
    """(x) ∩ (y) = (xy)."""
    x, y = plane.gens()
    assert intersection(Ideal(plane, [x]), Ideal(plane, [y])) == Ideal(plane, [x * y])


def test_colon(plane):
    """(x^2, xy) : (x) = (x, y)."""
    x, y = plane.gens()
    assert colon(Ideal(plane, [x ** 2, x * y]), Ideal(plane, [x])) == Ideal.maximal(plane)


def test_saturation_by_the_element(plane):
    """Saturating (x^2, xy) by x itself leaves the unit ideal."""
    x, y = plane.gens()
    assert saturation(Ideal(plane, [x ** 2, x * y]), Ideal(plane, [x]), verify=True).is_unit()


def test_saturation_removes_embedded_point(plane):
    """(x^2, xy) : m^∞ = (x): the embedded component at the origin goes away."""
    x, y = plane.gens()
    assert saturation(Ideal(plane, [x ** 2, x * y]), Ideal.maximal(plane)) == Ideal(plane, [x])


def test_saturation_mismatched_rings(plane):
    """Ideals of different rings cannot be saturated against each other."""
    other = PolyRing(galois_field(3), ("x",))
    with pytest.raises(StructuralError):
        saturation(Ideal.maximal(plane), Ideal.maximal(other))


def test_eliminate(plane):
    """Eliminating y from (x - y^2, y^3) leaves (x^2)."""
    x, y = plane.gens()
    kept = eliminate(Ideal(plane, [x - y ** 2, y ** 3]), ["y"])
    assert kept == Ideal(plane, [x ** 2])


def test_exact_quotient(plane):
    """Exact division undoes a product and refuses non-multiples."""
    x, y = plane.gens()
    assert exact_quotient((x + y) * (x - y), x - y) == x + y
    with pytest.raises(ValueError):
        exact_quotient(x + 1, y)


def test_kernel_of_parametrization():
    """x -> t^2, y -> t^3 has kernel (y^2 - x^3)."""
    field = galois_field(2)
    line = QuotientRing.of(PolyRing(field, ("t",)))
    t = line.ring.var("t")
    kernel = kernel_of_map(["x", "y"], line, [t ** 2, t ** 3])
    x, y = kernel.ring.gens()
    assert kernel == Ideal(kernel.ring, [y ** 2 - x ** 3])


def test_kernel_rejects_non_local_image():
    """Images must vanish at the origin."""
    line = QuotientRing.of(PolyRing(galois_field(2), ("t",)))
    t = line.ring.var("t")
    with pytest.raises(NotLocalError):
        kernel_of_map(["x"], line, [t + 1])


# --- Quotient rings and lengths ---

def test_relations_must_vanish_at_origin(plane):
    """A relation with a constant term is not a local presentation."""
    x, _ = plane.gens()
    with pytest.raises(NotLocalError):
        QuotientRing.of(plane, [x + 1])


def test_local_length_removes_far_points():
    """x^2 (x - 1) has colength 3 but local length 2 at the origin."""
    ring = PolyRing(galois_field(3), ("x",))
    x = ring.var("x")
    report = local_length(QuotientRing.of(ring), Ideal(ring, [x ** 2 * (x - 1)]))
    assert report.global_colength == 3
    assert report.away_colength == 1
    assert report.local_length == 2
    assert report.is_finite


def test_local_length_infinite(plane):
    """A positive-dimensional quotient has infinite length; length() raises."""
    x, _ = plane.gens()
    quotient = QuotientRing.of(plane)
    assert local_length(quotient, Ideal(plane, [x])).local_length is INFINITE
    with pytest.raises(InfiniteLengthError):
        length(quotient, Ideal(plane, [x]))


def test_cusp_invariants(cusp):
    """The cusp is one-dimensional, embedded in the plane and singular."""
    assert cusp.dim == 1
    assert cusp.edim == 2
    assert edim(cusp) == 2
    assert not cusp.is_regular
    x, _ = cusp.ring.gens()
    assert length(cusp, Ideal(cusp.ring, [x])) == 2


def test_min_gens(cusp):
    """m needs two generators, (x, x^2) only one."""
    x, y = cusp.ring.gens()
    assert min_gens(cusp, cusp.maximal_ideal()) == 2
    assert min_gens(cusp, Ideal(cusp.ring, [x, x ** 2])) == 1


def test_regular_plane(plane):
    """F[x, y] is regular of dimension 2."""
    quotient = QuotientRing.of(plane)
    assert quotient.dim == 2
    assert quotient.is_regular


def test_with_field(cusp):
    """Reading a presentation over F_4 keeps its relations."""
    extended = cusp.with_field(galois_field(2, 2))
    assert extended.field.order == 4
    assert extended.dim == 1
    assert len(extended.defining.gens) == 1


def linear_rank(quotient):
    """Rank of the linear parts of the relations, computed by sympy over F_p."""
    ring = quotient.ring
    rows = []
    for g in quotient.defining.gens:
        linear = g.linear_part().terms
        rows.append([linear.get(tuple(int(i == j) for j in range(ring.nvars)), 0) for i in range(ring.nvars)])
    if not rows:
        return 0
    domain = GF(ring.field.p)
    matrix = DomainMatrix([[domain(v) for v in row] for row in rows], (len(rows), ring.nvars), domain)
    return matrix.rank()


CORPUS_RINGS = [
    (str(path), name)
    for path in corpus_files()
    for name in load_fixture(str(path)).rings
]


@pytest.mark.parametrize("path, name", CORPUS_RINGS, ids=[f"{p.rsplit('/', 1)[-1]}:{n}" for p, n in CORPUS_RINGS])
def test_corpus_embedding_dimension(path, name):
    """m needs edim generators in every bundled ring."""
    quotient = load_fixture(path).rings[name].quotient
    assert min_gens(quotient, quotient.maximal_ideal()) == edim(quotient)
    if quotient.field.k == 1:
        assert edim(quotient) == quotient.nvars - linear_rank(quotient)
