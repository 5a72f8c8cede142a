from fractions import Fraction

import pytest

from algebra.errors import InfiniteLengthError, ResourceCapError
from extensions.cohen import cohen_factor
from fixtures.loader import load_text
from verify import checks
from verify.checks import (
    TOLERANCE,
    CheckPreconditionError,
    adjoin_variable,
    check_adjoined_variable_identity,
    check_chi1,
    check_chi1_vanishing,
    check_ci_fiber,
    check_cohen_structure,
    check_edim,
    check_embdim_bounds,
    check_flatness,
    check_generator_growth,
    check_hk_chain,
    check_hk_sandwich,
    check_interchange,
    check_lech,
    check_mod_p,
    check_scalar_extension,
    check_sop_estimate,
    interchange_table,
    lech_bound,
)
from verify.reports import KERNEL_BUG_LABEL

CUSP = """
field F(2);
ring R = F[x];
ring S = F[x, y] / (y^2 - x^3);
ring P = F[x, y, z] / (z^2 - x*y);
map f : R -> S sends x -> x flat monic;
"""

NONFLAT = """
field F(3);
ring R = F[x, y];
ring S = F[x, y, z] / (z^2, x*z, y*z);
ring B = F[x, y] / (x^2, x*y);
ring U = F[x, y];
ideal a = (x) in B;
map g : R -> S sends x -> x, y -> y;
map i : B -> B sends x -> x, y -> y flat identity;
"""

SPECIALIZE = """
field F(5);
ring R = F[x];
ring A = F[x, y] / (y^2 - x^3 - 4*x);
ring B = F[x, y] / (2*y - x);
map a : R -> A sends x -> x flat monic;
map b : R -> B sends x -> x flat monic;
"""


@pytest.fixture(scope="module")
def cusp():
    return load_text(CUSP, "cusp")


@pytest.fixture(scope="module")
def nonflat():
    return load_text(NONFLAT, "nonflat")


@pytest.fixture(scope="module")
def specialize():
    return load_text(SPECIALIZE, "specialize")


def variable(fixture, ring, name):
    quotient = fixture.rings[ring].quotient
    return quotient.ring.var(name)


# --- Constants ---

@pytest.mark.parametrize("d, expected", [
    (0, Fraction(1)), (1, Fraction(1)), (3, Fraction(1)), (4, Fraction(3, 2)), (5, Fraction(15, 4)),
])
def test_lech_bound(d, expected):
    """max(1, d!/2^d) stays at 1 up to dimension 3."""
    assert lech_bound(d) == expected


# --- Decorator behaviour ---

def test_cap_hit_is_inconclusive(cusp, mocker):
    """A resource cap inside a check yields an inconclusive report with the cap named."""
    mocker.patch.object(checks, "multiplicity",
                        side_effect=ResourceCapError("stuck", cap="T_CAP", partial={1: 1}))
    report = check_lech(cusp.maps["f"].local_map)
    assert report.verdict == "inconclusive"
    assert report.cap_hit == "T_CAP"
    assert report.tables == {"partial": {1: 1}}


def test_infinite_length_is_a_failure(cusp, mocker):
    """An infinite length where a finite one is needed fails the check."""
    mocker.patch.object(checks, "multiplicity", side_effect=InfiniteLengthError("oops"))
    report = check_lech(cusp.maps["f"].local_map)
    assert report.verdict == "fail"
    assert report.label == KERNEL_BUG_LABEL


def test_unknown_flatness_is_a_precondition_error(nonflat):
    """Lech needs flatness evidence; an unprobed map is refused."""
    with pytest.raises(CheckPreconditionError):
        check_lech(nonflat.maps["g"].local_map)
    with pytest.raises(CheckPreconditionError):
        check_hk_chain(nonflat.maps["g"].local_map)


# --- Map checks ---

def test_lech_on_cusp(cusp):
    """e(R) = 1 <= e(S) = 2."""
    report = check_lech(cusp.maps["f"].local_map)
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (1, 2)
    assert report.tables["ratio"] == Fraction(1, 2)
    assert report.assumptions == ("flat: by-construction",)


def test_edim(cusp, nonflat):
    """edim - dim grows along both maps."""
    assert check_edim(cusp.maps["f"].local_map).verdict == "pass"
    report = check_edim(nonflat.maps["g"].local_map)
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (0, 1)


def test_hk_chain(cusp):
    """Estimates 1 for the line and 2 for the cusp fit the chain."""
    report = check_hk_chain(cusp.maps["f"].local_map, e_max=2)
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (1, 2)
    assert report.tolerance == TOLERANCE


def test_generator_growth(cusp, nonflat):
    """nu(nM') >= nu(mM) + c nu(M) on both maps."""
    assert check_generator_growth(cusp.maps["f"].local_map).verdict == "pass"
    report = check_generator_growth(nonflat.maps["g"].local_map)
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (3, 3)


def test_generator_growth_on_ideal(cusp):
    """With M = R/(x^2): nu(n S/x^2 S) = 2 >= nu(m M) + c = 1 + 1."""
    x = variable(cusp, "R", "x")
    source = cusp.rings["R"].quotient
    report = check_generator_growth(cusp.maps["f"].local_map, source.ideal([x ** 2]))
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (2, 2)


def test_ci_fiber(cusp):
    """c = 1 and the fiber F[y]/(y^2) is a complete intersection."""
    report = check_ci_fiber(cusp.maps["f"].local_map)
    assert report.verdict == "pass"
    assert report.tables["c"] == 1


def test_embdim_bounds(cusp):
    """c = d = 1: e(R) <= e(S)/2 holds with equality."""
    local_map = cusp.maps["f"].local_map
    report = check_embdim_bounds(local_map, cohen_factor(local_map))
    assert report.verdict == "pass"
    assert report.tables["c_bound"] == Fraction(1, 2)
    assert report.rhs == 1


def test_cohen_structure(cusp):
    """J in n_T^2 and edim T = edim R + c."""
    report = check_cohen_structure(cohen_factor(cusp.maps["f"].local_map))
    assert report.verdict == "pass"
    assert report.tables["J_in_square"] is True
    assert report.lhs == report.rhs == 2


def test_flatness_agrees_with_tags(cusp, nonflat):
    """Tagged maps pass the probe; the non-flat map stays unknown and is rejected."""
    assert check_flatness(cusp.maps["f"].local_map).verdict == "pass"
    local_map = nonflat.maps["g"].local_map
    assert local_map.flat_tag == "unknown"
    report = check_flatness(local_map)
    assert report.verdict == "pass"
    assert report.lhs is False
    assert report.tables["failed_at"] == 2


def test_interchange_exact(cusp):
    """Regular T with J + (x) a parameter ideal: every sequence equals e(x, S) = 2."""
    fact = cohen_factor(cusp.maps["f"].local_map)
    x = variable(cusp, "S", "x")
    table = interchange_table(fact, [x], e_max=2)
    assert table.a == 2
    assert table.exact
    assert table.rows == {1: (2, 2, 2), 2: (2, 2, 2)}
    report = check_interchange(fact, [x], e_max=2)
    assert report.verdict == "pass"
    assert report.rhs == 2


def test_chi1_vanishing_exact(cusp):
    """In the exact case the normalized chi_1 gap is zero at every level."""
    fact = cohen_factor(cusp.maps["f"].local_map)
    x = variable(cusp, "S", "x")
    report = check_chi1_vanishing(fact, [x], e_max=2)
    assert report.verdict == "pass"
    assert report.lhs == 0


def test_interchange_embedded_point(nonflat):
    """On a non Cohen-Macaulay ring C_sum = (q + 1)/q closes on A = 1 from above; C_fiber stays at 2."""
    fact = cohen_factor(nonflat.maps["i"].local_map)
    y = variable(nonflat, "B", "y")
    table = interchange_table(fact, [y], e_max=3)
    assert table.a == 1
    assert not table.exact
    assert not table.regular
    assert {e: row[0] for e, row in table.rows.items()} == {1: 1, 2: 1, 3: 1}
    assert {e: row[1] for e, row in table.rows.items()} == {1: Fraction(4, 3), 2: Fraction(10, 9), 3: Fraction(28, 27)}
    assert {e: row[2] for e, row in table.rows.items()} == {1: 2, 2: 2, 3: 2}
    gaps = [row[1] - table.a for _, row in sorted(table.rows.items())]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    report = check_interchange(fact, [y], e_max=3)
    assert report.verdict == "pass"
    assert report.tables["regular_sequence"] is False
    assert "C_fiber recorded only" in report.note


def test_chi1_vanishing_embedded_point(nonflat):
    """The normalized chi_1 gap is 1/q: positive and shrinking."""
    fact = cohen_factor(nonflat.maps["i"].local_map)
    y = variable(nonflat, "B", "y")
    report = check_chi1_vanishing(fact, [y], e_max=3)
    assert report.verdict == "pass"
    assert report.lhs == Fraction(1, 27)
    values = [v for _, v in sorted(report.tables["chi1_normalized"].items())]
    assert values == [Fraction(1, 3), Fraction(1, 9), Fraction(1, 27)]


def test_interchange_cap(cusp, mocker):
    """A cap on the first level leaves no rows and an inconclusive verdict."""
    fact = cohen_factor(cusp.maps["f"].local_map)
    x = variable(cusp, "S", "x")
    mocker.patch.object(checks, "frobenius_twisted_multiplicity",
                        side_effect=ResourceCapError("deep", cap="DEGREE_CAP"))
    report = check_interchange(fact, [x], e_max=2)
    assert report.verdict == "inconclusive"
    assert "stopped at e = 1" in report.note


def test_mod_p(specialize):
    """Lech holds at every good prime; 2 is a cusp for A and bad for B."""
    loaded = specialize.maps["a"]
    report = check_mod_p(loaded.presentation, (2, 3, 5, 7), loaded.local_map.flat_tag, loaded.pattern)
    assert report.verdict == "pass"
    assert report.tables["primes"][2]["e_S"] == 2
    assert report.tables["primes"][5]["e_S"] == 1
    assert report.tables["stable"] is False

    loaded = specialize.maps["b"]
    report = check_mod_p(loaded.presentation, (2, 3), loaded.local_map.flat_tag)
    assert report.verdict == "pass"
    assert report.tables["primes"][2]["bad"] == "fiber-finiteness"


def test_mod_p_without_good_primes(specialize):
    """Only bad primes requested: the check fails."""
    loaded = specialize.maps["b"]
    report = check_mod_p(loaded.presentation, (2,), "by-construction")
    assert report.verdict == "fail"


def test_mod_p_needs_flatness(specialize):
    """An unknown flat tag is a precondition error."""
    with pytest.raises(CheckPreconditionError):
        check_mod_p(specialize.maps["a"].presentation, (3,), "unknown")


# --- Ring checks ---

def test_hk_sandwich_parameter_ideal(cusp):
    """On the Cohen-Macaulay cusp the estimates of (x) equal e((x)) = 2 exactly."""
    quotient = cusp.rings["S"].quotient
    x = variable(cusp, "S", "x")
    report = check_hk_sandwich(quotient, quotient.ideal([x]), e_max=2)
    assert report.verdict == "pass"
    assert report.tolerance == 0
    assert report.lhs == report.rhs == 2


def test_hk_sandwich_maximal_ideal(cusp):
    """The quadric cone sits between e/2 = 1 and e = 2."""
    quotient = cusp.rings["P"].quotient
    report = check_hk_sandwich(quotient, e_max=1)
    assert report.verdict == "pass"
    assert report.lhs == Fraction(3, 2)
    assert report.tables["lower"] == 1


def test_adjoin_variable(cusp):
    """Adjoining picks a fresh name and keeps the relations."""
    quotient = cusp.rings["S"].quotient
    bigger = adjoin_variable(quotient)
    assert bigger.variables == ("x", "y", "z")
    assert bigger.dim == 2
    assert adjoin_variable(bigger).variables == ("x", "y", "z", "z1")


def test_adjoined_variable_identity_line(cusp):
    """R = F[x], q = 2: l(T/((x, z)^2)^[2]) = 12 = 2*4 + 2*2."""
    quotient = cusp.rings["R"].quotient
    report = check_adjoined_variable_identity(quotient, 1, e_max=1)
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (12, 12)
    assert report.tables["e=1,square_estimate"]["T"] == 3


def test_adjoined_variable_trivial_and_invalid(cusp):
    """No adjunction passes trivially; a negative count is an error."""
    quotient = cusp.rings["R"].quotient
    assert check_adjoined_variable_identity(quotient, 0).verdict == "pass"
    with pytest.raises(ValueError):
        check_adjoined_variable_identity(quotient, -1)


def test_sop_estimate_buchsbaum(nonflat):
    """The non-Cohen-Macaulay ring F[x, y]/(x^2, xy) with y: 1 >= 2 + 0 - 1."""
    quotient = nonflat.rings["B"].quotient
    y = variable(nonflat, "B", "y")
    report = check_sop_estimate(quotient, [y])
    assert report.verdict == "pass"
    assert (report.lhs, report.rhs) == (1, 1)
    assert report.tables["chi1"] == 1


def test_sop_estimate_wrong_count(nonflat):
    """The parameter count must equal the dimension."""
    quotient = nonflat.rings["U"].quotient
    x = variable(nonflat, "U", "x")
    with pytest.raises(CheckPreconditionError):
        check_sop_estimate(quotient, [x])


def test_chi1_buchsbaum(nonflat):
    """chi_1 = 1 >= 0, and the ring is not Cohen-Macaulay."""
    quotient = nonflat.rings["B"].quotient
    y = variable(nonflat, "B", "y")
    report = check_chi1(quotient, [y])
    assert report.verdict == "pass"
    assert report.lhs == 1
    assert report.tables["cohen_macaulay"] is False


def test_chi1_with_reduction(cusp):
    """Without parameters a minimal reduction is used; the cusp is Cohen-Macaulay."""
    report = check_chi1(cusp.rings["S"].quotient, seed=3)
    assert report.verdict == "pass"
    assert report.lhs == 0


def test_scalar_extension(cusp):
    """Invariants of the cusp do not move over F_4."""
    report = check_scalar_extension(cusp.rings["S"].quotient, 2, e_max=1)
    assert report.verdict == "pass"
    assert report.tables["base"] == report.tables["extended"]
