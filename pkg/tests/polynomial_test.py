import pytest

from algebra.errors import StructuralError
from algebra.field import galois_field
from algebra.polynomial import GREVLEX, LEX, PolyRing, block_order


@pytest.fixture
def ring():
    return PolyRing(galois_field(3), ("x", "y"))


def test_freshman_dream(ring):
    """(x + y)^3 = x^3 + y^3 in characteristic 3."""
    x, y = ring.gens()
    assert (x + y) ** 3 == x ** 3 + y ** 3


def test_frobenius_matches_power(ring):
    """Termwise Frobenius agrees with the ordinary power at q = 9."""
    x, y = ring.gens()
    f = 2 * x ** 2 + x * y + 1
    assert f.frobenius(9) == f ** 9


def test_int_coercion(ring):
    """Integers enter as constants of the prime subfield."""
    x, _ = ring.gens()
    assert x - x == 0
    assert (x + 4) - 1 == x
    assert (3 * x).is_zero()


def test_duplicate_variables():
    """A ring cannot name a variable twice."""
    with pytest.raises(StructuralError):
        PolyRing(galois_field(2), ("x", "x"))


def test_mixing_rings(ring):
    """Polynomials of different rings do not combine."""
    other = PolyRing(galois_field(3), ("x", "z"))
    with pytest.raises(StructuralError):
        ring.var("x") + other.var("x")


def test_unknown_variable(ring):
    """Asking for a missing variable is a structural error."""
    with pytest.raises(StructuralError):
        ring.var("w")


def test_substitute(ring):
    """x -> t^2, y -> t^3 sends y^2 - x^3 to zero."""
    x, y = ring.gens()
    line = PolyRing(galois_field(3), ("t",))
    t = line.var("t")
    assert (y ** 2 - x ** 3).substitute([t ** 2, t ** 3], line).is_zero()
    assert (x * y).substitute([t, t + 1], line) == t ** 2 + t


def test_rename_into(ring):
    """Renaming moves a polynomial by variable name and refuses missing names."""
    x, y = ring.gens()
    bigger = PolyRing(galois_field(3), ("y", "z", "x"))
    moved = (x * y ** 2).rename_into(bigger)
    assert moved == bigger.var("x") * bigger.var("y") ** 2
    smaller = PolyRing(galois_field(3), ("x",))
    with pytest.raises(StructuralError):
        y.rename_into(smaller)


def test_fresh_names(ring):
    """Fresh names avoid the ring's variables and each other."""
    assert ring.fresh_names(["x", "z", "x"]) == ["x1", "z", "x2"]
    assert ring.fresh_names(["u"], avoid=("u",)) == ["u1"]


def test_orders(ring):
    """grevlex ranks by degree first; lex ranks x before everything else."""
    x, y = ring.gens()
    f = x + y ** 2
    assert f.leading_monomial(GREVLEX) == (0, 2)
    assert f.leading_monomial(LEX) == (1, 0)
    assert f.leading_monomial(block_order(1)) == (1, 0)


def test_to_string(ring):
    """Terms print in decreasing grevlex order with explicit coefficients."""
    x, y = ring.gens()
    assert str(2 * x ** 2 * y - y + 1) == "2*x^2*y + 2*y + 1"
    assert str(ring.zero()) == "0"


def test_degree_and_parts(ring):
    """Degree, constant term and linear part read off the terms."""
    x, y = ring.gens()
    f = x ** 3 + x + 2 * y + 1
    assert f.degree() == 3
    assert f.constant_term() == 1
    assert f.linear_part() == x + 2 * y
    assert ring.zero().degree() == -1
