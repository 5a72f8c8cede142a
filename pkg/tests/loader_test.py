import pytest

from algebra.field import galois_field
from fixtures.loader import FixtureError, corpus_files, load_fixture, load_text

HEADER = "field F(2);\nring R = F[x];\nring S = F[x, y] / (y^2 - x^3);\n"


def load(body):
    return load_text(HEADER + body, "test")


def test_load_objects():
    """Fields, rings, ideals, maps and checks end up keyed by name."""
    fixture = load("ideal q = (x^2) in R;\nmap f : R -> S sends x -> x flat monic;\n"
                   "check lech f;\ncheck hk_sandwich S emax 1;\n")
    assert fixture.fields["F"] is galois_field(2)
    assert fixture.rings["S"].quotient.variables == ("x", "y")
    assert fixture.ideals["q"][0] == "R"
    assert fixture.maps["f"].local_map.flat_tag == "by-construction"
    assert fixture.maps["f"].pattern == "monic"
    assert fixture.check_ids() == ["00-lech-f", "01-hk_sandwich-S"]


def test_relations_read_mod_p():
    """Integer coefficients are reduced modulo the characteristic."""
    fixture = load_text("field F(3);\nring R = F[x, y] / (y^2 - 4*x^3);\n")
    quotient = fixture.rings["R"].quotient
    x, y = quotient.ring.gens()
    assert y ** 2 - x ** 3 in quotient.defining
    assert fixture.rings["R"].relations == [{(0, 2): 1, (3, 0): -4}]


@pytest.mark.parametrize("body, message", [
    ("ideal I = (z) in R;", "unknown variable 'z'"),
    ("ring T = G[x];", "unknown field 'G'"),
    ("ideal I = (x) in T;", "unknown ring 'T'"),
    ("ring T = F[x] / (x - 1);", "ring T"),
    ("map f : R -> S sends x -> x + 1;", "map f"),
    ("map f : S -> R sends x -> x;", "must send exactly x, y"),
    ("map f : R -> S sends x -> x, x -> y;", "sends a variable twice"),
    ("ring R = F[y];", "ring 'R' declared twice"),
    ("map f : R -> S sends x -> x flat monic;\ncheck frobnicate f;", "unknown check kind 'frobnicate'"),
    ("check lech S;", "needs a map"),
    ("map f : R -> S sends x -> x flat monic;\ncheck hk_sandwich f;", "needs a ring"),
    ("map f : R -> S sends x -> x flat monic;\ncheck mod_p f;", "needs a primes clause"),
])
def test_invalid_fixtures(body, message):
    """Semantic errors name the problem and the statement position."""
    with pytest.raises(FixtureError) as info:
        load(body)
    assert message in str(info.value)
    assert info.value.pos is not None


def test_ideal_lookup():
    """`m` is the maximal ideal; declared ideals must belong to the asked ring."""
    fixture = load("ideal q = (x^2) in R;\n")
    assert fixture.ideal("m", "S") == fixture.rings["S"].quotient.maximal_ideal()
    assert len(fixture.ideal("q", "R")) == 1
    with pytest.raises(FixtureError):
        fixture.ideal("q", "S")
    with pytest.raises(FixtureError):
        fixture.ideal("nothing", "R")


def test_unclaimed_maps_are_probed():
    """Without a flat clause the probe decides between probed and unknown."""
    free = load("map f : R -> S sends x -> x;\n")
    assert free.maps["f"].local_map.flat_tag == "probed"
    nonflat = load_text(
        "field F(3);\nring R = F[x, y];\nring S = F[x, y, z] / (z^2, x*z, y*z);\n"
        "map g : R -> S sends x -> x, y -> y;\n"
    )
    assert nonflat.maps["g"].local_map.flat_tag == "unknown"


def test_load_fixture_uses_stem(tmp_path):
    """The fixture id is the file name without its suffix."""
    path = tmp_path / "tiny.lk"
    path.write_text(HEADER, encoding="utf-8")
    assert load_fixture(str(path)).fixture_id == "tiny"


def test_corpus_is_bundled():
    """The corpus ships with the package and every file loads."""
    files = corpus_files()
    assert len(files) >= 10
    for path in files:
        assert load_fixture(str(path)).checks
