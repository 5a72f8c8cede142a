"""
Turns a parsed fixture document into rings, ideals, maps and check requests.

Expressions are evaluated over the integers first; the resulting integer
presentation is then read modulo the field's characteristic. Maps without a
`flat` clause go through the freeness probe at load time.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from algebra.errors import AlgebraError, ResourceCapError
from algebra.field import galois_field
from algebra.polynomial import PolyRing
from extensions.local_map import freeness_probe, make_local_map
from extensions.specialize import IntegerPresentation
from fixtures.nodes import BinOp, CheckDecl, FieldDecl, IdealDecl, MapDecl, Neg, Num, Pow, RingDecl, Var
from fixtures.parser import parse_fixture
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing
from multiplicity.reduction import ReductionSearchError
from utils import activity

MAP_CHECKS = frozenset({
    "lech", "edim", "hk_chain", "generator_growth", "interchange", "chi1_vanishing",
    "embdim_bounds", "ci_fiber", "cohen_structure", "flatness", "mod_p",
})
RING_CHECKS = frozenset({"hk_sandwich", "adjoined_variable", "sop_estimate", "scalar_extension", "chi1"})
CHECK_KINDS = MAP_CHECKS | RING_CHECKS

MAXIMAL_IDEAL = "m"


class FixtureError(AlgebraError, ValueError):
    """A fixture parses but does not describe valid objects."""

    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(f"{pos}: {message}" if pos else message)


# --- integer polynomial evaluation ---

def _add(a, b, sign=1):
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + sign * c
        if not out[m]:
            del out[m]
    return out


def _mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
            if not out[m]:
                del out[m]
    return out


def integer_terms(node, variables):
    """Evaluate an expression to {exponent tuple: int} over the given variables."""
    n = len(variables)
    if isinstance(node, Num):
        return {(0,) * n: node.value} if node.value else {}
    if isinstance(node, Var):
        if node.name not in variables:
            raise FixtureError(f"unknown variable {node.name!r}; ring has {', '.join(variables)}", node.pos)
        m = [0] * n
        m[variables.index(node.name)] = 1
        return {tuple(m): 1}
    if isinstance(node, Neg):
        return {m: -c for m, c in integer_terms(node.operand, variables).items()}
    if isinstance(node, Pow):
        base = integer_terms(node.base, variables)
        out = {(0,) * n: 1}
        for _ in range(node.exponent):
            out = _mul(out, base)
        return out
    if isinstance(node, BinOp):
        left = integer_terms(node.left, variables)
        right = integer_terms(node.right, variables)
        if node.op == "*":
            return _mul(left, right)
        return _add(left, right, 1 if node.op == "+" else -1)
    raise TypeError(f"not an expression node: {node!r}")


# --- loaded objects ---

@dataclass
class LoadedRing:
    name: str
    quotient: QuotientRing
    relations: list


@dataclass
class LoadedMap:
    name: str
    local_map: object
    presentation: IntegerPresentation
    pattern: str = ""


@dataclass
class Fixture:
    """
    Everything declared in one fixture file, keyed by name. `checks` keeps
    the file order; check ids are "NN-kind-target".
    """
    fixture_id: str
    fields: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def check_ids(self):
        return [check_id(i, c) for i, c in enumerate(self.checks)]

    def ideal(self, name, ring_name, pos=None):
        """A declared ideal of `ring_name`, or the maximal ideal for `m`."""
        if name in self.ideals:
            ring, ideal = self.ideals[name]
            if ring != ring_name:
                raise FixtureError(f"ideal {name!r} lives in {ring}, expected {ring_name}", pos)
            return ideal
        if name == MAXIMAL_IDEAL:
            return self.rings[ring_name].quotient.maximal_ideal()
        raise FixtureError(f"unknown ideal {name!r}", pos)

    def polynomials(self, exprs, ring_name):
        quotient = self.rings[ring_name].quotient
        return [quotient.ring.from_integer_terms(integer_terms(e, quotient.variables)) for e in exprs]


def check_id(index, check):
    return f"{index:02d}-{check.kind}-{check.target}"


def _declare(table, name, pos, what):
    if name in table:
        raise FixtureError(f"{what} {name!r} declared twice", pos)


def _load_field(fixture, node):
    _declare(fixture.fields, node.name, node.pos, "field")
    try:
        fixture.fields[node.name] = galois_field(node.p, node.k)
    except AlgebraError as exc:
        raise FixtureError(str(exc), node.pos) from exc


def _load_ring(fixture, node):
    _declare(fixture.rings, node.name, node.pos, "ring")
    if node.field not in fixture.fields:
        raise FixtureError(f"unknown field {node.field!r}", node.pos)
    if len(set(node.variables)) != len(node.variables):
        raise FixtureError(f"repeated variable in {node.name}", node.pos)
    ring = PolyRing(fixture.fields[node.field], tuple(node.variables))
    relations = [integer_terms(e, ring.variables) for e in node.relations]
    try:
        quotient = QuotientRing.of(ring, [ring.from_integer_terms(r) for r in relations])
    except AlgebraError as exc:
        raise FixtureError(f"ring {node.name}: {exc}", node.pos) from exc
    fixture.rings[node.name] = LoadedRing(node.name, quotient, relations)


def _load_ideal(fixture, node):
    _declare(fixture.ideals, node.name, node.pos, "ideal")
    if node.ring not in fixture.rings:
        raise FixtureError(f"unknown ring {node.ring!r}", node.pos)
    ring = fixture.rings[node.ring].quotient.ring
    fixture.ideals[node.name] = (node.ring, Ideal(ring, fixture.polynomials(node.gens, node.ring)))


def _probe_tag(local_map):
    try:
        report = freeness_probe(local_map)
    except (ReductionSearchError, ResourceCapError) as exc:
        activity(f"[LOAD] probe could not run on {local_map}: {exc}")
        return "unknown"
    return "probed" if report.flat else "unknown"


def _load_map(fixture, node):
    _declare(fixture.maps, node.name, node.pos, "map")
    for ring_name in (node.source, node.target):
        if ring_name not in fixture.rings:
            raise FixtureError(f"unknown ring {ring_name!r}", node.pos)
    source, target = fixture.rings[node.source], fixture.rings[node.target]
    sends = dict(node.sends)
    if len(sends) != len(node.sends):
        raise FixtureError(f"map {node.name} sends a variable twice", node.pos)
    missing = [v for v in source.quotient.variables if v not in sends]
    extra = [v for v in sends if v not in source.quotient.variables]
    if missing or extra:
        raise FixtureError(f"map {node.name} must send exactly {', '.join(source.quotient.variables)}", node.pos)
    images = [integer_terms(sends[v], target.quotient.variables) for v in source.quotient.variables]
    presentation = IntegerPresentation.build(
        source.quotient.variables, source.relations, target.quotient.variables, target.relations, images,
    )
    ring = target.quotient.ring
    try:
        local_map = make_local_map(source.quotient, target.quotient, [ring.from_integer_terms(i) for i in images])
    except AlgebraError as exc:
        raise FixtureError(f"map {node.name}: {exc}", node.pos) from exc
    if node.flat:
        local_map = local_map.with_flat_tag("by-construction", node.flat)
    else:
        local_map = local_map.with_flat_tag(_probe_tag(local_map))
    fixture.maps[node.name] = LoadedMap(node.name, local_map, presentation, node.flat or "")


def _load_check(fixture, node):
    if node.kind not in CHECK_KINDS:
        raise FixtureError(f"unknown check kind {node.kind!r}", node.pos)
    table = fixture.maps if node.kind in MAP_CHECKS else fixture.rings
    what = "map" if node.kind in MAP_CHECKS else "ring"
    if node.target not in table:
        raise FixtureError(f"check {node.kind} needs a {what}; {node.target!r} is not one", node.pos)
    if node.kind == "mod_p" and not node.primes:
        raise FixtureError("check mod_p needs a primes clause", node.pos)
    fixture.checks.append(node)


_LOADERS = {
    FieldDecl: _load_field,
    RingDecl: _load_ring,
    IdealDecl: _load_ideal,
    MapDecl: _load_map,
    CheckDecl: _load_check,
}


def load_document(document, fixture_id="fixture"):
    """
    Builds a Fixture from a parsed Document.

    Raises:
        FixtureError: unknown names, invalid rings or maps.
    """
    fixture = Fixture(fixture_id)
    for statement in document.statements:
        _LOADERS[type(statement)](fixture, statement)
    return fixture


def load_text(text, fixture_id="fixture"):
    return load_document(parse_fixture(text), fixture_id)


@lru_cache(maxsize=32)
def load_fixture(path):
    """Parses and loads a fixture file; the id is the file stem."""
    path = Path(path)
    return load_document(parse_fixture(path.read_bytes()), path.stem)


def corpus_dir():
    return Path(__file__).resolve().parent / "corpus"


def corpus_files():
    return sorted(corpus_dir().glob("*.lk"))
