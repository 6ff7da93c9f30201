"""Fixture files: an algebra given by structure constants plus ideal generators.

The on-disk format is UTF-8 JSON tagged ``"schema": "cover-fixture/1"``.
Field elements are strings (``"3"``, ``"-1/2"``; residues for GF(p)).
Structure constants are sparse ``[i, j, k, value]`` quadruples meaning
``e_i e_j = Σ value e_k``.  :func:`dumps` writes a canonical form, so a
canonical file survives ``save(load(f))`` byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Sequence

from .algebra import (
    Algebra,
    QuotientAlgebra,
    TwoSidedIdeal,
    function_algebra,
    ideal_closure,
    intersect_ideals,
    matrix_algebra,
    product_algebra,
    radical_square_zero,
)
from .covering import Covering
from .linalg import Field, QQ

SCHEMA = "cover-fixture/1"
PROFILES = ("diagonal", "matrix", "radical", "mixed", "two-ideal", "open-cover")


class FixtureError(ValueError):
    """Malformed fixture; ``where`` names the offending field."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class FixtureDocument:
    name: str
    field: Field
    dim: int
    labels: tuple
    unit: tuple
    structure_constants: tuple  # sorted (i, j, k, value) with value != 0
    ideals: tuple  # one tuple of generator vectors per ideal
    idempotents: tuple | None = None
    expected: dict | None = None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def algebra(self) -> Algebra:
        if "algebra" not in self._cache:
            try:
                self._cache["algebra"] = Algebra.from_structure_constants(
                    self.field,
                    self.dim,
                    self.structure_constants,
                    self.unit,
                    self.labels,
                    self.idempotents,
                )
            except ValueError as exc:
                raise FixtureError(str(exc), "algebra") from exc
        return self._cache["algebra"]

    def ideal_objects(self) -> list[TwoSidedIdeal]:
        alg = self.algebra()
        return [ideal_closure(alg, gens) for gens in self.ideals]

    def covering(self) -> Covering:
        """Build the covering; raises CoveringError when the ideals meet nontrivially."""
        return Covering(self.algebra(), self.ideal_objects())

    def to_json_obj(self) -> dict:
        f = self.field.format
        alg: dict[str, Any] = {
            "dim": self.dim,
            "labels": list(self.labels),
            "unit": [f(x) for x in self.unit],
            "structure_constants": [[i, j, k, f(v)] for i, j, k, v in self.structure_constants],
        }
        if self.idempotents is not None:
            alg["idempotents"] = [[f(x) for x in e] for e in self.idempotents]
        obj: dict[str, Any] = {
            "schema": SCHEMA,
            "name": self.name,
            "field": self.field.to_json(),
            "algebra": alg,
            "ideals": [[[f(x) for x in g] for g in gens] for gens in self.ideals],
        }
        if self.expected is not None:
            obj["expected"] = self.expected
        return obj

    def dumps(self) -> str:
        return dumps(self)

    def content_hash(self) -> str:
        return content_hash(self)


def dumps(doc: FixtureDocument) -> str:
    return json.dumps(doc.to_json_obj(), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def content_hash(doc: FixtureDocument) -> str:
    return "sha256:" + hashlib.sha256(dumps(doc).encode("utf-8")).hexdigest()


def _need(obj: dict, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise FixtureError(f"missing field {key!r}", where)
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise FixtureError(f"expected {kind.__name__}", f"{where}.{key}" if where else key)
    return val


def _scalar(F: Field, x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FixtureError(f"field element must be a string or integer, got {x!r}", where)
    try:
        return F(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FixtureError(f"cannot read {x!r} as a field element ({exc})", where) from exc


def _vector(F: Field, v, n: int, where: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise FixtureError(f"expected a list of {n} field elements", where)
    return tuple(_scalar(F, x, f"{where}[{t}]") for t, x in enumerate(v))


def from_json_obj(obj) -> FixtureDocument:
    if not isinstance(obj, dict):
        raise FixtureError("top level must be an object")
    schema = obj.get("schema")
    if schema != SCHEMA:
        raise FixtureError(f"unsupported schema {schema!r} (expected {SCHEMA!r})", "schema")
    name = _need(obj, "name", str, "")
    try:
        F = Field.from_json(_need(obj, "field", str, ""))
    except ValueError as exc:
        raise FixtureError(str(exc), "field") from exc
    alg = _need(obj, "algebra", dict, "")
    n = _need(alg, "dim", int, "algebra")
    if n < 0:
        raise FixtureError("dimension must be nonnegative", "algebra.dim")
    labels = _need(alg, "labels", list, "algebra")
    if len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise FixtureError(f"expected {n} string labels", "algebra.labels")
    unit = _vector(F, _need(alg, "unit", list, "algebra"), n, "algebra.unit")
    quads = []
    seen = set()
    for t, q in enumerate(_need(alg, "structure_constants", list, "algebra")):
        where = f"algebra.structure_constants[{t}]"
        if not isinstance(q, list) or len(q) != 4:
            raise FixtureError(f"expected [i, j, k, value], got {q!r}", where)
        i, j, k, v = q
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < n:
                raise FixtureError(f"index out of range in quadruple {q!r} (dim {n})", where)
        if (i, j, k) in seen:
            raise FixtureError(f"duplicate quadruple {q!r}", where)
        seen.add((i, j, k))
        val = _scalar(F, v, where)
        if val:
            quads.append((i, j, k, val))
    idem = None
    if "idempotents" in alg:
        raw = _need(alg, "idempotents", list, "algebra")
        idem = tuple(_vector(F, e, n, f"algebra.idempotents[{t}]") for t, e in enumerate(raw))
    ideals = []
    for t, gens in enumerate(_need(obj, "ideals", list, "")):
        if not isinstance(gens, list):
            raise FixtureError("expected a list of generator vectors", f"ideals[{t}]")
        ideals.append(tuple(_vector(F, g, n, f"ideals[{t}][{s}]") for s, g in enumerate(gens)))
    if not ideals:
        raise FixtureError("at least one ideal is required", "ideals")
    expected = obj.get("expected")
    if expected is not None and not isinstance(expected, dict):
        raise FixtureError("expected an object", "expected")
    return FixtureDocument(name, F, n, tuple(labels), unit, tuple(sorted(quads)), tuple(ideals), idem, expected)


def loads(text: str) -> FixtureDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_json_obj(obj)


def load(path) -> FixtureDocument:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(doc: FixtureDocument, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# -- builders ---------------------------------------------------------------


def from_algebra(
    name: str,
    alg: Algebra,
    ideals: Sequence[Sequence[Sequence]],
    expected: dict | None = None,
) -> FixtureDocument:
    """Fixture for ``alg`` with the given generator lists."""
    F = alg.field
    idem = None if alg.idempotents == (alg.unit,) else tuple(alg.idempotents)
    return FixtureDocument(
        name,
        F,
        alg.dim,
        tuple(alg.labels),
        tuple(alg.unit),
        tuple(alg.structure_constants()),
        tuple(tuple(tuple(F(x) for x in g) for g in gens) for gens in ideals),
        idem,
        expected,
    )


def _ideal_basis(J: TwoSidedIdeal) -> tuple:
    return tuple(J.space.vectors())


def build_open_cover_fixture(point_count: int, covers: Sequence[Sequence[int]], name: str | None = None, field: Field | None = None) -> FixtureDocument:
    """Functions on ``{1..n}`` covered by the ideals vanishing on each ``U_i``."""
    if point_count < 1:
        raise FixtureError("need at least one point", "point_count")
    sets = [frozenset(U) for U in covers]
    if not sets:
        raise FixtureError("need at least one subset", "covers")
    for t, U in enumerate(sets):
        if not U:
            raise FixtureError("empty subset", f"covers[{t}]")
        bad = sorted(x for x in U if not 1 <= x <= point_count)
        if bad:
            raise FixtureError(f"points {bad} outside 1..{point_count}", f"covers[{t}]")
    missing = set(range(1, point_count + 1)).difference(*sets)
    if missing:
        raise FixtureError(f"points {sorted(missing)} are not covered", "covers")
    F = field or QQ
    alg = function_algebra(point_count, F)
    gens = []
    for U in sets:
        gens.append([alg.basis_vector(x - 1) for x in range(1, point_count + 1) if x not in U])
    if name is None:
        name = f"open-cover-{point_count}-" + ";".join(",".join(map(str, sorted(U))) for U in sets)
    return from_algebra(name, alg, gens, {"complete": True})


def build_fn3_fixture() -> FixtureDocument:
    return build_open_cover_fixture(3, [{1, 2}, {2, 3}], name="FN3")


def build_nil3_fixture(field: Field | None = None) -> FixtureDocument:
    """``k ⊕ kx ⊕ ky`` with all products of x, y zero, covered by (x), (y), (x+y)."""
    F = field or QQ
    base = radical_square_zero(2, F)
    alg = Algebra(F, 3, base._table, base.unit, ("1", "x", "y"))
    one, zero = F.one, F.zero
    gens = [[(zero, one, zero)], [(zero, zero, one)], [(zero, one, one)]]
    return from_algebra("NIL3", alg, gens, {"complete": False, "dim_B_c": 4})


def build_trivial_fixture(point_count: int = 2) -> FixtureDocument:
    """A single zero ideal: ``A = B`` and ``C ≅ B``."""
    return build_open_cover_fixture(point_count, [set(range(1, point_count + 1))], name=f"trivial-{point_count}")


def parse_covers(text: str) -> list[set[int]]:
    """``"1,2;2,3"`` -> ``[{1, 2}, {2, 3}]``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            raise FixtureError(f"empty subset in {text!r}", "covers")
        try:
            out.append({int(x) for x in part.split(",")})
        except ValueError as exc:
            raise FixtureError(f"cannot read subset {part!r}", "covers") from exc
    return out


# -- random coverings -------------------------------------------------------


class GenerationError(RuntimeError):
    pass


def _random_algebra(rng: random.Random, profile: str) -> Algebra:
    if profile == "diagonal":
        return function_algebra(rng.randint(2, 6))
    if profile == "matrix":
        sizes = rng.choice([[2], [2, 1], [2, 1, 1], [2, 2], [1, 1, 1], [2, 1, 1, 1]])
        return product_algebra([matrix_algebra(s) for s in sizes])
    if profile == "radical":
        comps = [radical_square_zero(rng.randint(1, 4))]
        if rng.random() < 0.4:
            comps.append(matrix_algebra(1))
        return product_algebra(comps)
    blocks = []
    budget = rng.randint(3, 8)
    while budget > 0:
        kind = rng.choice(["k", "k", "m2", "rad"])
        if kind == "m2" and budget >= 4:
            blocks.append(matrix_algebra(2))
            budget -= 4
        elif kind == "rad" and budget >= 2:
            d = rng.randint(1, min(3, budget - 1))
            blocks.append(radical_square_zero(d))
            budget -= d + 1
        else:
            blocks.append(matrix_algebra(1))
            budget -= 1
    return product_algebra(blocks)


def _random_element(rng: random.Random, alg: Algebra) -> tuple:
    density = rng.choice([0.2, 0.4, 0.6])
    return tuple(alg.field(rng.randint(-2, 2)) if rng.random() < density else alg.field.zero for _ in range(alg.dim))


def _random_proper_ideal(rng: random.Random, alg: Algebra, tries: int = 30) -> TwoSidedIdeal | None:
    for _ in range(tries):
        gens = [_random_element(rng, alg) for _ in range(rng.randint(1, 2))]
        J = ideal_closure(alg, gens)
        if 0 < J.space.dim < alg.dim:
            return J
    return None


def _random_open_cover(rng: random.Random, seed) -> FixtureDocument:
    n = rng.randint(2, 6)
    m = rng.randint(2, 4)
    sets = [set(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(m)]
    for x in range(1, n + 1):
        if not any(x in U for U in sets):
            rng.choice(sets).add(x)
    return build_open_cover_fixture(n, sets, name=f"random-open-cover-{seed}")


def random_covering(seed: int, profile: str = "mixed", max_tries: int = 200) -> FixtureDocument:
    """A valid covering fixture drawn deterministically from ``seed``.

    Ideals are closures of random elements.  If they meet in a nonzero ideal
    ``I`` the algebra is replaced by ``B/I`` (where they meet in zero).
    """
    if profile not in PROFILES:
        raise FixtureError(f"unknown profile {profile!r} (choose from {', '.join(PROFILES)})", "profile")
    rng = random.Random(f"{profile}:{seed}")
    if profile == "open-cover":
        return _random_open_cover(rng, seed)
    base_profile = "mixed" if profile == "two-ideal" else profile
    for _ in range(max_tries):
        alg = _random_algebra(rng, base_profile)
        m = 2 if profile == "two-ideal" else rng.randint(2, 4)
        ideals = [_random_proper_ideal(rng, alg) for _ in range(m)]
        if any(J is None for J in ideals):
            continue
        meet = intersect_ideals(ideals)
        if meet.dim:
            Q = QuotientAlgebra(alg, TwoSidedIdeal(alg, meet, check=False))
            if Q.dim < 2:
                continue
            gens = []
            for J in ideals:
                imgs = [Q.projection(v) for v in J.space.vectors()]
                gens.append([v for v in imgs if any(v)])
            if any(not g for g in gens):
                continue
            alg = Algebra(Q.field, Q.dim, Q._table, Q.unit, tuple(f"q{t + 1}" for t in range(Q.dim)), Q.idempotents)
        else:
            gens = [list(_ideal_basis(J)) for J in ideals]
        doc = from_algebra(f"random-{profile}-{seed}", alg, gens)
        doc.covering()  # generator postcondition
        return doc
    raise GenerationError(f"no valid covering for seed {seed} after {max_tries} attempts")
