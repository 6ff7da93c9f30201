"""Finite-dimensional associative unital algebras given by structure constants.

An :class:`Algebra` may carry a complete family of orthogonal idempotents
(``e_s e_t = δ_st e_s``, ``Σ e_t = 1``).  The family is only a hint used by
:mod:`coverings.bimodule` to split balanced tensor products into small
blocks; ``(1,)`` is always valid and is the default.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (
    Field,
    Matrix,
    QuotientSpace,
    Subspace,
    axpy,
    image,
    kernel,
    subspace_intersect,
    subspace_sum,
    to_dense,
    to_sparse,
)
from .verdict import Verdict


class Algebra:
    """Algebra with basis ``e_0 .. e_{n-1}`` and ``e_i e_j = Σ_k c[i,j,k] e_k``."""

    def __init__(
        self,
        field: Field,
        dim: int,
        table: dict,
        unit: Sequence,
        labels: Sequence[str] | None = None,
        idempotents: Sequence[Sequence] | None = None,
    ):
        self.field = field
        self.dim = dim
        self._table: dict[tuple[int, int], dict] = {}
        for (i, j), vec in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"structure constant index ({i}, {j}) out of range for dim {dim}")
            vec = vec if isinstance(vec, dict) else to_sparse(vec)
            vec = {k: field(v) for k, v in vec.items() if field(v)}
            if any(not 0 <= k < dim for k in vec):
                raise ValueError(f"structure constant target out of range at ({i}, {j})")
            if vec:
                self._table[i, j] = vec
        if len(unit) != dim:
            raise ValueError(f"unit vector has length {len(unit)}, expected {dim}")
        self.unit = tuple(field(x) for x in unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("wrong number of basis labels")
        if idempotents is None:
            fam = [self.unit] if dim else []
        else:
            fam = [tuple(field(x) for x in e) for e in idempotents]
            self._check_idempotents(fam)
        self.idempotents = tuple(fam)

    @classmethod
    def from_structure_constants(cls, field, dim, quads, unit, labels=None, idempotents=None):
        table: dict = {}
        for q in quads:
            i, j, k, v = q
            if not all(isinstance(x, int) for x in (i, j, k)):
                raise ValueError(f"non-integer index in structure constant {q!r}")
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError(f"structure constant {q!r} out of range for dim {dim}")
            table.setdefault((i, j), {})[k] = field(v)
        return cls(field, dim, table, unit, labels, idempotents)

    def _check_idempotents(self, fam):
        zero = (self.field.zero,) * self.dim
        total: dict = {}
        for s, e in enumerate(fam):
            if not any(e):
                raise ValueError("idempotent family contains zero")
            for t, f in enumerate(fam):
                want = e if s == t else zero
                if self.mul(e, f) != want:
                    raise ValueError(f"idempotents {s}, {t} are not orthogonal idempotents")
            axpy(total, self.field.one, to_sparse(e))
        if to_dense(self.field, total, self.dim) != self.unit:
            raise ValueError("idempotent family does not sum to the unit")

    # -- arithmetic -----------------------------------------------------

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int) -> tuple:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def product(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def mul_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self._table.get((i, j))
                if c:
                    axpy(out, a * b, c)
        return out

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        out = self.mul_sparse(to_sparse(x), to_sparse(y))
        return tuple(self.field.normalize(v) for v in to_dense(self.field, out, self.dim))

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def basis(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(i))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def structure_constants(self) -> list[tuple[int, int, int, object]]:
        return sorted((i, j, k, v) for (i, j), vec in self._table.items() for k, v in vec.items())

    @cached_property
    def _left(self) -> list[Matrix]:
        # column j of L_i is e_i e_j
        return [
            Matrix.from_sparse_columns(self.field, self.dim, self.dim, [self.product(i, j) for j in range(self.dim)])
            for i in range(self.dim)
        ]

    @cached_property
    def _right(self) -> list[Matrix]:
        return [
            Matrix.from_sparse_columns(self.field, self.dim, self.dim, [self.product(i, j) for i in range(self.dim)])
            for j in range(self.dim)
        ]

    def left_mult(self, i: int) -> Matrix:
        """Matrix of ``x -> e_i x``."""
        return self._left[i]

    def right_mult(self, i: int) -> Matrix:
        """Matrix of ``x -> x e_i``."""
        return self._right[i]

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, field={self.field})"


class AlgebraElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: Algebra, coords: Sequence):
        if len(coords) != parent.dim:
            raise ValueError(f"{len(coords)} coordinates for an algebra of dim {parent.dim}")
        self.parent = parent
        self.coords = tuple(parent.field(x) for x in coords)

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.parent is not self.parent:
            raise ValueError("elements belong to different algebras")

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.parent.field(other)
        return AlgebraElement(self.parent, [c * x for x in self.coords])

    def __rmul__(self, other):
        c = self.parent.field(other)
        return AlgebraElement(self.parent, [c * x for x in self.coords])

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraElement(self.parent, [-a for a in self.coords])

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.parent is self.parent
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = [
            f"{self.parent.field.format(c)}*{lab}"
            for c, lab in zip(self.coords, self.parent.labels)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.parent is not b.parent:
        raise ValueError("cannot multiply elements of different algebras")
    return AlgebraElement(a.parent, a.parent.mul(a.coords, b.coords))


def validate_algebra(alg: Algebra) -> Verdict:
    """Exhaustive check of associativity and the unit laws on basis elements."""
    n = alg.dim
    for i in range(n):
        ei = {i: alg.field.one}
        if alg.mul_sparse(to_sparse(alg.unit), ei) != ei:
            return Verdict(False, "left unit", i, f"1*{alg.labels[i]} != {alg.labels[i]}")
        if alg.mul_sparse(ei, to_sparse(alg.unit)) != ei:
            return Verdict(False, "right unit", i, f"{alg.labels[i]}*1 != {alg.labels[i]}")
    for i in range(n):
        for j in range(n):
            ij = alg.product(i, j)
            for k in range(n):
                ek = {k: alg.field.one}
                lhs = alg.mul_sparse(ij, ek)
                rhs = alg.mul_sparse({i: alg.field.one}, alg.product(j, k))
                if lhs != rhs:
                    return Verdict(False, "associativity", (i, j, k), "(e_i e_j) e_k != e_i (e_j e_k)")
    return Verdict(True, "algebra")


# -- morphisms --------------------------------------------------------------


class AlgebraMorphism:
    """Linear map between algebras, meant to be unital and multiplicative."""

    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(
                f"matrix of shape {matrix.shape} for a map dim {source.dim} -> dim {target.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    def __call__(self, x: Sequence) -> tuple:
        return self.matrix.apply(x)

    def __matmul__(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        if other.target is not self.source:
            raise ValueError("morphisms are not composable")
        return AlgebraMorphism(other.source, self.target, self.matrix @ other.matrix)

    def verify(self) -> Verdict:
        if self(self.source.unit) != self.target.unit:
            return Verdict(False, "unital", None, "f(1) != 1")
        s, t = self.source, self.target
        cols = self.matrix.sparse_columns()
        for i in range(s.dim):
            for j in range(s.dim):
                lhs = self.matrix.apply_sparse(s.product(i, j))
                rhs = t.mul_sparse(cols[i], cols[j])
                if lhs != rhs:
                    return Verdict(False, "multiplicative", (i, j), "f(e_i e_j) != f(e_i) f(e_j)")
        return Verdict(True, "algebra morphism")

    def kernel(self) -> Subspace:
        return kernel(self.matrix)

    def image(self) -> Subspace:
        return image(self.matrix)

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim

    def __repr__(self):
        return f"AlgebraMorphism({self.source!r} -> {self.target!r})"


def identity_morphism(alg: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(alg, alg, Matrix.identity(alg.field, alg.dim))


# -- ideals and quotients ---------------------------------------------------


class TwoSidedIdeal:
    def __init__(self, algebra: Algebra, space: Subspace, check: bool = True):
        if space.ambient_dim != algebra.dim:
            raise ValueError("ideal lives in a space of the wrong dimension")
        self.algebra = algebra
        self.space = space
        if check:
            bad = _ideal_witness(algebra, space)
            if bad is not None:
                raise ValueError(f"subspace is not a two-sided ideal: {bad}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def vectors(self) -> list[tuple]:
        return self.space.vectors()

    def __eq__(self, other):
        return isinstance(other, TwoSidedIdeal) and other.algebra is self.algebra and other.space == self.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"TwoSidedIdeal(dim={self.dim} in {self.algebra!r})"


def _ideal_witness(alg: Algebra, space: Subspace):
    for v in space.sparse_vectors():
        for i in range(alg.dim):
            ei = {i: alg.field.one}
            if not space.contains(alg.mul_sparse(ei, v)):
                return f"e{i} * v not in the subspace"
            if not space.contains(alg.mul_sparse(v, ei)):
                return f"v * e{i} not in the subspace"
    return None


def ideal_closure(alg: Algebra, generators: Iterable) -> TwoSidedIdeal:
    """Smallest two-sided ideal containing the generators."""
    gens = [g.coords if isinstance(g, AlgebraElement) else g for g in generators]
    space = Subspace.span(alg.field, alg.dim, gens)
    ech = space.echelon()
    frontier = space.sparse_vectors()
    one = alg.field.one
    while frontier:
        fresh = []
        for v in frontier:
            for i in range(alg.dim):
                for w in (alg.mul_sparse({i: one}, v), alg.mul_sparse(v, {i: one})):
                    if ech.add(w):
                        fresh.append(w)
        frontier = fresh
    return TwoSidedIdeal(alg, Subspace.from_echelon(ech), check=False)


def zero_ideal(alg: Algebra) -> TwoSidedIdeal:
    return TwoSidedIdeal(alg, Subspace.zero(alg.field, alg.dim), check=False)


def _common_parent(ideals):
    if not ideals:
        raise ValueError("empty list of ideals")
    alg = ideals[0].algebra
    if any(J.algebra is not alg for J in ideals):
        raise ValueError("ideals belong to different algebras")
    return alg


def sum_ideals(ideals: Sequence[TwoSidedIdeal]) -> TwoSidedIdeal:
    alg = _common_parent(ideals)
    space = ideals[0].space
    for J in ideals[1:]:
        space = subspace_sum(space, J.space)
    out = TwoSidedIdeal(alg, space, check=False)
    assert _ideal_witness(alg, space) is None
    return out


def intersect_ideals(ideals: Sequence[TwoSidedIdeal]) -> Subspace:
    _common_parent(ideals)
    space = ideals[0].space
    for J in ideals[1:]:
        space = subspace_intersect(space, J.space)
    return space


class QuotientAlgebra(Algebra):
    """``B / J`` on the non-pivot section, with its projection ``π: B -> B/J``."""

    def __init__(self, parent: Algebra, ideal: TwoSidedIdeal):
        if ideal.algebra is not parent:
            raise ValueError("ideal does not belong to this algebra")
        qs = QuotientSpace(parent.dim, ideal.space)
        table = {}
        for a, i in enumerate(qs.free):
            for b, j in enumerate(qs.free):
                prod = parent.product(i, j)
                if prod:
                    table[a, b] = qs.project_sparse(prod)
        unit = qs.project_vector(parent.unit)
        idem = [qs.project_vector(e) for e in parent.idempotents]
        idem = [e for e in idem if any(e)]
        labels = [f"[{parent.labels[i]}]" for i in qs.free]
        super().__init__(parent.field, qs.dim, table, unit, labels, idem)
        self.parent = parent
        self.ideal = ideal
        self.space = qs
        self.projection = AlgebraMorphism(parent, self, qs.project)

    def lift(self, x: Sequence) -> tuple:
        """Representative in the parent algebra (non-pivot section)."""
        return self.space.lift_vector(x)


def quotient_algebra(B: Algebra, J: TwoSidedIdeal) -> QuotientAlgebra:
    return QuotientAlgebra(B, J)


def quotient_map(source: QuotientAlgebra, target: QuotientAlgebra) -> AlgebraMorphism:
    """The induced surjection ``B/J -> B/J'`` for ``J ⊆ J'``."""
    if source.parent is not target.parent:
        raise ValueError("quotients of different algebras")
    if not source.ideal.space.is_subspace_of(target.ideal.space):
        raise ValueError("source ideal is not contained in the target ideal")
    return AlgebraMorphism(source, target, target.space.project @ source.space.lift)


def connecting_projection(source: QuotientAlgebra, extra: Sequence[TwoSidedIdeal]) -> AlgebraMorphism:
    """``B/J_S -> B/(J_S + Σ extra)``."""
    target = QuotientAlgebra(source.parent, sum_ideals([source.ideal, *extra]))
    return quotient_map(source, target)


# -- direct sums and subalgebras --------------------------------------------


class DirectSum(Algebra):
    """``A_0 ⊕ ... ⊕ A_{m-1}`` with componentwise product."""

    def __init__(self, components: Sequence[Algebra]):
        if not components:
            raise ValueError("direct sum of no algebras")
        field = components[0].field
        if any(c.field != field for c in components):
            raise ValueError("components over different fields")
        offsets = []
        off = 0
        table = {}
        unit = []
        labels = []
        idem = []
        for n, comp in enumerate(components):
            offsets.append(off)
            for (i, j), vec in comp._table.items():
                table[off + i, off + j] = {off + k: v for k, v in vec.items()}
            unit.extend(comp.unit)
            labels.extend(f"{lab}@{n}" for lab in comp.labels)
            off += comp.dim
        for n, comp in enumerate(components):
            for e in comp.idempotents:
                v = [field.zero] * off
                v[offsets[n] : offsets[n] + comp.dim] = e
                idem.append(tuple(v))
        super().__init__(field, off, table, unit, labels, idem)
        self.components = tuple(components)
        self.offsets = tuple(offsets)

    def injection(self, n: int) -> Matrix:
        """Linear (non-unital) inclusion of component ``n``."""
        comp = self.components[n]
        one = self.field.one
        return Matrix.from_sparse_columns(
            self.field, self.dim, comp.dim, [{self.offsets[n] + i: one} for i in range(comp.dim)]
        )

    @cached_property
    def projections(self) -> tuple[AlgebraMorphism, ...]:
        out = []
        one = self.field.one
        for n, comp in enumerate(self.components):
            rows = [{self.offsets[n] + i: one} for i in range(comp.dim)]
            out.append(AlgebraMorphism(self, comp, Matrix.from_sparse_rows(self.field, comp.dim, self.dim, rows)))
        return tuple(out)

    def embed(self, n: int, x: Sequence) -> tuple:
        v = list(self.zero_vector())
        v[self.offsets[n] : self.offsets[n] + len(x)] = x
        return tuple(v)

    def split(self, x: Sequence) -> list[tuple]:
        return [tuple(x[o : o + c.dim]) for o, c in zip(self.offsets, self.components)]

    def component_unit(self, n: int) -> tuple:
        return self.embed(n, self.components[n].unit)


def direct_sum(algebras: Sequence[Algebra]) -> DirectSum:
    return DirectSum(algebras)


class Subalgebra(Algebra):
    """Unital subalgebra carried by a subspace, basis = the RREF rows."""

    def __init__(self, parent: Algebra, space: Subspace):
        if not space.contains(parent.unit):
            raise ValueError("subspace does not contain the unit")
        vecs = space.sparse_vectors()
        table = {}
        for a, u in enumerate(vecs):
            for b, v in enumerate(vecs):
                w = parent.mul_sparse(u, v)
                if space.residue(w):
                    raise ValueError(f"subspace not closed under products (basis {a}, {b})")
                table[a, b] = {k: w[p] for k, p in enumerate(space.pivots) if w.get(p)}
        unit = space.coordinates(parent.unit)
        super().__init__(parent.field, space.dim, table, unit)
        self.parent = parent
        self.space = space
        self.inclusion = AlgebraMorphism(self, parent, space.basis.T)

    def coordinates(self, x) -> tuple:
        return self.space.coordinates(x)


def corestrict(f: AlgebraMorphism, sub: Subalgebra) -> AlgebraMorphism:
    """``f`` viewed as a map into a subalgebra containing its image."""
    if f.target is not sub.parent:
        raise ValueError("subalgebra of the wrong algebra")
    cols = [to_sparse(sub.coordinates(c)) for c in f.matrix.sparse_columns()]
    return AlgebraMorphism(f.source, sub, Matrix.from_sparse_columns(sub.field, sub.dim, f.source.dim, cols))


def opposite(alg: Algebra) -> Algebra:
    table = {(j, i): vec for (i, j), vec in alg._table.items()}
    return Algebra(alg.field, alg.dim, table, alg.unit, [f"{lab}^op" for lab in alg.labels], alg.idempotents)


# -- builders ---------------------------------------------------------------


def ground_algebra(field: Field) -> Algebra:
    return Algebra(field, 1, {(0, 0): {0: 1}}, (1,), ("1",))


def function_algebra(point_count: int, field: Field | None = None) -> Algebra:
    """Functions on ``{1..n}`` with pointwise product; basis = point indicators."""
    field = field or Field()
    if point_count < 1:
        raise ValueError("need at least one point")
    n = point_count
    table = {(i, i): {i: 1} for i in range(n)}
    idem = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    return Algebra(field, n, table, (1,) * n, [f"e{i + 1}" for i in range(n)], idem)


def vanishing_ideal(alg: Algebra, subset: Iterable[int]) -> TwoSidedIdeal:
    """Functions vanishing on ``subset`` (points numbered from 1).

    ``B / vanishing_ideal(U)`` is the algebra of functions on ``U`` and the
    projection is restriction.
    """
    U = set(subset)
    if not U:
        raise ValueError("empty chart: U must be nonempty")
    bad = [x for x in U if not (isinstance(x, int) and 1 <= x <= alg.dim)]
    if bad:
        raise ValueError(f"points {bad} are not in 1..{alg.dim}")
    vecs = [alg.basis_vector(x - 1) for x in range(1, alg.dim + 1) if x not in U]
    return TwoSidedIdeal(alg, Subspace.span(alg.field, alg.dim, vecs))


def matrix_algebra(n: int, field: Field | None = None) -> Algebra:
    """``M_n(k)`` with basis ``E_ab`` in row-major order."""
    field = field or Field()
    idx = lambda a, b: a * n + b
    table = {}
    for a in range(n):
        for b in range(n):
            for d in range(n):
                table[idx(a, b), idx(b, d)] = {idx(a, d): 1}
    unit = [0] * (n * n)
    for a in range(n):
        unit[idx(a, a)] = 1
    labels = [f"E{a + 1}{b + 1}" for a in range(n) for b in range(n)]
    idem = []
    for a in range(n):
        e = [0] * (n * n)
        e[idx(a, a)] = 1
        idem.append(e)
    return Algebra(field, n * n, table, unit, labels, idem)


def radical_square_zero(vdim: int, field: Field | None = None) -> Algebra:
    """``k ⊕ V`` with ``V·V = 0``; basis ``1, v1, .., v_d``."""
    field = field or Field()
    n = vdim + 1
    table = {(0, j): {j: 1} for j in range(n)}
    table.update({(j, 0): {j: 1} for j in range(1, n)})
    labels = ["1"] + [f"v{i}" for i in range(1, n)]
    return Algebra(field, n, table, [1] + [0] * vdim, labels)


def product_algebra(components: Sequence[Algebra]) -> Algebra:
    """Plain algebra (no component bookkeeping) isomorphic to the direct sum."""
    d = DirectSum(components)
    return Algebra(d.field, d.dim, d._table, d.unit, d.labels, d.idempotents)
