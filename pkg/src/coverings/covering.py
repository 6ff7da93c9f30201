"""Coverings of an algebra by two-sided ideals and the coring they induce.

For a covering ``(J_i)`` of ``B`` write ``B_S = B / Σ_{i∈S} J_i``.  With
``A = ⊕ B_i`` the module ``C = ⊕_{i,j} B_ij`` is an A-coring whose
coproduct is easiest to write on triple intersections
``D = ⊕_{i,j,k} B_ijk``:  ``Δ(a)_{ijk} = π^{ik}_j(a_ik)``.  Everything here
is checked against the Sweedler coring ``A ⊗_B A`` through the explicit
isomorphism ``χ: A ⊗_B A -> C``.

Indices are 0-based in the API; reports print them 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import (
    Algebra,
    AlgebraMorphism,
    DirectSum,
    QuotientAlgebra,
    Subalgebra,
    TwoSidedIdeal,
    _ideal_witness,
    corestrict,
    intersect_ideals,
    opposite,
    quotient_map,
    sum_ideals,
)
from .bimodule import (
    BalancedTensor,
    Bimodule,
    BimoduleMorphism,
    DirectSumBimodule,
    regular_bimodule,
    restrict,
    tensor_morphisms,
)
from .coring import (
    Coring,
    SweedlerCoring,
    coinvariants,
    coring_morphism_check,
    galois_verdict,
    is_grouplike,
    sweedler_coring,
    verify_coring,
)
from .linalg import Matrix, Subspace, axpy, block_diag, kernel, solve_sparse, to_dense, to_sparse, vstack
from .verdict import Verdict, combine


class CoveringError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _shift(vec: dict, off: int) -> dict:
    return {k + off: v for k, v in vec.items()}


class Covering:
    """A finite family of two-sided ideals of ``algebra`` with zero intersection."""

    def __init__(self, algebra: Algebra, ideals: Sequence[TwoSidedIdeal]):
        ideals = tuple(ideals)
        if not ideals:
            raise CoveringError("a covering needs at least one ideal")
        for n, J in enumerate(ideals):
            if J.algebra is not algebra:
                raise CoveringError(f"ideal {n + 1} belongs to a different algebra")
            bad = _ideal_witness(algebra, J.space)
            if bad is not None:
                raise CoveringError(f"ideal {n + 1} is not two-sided: {bad}", n)
        meet = intersect_ideals(list(ideals))
        if meet.dim:
            w = meet.vectors()[0]
            raise CoveringError(f"ideals intersect in a space of dim {meet.dim}", w)
        self.algebra = algebra
        self.ideals = ideals
        self._quotients: dict[frozenset, QuotientAlgebra] = {}

    @property
    def size(self) -> int:
        return len(self.ideals)

    @property
    def index(self) -> range:
        return range(len(self.ideals))

    @property
    def field(self):
        return self.algebra.field

    def quotient(self, *idx: int) -> QuotientAlgebra:
        """``B_S`` for the index set ``S``; ``quotient(i, i)`` is ``B_i``."""
        key = frozenset(idx)
        q = self._quotients.get(key)
        if q is None:
            q = QuotientAlgebra(self.algebra, sum_ideals([self.ideals[i] for i in sorted(key)]))
            self._quotients[key] = q
        return q

    def projection(self, *idx: int) -> AlgebraMorphism:
        return self.quotient(*idx).projection

    def connecting(self, source: Sequence[int], extra: Sequence[int]) -> AlgebraMorphism:
        """``π^S_T: B_S -> B_{S ∪ T}``."""
        return quotient_map(self.quotient(*source), self.quotient(*source, *extra))

    @cached_property
    def total(self) -> DirectSum:
        """``A = ⊕_i B_i``."""
        return DirectSum([self.quotient(i) for i in self.index])

    @cached_property
    def iota(self) -> AlgebraMorphism:
        """``b -> (π_i(b))_i``."""
        return AlgebraMorphism(
            self.algebra, self.total, vstack([self.projection(i).matrix for i in self.index])
        )

    def to_component(self, i: int, source: Sequence[int]) -> AlgebraMorphism:
        """``A -> B_i -> B_{i ∪ source}``."""
        return self.connecting([i], source) @ self.total.projections[i]

    @cached_property
    def completion(self) -> "CoveringCompletion":
        return _completion(self)

    @cached_property
    def coring(self) -> "CoveringCoring":
        return CoveringCoring(self)

    @cached_property
    def sweedler(self) -> SweedlerCoring:
        return sweedler_coring(self.iota)

    @cached_property
    def chi_data(self) -> "ChiData":
        return _chi_data(self)

    def __repr__(self):
        return f"Covering({self.size} ideals of {self.algebra!r})"


def validate_covering(B: Algebra, ideals: Sequence[TwoSidedIdeal]) -> Covering:
    return Covering(B, ideals)


# -- completion -------------------------------------------------------------


@dataclass
class CoveringCompletion:
    covering: Covering
    space: Subspace
    algebra: Subalgebra
    kappa: AlgebraMorphism
    kappa_c: AlgebraMorphism

    @property
    def dim(self) -> int:
        return self.space.dim


def _completion(cov: Covering) -> CoveringCompletion:
    A = cov.total
    blocks = []
    for i, j in itertools.combinations(cov.index, 2):
        Bij = cov.quotient(i, j)
        row = []
        for n in cov.index:
            comp = A.components[n]
            if n == i:
                row.append(cov.connecting([i], [j]).matrix)
            elif n == j:
                row.append(cov.connecting([j], [i]).matrix.scale(-1))
            else:
                row.append(Matrix.zeros(cov.field, Bij.dim, comp.dim))
        blocks.append(_hcat(row, Bij.dim, cov.field))
    if blocks:
        space = kernel(vstack(blocks))
    else:
        space = Subspace.full(cov.field, A.dim)
    Bc = Subalgebra(A, space)
    kappa = cov.iota
    return CoveringCompletion(cov, space, Bc, kappa, corestrict(kappa, Bc))


def _hcat(mats, nrows, field):
    rows = [{} for _ in range(nrows)]
    off = 0
    for m in mats:
        for r in range(nrows):
            rows[r].update(_shift(m.sparse_row(r), off))
        off += m.ncols
    return Matrix.from_sparse_rows(field, nrows, off, rows)


def covering_completion(cov: Covering) -> CoveringCompletion:
    return cov.completion


def is_complete(cov: Covering) -> bool:
    # κ is injective because the ideals meet in zero
    return cov.completion.dim == cov.algebra.dim


# -- the covering coring ----------------------------------------------------


class CoveringCoring:
    """``C = ⊕ B_ij`` with its coring structure, grouplike ``g`` and ``D = ⊕ B_ijk``."""

    def __init__(self, cov: Covering):
        self.covering = cov
        A = cov.total
        self.pairs = [(i, j) for i in cov.index for j in cov.index]
        self.triples = [(i, j, k) for i in cov.index for j in cov.index for k in cov.index]
        self.pair_index = {p: n for n, p in enumerate(self.pairs)}
        self.triple_index = {t: n for n, t in enumerate(self.triples)}

        summands = []
        for i, j in self.pairs:
            reg = regular_bimodule(cov.quotient(i, j))
            summands.append(restrict(reg, left=cov.to_component(i, [j]), right=cov.to_component(j, [i])))
        C = DirectSumBimodule(summands)
        tri = []
        for i, j, k in self.triples:
            reg = regular_bimodule(cov.quotient(i, j, k))
            tri.append(restrict(reg, left=cov.to_component(i, [j, k]), right=cov.to_component(k, [i, j])))
        D = DirectSumBimodule(tri)
        self.carrier = C
        self.triple = D

        # Δ_D: block (i,j,k) of D receives π^{ik}_j of block (i,k) of C
        rows = []
        for i, j, k in self.triples:
            m = cov.connecting([i, k], [j]).matrix
            off = C.offsets[self.pair_index[i, k]]
            rows.extend(_shift(m.sparse_row(r), off) for r in range(m.nrows))
        self.triple_coproduct = BimoduleMorphism(C, D, Matrix.from_sparse_rows(cov.field, D.dim, C.dim, rows))

        CC = BalancedTensor(C, C)
        self.square = CC
        cols = []
        for i, j, k in self.triples:
            Bijk = cov.quotient(i, j, k)
            u = to_sparse(self.unit_block(i, j))
            for s in range(Bijk.dim):
                b = Bijk.lift(Bijk.basis_vector(s))
                cols.append(CC.tensor_sparse(u, to_sparse(self.block_from_B(j, k, b))))
        self.nu = BimoduleMorphism(D, CC, Matrix.from_sparse_columns(cov.field, CC.dim, D.dim, cols))

        delta = BimoduleMorphism(C, CC, self.nu.matrix @ self.triple_coproduct.matrix)
        reg_A = regular_bimodule(A)
        rows = [{} for _ in range(A.dim)]
        for i in cov.index:
            off = C.offsets[self.pair_index[i, i]]
            for r in range(A.components[i].dim):
                rows[A.offsets[i] + r] = {off + r: cov.field.one}
        counit = BimoduleMorphism(C, reg_A, Matrix.from_sparse_rows(cov.field, A.dim, C.dim, rows))
        self.coring = Coring(A, C, delta, counit)
        g: dict = {}
        for i, j in self.pairs:
            axpy(g, cov.field.one, to_sparse(self.unit_block(i, j)))
        self.grouplike = to_dense(cov.field, g, C.dim)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def block(self, x: Sequence, i: int, j: int) -> tuple:
        return self.carrier.split(x)[self.pair_index[i, j]]

    def embed_block(self, i: int, j: int, y: Sequence) -> tuple:
        return self.carrier.embed(self.pair_index[i, j], y)

    def unit_block(self, i: int, j: int) -> tuple:
        return self.embed_block(i, j, self.covering.quotient(i, j).unit)

    def block_from_B(self, i: int, j: int, b: Sequence) -> tuple:
        """``π_ij(b)`` placed in block ``(i, j)``."""
        return self.embed_block(i, j, self.covering.projection(i, j)(b))

    def element_from_blocks(self, f) -> tuple:
        """Carrier element whose block ``(i, j)`` is ``f(i, j)`` (a vector of ``B_ij``)."""
        out = []
        for i, j in self.pairs:
            out.extend(f(i, j))
        return tuple(out)

    def representatives(self, x: Sequence) -> dict:
        """``b_ij`` in ``B`` with ``x = (π_ij(b_ij))``."""
        cov = self.covering
        return {(i, j): cov.quotient(i, j).lift(self.block(x, i, j)) for i, j in self.pairs}

    def simple_coproduct(self, x: Sequence) -> tuple:
        """Coproduct in ``D``: ``(π^{ik}_j(x_ik))_{ijk}``."""
        return self.triple_coproduct(x)


def covering_coring(cov: Covering) -> CoveringCoring:
    return cov.coring


def coproduct_four_forms(cc: CoveringCoring, x: Sequence) -> tuple:
    """The four sum-over-k expressions for ``Δ(x)`` in ``C ⊗_A C``."""
    cov = cc.covering
    C, CC = cc.carrier, cc.square
    F = cov.field
    b = cc.representatives(x)
    I = list(cov.index)
    one = cov.algebra.unit

    def pi(i, j, v):
        return cov.projection(i, j)(v)

    def zero(i, j):
        return cov.quotient(i, j).zero_vector()

    def a_elem(f):
        out = []
        for n in I:
            out.extend(cov.projection(n)(f(n)))
        return tuple(out)

    forms = []
    for form in range(4):
        total: dict = {}
        for k in I:
            if form == 0:
                X = cc.element_from_blocks(lambda i, l: pi(i, l, b[i, k]))
                Y = cc.element_from_blocks(lambda m, j: pi(m, j, one) if j == k else zero(m, j))
            elif form == 1:
                a = a_elem(lambda n: b[n, k])
                X = C.act_left(a, cc.grouplike)
                Y = cc.element_from_blocks(lambda m, j: pi(m, j, one) if j == k else zero(m, j))
            elif form == 2:
                X = cc.element_from_blocks(lambda i, l: pi(i, l, one) if i == k else zero(i, l))
                Y = cc.element_from_blocks(lambda m, j: pi(m, j, b[k, j]))
            else:
                X = cc.element_from_blocks(lambda i, l: pi(i, l, one) if i == k else zero(i, l))
                a = a_elem(lambda n: b[k, n])
                Y = C.act_right(cc.grouplike, a)
            axpy(total, F.one, CC.tensor_sparse(to_sparse(X), to_sparse(Y)))
        forms.append(to_dense(F, total, CC.dim))
    return tuple(forms)


# -- Φ, Θ, χ ---------------------------------------------------------------


@dataclass
class PhiIso:
    i: int
    j: int
    tensor: BalancedTensor
    target: Bimodule
    forward: BimoduleMorphism
    inverse: BimoduleMorphism
    inverse_alt: BimoduleMorphism


def phi(cov: Covering, i: int, j: int) -> PhiIso:
    """``B_i ⊗_B B_j -> B_ij``, ``a ⊗ a' -> π^i_j(a) π^j_i(a')``, with both inverse formulas."""
    return cov.chi_data.phis[cov.coring.pair_index[i, j]]


def _phi(cov: Covering, i: int, j: int, target: Bimodule) -> PhiIso:
    A = cov.total
    Bi, Bj, Bij = cov.quotient(i), cov.quotient(j), cov.quotient(i, j)
    M = restrict(regular_bimodule(Bi), left=A.projections[i], right=cov.projection(i))
    N = restrict(regular_bimodule(Bj), left=cov.projection(j), right=A.projections[j])
    T = BalancedTensor(M, N)
    pij = cov.connecting([i], [j]).matrix
    pji = cov.connecting([j], [i]).matrix
    fwd = T.descend(Bij.dim, lambda u, v: Bij.mul_sparse(pij.apply_sparse(u), pji.apply_sparse(v)))
    ui, uj = to_sparse(Bi.unit), to_sparse(Bj.unit)
    inv_cols, alt_cols = [], []
    for s in range(Bij.dim):
        b = to_sparse(Bij.lift(Bij.basis_vector(s)))
        inv_cols.append(T.tensor_sparse(ui, cov.projection(j).matrix.apply_sparse(b)))
        alt_cols.append(T.tensor_sparse(cov.projection(i).matrix.apply_sparse(b), uj))
    F = cov.field
    return PhiIso(
        i,
        j,
        T,
        target,
        BimoduleMorphism(T, target, fwd),
        BimoduleMorphism(target, T, Matrix.from_sparse_columns(F, T.dim, Bij.dim, inv_cols)),
        BimoduleMorphism(target, T, Matrix.from_sparse_columns(F, T.dim, Bij.dim, alt_cols)),
    )


@dataclass
class ChiData:
    sweedler: SweedlerCoring
    phis: list
    pair_tensors: DirectSumBimodule
    theta: BimoduleMorphism
    theta_inverse: BimoduleMorphism
    Phi: BimoduleMorphism
    chi: BimoduleMorphism
    chi_direct: BimoduleMorphism
    chi_inverse: BimoduleMorphism


def _chi_data(cov: Covering) -> ChiData:
    cc = cov.coring
    C = cc.carrier
    A = cov.total
    sw = cov.sweedler
    T = sw.carrier
    F = cov.field
    phis = [_phi(cov, i, j, C.summands[n]) for n, (i, j) in enumerate(cc.pairs)]
    S = DirectSumBimodule([p.tensor for p in phis])

    def theta_pair(a, a2):
        out: dict = {}
        for n, (i, j) in enumerate(cc.pairs):
            ai = A.projections[i].matrix.apply_sparse(a)
            aj = A.projections[j].matrix.apply_sparse(a2)
            out.update(_shift(phis[n].tensor.tensor_sparse(ai, aj), S.offsets[n]))
        return out

    theta_m = BimoduleMorphism(T, S, T.descend(S.dim, theta_pair))
    cols = []
    for n, (i, j) in enumerate(cc.pairs):
        for u, v in phis[n].tensor.lifts:
            cols.append(T.tensor_sparse(_shift(u, A.offsets[i]), _shift(v, A.offsets[j])))
    theta_inv = BimoduleMorphism(S, T, Matrix.from_sparse_columns(F, T.dim, S.dim, cols))
    Phi = BimoduleMorphism(S, C, block_diag([p.forward.matrix for p in phis], F))
    chi = Phi @ theta_m

    def chi_pair(a, a2):
        out: dict = {}
        for n, (i, j) in enumerate(cc.pairs):
            Bij = cov.quotient(i, j)
            x = cov.to_component(i, [j]).matrix.apply_sparse(a)
            y = cov.to_component(j, [i]).matrix.apply_sparse(a2)
            out.update(_shift(Bij.mul_sparse(x, y), C.offsets[n]))
        return out

    chi_direct = BimoduleMorphism(T, C, T.descend(C.dim, chi_pair))
    inv_cols = [to_sparse(chi_inverse_formula(cov, C.basis_vector(c))) for c in range(C.dim)]
    chi_inv = BimoduleMorphism(C, T, Matrix.from_sparse_columns(F, T.dim, C.dim, inv_cols))
    return ChiData(sw, phis, S, theta_m, theta_inv, Phi, chi, chi_direct, chi_inv)


def chi_inverse_formula(cov: Covering, x: Sequence) -> tuple:
    """``(π_ij(b_ij)) -> Σ_k (π_i(b_ik))_i ⊗_B (π_j(δ_jk))_j`` in ``A ⊗_B A``."""
    cc = cov.coring
    A = cov.total
    T = cov.sweedler.carrier
    b = cc.representatives(x)
    total: dict = {}
    for k in cov.index:
        left: dict = {}
        for i in cov.index:
            left.update(_shift(cov.projection(i).matrix.apply_sparse(to_sparse(b[i, k])), A.offsets[i]))
        right = to_sparse(A.component_unit(k))
        axpy(total, cov.field.one, T.tensor_sparse(left, right))
    return to_dense(cov.field, total, T.dim)


def theta(cov: Covering) -> tuple[BimoduleMorphism, BimoduleMorphism]:
    d = cov.chi_data
    return d.theta, d.theta_inverse


def chi(cov: Covering) -> ChiData:
    return cov.chi_data


def _is_identity(m: Matrix) -> bool:
    return m.nrows == m.ncols and m == Matrix.identity(m.field, m.nrows)


def chi_check(cov: Covering) -> Verdict:
    """Φ_ij, Θ and χ are bijective with their explicit inverses."""
    d = cov.chi_data
    cc = cov.coring
    parts = []
    for p in d.phis:
        ok = (
            p.forward.is_bijective()
            and _is_identity(p.forward.matrix @ p.inverse.matrix)
            and _is_identity(p.inverse.matrix @ p.forward.matrix)
            and p.inverse.matrix == p.inverse_alt.matrix
            and p.forward.verify().ok
        )
        parts.append(Verdict(ok, f"phi[{p.i + 1},{p.j + 1}]", None if ok else (p.i + 1, p.j + 1)))
    parts.append(
        Verdict(
            _is_identity(d.theta.matrix @ d.theta_inverse.matrix) and _is_identity(d.theta_inverse.matrix @ d.theta.matrix),
            "theta inverse",
        )
    )
    parts.append(Verdict(d.chi.matrix == d.chi_direct.matrix, "chi = Phi o Theta"))
    parts.append(
        Verdict(
            _is_identity(d.chi.matrix @ d.chi_inverse.matrix) and _is_identity(d.chi_inverse.matrix @ d.chi.matrix),
            "chi inverse formula",
        )
    )
    parts.append(d.chi.verify())
    parts.append(Verdict(d.chi(d.sweedler.grouplike()) == cc.grouplike, "chi(1 ⊗ 1) = g"))
    return combine("chi", parts)


def sweedler_transport_check(cov: Covering, coring: Coring | None = None) -> Verdict:
    """``(χ ⊗ χ) Δ_sw = Δ_C χ`` and ``ε_C χ = ε_sw``."""
    d = cov.chi_data
    target = coring or cov.coring.coring
    return coring_morphism_check(d.chi, d.sweedler, target)


def four_forms_check(cov: Covering) -> Verdict:
    cc = cov.coring
    for c in range(cc.dim):
        x = cc.carrier.basis_vector(c)
        forms = coproduct_four_forms(cc, x)
        delta = cc.coring.coproduct(x)
        for n, f in enumerate(forms):
            if f != delta:
                return Verdict(False, "four coproduct forms", c, f"form {n + 1} disagrees on basis element {c}")
    return Verdict(True, "four coproduct forms")


def triple_check(cov: Covering) -> Verdict:
    """``ν: D -> C ⊗_A C`` is a bijective bimodule map."""
    cc = cov.coring
    v = cc.nu.verify()
    if not v:
        return Verdict(False, "triple identification", v.witness, v.detail)
    if not cc.nu.is_bijective():
        return Verdict(False, "triple identification", None, f"rank {cc.nu.rank()} for {cc.triple.dim} -> {cc.square.dim}")
    return Verdict(True, "triple identification")


# -- κ ⊗ A ------------------------------------------------------------------


def kappa_tensor_check(cov: Covering) -> Verdict:
    """``κ ⊗_B A`` and ``A ⊗_B κ`` are bijective, as are the multiplications into ``A``."""
    comp = cov.completion
    B, A = cov.algebra, cov.total
    Bc = comp.algebra
    regB = regular_bimodule(B)
    BcB = restrict(regular_bimodule(Bc), left=comp.kappa_c, right=comp.kappa_c)
    kap = BimoduleMorphism(regB, BcB, comp.kappa_c.matrix)
    regA = regular_bimodule(A)
    A_BA = restrict(regA, left=cov.iota)
    A_AB = restrict(regA, right=cov.iota)
    idl = BimoduleMorphism.identity(A_BA)
    idr = BimoduleMorphism.identity(A_AB)
    left = tensor_morphisms(kap, idl)
    right = tensor_morphisms(idr, kap)
    incl = comp.algebra.inclusion.matrix

    mult_l = left.target.descend(A.dim, lambda b, a: A.mul_sparse(incl.apply_sparse(b), a))
    mult_r = right.target.descend(A.dim, lambda a, b: A.mul_sparse(a, incl.apply_sparse(b)))

    def bij(name, m: Matrix):
        ok = m.nrows == m.ncols and m.rank() == m.nrows
        if ok:
            return Verdict(True, name)
        return Verdict(False, name, (m.rank(), m.nrows, m.ncols), f"{name} has rank {m.rank()} as a {m.nrows}x{m.ncols} matrix")

    return combine(
        "kappa tensor",
        [
            bij("kappa ⊗_B A", left.matrix),
            bij("A ⊗_B kappa", right.matrix),
            bij("B_c ⊗_B A -> A", mult_l),
            bij("A ⊗_B B_c -> A", mult_r),
        ],
    )


# -- projectivity -----------------------------------------------------------


def splitting_section(B: Algebra, M: Bimodule, side: str = "left") -> Matrix | None:
    """Module section of the free cover ``B^n -> M``, or None when none exists.

    Generators are picked greedily from the basis of ``M``.
    """
    F = B.field
    if side == "left":
        if M.left is not B:
            raise ValueError("module is not a left module over this algebra")
        act, R = M.left_action, B
    elif side == "right":
        if M.right is not B:
            raise ValueError("module is not a right module over this algebra")
        act, R = M.right_action, opposite(B)
    else:
        raise ValueError("side must be 'left' or 'right'")
    m, b = M.dim, R.dim
    if m == 0:
        return Matrix.zeros(F, 0, 0)
    from .linalg import Echelon

    sub = Echelon(F, m)
    gens = []
    for c in range(m):
        if sub.reduce({c: F.one}):
            gens.append(c)
            for i in range(b):
                sub.add(act(i).apply_sparse({c: F.one}))
        if sub.rank == m:
            break
    n = len(gens)
    fdim = n * b
    # p: F -> M, column (t, i) = e_i . m_t
    pcols = [act(i).apply_sparse({gens[t]: F.one}) for t in range(n) for i in range(b)]
    P = Matrix.from_sparse_columns(F, m, fdim, pcols)
    Lf = [block_diag([R.left_mult(i)] * n, F) for i in range(b)]
    Lm = [act(i) for i in range(b)]

    def var(r, c):
        return r * m + c

    def equations():
        for i in range(b):
            Mi, Fi = Lm[i], Lf[i]
            mcols = Mi.sparse_columns()
            for r in range(fdim):
                frow = Fi.sparse_row(r)
                for c in range(m):
                    eq: dict = {}
                    for k, v in mcols[c].items():
                        eq[var(r, k)] = v
                    for k, v in frow.items():
                        w = eq.get(var(k, c), 0) - v
                        if w:
                            eq[var(k, c)] = w
                        else:
                            eq.pop(var(k, c), None)
                    if eq:
                        yield eq, 0
        for a in range(m):
            prow = P.sparse_row(a)
            for c in range(m):
                yield {var(r, c): v for r, v in prow.items()}, (F.one if a == c else F.zero)

    sol = solve_sparse(F, fdim * m, equations())
    if sol is None:
        return None
    rows = [{} for _ in range(fdim)]
    for k, v in sol.items():
        r, c = divmod(k, m)
        rows[r][c] = v
    return Matrix.from_sparse_rows(F, fdim, m, rows)


def is_projective(B: Algebra, M: Bimodule, side: str = "left") -> Verdict:
    sec = splitting_section(B, M, side)
    name = f"{side} projective"
    if sec is None:
        return Verdict(False, name, "splitting system inconsistent", "free cover does not split")
    return Verdict(True, name)


# -- report -----------------------------------------------------------------


@dataclass
class CoveringReport:
    dims: dict
    facts: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "dims": dict(self.dims),
            "facts": dict(self.facts),
            "checks": [
                {
                    "name": c.name,
                    "passed": c.ok,
                    "witness": _jsonable(c.witness),
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return str(x)


def covering_report(cov: Covering, projectivity: bool = True) -> CoveringReport:
    """Run every check on a covering and collect dimensions and verdicts."""
    B, A = cov.algebra, cov.total
    cc = cov.coring
    comp = cov.completion
    complete = is_complete(cov)
    checks = []

    injective = cov.iota.is_injective()
    checks.append(Verdict(injective, "kappa injective"))
    checks.append(verify_coring(cc.coring))
    checks.append(is_grouplike(cc.coring, cc.grouplike))
    checks.append(four_forms_check(cov))
    checks.append(triple_check(cov))
    checks.append(chi_check(cov))
    checks.append(sweedler_transport_check(cov))
    checks.append(kappa_tensor_check(cov))

    co = coinvariants(cc.coring, cc.grouplike)
    kB = cov.iota.image()
    checks.append(Verdict(co.space == comp.space, "coinvariants = completion"))
    gv = galois_verdict(cc.coring, cc.grouplike)
    checks.append(gv.certificate)
    co_is_kB = co.space == kB
    ok31 = (not complete) or (co_is_kB and gv.is_galois)
    checks.append(Verdict(ok31, "complete implies galois", None if ok31 else "complete covering without galois structure"))

    facts = {
        "complete": complete,
        "galois": gv.is_galois,
        "coinvariants_equal_kappa_B": co_is_kB,
        "chi_bijective": cov.chi_data.chi.is_bijective(),
    }
    if projectivity:
        regA = regular_bimodule(A)
        lp = is_projective(B, restrict(regA, left=cov.iota), "left")
        rp = is_projective(B, restrict(regA, right=cov.iota), "right")
        facts["projective_left"] = lp.ok
        facts["projective_right"] = rp.ok
        ok5 = complete or not (lp.ok or rp.ok)
        checks.append(Verdict(ok5, "projective implies complete", None if ok5 else "projective but incomplete"))
    else:
        facts["projective_left"] = None
        facts["projective_right"] = None

    dims = {
        "B": B.dim,
        "A": A.dim,
        "C": cc.dim,
        "B_c": comp.dim,
        "D": cc.triple.dim,
        "A_tensor_B_A": cov.sweedler.dim,
        "coinvariants": co.dim,
        "ideals": cov.size,
    }
    return CoveringReport(dims, facts, checks)
