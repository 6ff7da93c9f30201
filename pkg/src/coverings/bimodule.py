"""Bimodules and balanced tensor products.

``M ⊗_R N`` is computed on the Peirce-reduced space
``P = ⊕_t M e_t ⊗ e_t N`` where ``(e_t)`` is the idempotent family carried by
``R``; the balancing relations are then ``m r ⊗ n - m ⊗ r n`` for ``m`` in
``M e_s``, ``r`` in ``e_s R e_t`` and ``n`` in ``e_t N``.  With ``(1,)`` as
the family this is the textbook quotient of ``M ⊗ N``.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .algebra import Algebra, AlgebraMorphism
from .linalg import (
    Echelon,
    Matrix,
    QuotientSpace,
    Subspace,
    axpy,
    block_diag,
    image,
    to_dense,
    to_sparse,
)
from .verdict import Verdict


def _sum_matrix(field, n, mats_coeffs) -> Matrix:
    rows = [{} for _ in range(n)]
    for c, m in mats_coeffs:
        for i in range(m.nrows):
            axpy(rows[i], c, m.sparse_row(i))
    return Matrix.from_sparse_rows(field, n, n, rows)


def _items(a):
    pairs = a.items() if isinstance(a, dict) else enumerate(a)
    return [(i, c) for i, c in pairs if c]


class Bimodule:
    """An (L, R)-bimodule of dimension ``dim``.

    ``left_action`` / ``right_action`` give one matrix per basis element of
    ``L`` / ``R`` (``m -> e_i m`` and ``m -> m e_i``), either as a sequence or
    as a callable producing them on demand.
    """

    def __init__(self, left: Algebra, right: Algebra, dim: int, left_action, right_action):
        if left.field != right.field:
            raise ValueError("left and right algebras over different fields")
        self.left = left
        self.right = right
        self.dim = dim
        self._left_src = left_action
        self._right_src = right_action
        self._lcache: dict[int, Matrix] = {}
        self._rcache: dict[int, Matrix] = {}

    @property
    def field(self):
        return self.left.field

    def _get(self, src, cache, i):
        m = cache.get(i)
        if m is None:
            m = src(i) if callable(src) else src[i]
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"action matrix of shape {m.shape} on a module of dim {self.dim}")
            cache[i] = m
        return m

    def left_action(self, i: int) -> Matrix:
        return self._get(self._left_src, self._lcache, i)

    def right_action(self, i: int) -> Matrix:
        return self._get(self._right_src, self._rcache, i)

    def left_matrix(self, a) -> Matrix:
        """Matrix of ``m -> a m``; ``a`` may be dense or a sparse dict."""
        return _sum_matrix(self.field, self.dim, [(c, self.left_action(i)) for i, c in _items(a)])

    def right_matrix(self, a) -> Matrix:
        return _sum_matrix(self.field, self.dim, [(c, self.right_action(i)) for i, c in _items(a)])

    def act_left(self, a: Sequence, m: Sequence) -> tuple:
        out: dict = {}
        ms = to_sparse(m)
        for i, c in _items(a):
            if c:
                axpy(out, c, self.left_action(i).apply_sparse(ms))
        return to_dense(self.field, out, self.dim)

    def act_right(self, m: Sequence, a: Sequence) -> tuple:
        out: dict = {}
        ms = to_sparse(m)
        for i, c in _items(a):
            if c:
                axpy(out, c, self.right_action(i).apply_sparse(ms))
        return to_dense(self.field, out, self.dim)

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int) -> tuple:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def verify(self) -> Verdict:
        """Unital representations on both sides that commute with each other."""
        ident = Matrix.identity(self.field, self.dim)
        for side, alg, act in (("left", self.left, self.left_action), ("right", self.right, self.right_action)):
            if self.dim and (self.left_matrix if side == "left" else self.right_matrix)(alg.unit) != ident:
                return Verdict(False, f"{side} unit", None, "unit does not act as identity")
            for i in range(alg.dim):
                for j in range(alg.dim):
                    prod = to_dense(self.field, alg.product(i, j), alg.dim)
                    got = (self.left_matrix if side == "left" else self.right_matrix)(prod)
                    want = act(i) @ act(j) if side == "left" else act(j) @ act(i)
                    if got != want:
                        return Verdict(False, f"{side} action", (i, j), "action is not multiplicative")
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                if self.left_action(i) @ self.right_action(j) != self.right_action(j) @ self.left_action(i):
                    return Verdict(False, "commuting actions", (i, j), "(l m) r != l (m r)")
        return Verdict(True, "bimodule")

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


def regular_bimodule(alg: Algebra) -> Bimodule:
    mod = Bimodule(alg, alg, alg.dim, alg.left_mult, alg.right_mult)
    mod.regular_of = alg
    return mod


def restrict(mod: Bimodule, left: AlgebraMorphism | None = None, right: AlgebraMorphism | None = None) -> Bimodule:
    """Restriction of scalars along algebra maps into ``mod.left`` / ``mod.right``."""
    if left is not None and left.target is not mod.left:
        raise ValueError("left morphism does not land in the module's left algebra")
    if right is not None and right.target is not mod.right:
        raise ValueError("right morphism does not land in the module's right algebra")
    lsrc = mod.left_action if left is None else (lambda i: mod.left_matrix(left.matrix.column(i)))
    rsrc = mod.right_action if right is None else (lambda i: mod.right_matrix(right.matrix.column(i)))
    return Bimodule(
        mod.left if left is None else left.source,
        mod.right if right is None else right.source,
        mod.dim,
        lsrc,
        rsrc,
    )


class DirectSumBimodule(Bimodule):
    def __init__(self, summands: Sequence[Bimodule]):
        if not summands:
            raise ValueError("direct sum of no bimodules")
        L, R = summands[0].left, summands[0].right
        if any(s.left is not L or s.right is not R for s in summands):
            raise ValueError("summands are modules over different algebras")
        self.summands = tuple(summands)
        offs = []
        off = 0
        for s in summands:
            offs.append(off)
            off += s.dim
        self.offsets = tuple(offs)
        super().__init__(
            L,
            R,
            off,
            lambda i: block_diag([s.left_action(i) for s in self.summands], L.field),
            lambda i: block_diag([s.right_action(i) for s in self.summands], L.field),
        )

    def embed(self, n: int, x: Sequence) -> tuple:
        v = list(self.zero_vector())
        v[self.offsets[n] : self.offsets[n] + len(x)] = x
        return tuple(v)

    def split(self, x: Sequence) -> list[tuple]:
        return [tuple(x[o : o + s.dim]) for o, s in zip(self.offsets, self.summands)]


def direct_sum_bimodules(summands: Sequence[Bimodule]) -> DirectSumBimodule:
    return DirectSumBimodule(summands)


class BimoduleMorphism:
    def __init__(self, source: Bimodule, target: Bimodule, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix of shape {matrix.shape} for {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, mod: Bimodule) -> "BimoduleMorphism":
        return cls(mod, mod, Matrix.identity(mod.field, mod.dim))

    def __call__(self, x: Sequence) -> tuple:
        return self.matrix.apply(x)

    def __matmul__(self, other: "BimoduleMorphism") -> "BimoduleMorphism":
        if other.target.dim != self.source.dim:
            raise ValueError("morphisms are not composable")
        return BimoduleMorphism(other.source, self.target, self.matrix @ other.matrix)

    def is_left_linear(self) -> bool:
        s, t = self.source, self.target
        return all(
            self.matrix @ s.left_action(i) == t.left_action(i) @ self.matrix for i in range(s.left.dim)
        )

    def is_right_linear(self) -> bool:
        s, t = self.source, self.target
        return all(
            self.matrix @ s.right_action(i) == t.right_action(i) @ self.matrix for i in range(s.right.dim)
        )

    def verify(self) -> Verdict:
        s, t = self.source, self.target
        if s.left is not t.left or s.right is not t.right:
            return Verdict(False, "bilinear", None, "source and target are over different algebras")
        for i in range(s.left.dim):
            if self.matrix @ s.left_action(i) != t.left_action(i) @ self.matrix:
                return Verdict(False, "left linear", i, "f(a m) != a f(m)")
        for i in range(s.right.dim):
            if self.matrix @ s.right_action(i) != t.right_action(i) @ self.matrix:
                return Verdict(False, "right linear", i, "f(m a) != f(m) a")
        return Verdict(True, "bimodule morphism")

    def rank(self) -> int:
        return self.matrix.rank()

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim

    def inverse(self) -> "BimoduleMorphism":
        if not self.is_bijective():
            raise ValueError("morphism is not invertible")
        n = self.source.dim
        field = self.source.field
        # row-reduce [M | I]
        ech = Echelon(field, 2 * n)
        for i in range(n):
            row = dict(self.matrix.sparse_row(i))
            row[n + i] = field.one
            ech.add(row)
        rows = [{j - n: v for j, v in ech.rows[p].items() if j >= n} for p in range(n)]
        return BimoduleMorphism(self.target, self.source, Matrix.from_sparse_rows(field, n, n, rows))

    def __repr__(self):
        return f"BimoduleMorphism({self.source.dim} -> {self.target.dim})"


class BalancedTensor(Bimodule):
    """``M ⊗_R N`` as an (M.left, N.right)-bimodule.

    Every carrier basis vector is the class of a pure tensor ``u ⊗ v`` with
    ``u`` in ``M e_t`` and ``v`` in ``e_t N``; ``lifts[c]`` holds that pair.
    """

    def __init__(self, M: Bimodule, N: Bimodule):
        if M.right is not N.left:
            raise ValueError("right algebra of M is not the left algebra of N")
        R = M.right
        field = M.field
        self.left_factor = M
        self.right_factor = N
        self.middle = R
        blocks = []
        off = 0
        for e in R.idempotents:
            U, ubasis = _peirce(M.right_matrix(e))
            V, vbasis = _peirce(N.left_matrix(e))
            blocks.append((off, U, ubasis, V, vbasis))
            off += len(ubasis) * len(vbasis)
        self._blocks = blocks
        self.pre_dim = off
        ech = Echelon(field, off)
        self.relation_count = 0
        fam = R.idempotents
        for s, es in enumerate(fam):
            for t, et in enumerate(fam):
                bs, bt = blocks[s], blocks[t]
                if not bs[2] or not bt[4]:
                    continue
                for r in _corner(R, es, et):
                    Mr = M.right_matrix(r)
                    rN = N.left_matrix(r)
                    rvs = [bs[3].apply_sparse(rN.apply_sparse(v)) for v in bt[4]]
                    nb, ns = len(bt[4]), len(bs[4])
                    for a, u in enumerate(bs[2]):
                        ur = bt[1].apply_sparse(Mr.apply_sparse(u))
                        for b, rv in enumerate(rvs):
                            rel: dict = {}
                            for a2, x in ur.items():
                                rel[bt[0] + a2 * nb + b] = x
                            for b2, y in rv.items():
                                k = bs[0] + a * ns + b2
                                w = rel.get(k, 0) - y
                                if w:
                                    rel[k] = w
                                else:
                                    rel.pop(k, None)
                            self.relation_count += 1
                            if rel:
                                ech.add(rel)
        self.carrier = QuotientSpace(off, Subspace.from_echelon(ech))
        lifts = []
        for j in self.carrier.free:
            for boff, U, ub, V, vb in blocks:
                size = len(ub) * len(vb)
                if boff <= j < boff + size:
                    a, b = divmod(j - boff, len(vb))
                    lifts.append((ub[a], vb[b]))
                    break
        self.lifts = tuple(lifts)
        super().__init__(M.left, N.right, self.carrier.dim, self._left_act, self._right_act)

    def tensor_sparse(self, m: dict, n: dict) -> dict:
        pre: dict = {}
        for boff, U, ub, V, vb in self._blocks:
            if not ub or not vb:
                continue
            x = U.apply_sparse(m)
            if not x:
                continue
            y = V.apply_sparse(n)
            nb = len(vb)
            for a, xa in x.items():
                for b, yb in y.items():
                    pre[boff + a * nb + b] = xa * yb
        return self.carrier.project_sparse(pre)

    def tensor(self, m: Sequence, n: Sequence) -> tuple:
        """Class of ``m ⊗ n``."""
        if len(m) != self.left_factor.dim or len(n) != self.right_factor.dim:
            raise ValueError("factor vectors of the wrong length")
        return to_dense(self.field, self.tensor_sparse(to_sparse(m), to_sparse(n)), self.dim)

    def descend(self, target_dim: int, pairing: Callable[[dict, dict], dict]) -> Matrix:
        """Matrix of the map ``class(m ⊗ n) -> pairing(m, n)`` (sparse in, sparse out).

        ``pairing`` must be balanced; see :func:`check_balanced`.
        """
        cols = [pairing(u, v) for u, v in self.lifts]
        return Matrix.from_sparse_columns(self.field, target_dim, self.dim, cols)

    def _left_act(self, i: int) -> Matrix:
        L = self.left_factor.left_action(i)
        return self.descend(self.dim, lambda u, v: self.tensor_sparse(L.apply_sparse(u), v))

    def _right_act(self, i: int) -> Matrix:
        Rm = self.right_factor.right_action(i)
        return self.descend(self.dim, lambda u, v: self.tensor_sparse(u, Rm.apply_sparse(v)))

    def relation_span_dim(self) -> int:
        return self.carrier.killed.dim


def _peirce(proj: Matrix):
    """Basis of the image of an idempotent matrix and the coordinate map onto it."""
    img = image(proj)
    coords = proj.select_rows(img.pivots)
    return coords, img.sparse_vectors()


def _corner(R: Algebra, es, et) -> list[dict]:
    """Basis of ``e_s R e_t``."""
    es_, et_ = to_sparse(es), to_sparse(et)
    one = R.field.one
    vecs = [R.mul_sparse(R.mul_sparse(es_, {i: one}), et_) for i in range(R.dim)]
    return Subspace.span(R.field, R.dim, [v for v in vecs if v]).sparse_vectors()


def balanced_tensor(M: Bimodule, N: Bimodule) -> BalancedTensor:
    return BalancedTensor(M, N)


def check_balanced(T: BalancedTensor, pairing: Callable[[dict, dict], dict]) -> Verdict:
    """Exhaustive check ``pairing(m r, n) == pairing(m, r n)`` on basis triples."""
    M, N, R = T.left_factor, T.right_factor, T.middle
    one = M.field.one
    for i in range(R.dim):
        Mr, rN = M.right_action(i), N.left_action(i)
        for a in range(M.dim):
            mr = Mr.apply_sparse({a: one})
            for b in range(N.dim):
                if pairing(mr, {b: one}) != pairing({a: one}, rN.apply_sparse({b: one})):
                    return Verdict(False, "balanced", (a, i, b), "F(m r, n) != F(m, r n)")
    return Verdict(True, "balanced")


def tensor_morphisms(
    f: BimoduleMorphism,
    g: BimoduleMorphism,
    source: BalancedTensor | None = None,
    target: BalancedTensor | None = None,
) -> BimoduleMorphism:
    """``f ⊗ g`` between balanced tensors over the same middle algebra."""
    if f.source.right is not g.source.left or f.target.right is not g.target.left:
        raise ValueError("f and g do not share a middle algebra")
    if f.source.right is not f.target.right:
        raise ValueError("f does not preserve the middle algebra")
    if not f.is_right_linear():
        raise ValueError("f is not right linear over the middle algebra; f ⊗ g is ill-defined")
    if not g.is_left_linear():
        raise ValueError("g is not left linear over the middle algebra; f ⊗ g is ill-defined")
    source = source or BalancedTensor(f.source, g.source)
    target = target or BalancedTensor(f.target, g.target)
    if source.left_factor is not f.source or source.right_factor is not g.source:
        raise ValueError("source tensor does not match f and g")
    if target.left_factor is not f.target or target.right_factor is not g.target:
        raise ValueError("target tensor does not match f and g")
    fm, gm = f.matrix, g.matrix
    mat = source.descend(target.dim, lambda u, v: target.tensor_sparse(fm.apply_sparse(u), gm.apply_sparse(v)))
    return BimoduleMorphism(source, target, mat)


def associate(
    M: Bimodule,
    N: Bimodule,
    P: Bimodule,
    NP: BalancedTensor | None = None,
    MN: BalancedTensor | None = None,
    M_NP: BalancedTensor | None = None,
    MN_P: BalancedTensor | None = None,
) -> tuple[BimoduleMorphism, BimoduleMorphism]:
    """``M ⊗ (N ⊗ P) -> (M ⊗ N) ⊗ P`` and its inverse."""
    NP = NP or BalancedTensor(N, P)
    MN = MN or BalancedTensor(M, N)
    M_NP = M_NP or BalancedTensor(M, NP)
    MN_P = MN_P or BalancedTensor(MN, P)

    def fwd(u, w):
        out: dict = {}
        for c, coef in w.items():
            n, p = NP.lifts[c]
            axpy(out, coef, MN_P.tensor_sparse(MN.tensor_sparse(u, n), p))
        return out

    def bwd(w, p):
        out: dict = {}
        for c, coef in w.items():
            m, n = MN.lifts[c]
            axpy(out, coef, M_NP.tensor_sparse(m, NP.tensor_sparse(n, p)))
        return out

    f = BimoduleMorphism(M_NP, MN_P, M_NP.descend(MN_P.dim, fwd))
    g = BimoduleMorphism(MN_P, M_NP, MN_P.descend(M_NP.dim, bwd))
    return f, g


def left_unitor(T: BalancedTensor) -> BimoduleMorphism:
    """``R ⊗_R N -> N``, ``a ⊗ n -> a n``."""
    R = getattr(T.left_factor, "regular_of", None)
    if R is None or R is not T.middle:
        raise ValueError("left factor is not the regular bimodule of the middle algebra")
    N = T.right_factor

    def pair(a, n):
        out: dict = {}
        for i, c in a.items():
            axpy(out, c, N.left_action(i).apply_sparse(n))
        return out

    return BimoduleMorphism(T, N, T.descend(N.dim, pair))


def right_unitor(T: BalancedTensor) -> BimoduleMorphism:
    """``M ⊗_R R -> M``, ``m ⊗ a -> m a``."""
    R = getattr(T.right_factor, "regular_of", None)
    if R is None or R is not T.middle:
        raise ValueError("right factor is not the regular bimodule of the middle algebra")
    M = T.left_factor

    def pair(m, a):
        out: dict = {}
        for i, c in a.items():
            axpy(out, c, M.right_action(i).apply_sparse(m))
        return out

    return BimoduleMorphism(T, M, T.descend(M.dim, pair))
