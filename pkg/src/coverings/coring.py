"""Corings over an algebra: axioms, Sweedler corings, grouplikes, Galois maps."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, AlgebraMorphism, Subalgebra
from .bimodule import (
    BalancedTensor,
    Bimodule,
    BimoduleMorphism,
    associate,
    left_unitor,
    regular_bimodule,
    restrict,
    right_unitor,
    tensor_morphisms,
)
from .linalg import Matrix, axpy, kernel, to_sparse
from .verdict import Verdict, combine


class Coring:
    """An A-coring: carrier bimodule with coproduct into ``carrier ⊗_A carrier``.

    ``square`` is the balanced tensor the coproduct lands in and ``regular``
    the regular A-bimodule the counit lands in.
    """

    def __init__(
        self,
        base: Algebra,
        carrier: Bimodule,
        coproduct: BimoduleMorphism,
        counit: BimoduleMorphism,
    ):
        if carrier.left is not base or carrier.right is not base:
            raise ValueError("carrier is not an A-bimodule over the base algebra")
        square = coproduct.target
        if not isinstance(square, BalancedTensor) or square.left_factor is not carrier or square.right_factor is not carrier:
            raise ValueError("coproduct must land in carrier ⊗_A carrier")
        if getattr(counit.target, "regular_of", None) is not base:
            raise ValueError("counit must land in the regular bimodule of the base")
        self.base = base
        self.carrier = carrier
        self.square = square
        self.regular = counit.target
        self.coproduct = coproduct
        self.counit = counit

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def with_coproduct(self, matrix: Matrix) -> "Coring":
        """Same coring data with a replaced coproduct matrix (used for mutation tests)."""
        return Coring(self.base, self.carrier, BimoduleMorphism(self.carrier, self.square, matrix), self.counit)

    def __repr__(self):
        return f"Coring(dim={self.dim} over {self.base!r})"


def _compare(name: str, lhs: Matrix, rhs: Matrix, detail: str) -> Verdict:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Verdict(True, name)
    return Verdict(False, name, diff[1], f"{detail} fails on basis element {diff[1]}")


def verify_coring(c: Coring) -> Verdict:
    """Bilinearity of Δ and ε, both counit laws, and coassociativity."""
    dv, ev = c.coproduct.verify(), c.counit.verify()
    checks = [
        Verdict(dv.ok, "coproduct bilinear", dv.witness, dv.detail),
        Verdict(ev.ok, "counit bilinear", ev.witness, ev.detail),
    ]
    if not all(checks):
        return combine("coring", checks)
    C, CC = c.carrier, c.square
    ident = Matrix.identity(C.field, C.dim)
    idC = BimoduleMorphism.identity(C)
    eps_id = tensor_morphisms(c.counit, idC, source=CC)
    id_eps = tensor_morphisms(idC, c.counit, source=CC)
    left = left_unitor(eps_id.target).matrix @ eps_id.matrix @ c.coproduct.matrix
    right = right_unitor(id_eps.target).matrix @ id_eps.matrix @ c.coproduct.matrix
    checks.append(_compare("left counit", left, ident, "(ε ⊗ id)Δ = id"))
    checks.append(_compare("right counit", right, ident, "(id ⊗ ε)Δ = id"))

    d_id = tensor_morphisms(c.coproduct, idC, source=CC)
    id_d = tensor_morphisms(idC, c.coproduct, source=CC)
    fwd, _ = associate(C, C, C, NP=CC, MN=CC, M_NP=id_d.target, MN_P=d_id.target)
    lhs = d_id.matrix @ c.coproduct.matrix
    rhs = fwd.matrix @ id_d.matrix @ c.coproduct.matrix
    checks.append(_compare("coassociativity", lhs, rhs, "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ"))
    return combine("coring", checks)


class SweedlerCoring(Coring):
    """``A ⊗_B A`` for an algebra map ``ι: B -> A``."""

    def __init__(self, iota: AlgebraMorphism):
        A = iota.target
        self.extension = iota
        reg = regular_bimodule(A)
        self.left_module = restrict(reg, right=iota)
        self.right_module = restrict(reg, left=iota)
        T = BalancedTensor(self.left_module, self.right_module)
        square = BalancedTensor(T, T)
        unit = to_sparse(A.unit)
        delta = T.descend(
            square.dim,
            lambda u, v: square.tensor_sparse(T.tensor_sparse(u, unit), T.tensor_sparse(unit, v)),
        )
        eps = T.descend(A.dim, A.mul_sparse)
        super().__init__(
            A,
            T,
            BimoduleMorphism(T, square, delta),
            BimoduleMorphism(T, reg, eps),
        )

    def grouplike(self) -> tuple:
        """``1 ⊗_B 1``."""
        return self.carrier.tensor(self.base.unit, self.base.unit)


def sweedler_coring(iota: AlgebraMorphism) -> SweedlerCoring:
    v = iota.verify()
    if not v:
        raise ValueError(f"extension is not a unital algebra map: {v.name} fails at {v.witness}")
    return SweedlerCoring(iota)


def is_grouplike(c: Coring, g) -> Verdict:
    g = tuple(c.base.field(x) for x in g)
    if len(g) != c.dim:
        raise ValueError("element does not live in the coring")
    if c.coproduct(g) != c.square.tensor(g, g):
        return Verdict(False, "grouplike", "coproduct", "Δ(g) != g ⊗ g")
    if c.counit(g) != c.base.unit:
        return Verdict(False, "grouplike", "counit", "ε(g) != 1")
    return Verdict(True, "grouplike")


class CoinvariantAlgebra(Subalgebra):
    def __init__(self, coring: Coring, grouplike, space):
        super().__init__(coring.base, space)
        self.coring = coring
        self.grouplike = tuple(grouplike)


def coinvariants(c: Coring, g) -> CoinvariantAlgebra:
    """``{b in A : b g = g b}`` with its algebra structure."""
    v = is_grouplike(c, g)
    if not v:
        raise ValueError(f"g is not grouplike ({v.detail})")
    A, C = c.base, c.carrier
    gs = to_sparse(g)
    cols = []
    for i in range(A.dim):
        col = dict(C.left_action(i).apply_sparse(gs))
        axpy(col, -A.field.one, C.right_action(i).apply_sparse(gs))
        cols.append(col)
    space = kernel(Matrix.from_sparse_columns(A.field, C.dim, A.dim, cols))
    return CoinvariantAlgebra(c, g, space)


@dataclass
class GaloisVerdict:
    is_galois: bool
    can: BimoduleMorphism
    coinvariants: CoinvariantAlgebra
    sweedler: SweedlerCoring
    certificate: Verdict
    witness: object = None

    @property
    def coinvariant_dim(self) -> int:
        return self.coinvariants.dim


def canonical_map(c: Coring, g, sw: SweedlerCoring) -> BimoduleMorphism:
    """``A ⊗_B A -> C``, ``a ⊗ a' -> a g a'``."""
    C = c.carrier
    gs = to_sparse(g)

    def pair(a, b):
        out: dict = {}
        for i, x in a.items():
            ag = C.left_action(i).apply_sparse(gs)
            for j, y in b.items():
                axpy(out, x * y, C.right_action(j).apply_sparse(ag))
        return out

    return BimoduleMorphism(sw.carrier, C, sw.carrier.descend(C.dim, pair))


def coring_morphism_check(f: BimoduleMorphism, source: Coring, target: Coring) -> Verdict:
    """``(f ⊗ f) Δ = Δ f`` and ``ε f = ε``."""
    ff = tensor_morphisms(f, f, source=source.square, target=target.square)
    parts = [
        f.verify(),
        _compare("coproduct compatible", ff.matrix @ source.coproduct.matrix, target.coproduct.matrix @ f.matrix, "(f⊗f)Δ = Δf"),
        _compare("counit compatible", target.counit.matrix @ f.matrix, source.counit.matrix, "εf = ε"),
    ]
    return combine("coring morphism", parts)


def galois_verdict(c: Coring, g) -> GaloisVerdict:
    """Decide whether ``can: A ⊗_B A -> C`` is bijective, ``B`` = g-coinvariants."""
    Bc = coinvariants(c, g)
    sw = sweedler_coring(Bc.inclusion)
    can = canonical_map(c, g, sw)
    bij = can.is_bijective()
    witness = None
    if not bij:
        witness = f"rank {can.rank()} for dims {sw.dim} -> {c.dim}"
    cert = combine(
        "galois certificate",
        [
            Verdict(bij, "can bijective", witness),
            coring_morphism_check(can, sw, c),
        ],
    )
    return GaloisVerdict(bij, can, Bc, sw, cert, witness)
