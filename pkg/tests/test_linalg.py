from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from coverings.linalg import (
    GF,
    QQ,
    Echelon,
    Matrix,
    Mod,
    QuotientSpace,
    Subspace,
    hstack,
    image,
    kernel,
    rref,
    solve,
    solve_sparse,
    subspace_intersect,
    subspace_sum,
    vstack,
)

FIELDS = [QQ, GF(2), GF(7), GF(2147483647)]


def small_entries(field):
    if field.characteristic == 0:
        return st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return st.integers(min_value=0, max_value=field.characteristic - 1)


@st.composite
def matrices(draw, field=None, max_dim=6, rows=None, cols=None):
    field = field or draw(st.sampled_from(FIELDS))
    r = rows if rows is not None else draw(st.integers(0, max_dim))
    c = cols if cols is not None else draw(st.integers(0, max_dim))
    # sparse-ish entries keep ranks interesting
    entry = st.one_of(st.just(0), st.just(0), small_entries(field))
    data = draw(st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(field, data, ncols=c)


def sympy_rank(m):
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(str(m[i, j]))).rank()


class TestField:
    def test_rational_normalizes_to_int(self):
        assert QQ("6/3") == 2 and isinstance(QQ("6/3"), int)
        assert QQ(Fraction(1, 2)) == Fraction(1, 2)

    def test_prime_field_rejects_composite(self):
        with pytest.raises(ValueError):
            GF(6)

    @given(st.integers(1, 6), st.integers(-50, 50))
    def test_mod_inverse(self, k, a):
        F = GF(7)
        x = F(a)
        if x:
            assert x * F.inv(x) == F.one

    def test_string_coercion_in_gf(self):
        F = GF(5)
        assert F("1/2") == F(3)
        assert isinstance(F(3), Mod)

    def test_json_round_trip(self):
        for F in FIELDS:
            assert type(F).from_json(F.to_json()) == F


class TestMatrix:
    @settings(max_examples=60)
    @given(matrices(field=QQ))
    def test_rank_matches_sympy(self, m):
        assert m.rank() == sympy_rank(m)

    @settings(max_examples=60)
    @given(matrices())
    def test_rank_nullity(self, m):
        assert m.rank() + kernel(m).dim == m.ncols

    @settings(max_examples=60)
    @given(matrices())
    def test_kernel_is_killed(self, m):
        for v in kernel(m).vectors():
            assert m.apply(v) == (m.field.zero,) * m.nrows

    @settings(max_examples=40)
    @given(st.data())
    def test_product_associative(self, data):
        F = data.draw(st.sampled_from(FIELDS))
        a = data.draw(matrices(field=F, rows=3, cols=4))
        b = data.draw(matrices(field=F, rows=4, cols=2))
        c = data.draw(matrices(field=F, rows=2, cols=3))
        assert (a @ b) @ c == a @ (b @ c)

    @settings(max_examples=40)
    @given(matrices())
    def test_transpose_rank(self, m):
        assert m.T.rank() == m.rank()
        assert m.T.T == m

    @settings(max_examples=40)
    @given(matrices())
    def test_rref_idempotent(self, m):
        r, k = rref(m)
        assert rref(r) == (r, k)

    def test_first_difference(self):
        a = Matrix(QQ, [[1, 0], [0, 1]])
        b = Matrix(QQ, [[1, 0], [0, 2]])
        assert a.first_difference(b) == (1, 1)
        assert a.first_difference(a) is None

    def test_stacking(self):
        a = Matrix.identity(QQ, 2)
        assert hstack([a, a]).shape == (2, 4)
        assert vstack([a, a]).shape == (4, 2)


class TestSolve:
    @settings(max_examples=60)
    @given(st.data())
    def test_solution_satisfies(self, data):
        F = data.draw(st.sampled_from(FIELDS))
        m = data.draw(matrices(field=F, max_dim=5))
        x = data.draw(st.lists(small_entries(F), min_size=m.ncols, max_size=m.ncols))
        b = m.apply([F(v) for v in x])
        sol = solve(m, b)
        assert sol is not None
        assert m.apply(sol) == b

    def test_inconsistent(self):
        m = Matrix(QQ, [[1, 1], [1, 1]])
        assert solve(m, (1, 2)) is None

    def test_sparse_solver(self):
        eqs = [({0: 1, 1: 1}, 3), ({0: 1, 1: -1}, 1)]
        assert solve_sparse(QQ, 2, eqs) == {0: 2, 1: 1}
        assert solve_sparse(QQ, 1, [({0: 1}, 1), ({0: 1}, 2)]) is None


class TestSubspace:
    @settings(max_examples=50)
    @given(st.data())
    def test_dimension_formula(self, data):
        F = data.draw(st.sampled_from(FIELDS))
        n = data.draw(st.integers(1, 6))
        u = image(data.draw(matrices(field=F, rows=n)))
        v = image(data.draw(matrices(field=F, rows=n)))
        s, i = subspace_sum(u, v), subspace_intersect(u, v)
        assert s.dim + i.dim == u.dim + v.dim
        assert i.is_subspace_of(u) and i.is_subspace_of(v)
        assert u.is_subspace_of(s) and v.is_subspace_of(s)

    @settings(max_examples=50)
    @given(matrices())
    def test_canonical_basis(self, m):
        # the same span given in a different order has the same basis
        a = Subspace.span(m.field, m.nrows, m.columns())
        b = Subspace.span(m.field, m.nrows, list(reversed(m.columns())))
        assert a == b and a.basis == b.basis

    def test_coordinates(self):
        s = Subspace.span(QQ, 3, [(1, 1, 0), (0, 1, 1)])
        # coordinates are taken in the RREF basis (1, 0, -1), (0, 1, 1)
        assert s.coordinates((1, 2, 1)) == (1, 2)
        with pytest.raises(ValueError):
            s.coordinates((1, 0, 0))

    @settings(max_examples=50)
    @given(matrices())
    def test_quotient_section(self, m):
        killed = image(m)
        q = QuotientSpace(m.nrows, killed)
        assert q.dim == m.nrows - killed.dim
        assert q.project @ q.lift == Matrix.identity(m.field, q.dim)
        for v in killed.vectors():
            assert not any(q.project_vector(v))

    def test_echelon_ignores_explicit_zeros(self):
        e = Echelon(QQ, 3)
        assert e.add({0: 0, 1: 2})
        assert not e.add({1: 1, 2: 0})
        assert e.rank == 1
