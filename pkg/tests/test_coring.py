import pytest
from hypothesis import given, settings, strategies as st

from coverings.algebra import AlgebraMorphism, function_algebra, ground_algebra, matrix_algebra, radical_square_zero
from coverings.coring import coinvariants, galois_verdict, is_grouplike, sweedler_coring, verify_coring
from coverings.fixtures import build_fn3_fixture, build_nil3_fixture, random_covering
from coverings.linalg import QQ, Matrix


def unit_map(alg):
    k = ground_algebra(alg.field)
    return AlgebraMorphism(k, alg, Matrix.from_columns(alg.field, alg.dim, [alg.unit]))


class TestSweedler:
    @pytest.mark.parametrize("alg", [matrix_algebra(2), function_algebra(3), radical_square_zero(2)])
    def test_over_ground_field(self, alg):
        sw = sweedler_coring(unit_map(alg))
        assert sw.dim == alg.dim**2
        assert verify_coring(sw).ok
        assert is_grouplike(sw, sw.grouplike()).ok

    def test_fn3_extension(self):
        cov = build_fn3_fixture().covering()
        sw = sweedler_coring(cov.iota)
        assert sw.dim == 6
        assert verify_coring(sw).ok

    def test_coinvariants_of_faithfully_flat_extension(self):
        # over a field every extension is faithfully flat: coinvariants = k
        alg = matrix_algebra(2)
        sw = sweedler_coring(unit_map(alg))
        co = coinvariants(sw, sw.grouplike())
        assert co.dim == 1
        gv = galois_verdict(sw, sw.grouplike())
        assert gv.is_galois and gv.certificate.ok

    def test_rejects_non_morphism(self):
        f = function_algebra(2)
        bad = AlgebraMorphism(f, f, Matrix(QQ, [[1, 1], [0, 0]]))
        with pytest.raises(ValueError):
            sweedler_coring(bad)


class TestMutations:
    def test_scaled_coproduct_breaks_counit(self):
        cc = build_fn3_fixture().covering().coring
        c = cc.coring
        bad = c.with_coproduct(c.coproduct.matrix.scale(2))
        v = verify_coring(bad)
        assert not v.ok and v.first_failure().name == "left counit"

    def test_perturbed_entry_detected(self):
        c = build_nil3_fixture().covering().coring.coring
        m = c.coproduct.matrix
        rows = [dict(m.sparse_row(r)) for r in range(m.nrows)]
        rows[0][0] = rows[0].get(0, 0) + 1
        bad = c.with_coproduct(Matrix.from_sparse_rows(QQ, m.nrows, m.ncols, rows))
        assert not verify_coring(bad).ok

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 1000), st.data())
    def test_any_single_entry_change_detected(self, seed, data):
        c = random_covering(seed, "diagonal").covering().coring.coring
        m = c.coproduct.matrix
        r = data.draw(st.integers(0, m.nrows - 1))
        col = data.draw(st.integers(0, m.ncols - 1))
        rows = [dict(m.sparse_row(i)) for i in range(m.nrows)]
        rows[r][col] = rows[r].get(col, 0) + 1
        if not rows[r][col]:
            del rows[r][col]
        bad = c.with_coproduct(Matrix.from_sparse_rows(QQ, m.nrows, m.ncols, rows))
        assert not verify_coring(bad).ok


class TestGrouplike:
    def test_zero_is_not_grouplike(self):
        c = build_fn3_fixture().covering().coring.coring
        assert not is_grouplike(c, (0,) * c.dim).ok
        with pytest.raises(ValueError):
            coinvariants(c, (0,) * c.dim)

    def test_wrong_length(self):
        c = build_fn3_fixture().covering().coring.coring
        with pytest.raises(ValueError):
            is_grouplike(c, (1,))

    def test_nil3_galois_but_larger_coinvariants(self):
        # An incomplete covering can still be Galois: its coinvariants are the
        # 4-dimensional completion, and can over them is bijective.  So Galois
        # does not imply complete.
        cc = build_nil3_fixture().covering().coring
        gv = galois_verdict(cc.coring, cc.grouplike)
        assert gv.coinvariant_dim == 4
        assert gv.is_galois


class TestCoringInvariants:
    def test_identity_extension(self):
        from coverings.algebra import identity_morphism

        alg = radical_square_zero(2)
        sw = sweedler_coring(identity_morphism(alg))
        assert sw.dim == alg.dim and verify_coring(sw).ok
        assert coinvariants(sw, sw.grouplike()).dim == alg.dim

    def test_twice_g_not_grouplike(self):
        cc = build_fn3_fixture().covering().coring
        v = is_grouplike(cc.coring, tuple(2 * x for x in cc.grouplike))
        assert not v.ok

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 5000), st.sampled_from(["diagonal", "radical", "mixed"]))
    def test_actions_on_grouplike(self, seed, profile):
        # a·g has block (j,k) equal to π^j_k(a_j), g·a has π^k_j(a_k)
        cov = random_covering(seed, profile).covering()
        cc = cov.coring
        A, C = cov.total, cc.carrier
        for t in range(A.dim):
            a = A.basis_vector(t)
            parts = A.split(a)
            left = cc.element_from_blocks(lambda j, k: cov.connecting([j], [k])(parts[j]))
            right = cc.element_from_blocks(lambda j, k: cov.connecting([k], [j])(parts[k]))
            assert C.act_left(a, cc.grouplike) == left
            assert C.act_right(cc.grouplike, a) == right

    @pytest.mark.parametrize("build", [build_fn3_fixture, build_nil3_fixture])
    def test_can_factors_chi(self, build):
        cov = build().covering()
        cc = cov.coring
        gv = galois_verdict(cc.coring, cc.grouplike)
        TB, TBc = cov.sweedler.carrier, gv.sweedler.carrier
        incl = gv.coinvariants.inclusion
        # the coinvariants contain the image of B, so classes over B map onto classes over B'
        assert cov.iota.image().is_subspace_of(gv.coinvariants.space)
        q = TB.descend(TBc.dim, TBc.tensor_sparse)
        assert gv.can.matrix @ q == cov.chi_data.chi.matrix
        assert incl.verify().ok

    def test_counit_of_can(self):
        cov = build_nil3_fixture().covering()
        cc = cov.coring
        gv = galois_verdict(cc.coring, cc.grouplike)
        A = cov.total
        mult = gv.sweedler.carrier.descend(A.dim, A.mul_sparse)
        assert cc.coring.counit.matrix @ gv.can.matrix == mult


class TestWorkedValues:
    def test_fn3_connecting_map(self):
        # B_1 = functions on {1, 2}, B_12 = functions on {2}: class(e2) -> class(e2), class(e1) -> 0
        cov = build_fn3_fixture().covering()
        B = cov.algebra
        p = cov.connecting([0], [1])
        e1, e2 = cov.projection(0)(B.basis_vector(0)), cov.projection(0)(B.basis_vector(1))
        assert not any(p(e1))
        assert p(e2) == cov.projection(0, 1)(B.basis_vector(1))

    def test_fn3_phi_on_pure_tensor(self):
        from coverings.covering import phi

        cov = build_fn3_fixture().covering()
        B = cov.algebra
        e2 = B.basis_vector(1)
        p = phi(cov, 0, 1)
        x = p.tensor.tensor(cov.projection(0)(e2), cov.projection(1)(e2))
        assert p.forward(x) == cov.projection(0, 1)(e2)

    def test_nil3_chi_is_invertible_12x12(self):
        d = build_nil3_fixture().covering().chi_data
        assert d.chi.matrix.shape == (12, 12) and d.chi.matrix.rank() == 12

    def test_nil3_sweedler_dim(self):
        cov = build_nil3_fixture().covering()
        assert cov.sweedler.dim == 12 and cov.coring.dim == 12

    def test_fn3_four_forms_on_chart_element(self):
        from coverings.covering import coproduct_four_forms

        cov = build_fn3_fixture().covering()
        cc = cov.coring
        x = cc.block_from_B(0, 1, cov.algebra.basis_vector(1))
        forms = coproduct_four_forms(cc, x)
        assert len(set(forms)) == 1 and forms[0] == cc.coring.coproduct(x)
