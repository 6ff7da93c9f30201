import itertools

import pytest
from hypothesis import given, settings, strategies as st

from coverings.algebra import QuotientAlgebra, function_algebra, ideal_closure, matrix_algebra, radical_square_zero, vanishing_ideal
from coverings.bimodule import regular_bimodule, restrict
from coverings.covering import (
    Covering,
    CoveringError,
    chi_check,
    chi_inverse_formula,
    coproduct_four_forms,
    covering_report,
    four_forms_check,
    is_complete,
    is_projective,
    kappa_tensor_check,
    phi,
    splitting_section,
    sweedler_transport_check,
    theta,
    triple_check,
)
from coverings.coring import verify_coring
from coverings.fixtures import build_open_cover_fixture, random_covering
from coverings.linalg import GF, QQ

from oracles import naive_tensor_dim


def nil3_algebra_and_ideals(field=QQ):
    B = radical_square_zero(2, field)
    gens = [(0, 1, 0), (0, 0, 1), (0, 1, 1)]
    return B, [ideal_closure(B, [g]) for g in gens]


class TestConstruction:
    def test_nonzero_intersection_rejected_with_witness(self):
        B = function_algebra(3)
        J1, J2 = vanishing_ideal(B, {1}), vanishing_ideal(B, {2})
        with pytest.raises(CoveringError) as err:
            Covering(B, [J1, J2])
        w = err.value.witness
        assert any(w) and J1.space.contains(w) and J2.space.contains(w)

    def test_empty_family_rejected(self):
        with pytest.raises(CoveringError):
            Covering(function_algebra(2), [])

    def test_quotients_are_cached(self, fn3):
        assert fn3.quotient(0, 1) is fn3.quotient(1, 0)
        assert fn3.quotient(0, 0) is fn3.quotient(0)


class TestFN3:
    def test_dimensions(self, fn3):
        assert (fn3.algebra.dim, fn3.total.dim, fn3.coring.dim, fn3.completion.dim) == (3, 4, 6, 3)
        assert fn3.sweedler.dim == 6

    def test_complete_and_galois(self, fn3):
        rep = covering_report(fn3)
        assert rep.facts["complete"] and rep.facts["galois"] and rep.facts["coinvariants_equal_kappa_B"]
        assert rep.ok

    def test_grouplike_is_sum_of_units(self, fn3):
        assert fn3.coring.grouplike == (1,) * 6


class TestNIL3:
    def test_dimensions(self, nil3):
        assert (nil3.algebra.dim, nil3.total.dim, nil3.coring.dim, nil3.completion.dim) == (3, 6, 12, 4)

    def test_incomplete(self, nil3):
        assert not is_complete(nil3)

    def test_dropping_third_ideal_completes(self):
        B, Js = nil3_algebra_and_ideals()
        assert is_complete(Covering(B, Js[:2]))

    def test_galois_over_larger_coinvariants(self, nil3):
        rep = covering_report(nil3)
        assert rep.dims["coinvariants"] == 4
        assert rep.facts["galois"] and not rep.facts["coinvariants_equal_kappa_B"]

    def test_not_projective(self, nil3):
        regA = regular_bimodule(nil3.total)
        assert not is_projective(nil3.algebra, restrict(regA, left=nil3.iota), "left").ok
        assert not is_projective(nil3.algebra, restrict(regA, right=nil3.iota), "right").ok

    def test_kappa_tensor_fails_on_incomplete_covering(self, nil3):
        # B_c ⊗_B A is 9-dimensional while A is 6-dimensional
        v = kappa_tensor_check(nil3)
        assert not v.ok
        A_BA = restrict(regular_bimodule(nil3.total), left=nil3.iota)
        comp = nil3.completion
        BcB = restrict(regular_bimodule(comp.algebra), left=comp.kappa_c, right=comp.kappa_c)
        assert naive_tensor_dim(BcB, A_BA) == 9

    def test_over_gf2(self):
        B, Js = nil3_algebra_and_ideals(GF(2))
        cov = Covering(B, Js)
        assert cov.completion.dim == 4 and verify_coring(cov.coring.coring).ok


class TestOpenCovers:
    def test_singletons(self):
        cov = build_open_cover_fixture(3, [{1}, {2}, {3}]).covering()
        for i, j in itertools.permutations(range(3), 2):
            assert cov.quotient(i, j).dim == 0
        assert cov.coring.dim == cov.total.dim == 3
        assert is_complete(cov) and covering_report(cov).ok

    def test_trivial_covering(self):
        cov = build_open_cover_fixture(3, [{1, 2, 3}]).covering()
        assert cov.coring.dim == cov.algebra.dim == 3
        assert covering_report(cov).ok

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_dimension_laws(self, seed):
        doc = random_covering(seed, "open-cover")
        cov = doc.covering()
        sets = [frozenset(x + 1 for x, v in enumerate(cov.quotient(i).lift(cov.quotient(i).unit)) if v) for i in cov.index]
        for i, j, k in itertools.product(cov.index, repeat=3):
            assert cov.quotient(i).dim == len(sets[i])
            assert cov.quotient(i, j).dim == len(sets[i] & sets[j])
            assert cov.quotient(i, j, k).dim == len(sets[i] & sets[j] & sets[k])
        assert is_complete(cov)


@st.composite
def coverings(draw):
    seed = draw(st.integers(0, 10_000))
    profile = draw(st.sampled_from(["diagonal", "matrix", "radical", "mixed", "open-cover"]))
    return random_covering(seed, profile).covering()


class TestLaws:
    @settings(max_examples=20, deadline=None)
    @given(coverings())
    def test_phi_dimension_law(self, cov):
        for i, j in itertools.product(cov.index, repeat=2):
            p = phi(cov, i, j)
            assert p.tensor.dim == cov.quotient(i, j).dim

    @settings(max_examples=20, deadline=None)
    @given(coverings())
    def test_chi_pipeline(self, cov):
        assert chi_check(cov).ok
        assert sweedler_transport_check(cov).ok
        fwd, inv = theta(cov)
        assert fwd.is_bijective()

    @settings(max_examples=20, deadline=None)
    @given(coverings())
    def test_four_forms_and_triple(self, cov):
        assert four_forms_check(cov).ok
        assert triple_check(cov).ok

    @settings(max_examples=15, deadline=None)
    @given(coverings())
    def test_complete_implies_galois(self, cov):
        rep = covering_report(cov, projectivity=False)
        if rep.facts["complete"]:
            assert rep.facts["galois"] and rep.facts["coinvariants_equal_kappa_B"]

    def test_chi_inverse_on_sum(self, nil3):
        cc = nil3.coring
        x = tuple(range(cc.dim))
        d = nil3.chi_data
        assert d.chi(chi_inverse_formula(nil3, x)) == x

    def test_four_forms_on_general_element(self, nil3):
        cc = nil3.coring
        x = tuple((-1) ** c * (c + 1) for c in range(cc.dim))
        forms = coproduct_four_forms(cc, x)
        assert all(f == cc.coring.coproduct(x) for f in forms)


class TestProjectivity:
    def test_semisimple_base(self, fn3):
        regA = regular_bimodule(fn3.total)
        assert is_projective(fn3.algebra, restrict(regA, left=fn3.iota)).ok
        assert is_projective(fn3.algebra, restrict(regA, right=fn3.iota), "right").ok

    def test_free_module(self):
        B = radical_square_zero(2)
        assert is_projective(B, regular_bimodule(B)).ok
        assert is_projective(B, regular_bimodule(B), "right").ok

    def test_simple_module_over_local_algebra(self):
        B = radical_square_zero(1)
        k = QuotientAlgebra(B, ideal_closure(B, [(0, 1)]))
        M = restrict(regular_bimodule(k), left=k.projection)
        assert not is_projective(B, M).ok

    def test_section_splits_cover(self):
        B = matrix_algebra(2)
        sec = splitting_section(B, regular_bimodule(B))
        assert sec is not None and sec.ncols == 4

    def test_side_checked(self):
        B = function_algebra(2)
        with pytest.raises(ValueError):
            is_projective(B, regular_bimodule(function_algebra(3)))
        with pytest.raises(ValueError):
            is_projective(B, regular_bimodule(B), "middle")
