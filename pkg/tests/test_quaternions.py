import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from h4hecke.clifford import CliffordElement
from h4hecke.quaternions import (
    Quaternion,
    UNITS,
    canonical_orbit_representative,
    conjugate_action,
    conjugation_matrix,
    enumerate_norm,
    lattice_norm,
    orbit_representatives,
    star_conjugate_action,
    valuation,
    verify_conjugation_lemmas,
)


def jacobi_r4(n: int) -> int:
    """Number of 4-square representations: 8 * sum of divisors not divisible by 4."""
    return 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4 != 0)


small_quats = st.builds(
    Quaternion,
    st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5),
)


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 8), (3, 32), (5, 48)])
    def test_counts(self, n, count):
        assert len(enumerate_norm(n)) == count

    @pytest.mark.parametrize("n", [2, 4, 6, 7, 9, 10, 13])
    def test_counts_match_divisor_formula(self, n):
        assert len(enumerate_norm(n)) == jacobi_r4(n)

    def test_norms_and_order(self):
        qs = enumerate_norm(5)
        assert all(q.norm() == 5 for q in qs)
        assert [q.coords() for q in qs] == sorted(q.coords() for q in qs)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            enumerate_norm(0)


class TestOrbits:
    @pytest.mark.parametrize("p,reps", [(3, 4), (5, 6), (7, 8)])
    def test_representative_counts(self, p, reps):
        assert len(orbit_representatives(p).representatives) == reps

    def test_orbits_partition_enumeration(self):
        for p in (3, 5):
            table = orbit_representatives(p)
            orbit_union = {(u * r).coords() for r in table.representatives for u in UNITS}
            assert orbit_union == {q.coords() for q in table.all_elements}
            assert len(orbit_union) == 8 * (p + 1)

    def test_canonicalization_idempotent_and_orbit_invariant(self):
        for q in enumerate_norm(5):
            rep = canonical_orbit_representative(q)
            assert canonical_orbit_representative(rep) == rep
            for u in UNITS:
                assert canonical_orbit_representative(u * q) == rep

    @pytest.mark.parametrize("bad", [2, 9, 15, 1])
    def test_rejects_non_odd_primes(self, bad):
        with pytest.raises(ValueError):
            orbit_representatives(bad)


class TestConjugation:
    def test_example_on_real_axis(self):
        assert conjugate_action(Quaternion(1, 1, 1, 0), (1, 0, 0)) == (-1, -2, -2)

    def test_example_on_i_axis(self):
        out = conjugate_action(Quaternion(1, 1, 1, 0), (0, 1, 0))
        assert out == (2, 1, -2)
        assert lattice_norm(out) == 9

    def test_linearity_in_beta(self):
        alpha = Quaternion(1, 1, 1, 0)
        a = conjugate_action(alpha, (3, -6, 9))
        b = conjugate_action(alpha, (1, -2, 3))
        assert a == tuple(3 * c for c in b)

    @settings(max_examples=50, deadline=None)
    @given(small_quats, st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
    def test_lands_in_v3_with_norm_identity(self, alpha, beta):
        out = conjugate_action(alpha, beta)
        assert lattice_norm(out) == alpha.norm() ** 2 * lattice_norm(beta)

    @settings(max_examples=50, deadline=None)
    @given(small_quats, st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
    def test_star_conjugation_in_v3(self, alpha, delta):
        out = star_conjugate_action(alpha, delta)
        assert lattice_norm(out) == alpha.norm() ** 2 * lattice_norm(delta)

    def test_matrix_matches_action(self):
        alpha = Quaternion(2, -1, 0, 1)
        mat = conjugation_matrix(alpha)
        beta = (3, 1, -2)
        from h4hecke.quaternions import apply_matrix
        assert apply_matrix(mat, beta) == conjugate_action(alpha, beta)

    @settings(max_examples=40, deadline=None)
    @given(small_quats, small_quats)
    def test_norm_multiplicative(self, a, b):
        assert (a * b).norm() == a.norm() * b.norm()


def _to_clifford(q: Quaternion) -> CliffordElement:
    return CliffordElement(2, {
        (): Fraction(q.a), (1,): Fraction(q.b), (2,): Fraction(q.c), (1, 2): Fraction(q.d),
    })


class TestCliffordAgreement:
    @settings(max_examples=30, deadline=None)
    @given(small_quats, small_quats)
    def test_product_agrees(self, a, b):
        assert _to_clifford(a * b) == _to_clifford(a) * _to_clifford(b)

    @settings(max_examples=30, deadline=None)
    @given(small_quats)
    def test_involutions_agree(self, q):
        assert _to_clifford(q.main()) == _to_clifford(q).main_involution()
        assert _to_clifford(q.star()) == _to_clifford(q).reverse()
        assert _to_clifford(q.conjugate()) == _to_clifford(q).bar()

    @settings(max_examples=30, deadline=None)
    @given(small_quats)
    def test_norms_agree(self, q):
        assert q.norm() == _to_clifford(q).norm


class TestValuation:
    def test_examples(self):
        assert valuation((3, 0, 0), 3) == 1
        assert valuation((1, 0, 0), 3) == 0
        assert valuation((25, 50, 75), 5) == 2

    def test_zero_is_infinite(self):
        assert valuation((0, 0, 0), 7) == math.inf

    def test_quaternion_argument(self):
        assert valuation(Quaternion(9, 18, 0, 27), 3) == 2


class TestLemmaSweeps:
    def test_small_sweep_clean(self):
        report = verify_conjugation_lemmas(3, 4, q_primes=(5,))
        assert report.violations == 0
        assert report.max_vp_jump <= 2
        assert report.max_exceptional_set <= 2
        assert report.squared_divisibility_max_small <= 16
        assert report.pairs_checked == report.beta_count * report.alpha_count

    def test_vp_bounds_for_specific_beta(self):
        # v_3(beta) = 1 forces 1 <= v_3(conjugate) <= 3 for every norm-3 alpha
        beta = (3, 0, 0)
        for alpha in enumerate_norm(3):
            v = valuation(conjugate_action(alpha, beta), 3)
            assert 1 <= v <= 3

    def test_rejects_bad_q(self):
        with pytest.raises(ValueError):
            verify_conjugation_lemmas(3, 3, q_primes=(3,))

    def test_rejects_composite_p(self):
        with pytest.raises(ValueError):
            verify_conjugation_lemmas(9, 3)
