"""Structured block bounds against closed-form identities and matrix oracles."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapcert.blocks import (
    BlockMinima,
    DiagBounds,
    NumRangeBounds,
    OffDiagBounds,
    almost_gap_eig_bound,
    even_lowerbound,
    even_lowerbound_quadratic,
    odd_symmetric_gap,
    offdiag_gap,
)
from gapcert.enclosures import Gap, QuadBound, gap_condition, perturbed_strip
from gapcert.errors import ConditionNotApplicable

finite = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


class TestAlmostGap:
    def test_case_ii_worked_example(self):
        # sup W = 0.5, shift(3) = 0.5, width 3: interval (0.5, 2.5)
        out = almost_gap_eig_bound(
            "ii",
            QuadBound(0.5, 0.0),
            Gap(0.0, 3.0),
            m=2,
            w=NumRangeBounds(-1.0, 0.5),
        )
        assert out.lo == pytest.approx(0.5)
        assert out.hi == pytest.approx(2.5)
        assert out.max_count == 2

    def test_case_i_equals_unstructured_strip(self):
        q, gap = QuadBound(0.3, 0.1), Gap(-1.0, 2.0)
        out = almost_gap_eig_bound("i", q, gap, m=1)
        strip = perturbed_strip(q, gap)
        assert out.lo == strip.lo
        assert out.hi == strip.hi

    def test_case_iv_ignores_operator_bound(self):
        # only the numerical range enters; a huge shift is irrelevant
        out = almost_gap_eig_bound(
            "iv",
            QuadBound(50.0, 0.9),
            Gap(0.0, 1.0),
            m=3,
            w=NumRangeBounds(-0.2, 0.3),
        )
        assert out.lo == pytest.approx(0.3)
        assert out.hi == pytest.approx(-0.2 + 1.0)

    def test_rejections(self):
        q, gap = QuadBound(0.5, 0.0), Gap(0.0, 1.0)
        with pytest.raises(ConditionNotApplicable):
            almost_gap_eig_bound("i", QuadBound(0.1, 1.0), gap, 1)
        with pytest.raises(ConditionNotApplicable):
            almost_gap_eig_bound("i", QuadBound(0.6, 0.0), gap, 1)  # shifts sum to 1.2
        with pytest.raises(ConditionNotApplicable):
            almost_gap_eig_bound("ii", q, gap, 1)  # no numerical range given
        with pytest.raises(ConditionNotApplicable):
            almost_gap_eig_bound("ii", q, gap, 1, NumRangeBounds(-2.0, 0.6))
        with pytest.raises(ConditionNotApplicable):
            almost_gap_eig_bound("iv", q, gap, 1, NumRangeBounds(-0.6, 0.6))
        with pytest.raises(ValueError):
            almost_gap_eig_bound("v", q, gap, 1)
        with pytest.raises(ValueError):
            almost_gap_eig_bound("i", q, gap, -1)

    def test_symmetric_matrix_counts(self):
        """Interval eigenvalue counts never exceed m for symmetric A."""
        rng = np.random.default_rng(7)
        for _ in range(40):
            n = 8
            # two eigenvalues inside (0, 4), the rest well outside
            inside = rng.uniform(1.2, 2.8, size=2)
            outside = np.concatenate([rng.uniform(-8, -1, size=3), rng.uniform(5, 12, size=3)])
            t = np.sort(np.concatenate([inside, outside]))
            gap = Gap(0.0, 4.0)
            s = rng.standard_normal((n, n))
            s = 0.5 * (s + s.T)
            s *= 0.3 / np.linalg.norm(s, 2)
            w = NumRangeBounds(float(np.linalg.eigvalsh(s).min()), float(np.linalg.eigvalsh(s).max()))
            a_op = float(np.linalg.norm(s, 2))
            q = QuadBound(a_op, 0.0)
            evals = np.linalg.eigvalsh(np.diag(t) + s)
            for case in ("i", "ii", "iii", "iv"):
                out = almost_gap_eig_bound(case, q, gap, m=2, w=w)
                count = int(np.sum((evals > out.lo) & (evals < out.hi)))
                assert count <= out.max_count


class TestOffDiagGap:
    def test_shrinks_less_than_unstructured(self):
        gap = Gap(-2.0, 2.0)
        a, b = 0.8, 0.2
        res = offdiag_gap(OffDiagBounds(a, b, a, b), gap)
        plain = perturbed_strip(QuadBound(a, b), gap)
        assert res.strip.lo <= plain.lo + 1e-15
        assert res.strip.hi >= plain.hi - 1e-15
        assert 0.0 < res.delta < 0.5 * gap.width

    def test_survives_where_unstructured_fails(self):
        # asymmetric blocks: the unstructured route must take a = 1.8 and
        # its shifts sum to 3.6 > width, but G = 1.8 * 0.2 < half^2 = 1
        gap = Gap(-1.0, 1.0)
        assert not gap_condition(QuadBound(1.8, 0.0), gap)
        res = offdiag_gap(OffDiagBounds(1.8, 0.0, 0.2, 0.0), gap)
        assert res.strip.lo < res.strip.hi

    def test_delta_value(self):
        # half = 2, s12 = s21 = 1: delta = 2 - sqrt(3)
        res = offdiag_gap(OffDiagBounds(1.0, 0.0, 1.0, 0.0), Gap(-2.0, 2.0))
        assert res.delta == pytest.approx(2.0 - math.sqrt(3.0), rel=1e-14)

    def test_rejections(self):
        with pytest.raises(ConditionNotApplicable):
            offdiag_gap(OffDiagBounds(0.1, 0.0, 0.1, 0.0), Gap(1.0, 2.0))
        with pytest.raises(ConditionNotApplicable):
            offdiag_gap(OffDiagBounds(0.1, 2.0, 0.1, 0.5), Gap(-1.0, 1.0))
        with pytest.raises(ConditionNotApplicable):
            offdiag_gap(OffDiagBounds(5.0, 0.0, 5.0, 0.0), Gap(-1.0, 1.0))

    def test_block_matrix_oracle(self):
        """Eigenvalues of the perturbed block matrix avoid the strip."""
        rng = np.random.default_rng(21)
        gap = Gap(-1.5, 2.5)
        for _ in range(30):
            n = 5
            t1 = rng.uniform(2.5, 6.0, size=n)  # sigma(T) above beta
            t2 = -rng.uniform(1.5, 5.0, size=n)  # and below alpha
            t = np.diag(np.concatenate([t1, t2]))
            c = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            c *= 0.4 / np.linalg.norm(c, 2)
            a = np.zeros((2 * n, 2 * n), dtype=complex)
            a[:n, n:] = c
            a[n:, :n] = c.conj().T
            a12 = float(np.linalg.norm(c, 2))
            res = offdiag_gap(OffDiagBounds(a12, 0.0, a12, 0.0), gap)
            for s in np.linspace(0.0, 1.0, 5):
                evals = np.linalg.eigvals(t + s * a)
                inside = (evals.real > res.strip.lo) & (evals.real < res.strip.hi)
                assert not np.any(inside & (np.abs(evals.imag) < 1e-9))


class TestEvenLowerbound:
    @given(
        a12=finite, b12=st.floats(0.0, 0.99), a21=finite, b21=st.floats(0.0, 0.99),
        beta1=st.floats(0.0, 50.0), beta2=st.floats(0.0, 50.0),
    )
    @settings(max_examples=300)
    def test_two_forms_agree(self, a12, b12, a21, b21, beta1, beta2):
        bounds = OffDiagBounds(a12, b12, a21, b21)
        minima = BlockMinima(beta1, beta2)
        lhs = even_lowerbound(bounds, minima)
        rhs = even_lowerbound_quadratic(bounds, minima)
        scale = max(1.0, abs(lhs), abs(rhs))
        assert abs(lhs - rhs) <= 1e-10 * scale

    def test_equal_minima_reduces_to_shift(self):
        # beta1 = beta2 = beta: bound = beta - sqrt(s12 s21); with uniform
        # constants that is beta - sqrt(a^2 + b^2 beta^2)
        a, b, beta = 0.7, 0.3, 2.0
        got = even_lowerbound(OffDiagBounds(a, b, a, b), BlockMinima(beta, beta))
        want = beta - math.hypot(a, b * beta)
        assert abs(got - want) <= 1e-12

    def test_zero_coupling_keeps_minimum(self):
        got = even_lowerbound(OffDiagBounds(0.0, 0.0, 0.0, 0.0), BlockMinima(1.0, 3.0))
        assert got == 1.0

    def test_rejects_negative_minima(self):
        with pytest.raises(ValueError):
            BlockMinima(-0.5, 1.0)

    def test_rejects_strong_relative_coupling(self):
        with pytest.raises(ConditionNotApplicable):
            even_lowerbound(OffDiagBounds(0.1, 1.5, 0.1, 0.8), BlockMinima(1.0, 1.0))

    def test_block_matrix_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            n = 4
            d1 = rng.uniform(0.5, 4.0, size=n)
            d2 = rng.uniform(0.5, 4.0, size=n)
            t = np.diag(np.concatenate([d1, d2]))
            c = rng.standard_normal((n, n))
            c *= 0.3 / np.linalg.norm(c, 2)
            a = np.zeros((2 * n, 2 * n))
            a[:n, n:] = c
            a[n:, :n] = c.T
            norm = float(np.linalg.norm(c, 2))
            bound = even_lowerbound(
                OffDiagBounds(norm, 0.0, norm, 0.0),
                BlockMinima(float(d1.min()), float(d2.min())),
            )
            evals = np.linalg.eigvals(t + a)
            assert float(evals.real.min()) >= bound - 1e-9


class TestOddSymmetricGap:
    def test_uniform_constants_coincide_with_unstructured(self):
        a, b, beta = 0.4, 0.25, 3.0
        got = odd_symmetric_gap(DiagBounds(a, b, a, b), beta)
        want = beta - math.hypot(a, b * beta)
        assert abs(got - want) <= 1e-12

    @given(
        a11=finite, b11=st.floats(0.0, 0.99), a22=finite, b22=st.floats(0.0, 0.99),
        beta=st.floats(1e-2, 1e3),
    )
    @settings(max_examples=300)
    def test_dominates_worst_block(self, a11, b11, a22, b22, beta):
        """beta_plus is never worse than beta minus the larger block shift."""
        bounds = DiagBounds(a11, b11, a22, b22)
        s1 = math.hypot(a11, b11 * beta)
        s2 = math.hypot(a22, b22 * beta)
        try:
            got = odd_symmetric_gap(bounds, beta)
        except ConditionNotApplicable:
            return
        assert got >= beta - max(s1, s2) - 1e-12 * max(1.0, beta)
        assert 0.0 < got <= beta

    def test_rejections(self):
        with pytest.raises(ValueError):
            odd_symmetric_gap(DiagBounds(0.1, 0.0, 0.1, 0.0), 0.0)
        with pytest.raises(ConditionNotApplicable):
            odd_symmetric_gap(DiagBounds(0.1, 1.2, 0.1, 0.9), 1.0)
        with pytest.raises(ConditionNotApplicable):
            odd_symmetric_gap(DiagBounds(3.0, 0.0, 3.0, 0.0), 1.0)

    def test_block_matrix_oracle(self):
        """Real parts of sigma(T + sA) stay out of (-beta_plus, beta_plus)."""
        rng = np.random.default_rng(11)
        for _ in range(30):
            n = 4
            d = rng.uniform(1.0, 3.0, size=n)
            t = np.zeros((2 * n, 2 * n))
            t[:n, n:] = np.diag(d)
            t[n:, :n] = np.diag(d)
            beta = float(d.min())
            p = rng.standard_normal((n, n))
            q = rng.standard_normal((n, n))
            p *= 0.2 / np.linalg.norm(p, 2)
            q *= 0.2 / np.linalg.norm(q, 2)
            a = np.zeros((2 * n, 2 * n))
            a[:n, :n] = p
            a[n:, n:] = q
            bounds = DiagBounds(
                float(np.linalg.norm(p, 2)), 0.0, float(np.linalg.norm(q, 2)), 0.0
            )
            beta_plus = odd_symmetric_gap(bounds, beta)
            for s in np.linspace(0.0, 1.0, 5):
                evals = np.linalg.eigvals(t + s * a)
                assert np.all(np.abs(evals.real) >= beta_plus - 1e-9)
