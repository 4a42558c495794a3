import math

import numpy as np
import pytest

from htt.limit_operator import (
    CosineSeries,
    operator_window,
    projection_entry,
    projection_unit_vector,
    projection_window,
    series_value,
    series_values,
    shift_environment,
    window_from_diagonal,
)
from htt.matrices import TruncationLevels
from htt.sampler import AlphaParams, Environment, RngSeed, sample_environment


def _env(gamma, zeta, u, alpha=0.5, p=0.5, eps=None):
    gamma = np.asarray(gamma, dtype=float)
    if eps is None:
        eps = np.ones(len(gamma), dtype=np.int64)
    return Environment(
        gamma=gamma,
        zeta=np.asarray(zeta, dtype=float),
        u=np.asarray(u, dtype=float),
        eps=np.asarray(eps, dtype=np.int64),
        alpha=alpha,
        p=p,
    )


class TestProjectionEntry:
    def test_three_cases(self):
        assert projection_entry(0, 0) == 0.5
        assert projection_entry(0, 2) == 0.0
        assert projection_entry(5, 5) == 0.5
        # odd difference: -i/(pi (k-l)); at (1, 0) this is -i/pi
        assert projection_entry(1, 0) == -1j / math.pi
        assert projection_entry(0, 1) == 1j / math.pi

    def test_hermitian_pairs(self):
        for k, l in ((0, 1), (3, -2), (7, 4)):
            assert projection_entry(l, k) == np.conj(projection_entry(k, l))

    def test_magnitude_bounded_by_half(self):
        vals = [abs(projection_entry(0, l)) for l in range(-9, 10)]
        assert max(vals) == 0.5


class TestProjectionWindow:
    def test_w1_structure(self):
        w = projection_window(1)
        expected = np.array(
            [
                [0.5, 1j / math.pi, 0.0],
                [-1j / math.pi, 0.5, 1j / math.pi],
                [0.0, -1j / math.pi, 0.5],
            ]
        )
        np.testing.assert_allclose(w, expected, atol=1e-15)

    def test_band_truncation_no_wrap(self):
        w = projection_window(3, band=1)
        assert w[0, 1] != 0
        assert w[0, 2] == 0 and w[0, 3] == 0
        # corners stay zero: the band never wraps around
        assert w[0, 6] == 0

    def test_row_square_sums_approach_diagonal(self):
        # projection identity: sum_m |entry(0, m)|^2 = entry(0, 0) = 1/2
        w = 512
        col = projection_window(w)[:, w]
        assert abs(np.sum(np.abs(col) ** 2) - 0.5) < 1e-3

    def test_band_norm_log_shape(self):
        for band in (4, 16, 64):
            win = projection_window(128, band=band)
            norm = np.abs(np.linalg.eigvalsh(win)).max()
            assert norm <= 2.0 + 2.0 * np.log(band)

    def test_hermitian(self):
        w = projection_window(16, band=5)
        np.testing.assert_allclose(w, w.conj().T, atol=1e-15)

    def test_rejects(self):
        with pytest.raises(ValueError):
            projection_window(0)
        with pytest.raises(ValueError):
            projection_window(4, band=9)


class TestCosineSeries:
    def test_single_term(self):
        env = _env([1.0], [0.3], [0.0])
        assert series_value(CosineSeries(env), 0) == 2.0

    def test_clip_floors_small_arrivals(self):
        # gamma = 1e-3 at alpha = 1 with clip 2: coefficient becomes
        # 1/max(1e-3, 1/2) = 2, not 1000
        env = _env([1e-3], [0.1], [0.0], alpha=1.0)
        assert series_value(CosineSeries(env, clip=2.0), 0) == 2.0 * 2.0
        assert series_value(CosineSeries(env), 0) == 2.0 * 1000.0

    def test_top_k_cutoff(self):
        env = _env([1.0, 2.0, 3.0], [0.1, 0.2, 0.3], [0.0, 0.0, 0.0], alpha=1.0)
        full = series_value(CosineSeries(env), 0)
        top1 = series_value(CosineSeries(env, top_k=1), 0)
        assert top1 == 2.0
        assert abs(full - 2.0 * (1.0 + 0.5 + 1.0 / 3.0)) < 1e-12

    def test_bound_two_mk(self):
        # |value| <= 2 * clip * top_k over random environments and offsets
        rng = np.random.default_rng(5)
        params = AlphaParams(0.5, 0.5)
        for trial in range(1000):
            env = sample_environment(20, params, RngSeed(100, trial))
            m = float(rng.uniform(0.2, 3.0))
            k = int(rng.integers(1, 10))
            offset = int(rng.integers(-50, 50))
            val = series_value(CosineSeries(env, clip=m, top_k=k), offset)
            assert abs(val) <= 2.0 * m * k + 1e-12

    def test_vectorized_matches_scalar(self):
        env = sample_environment(64, AlphaParams(0.7), RngSeed(3))
        s = CosineSeries(env, clip=1.5, top_k=10)
        ks = np.arange(-5, 6)
        vec = series_values(s, ks)
        scal = [series_value(s, int(k)) for k in ks]
        np.testing.assert_allclose(vec, scal, atol=1e-12)


class TestShift:
    def test_zero_shift_identity(self):
        env = sample_environment(32, AlphaParams(0.5), RngSeed(6))
        shifted = shift_environment(env, 0)
        np.testing.assert_array_equal(env.u, shifted.u)

    def test_ergodic_identity_exact(self):
        env = sample_environment(256, AlphaParams(0.5), RngSeed(7))
        s = CosineSeries(env)
        for k, l in ((0, 1), (5, -17), (-40, 1000), (123, -999)):
            lhs = series_value(CosineSeries(shift_environment(env, l)), k)
            rhs = series_value(s, k + l)
            assert lhs == rhs  # dyadic phases make this exact

    def test_round_trip(self):
        env = sample_environment(64, AlphaParams(1.5), RngSeed(8))
        back = shift_environment(shift_environment(env, 37), -37)
        np.testing.assert_allclose(back.u, env.u, atol=1e-12)

    def test_only_phases_change(self):
        env = sample_environment(16, AlphaParams(0.5), RngSeed(9))
        shifted = shift_environment(env, 3)
        np.testing.assert_array_equal(env.gamma, shifted.gamma)
        np.testing.assert_array_equal(env.zeta, shifted.zeta)
        np.testing.assert_array_equal(env.eps, shifted.eps)


class TestOperatorWindow:
    def test_identity_diagonal_gives_projection_square(self):
        # all-ones diagonal, untruncated band: the window of the squared
        # projection; its center entry tends to 1/2
        w, l = 512, 1024
        diag = np.ones(2 * (w + l) + 1)
        win = window_from_diagonal(diag, w, l)
        assert abs(win.matrix[w, w].real - 0.5) < 1e-3
        assert abs(win.matrix[w, w].imag) < 1e-15

    def test_huge_arrivals_give_near_zero(self):
        env = _env([1e12, 2e12], [0.1, 0.2], [0.3, 0.4], alpha=0.5)
        lv = TruncationLevels(m=math.inf, k=2, l=4, w=16, j=2)
        win = operator_window(env, lv)
        assert np.abs(win.matrix).max() < 1e-20

    def test_hermitian_to_1e12(self):
        env = sample_environment(128, AlphaParams(0.5), RngSeed(10))
        win = operator_window(env, TruncationLevels(m=2.0, k=8, l=8, w=32, j=128))
        assert np.abs(win.matrix - win.matrix.conj().T).max() < 1e-12

    def test_rejects_band_beyond_reach(self):
        env = sample_environment(8, AlphaParams(0.5), RngSeed(1))
        with pytest.raises(ValueError):
            operator_window(env, TruncationLevels(m=1.0, k=2, l=17, w=8, j=8))

    def test_band_beyond_window_gives_2l_bandwidth(self):
        env = sample_environment(32, AlphaParams(0.5), RngSeed(2))
        lv = TruncationLevels(m=1.0, k=4, l=3, w=10, j=32)
        win = operator_window(env, lv).matrix
        # the sandwich has bandwidth 2l: entries beyond |k-l| > 6 vanish
        for off in range(7, 21):
            assert win[0, off] == 0.0

    def test_moment_bound(self):
        # |<e0, A^r e0>| <= (m k)^r 2^(-2r) (2l+1)^(2r-1) for r <= 4
        params = AlphaParams(0.5, 0.5)
        rng = np.random.default_rng(11)
        for trial in range(20):
            l = int(rng.choice([4, 8, 16]))
            m = float(rng.uniform(0.5, 3.0))
            k = int(rng.integers(1, 6))
            lv = TruncationLevels(m=m, k=k, l=l, w=4 * l, j=64)
            env = sample_environment(64, params, RngSeed(200, trial))
            win = operator_window(env, lv)
            e0 = win.basis_vector(0).astype(complex)
            vec = e0.copy()
            for r in range(1, 5):
                vec = win.matrix @ vec
                moment = abs(np.vdot(e0, vec).real)
                bound = (m * k) ** r * 2.0 ** (-2 * r) * (2 * l + 1) ** (2 * r - 1)
                assert moment <= bound

    def test_window_equals_infinite_matrix_elements(self):
        # brute-force oracle: entry (k, l) of the infinite sandwich is
        # sum_m band(k, m) diag_m band(m, l) over all m with |k-m| <= band
        env = sample_environment(32, AlphaParams(0.5), RngSeed(12))
        lv = TruncationLevels(m=1.5, k=5, l=3, w=6, j=32)
        win = operator_window(env, lv).matrix
        series = CosineSeries(env, terms=32, clip=1.5, top_k=5)
        for k in (-6, -2, 0, 3, 6):
            for l in (-6, -1, 0, 2, 6):
                acc = 0.0 + 0.0j
                for mm in range(min(k, l) - 3, max(k, l) + 4):
                    pk = projection_entry(k, mm) if abs(k - mm) <= 3 else 0.0
                    pl = projection_entry(mm, l) if abs(mm - l) <= 3 else 0.0
                    acc += pk * series_value(series, mm) * pl
                assert abs(win[k + 6, l + 6] - acc) < 1e-12


class TestUnitVector:
    def test_entries(self):
        w = 8
        u = projection_unit_vector(w)
        assert u[w] == np.sqrt(2.0) * 0.5
        assert u[w + 2] == 0.0
        assert abs(u[w + 1] - np.sqrt(2.0) * (-1j / math.pi)) < 1e-15

    def test_norm_tends_to_one(self):
        norms = [np.linalg.norm(projection_unit_vector(w)) for w in (64, 512)]
        assert norms[0] < norms[1] < 1.0
        assert norms[1] >= 0.999


class TestDistributionalProperties:
    def test_series_symmetric_in_law(self):
        # signed KS statistic between the law of the series at 0 and its
        # mirror, over 10^4 environments
        params = AlphaParams(0.5, 0.5)
        vals = np.empty(10_000)
        for r in range(vals.size):
            env = sample_environment(50, params, RngSeed(300, r))
            vals[r] = series_value(CosineSeries(env), 0)
        xs = np.sort(vals)
        f_right = np.searchsorted(xs, xs, side="right") / xs.size
        f_mirror = 1.0 - np.searchsorted(xs, -xs, side="left") / xs.size
        assert np.abs(f_right - f_mirror).max() < 0.03

    @pytest.mark.parametrize("alpha", [0.5, 1.5])
    def test_weighted_square_sums_stabilize(self, alpha):
        # MC average of sum (1+k^2)^-1 rho_k^2 moves < 1% from w=256 to 512
        params = AlphaParams(alpha, 0.5)
        reps = 100
        sums = {256: 0.0, 512: 0.0}
        ks = np.arange(-512, 513)
        weight = 1.0 / (1.0 + ks.astype(float) ** 2)
        for r in range(reps):
            env = sample_environment(1000, params, RngSeed(400, r))
            rho = series_values(CosineSeries(env), ks)
            contrib = weight * rho**2
            sums[512] += contrib.sum() / reps
            inner = np.abs(ks) <= 256
            sums[256] += contrib[inner].sum() / reps
        assert abs(sums[512] - sums[256]) / sums[512] < 0.01
