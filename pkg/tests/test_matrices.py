import numpy as np
import pytest

from htt.matrices import (
    TruncationLevels,
    approx_eigs,
    band_truncate,
    build_circulant,
    build_toeplitz,
    circulant_eigs,
    clip_entries,
    cosine_spectrum,
    dft_matrix,
    projection_matrix,
    sandwich,
    topk_spectrum,
)
from htt.sampler import AlphaParams, RngSeed, sample_entries


def _entries(n, seed=0, alpha=0.8, p=0.5):
    return sample_entries(n, AlphaParams(alpha, p), RngSeed(seed))


def _fixed_entries(b):
    """Entry sequence with prescribed b values (for structural checks)."""
    from htt.sampler import EntrySequence

    b = np.asarray(b, dtype=float)
    order = np.argsort(-np.abs(b), kind="stable")
    return EntrySequence(
        a=b.copy(), c_n=1.0, b=b, order=order, sorted_abs=np.abs(b)[order],
        alpha=1.0, p=0.5,
    )


class TestToeplitz:
    def test_one_by_one(self):
        t = build_toeplitz(_fixed_entries([3.5]))
        np.testing.assert_array_equal(t, [[3.5]])

    def test_tridiagonal(self):
        t = build_toeplitz(_fixed_entries([0.0, 1.0, 0.0]))
        np.testing.assert_array_equal(
            t, [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
        )

    def test_structure_random(self):
        e = _entries(4)
        t = build_toeplitz(e)
        np.testing.assert_array_equal(t, t.T)
        for k in range(4):
            for l in range(4):
                assert t[k, l] == e.b[abs(k - l)]


class TestCirculant:
    def test_n1(self):
        g = build_circulant(_fixed_entries([2.0]))
        np.testing.assert_array_equal(g, [[2.0, 0.0], [0.0, 2.0]])

    def test_n2_symbol(self):
        e = _fixed_entries([1.5, -0.5])
        g = build_circulant(e)
        # circulant of (b0, b1, 0, b1)
        expected = np.array(
            [
                [1.5, -0.5, 0.0, -0.5],
                [-0.5, 1.5, -0.5, 0.0],
                [0.0, -0.5, 1.5, -0.5],
                [-0.5, 0.0, -0.5, 1.5],
            ]
        )
        np.testing.assert_array_equal(g, expected)

    def test_principal_block_is_toeplitz(self):
        for n in range(1, 17):
            e = _entries(n, seed=n)
            g = build_circulant(e)
            np.testing.assert_array_equal(g[:n, :n], build_toeplitz(e))

    def test_wrap_entry_outside_principal_block(self):
        e = _entries(4, seed=1)
        g = build_circulant(e, wrap_entry=9.0)
        np.testing.assert_array_equal(g[:4, :4], build_toeplitz(e))
        assert g[0, 4] == 9.0


class TestCirculantEigs:
    def test_n2_by_hand(self):
        # cos(pi k / 2) at k = 0..3 gives (b0+2b1, b0, b0-2b1, b0)
        e = _fixed_entries([1.2, 0.7])
        d = circulant_eigs(e)
        np.testing.assert_allclose(d, [1.2 + 1.4, 1.2, 1.2 - 1.4, 1.2], atol=1e-12)

    def test_identity_symbol(self):
        e = _fixed_entries([1.0, 0.0, 0.0, 0.0])
        np.testing.assert_allclose(circulant_eigs(e), np.ones(8), atol=1e-12)

    def test_trace(self):
        e = _entries(16, seed=3)
        assert abs(circulant_eigs(e).sum() - 32 * e.b[0]) < 1e-10

    def test_matches_dense_eigensolver(self):
        for n in (2, 5, 16, 128):
            e = _entries(n, seed=n)
            d = np.sort(circulant_eigs(e))
            ev = np.sort(np.linalg.eigvalsh(build_circulant(e)))
            scale = max(1.0, np.abs(d).max())
            np.testing.assert_allclose(d, ev, atol=1e-10 * scale)


class TestApproxEigs:
    def test_shift_is_b0(self):
        e = _entries(12, seed=5)
        np.testing.assert_allclose(
            approx_eigs(e) - circulant_eigs(e), np.full(24, e.b[0]), atol=1e-12
        )

    def test_identity_symbol_doubles(self):
        e = _fixed_entries([1.0, 0.0, 0.0])
        np.testing.assert_allclose(approx_eigs(e), np.full(6, 2.0), atol=1e-12)

    def test_zero_frequency_is_full_sum(self):
        e = _entries(10, seed=6)
        assert abs(approx_eigs(e)[0] - 2 * e.b.sum()) < 1e-10


class TestProjection:
    def test_n1_by_hand(self):
        np.testing.assert_allclose(projection_matrix(1), 0.5 * np.ones((2, 2)))

    def test_matches_dft_conjugation(self):
        for n in (1, 2, 3, 5, 8, 16):
            p = projection_matrix(n)
            f = dft_matrix(2 * n)
            q = np.diag(np.concatenate([np.ones(n), np.zeros(n)]))
            direct = f.conj().T @ q @ f
            assert np.abs(p - direct).max() <= 1e-12

    def test_projection_properties(self):
        for n in (2, 7, 16):
            p = projection_matrix(n)
            assert np.abs(np.diag(p) - 0.5).max() < 1e-15
            assert np.abs(p @ p - p).max() < 1e-10
            assert abs(np.trace(p).real - n) < 1e-9
            assert np.linalg.matrix_rank(p) == n
            # even nonzero differences vanish
            assert p[0, 2] == 0 and p[2, 0] == 0

    def test_entry_deviation_from_kernel_halves(self):
        # |P(k,l) - kernel(k,l)| ~ 1/(2N) at fixed offset: doubling N
        # should halve the worst deviation over offsets up to 8
        from htt.limit_operator import projection_entry

        devs = {}
        for n in (256, 512, 1024):
            p = projection_matrix(n)
            devs[n] = max(
                abs(p[0, m] - projection_entry(0, m)) for m in range(1, 9)
            )
        for n in (256, 512):
            ratio = devs[2 * n] / devs[n]
            assert 0.4 <= ratio <= 0.6


class TestBandTruncate:
    def test_zero_band_is_half_identity(self):
        p = projection_matrix(4)
        np.testing.assert_allclose(band_truncate(p, 0), 0.5 * np.eye(8))

    def test_boundary_inclusive(self):
        p = projection_matrix(8)
        pl = band_truncate(p, 3)
        assert pl[0, 3] == p[0, 3]
        assert pl[0, 4] == 0.0  # |k-l| = 4 not wrapped
        assert pl[0, 13] == p[0, 13]  # |k-l| = 13 >= 2N - 3

    def test_full_band_warns_and_copies(self):
        p = projection_matrix(4)
        with pytest.warns(UserWarning):
            pl = band_truncate(p, 4)
        np.testing.assert_array_equal(pl, p)

    def test_operator_norm_log_growth(self):
        p = projection_matrix(512)
        for l in (4, 16, 64):
            pl = band_truncate(p, l)
            norm = np.abs(np.linalg.eigvalsh(pl)).max()
            assert norm <= 2.0 + 2.0 * np.log(l)


class TestClipAndTopK:
    def test_clip_values(self):
        np.testing.assert_array_equal(
            clip_entries(np.array([5.0, -5.0, 1.5]), 2.0), [2.0, -2.0, 1.5]
        )
        b = np.array([0.3, -1.9])
        np.testing.assert_array_equal(clip_entries(b, 2.0), b)
        np.testing.assert_array_equal(clip_entries(np.array([2.0]), 2.0), [2.0])

    def test_clip_rejects(self):
        with pytest.raises(ValueError):
            clip_entries(np.array([1.0]), 0.0)

    def test_full_k_equals_clipped_spectrum(self):
        e = _entries(32, seed=7)
        m = 1.5
        full = topk_spectrum(e, m, 32)
        ref = cosine_spectrum(clip_entries(e.b, m))
        np.testing.assert_allclose(full, ref, atol=1e-10)

    def test_single_term(self):
        e = _entries(16, seed=8)
        m = 2.0
        d = topk_spectrum(e, m, 1)
        s = e.order[0]
        val = clip_entries(e.b[[s]], m)[0]
        k = np.arange(32)
        np.testing.assert_allclose(d, 2 * val * np.cos(np.pi * k * s / 16), atol=1e-12)

    def test_parseval_defect(self):
        # sum_k (d^m_k - d^{m,k}_k)^2 = 4N sum_{j>=K} clip(b_(j))^2, plus
        # 4N clip(b_0)^2 when the zero frequency is among the dropped terms:
        # the spectrum doubles the j = 0 coefficient, so frequencies 0 and
        # 2N alias and that coefficient enters Parseval at twice the weight.
        for seed, k in ((9, 5), (10, 3), (11, 20)):
            e = _entries(64, seed=seed, alpha=0.6)
            m = 1.2
            d_m = cosine_spectrum(clip_entries(e.b, m))
            d_mk = topk_spectrum(e, m, k)
            lhs = np.sum((d_m - d_mk) ** 2)
            tail = clip_entries(e.sorted_abs[k:], m)
            rhs = 4 * 64 * np.sum(tail**2)
            if 0 not in e.order[:k]:
                rhs += 4 * 64 * clip_entries(e.b[[0]], m)[0] ** 2
            assert abs(lhs - rhs) <= 1e-8 * max(rhs, 1.0)

    def test_topk_rejects(self):
        e = _entries(8, seed=1)
        with pytest.raises(ValueError):
            topk_spectrum(e, 1.0, 0)
        with pytest.raises(ValueError):
            topk_spectrum(e, 1.0, 9)


class TestSandwich:
    def test_identity_diagonal(self):
        p = projection_matrix(5)
        np.testing.assert_allclose(sandwich(p, np.ones(10)), p @ p, atol=1e-14)

    def test_zero_diagonal(self):
        p = projection_matrix(3)
        np.testing.assert_array_equal(sandwich(p, np.zeros(6)), np.zeros((6, 6)))

    def test_hermitian(self):
        e = _entries(20, seed=10)
        h = sandwich(projection_matrix(20), approx_eigs(e))
        assert np.abs(h - h.conj().T).max() < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            sandwich(projection_matrix(2), np.ones(3))

    def test_corner_embedding_identity(self):
        # eigenvalues of [[T, 0], [0, 0]] match those of P D P exactly
        for n, seed in ((4, 0), (16, 1), (64, 2)):
            e = _entries(n, seed=seed, alpha=0.5)
            t = build_toeplitz(e)
            lhs = np.sort(np.concatenate([np.linalg.eigvalsh(t), np.zeros(n)]))
            h = sandwich(projection_matrix(n), circulant_eigs(e))
            rhs = np.sort(np.linalg.eigvalsh(h))
            assert np.abs(lhs - rhs).max() <= 1e-8


class TestTruncationLevels:
    def test_coupled(self):
        lv = TruncationLevels.coupled(512)
        assert lv.m == 512.0 ** (1.0 / 9.0)
        assert lv.k == round(512.0 ** (1.0 / 9.0))
        assert lv.w == 8 * 512
        assert lv.is_coupled()

    def test_validation(self):
        with pytest.raises(ValueError):
            TruncationLevels(m=0.0, k=1, l=1, w=1, j=1)
        with pytest.raises(ValueError):
            TruncationLevels(m=1.0, k=0, l=1, w=1, j=1)
