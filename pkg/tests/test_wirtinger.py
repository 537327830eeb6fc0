import numpy as np
import pytest

from holoprint import (
    AutomorphismWord,
    ComplexPolynomial,
    EvaluationAtZeroError,
    NonFiniteSampleError,
    Shear,
    is_hermitian,
    is_pluriharmonic_at,
    is_psd,
    kernel_residual,
    levi_log_norm,
    levi_log_norm_many,
    log_norm_sampler,
    theta_normalize,
    wirtinger_levi_fd,
)
from holoprint.wordgen import make_rng, random_word

E10 = np.array([1.0, 0.0], dtype=complex)


def shear_word(degree):
    return AutomorphismWord(2, (Shear(2, ComplexPolynomial(2, {(degree, 0): 1.0})),))


class TestFiniteDifferenceOracle:
    # wirtinger_levi_fd is the independent check used to pin every
    # closed-form value below, so it gets sanity tests of its own

    def test_squared_modulus(self):
        g = lambda z: abs(z[0]) ** 2
        L = wirtinger_levi_fd(g, np.array([0.3 + 0.1j, -0.7j]))
        assert np.abs(L - np.diag([1.0, 0.0])).max() < 1e-6

    def test_pluriharmonic_gives_zero(self):
        g = lambda z: (z[0] ** 2).real
        L = wirtinger_levi_fd(g, np.array([0.5 + 0.2j, 1.0 + 0j]))
        assert np.abs(L).max() < 1e-6

    def test_mixed_term(self):
        g = lambda z: abs(z[0] + 1j * z[1]) ** 2
        L = wirtinger_levi_fd(g, np.array([0.4 + 0j, 0.1 - 0.2j]))
        assert np.abs(L - np.array([[1.0, 1j], [-1j, 1.0]])).max() < 1e-6

    def test_log_norm_at_basepoint(self):
        g = lambda z: np.log(np.linalg.norm(z))
        L = wirtinger_levi_fd(g, E10)
        assert np.abs(L - np.array([[0.0, 0.0], [0.0, 0.5]])).max() < 1e-5

    def test_vectorized_sampler_agrees(self):
        w = shear_word(2)
        g = log_norm_sampler(w)
        z = np.array([0.8 + 0.3j, -0.2 + 0.5j])
        a = wirtinger_levi_fd(g, z, vectorized=True)
        b = wirtinger_levi_fd(lambda p: float(g(p)), z, vectorized=False)
        assert np.abs(a - b).max() < 1e-12

    def test_rejects_bad_step_and_nonfinite(self):
        with pytest.raises(ValueError):
            wirtinger_levi_fd(lambda z: 0.0, E10, h=0.0)
        with pytest.raises(NonFiniteSampleError):
            wirtinger_levi_fd(lambda z: float("inf"), E10)


class TestLeviGoldens:
    def test_identity_word(self):
        L = levi_log_norm(AutomorphismWord.identity(2), E10)
        assert np.abs(L - np.array([[0.0, 0.0], [0.0, 0.5]])).max() < 1e-12

    def test_quadratic_shear(self):
        L = levi_log_norm(shear_word(2), E10)
        expect = np.array([[0.125, 0.125], [0.125, 0.125]])
        assert np.abs(L - expect).max() < 1e-12
        fd = wirtinger_levi_fd(log_norm_sampler(shear_word(2)), E10, vectorized=True)
        assert np.abs(L - fd).max() < 1e-6

    def test_cubic_shear(self):
        L = levi_log_norm(shear_word(3), E10)
        expect = np.array([[0.5, 0.25], [0.25, 0.125]])
        assert np.abs(L - expect).max() < 1e-12

    def test_closed_form_matches_fd_on_random_words(self):
        rng = make_rng(10)
        for _ in range(10):
            w = random_word(rng, 2, max_length=3, max_degree=3, image_bound=1e2)
            z = 0.5 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
            if np.linalg.norm(np.asarray(levi_log_norm(w, z))) > 50:
                continue  # steep samples lose FD accuracy
            fd = wirtinger_levi_fd(log_norm_sampler(w), z, vectorized=True)
            L = levi_log_norm(w, z)
            assert np.abs(L - fd).max() < 1e-4 * (1 + np.abs(L).max())

    def test_batch_matches_single(self):
        rng = make_rng(11)
        w = random_word(rng, 2, max_length=3, image_bound=1e2)
        Z = rng.standard_normal((20, 2)) + 1j * rng.standard_normal((20, 2))
        batch = levi_log_norm_many(w, Z)
        for i in range(20):
            assert np.abs(batch[i] - levi_log_norm(w, Z[i])).max() < 1e-14


class TestLeviStructure:
    def test_hermitian_sweep(self):
        rng = make_rng(12)
        for _ in range(10):
            w = random_word(rng, 3, max_length=4, image_bound=1e3)
            Z = rng.standard_normal((30, 3)) + 1j * rng.standard_normal((30, 3))
            for L in levi_log_norm_many(w, Z):
                assert is_hermitian(L, tol=1e-12)

    def test_psd_sweep(self):
        rng = make_rng(13)
        for _ in range(10):
            w = random_word(rng, 2, max_length=4, image_bound=1e3)
            Z = rng.standard_normal((30, 2)) + 1j * rng.standard_normal((30, 2))
            for L in levi_log_norm_many(w, Z):
                assert np.linalg.eigvalsh(L).min() >= -1e-9

    def test_is_psd_examples(self):
        assert is_psd(np.zeros((2, 2)))
        assert is_psd(np.array([[0.125, 0.125], [0.125, 0.125]]))
        assert not is_psd(np.diag([1.0, -0.01]))
        assert is_psd(np.diag([1.0, -0.5e-9]), tol=1e-9)

    def test_is_pluriharmonic_at(self):
        assert is_pluriharmonic_at(np.zeros((2, 2)), tol=1e-8)
        L = levi_log_norm(AutomorphismWord.identity(2), E10)
        assert not is_pluriharmonic_at(L, tol=1e-8)
        assert np.linalg.norm(L) == pytest.approx(0.5)

    def test_kernel_residual_goldens(self):
        assert kernel_residual(AutomorphismWord.identity(2), E10) < 1e-12
        assert kernel_residual(shear_word(2), E10) < 1e-9

    def test_kernel_residual_and_rank_sweep(self):
        rng = make_rng(14)
        for _ in range(10):
            w = random_word(rng, 2, max_length=4, image_bound=1e3)
            Z = rng.standard_normal((10, 2)) + 1j * rng.standard_normal((10, 2))
            for z in Z:
                assert kernel_residual(w, z) < 1e-8
                eigs = np.linalg.eigvalsh(levi_log_norm(w, z))
                cut = max(1e-10, 1e-8 * eigs.max())
                assert (eigs > cut).sum() <= 1

    def test_dimension_one_affine_levi_vanishes(self):
        w = AutomorphismWord(1, ())
        Z = np.array([[1.0 + 0j], [0.5 - 2j], [-3.0 + 1j]])
        assert np.abs(levi_log_norm_many(w, Z)).max() < 1e-12


class TestDegenerateInputs:
    def test_zero_image_raises(self):
        with pytest.raises(EvaluationAtZeroError):
            levi_log_norm(AutomorphismWord.identity(2), np.zeros(2))

    def test_sampler_raises_at_zero_image(self):
        g = log_norm_sampler(AutomorphismWord.identity(2))
        with pytest.raises(EvaluationAtZeroError):
            g(np.zeros(2))

    def test_overflow_raises(self):
        s = Shear(2, ComplexPolynomial(2, {(4, 0): 1.0}))
        t = Shear(1, ComplexPolynomial(2, {(0, 4): 1.0}))
        w = AutomorphismWord(2, (s, t) * 4)
        with pytest.raises(NonFiniteSampleError):
            levi_log_norm(w, np.array([1e3 + 0j, 1e3 + 0j]))

    def test_normalized_levi_is_base_point_free(self):
        # theta removes the affine part, so samples stay finite near 0
        w = theta_normalize(shear_word(2))
        z = np.array([1e-3 + 0j, 1e-3 + 0j])
        L = levi_log_norm(w, z)
        assert np.all(np.isfinite(L))
