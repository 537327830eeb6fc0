"""Levi matrices (complex Hessians) of log-norm potentials.

For a C^2 real-valued function g on an open subset of C^n, the Levi
matrix collects the mixed second Wirtinger derivatives.  This module
fixes the index convention

    L(g)[i, j] = d^2 g / (dzbar_i dz_j).

The transposed-conjugate convention also appears in the literature; both
give the same Hermitian-invariant data (eigenvalues, rank, definiteness,
Frobenius norm), so every test here is convention-independent.

Two independent routes to L are provided:

* ``levi_log_norm``: a closed form for g = log ||F(z)|| with F an
  automorphism word.  Writing w = F(z), J = DF(z), S = ||w||^2,
  a = J* w and A = J* J (conjugate-transpose products), one has

      L = (S A - a a*) / (2 S^2),

  which is Hermitian, positive semidefinite (Cauchy-Schwarz, since
  v* L v = (S ||Jv||^2 - |<w, Jv>|^2) / (2 S^2)), and annihilates
  J^{-1} w, so its rank is at most n - 1.

* ``wirtinger_levi_fd``: a finite-difference oracle for arbitrary
  real-valued samplers, built from central second differences of the
  underlying real Hessian via

      d^2/(dzbar_i dz_j) = (XX + YY + i (YX - XY)) / 4

  with X_a = d/dx_a, Y_a = d/dy_a and z_a = x_a + i y_a.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import AutomorphismWord, evaluate_many, jacobian_many

# Below this squared norm the potential is considered to be sampled at a
# zero of F; such requests are errors, never clamped.
TINY_SQNORM = 1e-300

# Central-difference step balancing truncation against roundoff for
# double precision.
FD_STEP = 1e-4


class EvaluationAtZeroError(ArithmeticError):
    """The sampled point maps (numerically) to 0, where log||F|| is singular."""


class NonFiniteSampleError(ArithmeticError):
    """A finite-difference stencil point produced a non-finite value."""


@dataclass(frozen=True, eq=False)
class LeviSample:
    """A Levi matrix attached to the (nonzero) point where it was evaluated."""

    point: np.ndarray
    levi: np.ndarray


def is_hermitian(M: np.ndarray, tol: float = 1e-12) -> bool:
    """Entrywise check that M equals its own conjugate transpose."""
    return bool(np.max(np.abs(M - M.conj().T)) <= tol)


def _hermitian_part(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))


def _levi_from_images(w: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Closed-form Levi matrices of log||F|| from batched images and Jacobians."""
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(J))):
        raise NonFiniteSampleError("image or Jacobian overflowed double precision")
    S = np.einsum("mi,mi->m", w, w.conj()).real
    if not np.all(np.isfinite(S)):
        raise NonFiniteSampleError("squared image norm overflowed double precision")
    if np.any(S < TINY_SQNORM):
        raise EvaluationAtZeroError(
            "log||F|| sampled at a point where ||F||^2 < 1e-300"
        )
    a = np.einsum("mij,mi->mj", J.conj(), w)  # (J* w)_j
    A = np.einsum("mia,mib->mab", J.conj(), J)  # (J* J)_{ab}
    outer = a[:, :, None] * a.conj()[:, None, :]
    L = (S[:, None, None] * A - outer) / (2.0 * S**2)[:, None, None]
    return _hermitian_part(L)


def levi_log_norm_many(word: AutomorphismWord, Z) -> np.ndarray:
    """Levi matrices of log||F|| at every row of Z; returns (m, n, n)."""
    w, J = jacobian_many(word, Z)
    return _levi_from_images(w, J)


def levi_log_norm(word: AutomorphismWord, z) -> np.ndarray:
    """Levi matrix of g = log||F|| at z, where F is the given word.

    Requires F(z) != 0; raises EvaluationAtZeroError otherwise.  The
    result is Hermitian and positive semidefinite with J^{-1}F(z) in its
    kernel.
    """
    z = np.asarray(z, dtype=np.complex128)
    return levi_log_norm_many(word, z[None, :])[0]


def log_norm_sampler(word: AutomorphismWord) -> Callable:
    """The potential g(z) = log ||F(z)|| as a sampler.

    Accepts a single point (shape (n,), returns a float) or a batch of
    points (shape (m, n), returns an (m,) array), so it can be fed to
    ``wirtinger_levi_fd`` with ``vectorized=True``.
    """

    def g(z):
        z = np.asarray(z, dtype=np.complex128)
        single = z.ndim == 1
        vals = evaluate_many(word, z[None, :] if single else z)
        S = np.einsum("mi,mi->m", vals, vals.conj()).real
        if np.any(S < TINY_SQNORM):
            raise EvaluationAtZeroError(
                "log||F|| sampled at a point where ||F||^2 < 1e-300"
            )
        out = 0.5 * np.log(S)
        return float(out[0]) if single else out

    return g


def wirtinger_levi_fd(
    g: Callable,
    z,
    h: float = FD_STEP,
    vectorized: bool = False,
) -> np.ndarray:
    """Finite-difference Levi matrix of a real-valued sampler at z.

    ``g`` maps a complex n-vector to a real number; with
    ``vectorized=True`` it must also accept an (m, n) batch and return an
    (m,) array.  The full real Hessian over (x_1..x_n, y_1..y_n) is formed
    with central second differences of step ``h`` and recombined into
    mixed Wirtinger derivatives; the Hermitian part is taken explicitly to
    suppress asymmetric stencil noise.
    """
    if h <= 0:
        raise ValueError("finite-difference step must be positive")
    z = np.asarray(z, dtype=np.complex128)
    n = z.shape[0]
    d = 2 * n
    steps = np.zeros((d, n), dtype=np.complex128)
    for i in range(n):
        steps[i, i] = h  # x_i direction
        steps[n + i, i] = 1j * h  # y_i direction

    points = [z]
    for a in range(d):
        points.append(z + steps[a])
        points.append(z - steps[a])
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    for a, b in pairs:
        points.append(z + steps[a] + steps[b])
        points.append(z + steps[a] - steps[b])
        points.append(z - steps[a] + steps[b])
        points.append(z - steps[a] - steps[b])
    P = np.array(points)

    if vectorized:
        vals = np.asarray(g(P), dtype=float)
    else:
        vals = np.array([float(g(p)) for p in P])
    if not np.all(np.isfinite(vals)):
        bad = P[np.nonzero(~np.isfinite(vals))[0][0]]
        raise NonFiniteSampleError(f"sampler returned a non-finite value at {bad}")

    H = np.empty((d, d))
    g0 = vals[0]
    for a in range(d):
        gp, gm = vals[1 + 2 * a], vals[2 + 2 * a]
        H[a, a] = (gp + gm - 2.0 * g0) / h**2
    base = 1 + 2 * d
    for idx, (a, b) in enumerate(pairs):
        gpp, gpm, gmp, gmm = vals[base + 4 * idx : base + 4 * idx + 4]
        H[a, b] = H[b, a] = (gpp - gpm - gmp + gmm) / (4.0 * h**2)

    X, Y = slice(0, n), slice(n, d)
    L = 0.25 * (H[X, X] + H[Y, Y] + 1j * (H[Y, X] - H[X, Y]))
    return _hermitian_part(L)


def is_psd(M: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the smallest eigenvalue of the Hermitian matrix M is >= -tol."""
    return bool(np.linalg.eigvalsh(M)[0] >= -tol)


def is_pluriharmonic_at(M: np.ndarray, tol: float) -> bool:
    """True iff the Levi matrix vanishes (Frobenius norm below tol)."""
    return bool(np.linalg.norm(M) < tol)


def kernel_residual(word: AutomorphismWord, z) -> float:
    """||L v|| / ||v|| for v = DF(z)^{-1} F(z); analytically zero.

    A rigidity witness for the rank deficiency of the closed form: the
    direction pulled back from the image F(z) always lies in the kernel
    of the Levi matrix of log||F||.
    """
    z = np.asarray(z, dtype=np.complex128)
    w, J = jacobian_many(word, z[None, :])
    L = _levi_from_images(w, J)[0]
    v = np.linalg.solve(J[0], w[0])
    return float(np.linalg.norm(L @ v) / np.linalg.norm(v))
