"""Pure-python (numpy) evaluation kernels for automorphism words.

This is the fallback backend: it mirrors the compiled ``_kernels``
extension and is selected at import time when the extension is missing
(see ``_backend``).  Both backends consume the plan format built by
``algebra._compile_plan``:

    ("affine", A, b)            A: (n, n) complex128 C-order, b: (n,)
    ("shear", k, exps, coeffs)  k: 1-based target coordinate,
                                exps: (T, n) int64, coeffs: (T,) complex128

Everything is vectorized over points; python-level loops run only over
generators and, for Jacobians, over the (few) variables of each shear
polynomial.
"""

from __future__ import annotations

import numpy as np


def _shear_values(W, exps, coeffs):
    # p(w) for every point row of W; an empty polynomial gives 0.
    if exps.shape[0] == 0:
        return np.zeros(W.shape[0], dtype=np.complex128)
    powers = W[:, None, :] ** exps[None, :, :]  # (m, T, n)
    return powers.prod(axis=2) @ coeffs


def _shear_gradients(W, exps, coeffs):
    # dp/dw_j for every point; the target column of exps is all-zero, so
    # the gradient entry at the sheared coordinate stays 0.
    m, n = W.shape
    grad = np.zeros((m, n), dtype=np.complex128)
    for j in range(n):
        ej = exps[:, j]
        hot = ej > 0
        if not hot.any():
            continue
        lowered = exps[hot].copy()
        lowered[:, j] -= 1
        monos = (W[:, None, :] ** lowered[None, :, :]).prod(axis=2)
        grad[:, j] = monos @ (coeffs[hot] * ej[hot])
    return grad


def eval_points(plan, Z):
    """Apply the word to every row of Z; returns a new (m, n) array."""
    W = np.array(Z, dtype=np.complex128, copy=True)
    for step in plan:
        if step[0] == "affine":
            _, A, b = step
            W = W @ A.T + b
        else:
            _, k, exps, coeffs = step
            W[:, k - 1] += _shear_values(W, exps, coeffs)
    return W


def eval_jacobians(plan, Z):
    """Images and Jacobians for every row of Z.

    Returns ``(W, J)`` with W of shape (m, n) and J of shape (m, n, n);
    J[p] is the holomorphic Jacobian of the word at Z[p], accumulated by
    the chain rule along the generator sequence.
    """
    W = np.array(Z, dtype=np.complex128, copy=True)
    m, n = W.shape
    J = np.repeat(np.eye(n, dtype=np.complex128)[None, :, :], m, axis=0)
    for step in plan:
        if step[0] == "affine":
            _, A, b = step
            J = np.einsum("rc,mcj->mrj", A, J)
            W = W @ A.T + b
        else:
            _, k, exps, coeffs = step
            # gradient and value are taken at the *current* W, before the
            # coordinate update; the sheared row of J picks up grad . J
            grad = _shear_gradients(W, exps, coeffs)
            val = _shear_values(W, exps, coeffs)
            J[:, k - 1, :] += np.einsum("mj,mjc->mc", grad, J)
            W[:, k - 1] += val
    return W, J
