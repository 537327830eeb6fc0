"""Sampled fingerprints of automorphisms and their comparison.

A fingerprint couples the 1-jet at 0 with Levi matrices of
log||G|| sampled over a deterministic point set, where G is the
jet-normalized form of the word (so the Levi data depends only on the
affine coset of the map).  Two maps are declared equal only when both
the jets and every sampled Levi matrix agree within a tight tolerance;
they are declared distinct when some discrepancy exceeds a much looser
threshold; anything in the dead band in between is reported as
inconclusive rather than guessed.

Finite sampling can refute equality of two real-analytic Levi fields
but never certify it; the thresholds below are chosen so that a verdict
of "equal" means "indistinguishable at sampling precision".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import AutomorphismWord, Jet1, jet1, theta_normalize
from .wirtinger import LeviSample, levi_log_norm_many

DEFAULT_RADII = (0.5, 1.0, 2.0)
DEFAULT_COUNT = 16
DEFAULT_SEED = 0
EPS_EQ = 1e-8
EPS_DISTINCT = 1e-4

_MASK64 = (1 << 64) - 1

# First primes, sqrt'ed for the additive-recurrence directions; enough
# for dimensions up to 32.
_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211,
    223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311,
)


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def sample_points(
    n: int,
    seed: int,
    radii: Sequence[float] = DEFAULT_RADII,
    count_per_radius: int = DEFAULT_COUNT,
) -> np.ndarray:
    """Deterministic low-discrepancy points on spheres of the given radii.

    Each point is built from a Kronecker (additive-recurrence) sequence
    with sqrt-prime directions: n uniforms feed exponential spacings for
    the squared moduli (a flat simplex distribution) and n more give the
    phases, so every point lies exactly on its sphere.  The seed enters
    through per-coordinate offsets; identical inputs give identical
    output, independent of any global RNG state.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if 2 * n > len(_PRIMES):
        raise ValueError(f"sampling supports dimensions up to {len(_PRIMES) // 2}")
    if count_per_radius < 1:
        raise ValueError("count_per_radius must be >= 1")
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")

    d = 2 * n
    alphas = np.array([math.sqrt(p) % 1.0 for p in _PRIMES[:d]])
    offsets = np.array(
        [_splitmix64((seed & _MASK64) * 0x10001 + j) / 2.0**64 for j in range(d)]
    )

    total = len(radii) * count_per_radius
    ks = np.arange(1, total + 1)[:, None]
    U = (offsets[None, :] + ks * alphas[None, :]) % 1.0  # (total, 2n)

    spacings = -np.log1p(-U[:, :n])  # exponential spacings >= 0
    sums = spacings.sum(axis=1)
    degenerate = sums <= 0.0
    if degenerate.any():  # all-zero uniforms; fall back to equal moduli
        spacings[degenerate] = 1.0
        sums = spacings.sum(axis=1)
    moduli = np.sqrt(spacings / sums[:, None])
    phases = np.exp(2j * np.pi * U[:, n:])

    points = moduli * phases
    scale = np.repeat(np.asarray(radii), count_per_radius)
    points *= scale[:, None]

    if len({tuple(row) for row in points.view(float).reshape(total, -1)}) != total:
        raise RuntimeError("sample points collided; choose another seed")
    points.setflags(write=False)
    return points


def identity_levi_many(Z: np.ndarray) -> np.ndarray:
    """Closed-form Levi matrices of log||z|| at every row of Z.

    L[i, j] = (S delta_ij - z_i conj(z_j)) / (2 S^2) with S = ||z||^2:
    the specialization of the log-norm closed form to the identity map.
    """
    Z = np.asarray(Z, dtype=np.complex128)
    n = Z.shape[1]
    S = np.einsum("mi,mi->m", Z, Z.conj()).real
    outer = Z[:, :, None] * Z.conj()[:, None, :]
    return (S[:, None, None] * np.eye(n) - outer) / (2.0 * S**2)[:, None, None]


def identity_levi(z) -> np.ndarray:
    """Levi matrix of log||z|| at a single nonzero point."""
    z = np.asarray(z, dtype=np.complex128)
    return identity_levi_many(z[None, :])[0]


@dataclass(frozen=True, eq=False)
class Fingerprint:
    """Jet at 0 plus Levi matrices of the normalized map over a sample set."""

    dimension: int
    jet: Jet1
    sample_seed: int
    radii: tuple[float, ...]
    count_per_radius: int
    points: np.ndarray  # (m, n) complex, rows nonzero and pairwise distinct
    levis: np.ndarray  # (m, n, n) complex Hermitian

    @property
    def samples(self) -> tuple[LeviSample, ...]:
        return tuple(
            LeviSample(p, L) for p, L in zip(self.points, self.levis)
        )

    def sampling_config(self) -> tuple:
        return (self.dimension, self.sample_seed, self.radii, self.count_per_radius)


def fingerprint(
    word: AutomorphismWord,
    seed: int = DEFAULT_SEED,
    radii: Sequence[float] = DEFAULT_RADII,
    count_per_radius: int = DEFAULT_COUNT,
) -> Fingerprint:
    """The sampled fingerprint of a word: jet1 plus normalized Levi data.

    The Levi matrices are those of log||G|| with G = theta_normalize(word),
    evaluated at the deterministic sample set; the jet is that of the word
    itself.  Normalizing first makes the Levi component invariant under
    affine post-composition, so the pair (jet, Levi samples) separates
    maps exactly as the full jet-plus-potential datum does.
    """
    pts = sample_points(word.dimension, seed, radii, count_per_radius)
    normalized = theta_normalize(word)
    levis = levi_log_norm_many(normalized, pts)
    levis.setflags(write=False)
    return Fingerprint(
        dimension=word.dimension,
        jet=jet1(word),
        sample_seed=int(seed),
        radii=tuple(float(r) for r in radii),
        count_per_radius=int(count_per_radius),
        points=pts,
        levis=levis,
    )


@dataclass(frozen=True, eq=False)
class Witness:
    """Where and by how much two fingerprints were told apart.

    ``kind`` is "levi" (some sampled Levi matrix differs; ``point`` is
    set) or "jet" (the jets alone differ; ``point`` is None).
    """

    kind: str
    distance: float
    point: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class ComparisonVerdict:
    """Outcome of a fingerprint comparison.

    ``outcome`` is "equal", "distinct" or "inconclusive"; a distinct
    verdict always carries a witness.  ``jet_distance`` is the max of the
    value gap and the Frobenius gap of the derivatives;
    ``max_levi_distance`` is the largest Frobenius distance over samples.
    """

    outcome: str
    jet_equal: bool
    jet_distance: float
    max_levi_distance: float
    witness: Optional[Witness] = None


def compare(
    f1: Fingerprint,
    f2: Fingerprint,
    eps_eq: float = EPS_EQ,
    eps_distinct: float = EPS_DISTINCT,
) -> ComparisonVerdict:
    """Compare two fingerprints built with the same sampling configuration.

    equal       all jet and Levi distances below eps_eq;
    distinct    some distance above eps_distinct (witness recorded);
    inconclusive  everything else (dead band between the thresholds).
    """
    if f1.sampling_config() != f2.sampling_config():
        raise ValueError(
            "fingerprints were built with different sampling configurations: "
            f"{f1.sampling_config()} vs {f2.sampling_config()}"
        )
    if not eps_eq < eps_distinct:
        raise ValueError("eps_eq must be smaller than eps_distinct")

    value_gap = float(
        np.linalg.norm(f1.jet.value_at_zero - f2.jet.value_at_zero)
    )
    deriv_gap = float(
        np.linalg.norm(f1.jet.derivative_at_zero - f2.jet.derivative_at_zero)
    )
    jet_distance = max(value_gap, deriv_gap)
    jet_equal = jet_distance < eps_eq

    diffs = f1.levis - f2.levis
    levi_distances = np.sqrt(
        np.einsum("mij,mij->m", diffs, diffs.conj()).real
    )
    worst = int(np.argmax(levi_distances)) if len(levi_distances) else 0
    max_levi = float(levi_distances[worst]) if len(levi_distances) else 0.0

    if max_levi > eps_distinct:
        witness = Witness("levi", max_levi, f1.points[worst])
        outcome = "distinct"
    elif jet_distance > eps_distinct:
        witness = Witness("jet", jet_distance)
        outcome = "distinct"
    elif jet_equal and max_levi < eps_eq:
        witness = None
        outcome = "equal"
    else:
        witness = None
        outcome = "inconclusive"
    return ComparisonVerdict(outcome, jet_equal, jet_distance, max_levi, witness)


@dataclass(frozen=True, eq=False)
class AffinenessReport:
    """Result of the affineness test, with a witness sample when false."""

    affine: bool
    max_distance: float
    witness: Optional[Witness] = None


def affineness_report(
    word: AutomorphismWord,
    seed: int = DEFAULT_SEED,
    radii: Sequence[float] = DEFAULT_RADII,
    count_per_radius: int = DEFAULT_COUNT,
    tol: float = EPS_EQ,
) -> AffinenessReport:
    """Test whether the word is an affine map.

    The word is affine iff its normalized form is the identity, i.e. iff
    the Levi matrices of log||G|| coincide with those of log||z|| at every
    sample: the sampled statement that log(||G(z)||/||z||) is pluriharmonic
    away from zero.
    """
    pts = sample_points(word.dimension, seed, radii, count_per_radius)
    normalized = theta_normalize(word)
    levis = levi_log_norm_many(normalized, pts)
    diffs = levis - identity_levi_many(pts)
    distances = np.sqrt(np.einsum("mij,mij->m", diffs, diffs.conj()).real)
    worst = int(np.argmax(distances))
    max_distance = float(distances[worst])
    if max_distance < tol:
        return AffinenessReport(True, max_distance)
    return AffinenessReport(
        False, max_distance, Witness("levi", max_distance, pts[worst])
    )


def is_affine(
    word: AutomorphismWord,
    seed: int = DEFAULT_SEED,
    radii: Sequence[float] = DEFAULT_RADII,
    count_per_radius: int = DEFAULT_COUNT,
    tol: float = EPS_EQ,
) -> bool:
    """True iff the word acts as an affine map of C^n (sampled criterion)."""
    return affineness_report(word, seed, radii, count_per_radius, tol).affine
