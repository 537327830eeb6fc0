"""Seeded random corpora of automorphism words for tests and verification.

Random composition can explode: stacking degree-4 shears squares degrees
at every step, and double precision dies near 1e308.  Every generator
here therefore moderates its draws by probing candidate words at a fixed
sample set and redrawing (with progressively tamer parameters) until the
images, Jacobians and Levi magnitudes are comfortably inside the range
where the downstream tolerances are meaningful.  All draws are
deterministic functions of the supplied Generator, so corpora are
reproducible from a seed.
"""

from __future__ import annotations

import numpy as np

from .algebra import (
    Affine,
    AutomorphismWord,
    ComplexPolynomial,
    Shear,
    compose,
    evaluate_many,
    jacobian_many,
    theta_normalize,
)
from .fingerprint import sample_points
from .wirtinger import levi_log_norm_many

# Probe bounds: images beyond this are rejected as numerically hostile.
IMAGE_BOUND = 1e6
_PROBE_SEED = 987654321


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def probe_points(n: int) -> np.ndarray:
    """A fixed, seed-independent probe set on the default radii."""
    return sample_points(n, _PROBE_SEED, radii=(0.5, 1.0, 2.0), count_per_radius=8)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary: QR of a complex Gaussian with phase correction."""
    Q, R = np.linalg.qr(_complex_normal(rng, (n, n)))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_affine(
    rng: np.random.Generator,
    n: int,
    offset_scale: float = 0.5,
    sv_range: tuple[float, float] = (0.6, 1.6),
) -> Affine:
    """Well-conditioned random affine generator.

    Singular values are drawn log-uniform inside sv_range, so the
    condition number stays below sv_range[1]/sv_range[0].
    """
    lo, hi = sv_range
    sv = np.exp(rng.uniform(np.log(lo), np.log(hi), size=n))
    A = random_unitary(rng, n) * sv @ random_unitary(rng, n)
    b = offset_scale * _complex_normal(rng, n)
    return Affine(A, b)


def random_exponent(
    rng: np.random.Generator,
    n: int,
    exclude: int,
    max_degree: int,
    min_degree: int,
) -> tuple[int, ...]:
    """A random multi-index with zero exponent on the excluded coordinate."""
    free = [j for j in range(n) if j != exclude - 1]
    while True:
        degree = int(rng.integers(min_degree, max_degree + 1))
        exp = [0] * n
        for _ in range(degree):
            exp[int(rng.choice(free))] += 1
        if min_degree <= sum(exp) <= max_degree:
            return tuple(exp)


def random_shear(
    rng: np.random.Generator,
    n: int,
    max_degree: int = 4,
    min_degree: int = 0,
    max_terms: int = 3,
    coeff_scale: float = 1.0,
) -> Shear:
    """Random elementary shear; requires n >= 2 (no legal target otherwise).

    With min_degree >= 2 the shear fixes 0 with identity derivative
    exactly, so words of such shears have jet (0, I) with no rounding.
    """
    if n < 2:
        raise ValueError("shears need n >= 2; in C^1 every automorphism is affine")
    k = int(rng.integers(1, n + 1))
    terms: dict[tuple[int, ...], complex] = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        exp = random_exponent(rng, n, k, max_degree, min_degree)
        c = coeff_scale * complex(rng.uniform(0.3, 1.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        terms[exp] = terms.get(exp, 0j) + c
    p = ComplexPolynomial(n, terms)
    if not p.terms:  # cancelled to zero; extremely unlikely, redraw
        return random_shear(rng, n, max_degree, min_degree, max_terms, coeff_scale)
    return Shear(k, p)


def word_is_moderate(
    word: AutomorphismWord,
    probes: np.ndarray,
    image_bound: float = IMAGE_BOUND,
) -> bool:
    """True when images and Jacobians at the probes are finite and bounded."""
    with np.errstate(over="ignore", invalid="ignore"):
        values, jacs = jacobian_many(word, probes)
    if not (np.isfinite(values).all() and np.isfinite(jacs).all()):
        return False
    if np.abs(values).max() > image_bound:
        return False
    return np.abs(jacs).max() <= image_bound


def random_word(
    rng: np.random.Generator,
    n: int,
    max_length: int = 6,
    max_degree: int = 4,
    shear_probability: float = 0.6,
    image_bound: float = IMAGE_BOUND,
    min_shear_degree: int = 0,
    affine_only: bool = False,
) -> AutomorphismWord:
    """A random tame word, redrawn with tamer parameters until moderate."""
    probes = probe_points(n)
    affine_only = affine_only or n < 2
    for attempt in range(200):
        tame = 1.0 / (1.0 + attempt / 10.0)
        length = int(rng.integers(1, max(2, int(max_length * tame) + 1)))
        degree = max(min(2, max_degree), int(round(max_degree * tame)))
        gens = []
        for _ in range(length):
            if affine_only or rng.random() > shear_probability:
                gens.append(random_affine(rng, n))
            else:
                gens.append(
                    random_shear(
                        rng,
                        n,
                        max_degree=max(degree, min_shear_degree),
                        min_degree=min_shear_degree,
                        coeff_scale=tame,
                    )
                )
        word = AutomorphismWord(n, gens)
        if word_is_moderate(word, probes, image_bound):
            return word
    # affine words are always moderate under these bounds
    return AutomorphismWord(n, (random_affine(rng, n),))


def random_affine_word(
    rng: np.random.Generator, n: int, max_length: int = 6
) -> AutomorphismWord:
    """A word of affine generators only (the whole group when n = 1)."""
    length = int(rng.integers(1, max_length + 1))
    return AutomorphismWord(n, tuple(random_affine(rng, n) for _ in range(length)))


def random_normalized_word(
    rng: np.random.Generator,
    n: int,
    max_length: int = 3,
    max_degree: int = 4,
    image_bound: float = IMAGE_BOUND,
) -> AutomorphismWord:
    """A word of degree->=2 shears: jet exactly (0, I), moderate at probes."""
    if n < 2:
        raise ValueError("nontrivial normalized words need n >= 2")
    probes = probe_points(n)
    while True:
        length = int(rng.integers(1, max_length + 1))
        gens = tuple(
            random_shear(rng, n, max_degree=max_degree, min_degree=2, coeff_scale=0.8)
            for _ in range(length)
        )
        word = AutomorphismWord(n, gens)
        if word_is_moderate(word, probes, image_bound):
            return word


def distinct_normalized_corpus(
    rng: np.random.Generator,
    n: int,
    size: int,
    max_length: int = 3,
    max_degree: int = 4,
    min_gap: float = 1e-3,
) -> list[AutomorphismWord]:
    """Pairwise-distinct normalized words, certified by evaluation probes.

    A candidate joins the corpus only if at some probe point its image
    differs from every accepted word's image by more than min_gap, so
    distinctness of the underlying maps is witnessed by evaluation alone.
    """
    probes = probe_points(n)
    corpus: list[AutomorphismWord] = []
    images: list[np.ndarray] = []
    while len(corpus) < size:
        word = random_normalized_word(rng, n, max_length, max_degree)
        img = evaluate_many(word, probes)
        gaps = [float(np.abs(img - other).max()) for other in images]
        if all(g > min_gap for g in gaps):
            corpus.append(word)
            images.append(img)
    return corpus


def nonaffine_word(
    rng: np.random.Generator,
    n: int,
    min_gap: float = 1e-3,
) -> AutomorphismWord:
    """A random word certified non-affine by a normalized evaluation probe.

    The word is affine iff its normalized form is the identity map, so a
    probe where the normalized image differs from the input by more than
    min_gap witnesses non-affineness.
    """
    if n < 2:
        raise ValueError("every automorphism of C^1 is affine")
    probes = probe_points(n)
    while True:
        word = random_word(rng, n, max_length=4)
        normalized = theta_normalize(word)
        if not word_is_moderate(normalized, probes):
            continue
        gap = float(np.abs(evaluate_many(normalized, probes) - probes).max())
        if gap > min_gap:
            return word


def oracle_pair(
    rng: np.random.Generator, n: int
) -> tuple[AutomorphismWord, np.ndarray]:
    """A (word, point) pair tame enough for finite-difference cross-checks.

    Second differences with step 1e-4 lose accuracy when the sampled
    function has large high-order derivatives or when ||F|| is tiny, so
    candidates are rejected unless the image, Jacobian and Levi magnitude
    at the point are all of order one.
    """
    while True:
        word = random_word(
            rng, n, max_length=3, max_degree=3, shear_probability=0.7
        )
        z = np.exp(1j * rng.uniform(0, 2 * np.pi, n)) * rng.uniform(0.4, 1.2, n)
        z *= rng.uniform(0.7, 1.5) / np.linalg.norm(z)
        Z = z[None, :]
        values, jacs = jacobian_many(word, Z)
        norm = float(np.linalg.norm(values[0]))
        if not 0.3 <= norm <= 6.0:
            continue
        if float(np.abs(jacs[0]).max()) > 25.0:
            continue
        levi = levi_log_norm_many(word, Z)[0]
        if float(np.linalg.norm(levi)) > 50.0:
            continue
        return word, z


def fingerprintable_word(
    rng: np.random.Generator,
    n: int,
    max_length: int = 4,
    image_bound: float = 1e4,
    min_norm: float = 1e-2,
    max_levi: float = 100.0,
) -> AutomorphismWord:
    """A random word whose normalized form is numerically benign.

    The normalized images at the probe points stay inside
    [min_norm, image_bound] and the Levi magnitudes below max_levi, so
    fingerprint comparisons run far from rounding cliffs.
    """
    probes = probe_points(n)
    while True:
        word = random_word(rng, n, max_length=max_length)
        normalized = theta_normalize(word)
        if not word_is_moderate(normalized, probes, image_bound):
            continue
        values = evaluate_many(normalized, probes)
        if np.linalg.norm(values, axis=1).min() < min_norm:
            continue
        levis = levi_log_norm_many(normalized, probes)
        if float(np.abs(levis).max()) > max_levi:
            continue
        return word


def coset_pair(
    rng: np.random.Generator, n: int
) -> tuple[AutomorphismWord, AutomorphismWord]:
    """(W, H o W) with H random affine, moderate after normalization."""
    word = fingerprintable_word(rng, n)
    left = compose(AutomorphismWord(n, (random_affine(rng, n),)), word)
    return word, left
