"""Seeded verification suites over generated corpora.

Each suite checks one family of invariants of the library at desk scale
(n in {1,2,3}, short words, moderate degrees) and reports pass/fail with
metrics and serialized counterexamples.  The suites are deterministic
functions of the configuration, so failures reproduce from a seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .algebra import (
    AutomorphismWord,
    compose,
    evaluate_many,
    invert,
    jacobian,
    jet1,
    theta_normalize,
)
from .fingerprint import (
    DEFAULT_COUNT,
    DEFAULT_RADII,
    EPS_DISTINCT,
    EPS_EQ,
    compare,
    fingerprint,
    sample_points,
)
from .lang import parse_automorphism, serialize
from .wirtinger import (
    kernel_residual,
    levi_log_norm_many,
    log_norm_sampler,
    wirtinger_levi_fd,
)
from .wordgen import (
    coset_pair,
    distinct_normalized_corpus,
    fingerprintable_word,
    make_rng,
    nonaffine_word,
    oracle_pair,
    random_affine,
    random_affine_word,
    random_word,
)


@dataclass(frozen=True)
class VerifyConfig:
    n: int = 2
    seed: int = 0
    radii: tuple[float, ...] = DEFAULT_RADII
    count_per_radius: int = DEFAULT_COUNT
    eps_eq: float = EPS_EQ
    eps_distinct: float = EPS_DISTINCT
    psd_tol: float = 1e-9

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if min(self.eps_eq, self.eps_distinct, self.psd_tol) <= 0:
            raise ValueError("thresholds must be positive")
        if not self.eps_eq < self.eps_distinct:
            raise ValueError("eps_eq must be smaller than eps_distinct")
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    summary: str
    metrics: dict[str, float] = field(default_factory=dict)
    counterexamples: tuple[str, ...] = ()


def _result(name, passed, summary, metrics, bad):
    return SuiteResult(name, passed, summary, metrics, tuple(bad[:5]))


def _test_points(rng, n, count, lo=0.2, hi=2.2):
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    return z / norms * rng.uniform(lo, hi, (count, 1))


def _levi_ready_points(rng, word, count):
    """Points where ||F|| is comfortably nonzero, drawn with rejection."""
    out = []
    while len(out) < count:
        batch = _test_points(rng, word.dimension, count)
        norms = np.linalg.norm(evaluate_many(word, batch), axis=1)
        good = (norms > 1e-3) & (norms < 1e3)
        out.extend(batch[good])
    return np.array(out[:count])


def suite_group_axioms(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 11])
    n = cfg.n
    tol = 1e-9
    worst = 0.0
    worst_jet = 0.0
    bad = []
    for _ in range(10):
        word = random_word(rng, n, max_length=5, image_bound=1e3)
        pts = _test_points(rng, n, 100)
        scale = 1.0 + np.linalg.norm(pts, axis=1)

        round_trip = evaluate_many(invert(word), evaluate_many(word, pts))
        err_inv = float((np.linalg.norm(round_trip - pts, axis=1) / scale).max())

        wid = compose(word, invert(word))
        err_id = float(
            (np.linalg.norm(evaluate_many(wid, pts) - pts, axis=1) / scale).max()
        )

        other = random_word(rng, n, max_length=3, image_bound=1e3)
        third = random_word(rng, n, max_length=3, image_bound=1e3)
        left = compose(compose(word, other), third)
        right = compose(word, compose(other, third))
        err_assoc = float(
            np.abs(evaluate_many(left, pts) - evaluate_many(right, pts)).max()
        )

        # chain rule at the origin: D(W o V)(0) = DW(V(0)) DV(0)
        j_comp = jet1(compose(word, other)).derivative_at_zero
        j_prod = jacobian(word, jet1(other).value_at_zero) @ jet1(
            other
        ).derivative_at_zero
        err_jet = float(np.abs(j_comp - j_prod).max())

        err = max(err_inv, err_id, err_assoc)
        worst = max(worst, err)
        worst_jet = max(worst_jet, err_jet)
        if err > tol or err_jet > 1e-9 * max(1.0, float(np.abs(j_prod).max())):
            bad.append(serialize(word))
    passed = not bad
    return _result(
        "group-axioms",
        passed,
        f"inverse/identity/associativity residual {worst:.2e} (tol {tol:.0e}), "
        f"jet chain rule residual {worst_jet:.2e}",
        {"max_residual": worst, "max_jet_residual": worst_jet},
        bad,
    )


def suite_serialization_roundtrip(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 13])
    n = cfg.n
    tol = 1e-12
    worst = 0.0
    bad = []
    for _ in range(20):
        word = random_word(rng, n, max_length=4, image_bound=1e3)
        text = serialize(word)
        reparsed = parse_automorphism(text, n)
        pts = _test_points(rng, n, 50)
        err = float(
            np.abs(evaluate_many(word, pts) - evaluate_many(reparsed, pts)).max()
        )
        worst = max(worst, err)
        stable = serialize(reparsed) == text
        if err > tol or not stable:
            bad.append(text)
    passed = not bad
    return _result(
        "serialization-roundtrip",
        passed,
        f"20 words reparsed; max evaluation gap {worst:.2e} (tol {tol:.0e}); "
        "canonical text is a fixed point",
        {"max_eval_gap": worst},
        bad,
    )


def suite_oracle_agreement(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 17])
    n = cfg.n
    worst_ratio = 0.0
    bad = []
    for _ in range(100):
        word, z = oracle_pair(rng, n)
        closed = levi_log_norm_many(word, z[None, :])[0]
        approx = wirtinger_levi_fd(log_norm_sampler(word), z, vectorized=True)
        tol = max(1e-5, 1e-4 * float(np.linalg.norm(closed)))
        gap = float(np.abs(closed - approx).max())
        worst_ratio = max(worst_ratio, gap / tol)
        if gap > tol:
            bad.append(f"{serialize(word)} at z={z.tolist()}")
    passed = not bad
    return _result(
        "oracle-agreement",
        passed,
        "closed form vs central-difference Levi on 100 (word, point) pairs; "
        f"worst gap/tolerance ratio {worst_ratio:.3f}",
        {"worst_gap_ratio": worst_ratio},
        bad,
    )


def suite_plurisubharmonicity(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 19])
    n = cfg.n
    min_eig = np.inf
    bad = []
    for _ in range(50):
        word = random_word(rng, n, max_length=4, image_bound=1e4)
        pts = _levi_ready_points(rng, word, 20)
        levis = levi_log_norm_many(word, pts)
        eigs = np.linalg.eigvalsh(levis)
        low = float(eigs.min())
        min_eig = min(min_eig, low)
        if low < -cfg.psd_tol:
            bad.append(serialize(word))
    passed = not bad
    return _result(
        "plurisubharmonicity",
        passed,
        f"1000 Levi samples over 50 words; min eigenvalue {min_eig:.2e} "
        f"(floor -{cfg.psd_tol:.0e})",
        {"min_eigenvalue": min_eig},
        bad,
    )


def suite_kernel_rigidity(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 19])  # same corpus as plurisubharmonicity
    n = cfg.n
    worst_residual = 0.0
    worst_rank = 0
    bad = []
    for _ in range(50):
        word = random_word(rng, n, max_length=4, image_bound=1e4)
        pts = _levi_ready_points(rng, word, 20)
        levis = levi_log_norm_many(word, pts)
        residual = max(float(kernel_residual(word, z)) for z in pts)
        worst_residual = max(worst_residual, residual)
        eigs = np.linalg.eigvalsh(levis)
        floors = np.maximum(1e-10, 1e-8 * eigs.max(axis=1, keepdims=True))
        ranks = (eigs > floors).sum(axis=1)
        worst_rank = max(worst_rank, int(ranks.max()))
        if residual > 1e-8 or ranks.max() > n - 1:
            bad.append(serialize(word))
    passed = not bad
    return _result(
        "kernel-rigidity",
        passed,
        f"J^-1 F kernel residual {worst_residual:.2e} (tol 1e-08); "
        f"max numerical rank {worst_rank} (bound {n - 1})",
        {"max_residual": worst_residual, "max_rank": float(worst_rank)},
        bad,
    )


def suite_n1_collapse(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 23])
    pts = sample_points(1, cfg.seed, cfg.radii, cfg.count_per_radius)
    worst = 0.0
    bad = []
    words = [random_affine_word(rng, 1) for _ in range(20)]
    for word in words:
        levis = levi_log_norm_many(theta_normalize(word), pts)
        mag = float(np.abs(levis).max())
        worst = max(worst, mag)
        if mag > 1e-9:
            bad.append(serialize(word))
    # with the Levi component flat, comparison must reduce to the jets
    fps = [
        fingerprint(w, cfg.seed, cfg.radii, cfg.count_per_radius) for w in words
    ]
    mismatches = 0
    for i in range(len(fps)):
        for j in range(i, len(fps)):
            verdict = compare(fps[i], fps[j], cfg.eps_eq, cfg.eps_distinct)
            if verdict.max_levi_distance > cfg.eps_eq:
                mismatches += 1
            jets_far = verdict.jet_distance > cfg.eps_distinct
            expected = "equal" if i == j else ("distinct" if jets_far else None)
            if expected is not None and verdict.outcome != expected:
                mismatches += 1
                bad.append(f"{serialize(words[i])}  vs  {serialize(words[j])}")
    passed = not bad and mismatches == 0
    return _result(
        "n1-collapse",
        passed,
        f"20 affine words of C^1: max normalized Levi magnitude {worst:.2e} "
        "(tol 1e-09); comparison decided by jets alone",
        {"max_levi_magnitude": worst, "jet_reduction_mismatches": float(mismatches)},
        bad,
    )


def suite_injectivity(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 29])
    n = max(cfg.n, 2)  # C^1 has no nontrivial normalized words
    corpus = distinct_normalized_corpus(rng, n, 50)
    fps = [
        fingerprint(w, cfg.seed, cfg.radii, cfg.count_per_radius) for w in corpus
    ]
    false_equal = 0
    inconclusive = 0
    missing_witness = 0
    min_gap = np.inf
    bad = []
    for i in range(len(fps)):
        for j in range(i + 1, len(fps)):
            verdict = compare(fps[i], fps[j], cfg.eps_eq, cfg.eps_distinct)
            min_gap = min(min_gap, verdict.max_levi_distance)
            if verdict.outcome == "equal":
                false_equal += 1
            elif verdict.outcome == "inconclusive":
                inconclusive += 1
            elif verdict.witness is None:
                missing_witness += 1
            if verdict.outcome != "distinct" or verdict.witness is None:
                bad.append(f"{serialize(corpus[i])}  vs  {serialize(corpus[j])}")
    reflexive_ok = all(
        compare(fp, fp, cfg.eps_eq, cfg.eps_distinct).outcome == "equal"
        for fp in fps[:5]
    )
    passed = not bad and reflexive_ok
    return _result(
        "injectivity",
        passed,
        f"{len(corpus)} normalized words with jet (0, I), all pairs separated; "
        f"false equal {false_equal}, inconclusive {inconclusive}, "
        f"smallest witness distance {min_gap:.2e}",
        {
            "corpus_size": float(len(corpus)),
            "false_equal": float(false_equal),
            "inconclusive": float(inconclusive),
            "min_witness_distance": float(min_gap),
        },
        bad,
    )


def suite_coset_invariance(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 31])
    n = cfg.n
    worst = 0.0
    bad = []
    for _ in range(20):
        word, left = coset_pair(rng, n)
        fp = fingerprint(word, cfg.seed, cfg.radii, cfg.count_per_radius)
        fp_left = fingerprint(left, cfg.seed, cfg.radii, cfg.count_per_radius)
        diffs = fp.levis - fp_left.levis
        gap = float(
            np.sqrt(np.einsum("mij,mij->m", diffs, diffs.conj()).real).max()
        )
        worst = max(worst, gap)
        if gap > 1e-8:
            bad.append(serialize(word))
    passed = not bad
    return _result(
        "coset-invariance",
        passed,
        "normalized Levi samples of W and H o W agree for 20 random affine H; "
        f"max Frobenius gap {worst:.2e} (tol 1e-08)",
        {"max_frobenius_gap": worst},
        bad,
    )


def suite_retraction(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng([cfg.seed, 37])
    n = cfg.n
    worst_eval = 0.0
    worst_jet = 0.0
    worst_levi = 0.0
    bad = []
    for _ in range(10):
        word = fingerprintable_word(rng, n)
        once = theta_normalize(word)
        twice = theta_normalize(once)
        pts = _test_points(rng, n, 50)
        err_eval = float(
            np.abs(evaluate_many(once, pts) - evaluate_many(twice, pts)).max()
        )
        jet = jet1(once)
        err_jet = max(
            float(np.abs(jet.value_at_zero).max()),
            float(np.abs(jet.derivative_at_zero - np.eye(n)).max()),
        )
        fp = fingerprint(word, cfg.seed, cfg.radii, cfg.count_per_radius)
        fp_norm = fingerprint(once, cfg.seed, cfg.radii, cfg.count_per_radius)
        err_levi = float(np.abs(fp.levis - fp_norm.levis).max())
        worst_eval = max(worst_eval, err_eval)
        worst_jet = max(worst_jet, err_jet)
        worst_levi = max(worst_levi, err_levi)
        if err_eval > 1e-9 or err_jet > 1e-12 or err_levi > 1e-10:
            bad.append(serialize(word))
    passed = not bad
    return _result(
        "retraction",
        passed,
        f"normalization is idempotent (evaluation gap {worst_eval:.2e}), "
        f"normalized jets are (0, I) within {worst_jet:.2e}, fingerprints of "
        f"W and its normalization share Levi data within {worst_levi:.2e}",
        {
            "max_eval_gap": worst_eval,
            "max_jet_gap": worst_jet,
            "max_levi_gap": worst_levi,
        },
        bad,
    )


def suite_affineness(cfg: VerifyConfig) -> SuiteResult:
    from .fingerprint import affineness_report

    rng = make_rng([cfg.seed, 41])
    n = cfg.n
    bad = []
    true_hits = 0
    for _ in range(20):
        word = random_affine_word(rng, n)
        report = affineness_report(
            word, cfg.seed, cfg.radii, cfg.count_per_radius, cfg.eps_eq
        )
        if report.affine:
            true_hits += 1
        else:
            bad.append(serialize(word))
    false_hits = 0
    if n >= 2:
        for _ in range(20):
            word = nonaffine_word(rng, n)
            report = affineness_report(
                word, cfg.seed, cfg.radii, cfg.count_per_radius, cfg.eps_eq
            )
            if not report.affine and report.witness is not None:
                false_hits += 1
            else:
                bad.append(serialize(word))
        note = f"{true_hits}/20 affine accepted, {false_hits}/20 non-affine rejected with witnesses"
        passed = true_hits == 20 and false_hits == 20 and not bad
    else:
        note = f"{true_hits}/20 affine accepted (every automorphism of C^1 is affine)"
        passed = true_hits == 20 and not bad
    return _result(
        "affineness",
        passed,
        note,
        {"affine_accepted": float(true_hits), "nonaffine_rejected": float(false_hits)},
        bad,
    )


SUITES: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "group-axioms": suite_group_axioms,
    "serialization-roundtrip": suite_serialization_roundtrip,
    "oracle-agreement": suite_oracle_agreement,
    "plurisubharmonicity": suite_plurisubharmonicity,
    "kernel-rigidity": suite_kernel_rigidity,
    "n1-collapse": suite_n1_collapse,
    "injectivity": suite_injectivity,
    "coset-invariance": suite_coset_invariance,
    "retraction": suite_retraction,
    "affineness": suite_affineness,
}


def run_suite(name: str, cfg: Optional[VerifyConfig] = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choices: {', '.join(SUITES)}")
    return SUITES[name](cfg or VerifyConfig())


def run_all(cfg: Optional[VerifyConfig] = None) -> list[SuiteResult]:
    cfg = cfg or VerifyConfig()
    return [fn(cfg) for fn in SUITES.values()]
