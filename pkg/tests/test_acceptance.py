"""Acceptance gate: the headline guarantees, one printed verdict per criterion.

Each test exercises one advertised property at desk scale (dimensions 1
to 3, short words, moderate degrees) and prints a single PASS/FAIL line
with the measured margin before asserting, so a bare test run doubles as
a checklist.
"""

import numpy as np

from holoprint import (
    AutomorphismWord,
    ComplexPolynomial,
    Shear,
    levi_log_norm,
    log_norm_sampler,
    wirtinger_levi_fd,
)
from holoprint.verify import VerifyConfig, run_suite


def report(number, name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({name}): {detail}"
    print(line)
    assert ok, line


def run(name, n, **overrides):
    return run_suite(name, VerifyConfig(n=n, **overrides))


def summarize(results):
    return "; ".join(f"n={n}: {r.summary}" for n, r in results)


def test_criterion_1_oracle_agreement():
    results = [(n, run("oracle-agreement", n)) for n in (1, 2, 3)]
    ok = all(r.passed for _, r in results)
    report(1, "closed form vs finite differences", ok, summarize(results))


def test_criterion_2_plurisubharmonicity():
    results = [(n, run("plurisubharmonicity", n)) for n in (2, 3)]
    ok = all(r.passed for _, r in results)
    report(2, "Levi matrices positive semidefinite", ok, summarize(results))


def test_criterion_3_kernel_rigidity():
    results = [(n, run("kernel-rigidity", n)) for n in (2, 3)]
    ok = all(r.passed for _, r in results)
    two = dict(results)[2]
    ok = ok and two.metrics.get("max_rank", 99) <= 1
    report(3, "kernel direction and rank bound", ok, summarize(results))


def test_criterion_4_dimension_one_collapse():
    r = run("n1-collapse", 1)
    report(4, "dimension-one Levi collapse", r.passed, r.summary)


def test_criterion_5_injectivity():
    r = run("injectivity", 2)
    ok = (
        r.passed
        and r.metrics.get("false_equal", 1) == 0
        and r.metrics.get("inconclusive", 1) == 0
        and r.metrics.get("corpus_size", 0) >= 50
    )
    report(5, "fingerprints separate distinct maps", ok, r.summary)


def test_criterion_6_coset_invariance():
    results = [(n, run("coset-invariance", n)) for n in (2, 3)]
    ok = all(r.passed for _, r in results)
    report(6, "Levi data constant on affine cosets", ok, summarize(results))


def test_criterion_7_affineness_detection():
    results = [(n, run("affineness", n)) for n in (2, 3)]
    ok = all(r.passed for _, r in results)
    report(7, "affineness detector", ok, summarize(results))


def test_criterion_8_group_structure_and_round_trip():
    results = []
    ok = True
    for n in (1, 2, 3):
        ra = run("group-axioms", n)
        rs = run("serialization-roundtrip", n)
        ok = ok and ra.passed and rs.passed
        results.append((n, ra))
        results.append((n, rs))
    report(8, "group algebra and text round-trip", ok, summarize(results))


def test_criterion_9_reference_levi_values():
    z = np.array([1.0 + 0j, 0.0 + 0j])
    shear = AutomorphismWord(2, (Shear(2, ComplexPolynomial(2, {(2, 0): 1.0})),))
    identity = AutomorphismWord.identity(2)

    closed_gaps = []
    fd_gaps = []
    for word, expect in (
        (shear, np.array([[0.125, 0.125], [0.125, 0.125]])),
        (identity, np.array([[0.0, 0.0], [0.0, 0.5]])),
    ):
        L = levi_log_norm(word, z)
        closed_gaps.append(np.abs(L - expect).max())
        fd = wirtinger_levi_fd(log_norm_sampler(word), z, vectorized=True)
        fd_gaps.append(np.abs(fd - expect).max())

    ok = max(closed_gaps) < 1e-9 and max(fd_gaps) < 1e-6
    report(
        9,
        "reference Levi values",
        ok,
        f"closed-form gaps {closed_gaps[0]:.2e}, {closed_gaps[1]:.2e} (tol 1e-9); "
        f"independent fd gaps {fd_gaps[0]:.2e}, {fd_gaps[1]:.2e} (tol 1e-6)",
    )
