"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.  Every tolerance is fixed here; nothing is calibrated at runtime.
"""

import itertools
import math

import numpy as np

from bilocalnet import (
    PointerSpec,
    ScenarioConfig,
    bsm_reduce,
    closed_form_active,
    closed_form_passive,
    equal_g_search,
    evaluate_all,
    joint_table,
    marginal_tripartite,
    mixed_pointer_search,
    noise_sweep,
    quadruple_violation_window,
    verify_closed_forms,
    weak_instrument,
)
from conftest import (
    random_config,
    random_density,
    random_pointer,
    table_charlie_first,
)

SQRT2 = math.sqrt(2.0)


def _criterion(num: int, ok: bool, description: str, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num}] {status} - {description} ({detail})")
    assert ok, f"criterion {num} failed: {description} ({detail})"


def test_criterion_1_passive_optimum():
    spec = PointerSpec.optimal(0.8)
    results = evaluate_all(ScenarioConfig.symmetric(spec, spec))
    values = {pair: res.B for pair, res in results.items()}
    worst = max(abs(v - 1.13137) for v in values.values())
    _criterion(
        1,
        worst < 1e-4,
        "all four quantities reach 1.13137 at G=0.8 with optimal pointers",
        f"max deviation {worst:.2e}",
    )


def test_criterion_2_quadruple_violation_window():
    window = quadruple_violation_window("optimal", "optimal", tol=1e-6)
    lo_expected = 1.0 / SQRT2
    hi_expected = math.sqrt(2.0 * (SQRT2 - 1.0))
    ok = (
        window is not None
        and abs(window[0] - lo_expected) < 1e-5
        and abs(window[1] - hi_expected) < 1e-5
    )
    _criterion(
        2,
        ok,
        "quadruple-violation window endpoints at 0.70711 and 0.91018",
        f"window {window}",
    )


def test_criterion_3_square_pointers():
    value, g = equal_g_search("square", "square")
    value_ok = abs(value - 0.9428) < 1e-3 and abs(g - 2.0 / 3.0) < 1e-3
    # no simultaneous violation anywhere in the (G1, G2) unit square
    axis = np.linspace(0.0, 1.0, 401)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    b11, _, _, b22 = closed_form_passive(g1, 1.0 - g1, g2, 1.0 - g2)
    best_anywhere = float(np.minimum(b11, b22).max())
    _criterion(
        3,
        value_ok and best_anywhere <= 1.0,
        "square/square peaks at 0.9428 (G=2/3) and never double-violates",
        f"peak {value:.5f} at G={g:.5f}, best over grid {best_anywhere:.5f}",
    )


def test_criterion_4_mixed_pointers():
    result = mixed_pointer_search("square", "optimal")
    two_d_ok = (
        abs(result.value - 1.034) < 5e-3
        and abs(result.g1 - 0.702) < 2e-2
        and abs(result.g2 - 0.761) < 2e-2
    )
    eq_value, eq_g = equal_g_search("square", "optimal")
    equal_ok = abs(eq_value - 1.033) < 2e-3 and abs(eq_g - 0.73) < 2e-2
    _criterion(
        4,
        two_d_ok and equal_ok,
        "mixed pointers reach 1.034 at (0.702, 0.761) and 1.033 at equal G=0.73",
        f"2d {result.value:.5f} at ({result.g1:.4f}, {result.g2:.4f}); "
        f"equal-G {eq_value:.5f} at {eq_g:.4f}",
    )


def test_criterion_5_active_sharing():
    worst = 0.0
    all_violated = True
    for g in (0.82, 0.85, 0.9, 0.95, 0.99):
        sol = closed_form_active(g)
        spec = PointerSpec.optimal(g)
        config = ScenarioConfig.symmetric(
            spec, spec, theta_first=sol.theta_first, theta_second=sol.theta_second
        )
        results = evaluate_all(config)
        worst = max(
            worst,
            abs(results[(1, 1)].B - sol.b11),
            abs(results[(2, 2)].B - sol.b22),
        )
        all_violated &= results[(1, 1)].B > 1.0 and results[(2, 2)].B > 1.0
    _criterion(
        5,
        worst < 1e-10 and all_violated,
        "helping strategy: pipeline matches closed forms and double-violates",
        f"max deviation {worst:.2e}, double violation everywhere: {all_violated}",
    )


def test_criterion_6_noise_threshold():
    noise = noise_sweep("optimal", "optimal")
    threshold_ok = (
        noise.v_star is not None
        and abs(noise.v_star - 0.8839) < 1e-3
        and abs(noise.g_star - 0.8) < 1e-3
    )
    spec = PointerSpec.optimal(0.8)
    base = evaluate_all(ScenarioConfig.symmetric(spec, spec))
    worst = 0.0
    for v1, v2 in itertools.product(np.linspace(0.2, 1.0, 5), repeat=2):
        noisy = evaluate_all(
            ScenarioConfig.symmetric(spec, spec, v1=float(v1), v2=float(v2))
        )
        scale = math.sqrt(v1 * v2)
        worst = max(
            worst,
            max(abs(noisy[p].B - base[p].B * scale) for p in noisy),
        )
    _criterion(
        6,
        threshold_ok and worst < 1e-10,
        "critical visibility 0.8839 at G=0.8 and sqrt(v1 v2) scaling law",
        f"V*={noise.v_star:.5f} at G={noise.g_star:.4f}, "
        f"max scaling deviation {worst:.2e}",
    )


def test_criterion_7_oracle_equivalence():
    report = verify_closed_forms(trials=100, seed=2024, tolerance=1e-9)
    _criterion(
        7,
        report.passed,
        "closed forms match the full pipeline on 100 random configurations",
        f"max deviation {report.max_deviation:.2e}",
    )


def test_criterion_8_property_suites():
    rng = np.random.default_rng(99)
    failures = []

    # instrument trace preservation, 100 cases at 1e-10
    worst = 0.0
    for _ in range(100):
        rho = 0.9 * random_density(rng, 4)
        config = random_config(rng)
        obs = config.observable("alice", 1, int(rng.integers(2)))
        spec = random_pointer(rng)
        total = sum(weak_instrument(rho, obs, a, spec) for a in (0, 1))
        worst = max(worst, abs(np.trace(total) - np.trace(rho)))
    if worst > 1e-10:
        failures.append(f"trace preservation {worst:.2e}")

    # output positivity for F^2 + G^2 <= 1, 100 cases at -1e-9
    worst_eig = 0.0
    for _ in range(100):
        rho = random_density(rng, 4)
        config = random_config(rng)
        obs = config.observable("charlie", 1, int(rng.integers(2)))
        out = weak_instrument(rho, obs, int(rng.integers(2)), random_pointer(rng))
        herm = (out + out.conj().T) / 2.0
        worst_eig = min(worst_eig, float(np.linalg.eigvalsh(herm)[0]))
    if worst_eig < -1e-9:
        failures.append(f"positivity {worst_eig:.2e}")

    # central-projection completeness, 100 cases at 1e-10
    worst = 0.0
    for _ in range(100):
        rho = random_density(rng, 16)
        total = sum(
            np.trace(bsm_reduce(rho, b0, b1)) for b0 in (0, 1) for b1 in (0, 1)
        )
        worst = max(worst, abs(total - np.trace(rho)))
    if worst > 1e-10:
        failures.append(f"completeness {worst:.2e}")

    # measurement-order invariance, 100 cases at 1e-12
    worst = 0.0
    for _ in range(100):
        config = random_config(rng, noisy=True)
        delta = np.max(np.abs(joint_table(config).probs - table_charlie_first(config)))
        worst = max(worst, float(delta))
    if worst > 1e-12:
        failures.append(f"order invariance {worst:.2e}")

    # no signaling to the past, 100 cases at 1e-12
    worst = 0.0
    for _ in range(100):
        config = random_config(rng, noisy=True)
        perturbed = ScenarioConfig(
            v1=config.v1,
            v2=config.v2,
            alice1=config.alice1,
            charlie1=config.charlie1,
            alice_angles=(config.alice_angles[0], tuple(rng.uniform(0, math.pi, 2))),
            charlie_angles=(config.charlie_angles[0], tuple(rng.uniform(0, math.pi, 2))),
        )
        first = marginal_tripartite(joint_table(config), 1, 1).probs
        second = marginal_tripartite(joint_table(perturbed), 1, 1).probs
        worst = max(worst, float(np.max(np.abs(first - second))))
    if worst > 1e-12:
        failures.append(f"no-signaling {worst:.2e}")

    # per-context normalization and positivity, 100 cases at 1e-10
    worst = 0.0
    for _ in range(100):
        table = joint_table(random_config(rng, noisy=True)).probs
        worst = max(
            worst,
            float(np.max(np.abs(table.sum(axis=(4, 5, 6, 7, 8, 9)) - 1.0))),
            max(0.0, -float(table.min())),
        )
    if worst > 1e-10:
        failures.append(f"normalization {worst:.2e}")

    _criterion(
        8,
        not failures,
        "all six property suites hold over 100 randomized cases each",
        "; ".join(failures) if failures else "all within tolerance",
    )
