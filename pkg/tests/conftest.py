"""Shared helpers: independent brute-force oracles and random inputs.

The oracles here re-derive pipeline results from first principles (index
loops, 16-dimensional operator chains) so that the library can be checked
against implementations that share none of its code paths.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from bilocalnet import (
    ALICE,
    CHARLIE,
    PointerSpec,
    ScenarioConfig,
    bell_state,
    pointer_factors,
    strong_instrument,
    weak_instrument,
)
from bilocalnet.measurement import bsm_reduce
from bilocalnet.qcore import werner_state

BITS = (0, 1)


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random normalized density matrix via a Ginibre draw."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_pointer(rng: np.random.Generator) -> PointerSpec:
    model = ("optimal", "square", "explicit")[int(rng.integers(3))]
    g = float(rng.uniform(0.0, 1.0))
    if model == "explicit":
        return PointerSpec.explicit(g, float(rng.uniform(0.0, math.sqrt(1.0 - g * g))))
    return PointerSpec(model, g)


def random_wing_angles(rng: np.random.Generator):
    return tuple(
        tuple(float(rng.uniform(0.0, math.pi)) for _ in BITS) for _ in BITS
    )


def random_config(rng: np.random.Generator, noisy: bool = False) -> ScenarioConfig:
    return ScenarioConfig(
        v1=float(rng.uniform(0.0, 1.0)) if noisy else 1.0,
        v2=float(rng.uniform(0.0, 1.0)) if noisy else 1.0,
        alice1=random_pointer(rng),
        charlie1=random_pointer(rng),
        alice_angles=random_wing_angles(rng),
        charlie_angles=random_wing_angles(rng),
    )


# ---------------------------------------------------------------------------
# Brute-force partial trace (pure index loops)
# ---------------------------------------------------------------------------

def naive_partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    kept = sorted(keep)
    traced = [q for q in range(n) if q not in kept]
    d_keep = int(np.prod([dims[q] for q in kept]))
    out = np.zeros((d_keep, d_keep), dtype=complex)
    ranges = [range(d) for d in dims]
    for row in itertools.product(*ranges):
        for col in itertools.product(*ranges):
            if any(row[q] != col[q] for q in traced):
                continue
            r_in = c_in = 0
            for q in range(n):
                r_in = r_in * dims[q] + row[q]
                c_in = c_in * dims[q] + col[q]
            r_out = c_out = 0
            for q in kept:
                r_out = r_out * dims[q] + row[q]
                c_out = c_out * dims[q] + col[q]
            out[r_out, c_out] += rho[r_in, c_in]
    return out


# ---------------------------------------------------------------------------
# Independent 16-dimensional pipeline with the central projection applied last
# ---------------------------------------------------------------------------

def _embed_at(op: np.ndarray, qubit: int) -> np.ndarray:
    mats = [np.eye(2, dtype=complex)] * 4
    mats[qubit] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def _raw_observable(wing: str, setting: int, angle: float) -> np.ndarray:
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    sign = -1.0 if wing == ALICE else 1.0
    return math.cos(angle) * sz + sign * (-1.0) ** setting * math.sin(angle) * sx


def _raw_projectors(wing: str, setting: int, angle: float, qubit: int):
    m = _raw_observable(wing, setting, angle)
    eye = np.eye(2, dtype=complex)
    return (
        _embed_at((eye + m) / 2.0, qubit),
        _embed_at((eye - m) / 2.0, qubit),
    )


def _raw_weak(rho, p_plus, p_minus, f, g, outcome):
    s = (-1.0) ** outcome
    return (
        f / 2.0 * rho
        + (1.0 + s * g - f) / 2.0 * (p_plus @ rho @ p_plus)
        + (1.0 - s * g - f) / 2.0 * (p_minus @ rho @ p_minus)
    )


def table_bsm_last(config: ScenarioConfig) -> np.ndarray:
    """Joint table with wing measurements first and the Bell projection last.

    Wing operators act on qubits 0 and 3 of the full four-qubit state, so
    they commute with the central projection; this route is completely
    independent of the library's reduced-space pipeline.
    """
    rho0 = np.kron(werner_state(config.v1), werner_state(config.v2))
    f1, g1 = pointer_factors(config.alice1)
    f2, g2 = pointer_factors(config.charlie1)
    bell_projs = {
        (b0, b1): np.kron(
            np.kron(np.eye(2, dtype=complex), bell_state(b0, b1)),
            np.eye(2, dtype=complex),
        )
        for b0, b1 in itertools.product(BITS, repeat=2)
    }
    probs = np.empty((2,) * 10)
    for i1, i2, j1, j2 in itertools.product(BITS, repeat=4):
        a1_p = _raw_projectors(ALICE, i1, config.alice_angles[0][i1], 0)
        a2_p = _raw_projectors(ALICE, i2, config.alice_angles[1][i2], 0)
        c1_p = _raw_projectors(CHARLIE, j1, config.charlie_angles[0][j1], 3)
        c2_p = _raw_projectors(CHARLIE, j2, config.charlie_angles[1][j2], 3)
        for a1 in BITS:
            s1 = _raw_weak(rho0, *a1_p, f1, g1, a1)
            for a2 in BITS:
                u = a2_p[a2]
                s2 = u @ s1 @ u
                for c1 in BITS:
                    s3 = _raw_weak(s2, *c1_p, f2, g2, c1)
                    for c2 in BITS:
                        u2 = c2_p[c2]
                        s4 = u2 @ s3 @ u2
                        for (b0, b1), proj in bell_projs.items():
                            p = np.trace(proj @ s4 @ proj).real
                            probs[i1, i2, j1, j2, a1, a2, b0, b1, c1, c2] = p
    sums = probs.sum(axis=(4, 5, 6, 7, 8, 9), keepdims=True)
    return probs / sums


def table_charlie_first(config: ScenarioConfig) -> np.ndarray:
    """Joint table evaluated with the charlie wing measured before alice."""
    rho0 = np.kron(werner_state(config.v1), werner_state(config.v2))
    probs = np.empty((2,) * 10)
    for b0, b1 in itertools.product(BITS, repeat=2):
        rho_b = bsm_reduce(rho0, b0, b1)
        for j1, c1 in itertools.product(BITS, repeat=2):
            s1 = weak_instrument(
                rho_b, config.observable(CHARLIE, 1, j1), c1, config.charlie1
            )
            for j2, c2 in itertools.product(BITS, repeat=2):
                s2 = strong_instrument(s1, config.observable(CHARLIE, 2, j2), c2)
                for i1, a1 in itertools.product(BITS, repeat=2):
                    s3 = weak_instrument(
                        s2, config.observable(ALICE, 1, i1), a1, config.alice1
                    )
                    for i2, a2 in itertools.product(BITS, repeat=2):
                        s4 = strong_instrument(
                            s3, config.observable(ALICE, 2, i2), a2
                        )
                        probs[i1, i2, j1, j2, a1, a2, b0, b1, c1, c2] = np.trace(
                            s4
                        ).real
    sums = probs.sum(axis=(4, 5, 6, 7, 8, 9), keepdims=True)
    return probs / sums
