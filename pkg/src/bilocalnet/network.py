"""Full measurement pipeline of the two-source network with sequential observers.

Two sources each emit a noisy entangled pair.  The central party holds one
qubit from each source and projects onto the Bell basis; on each outer wing
two observers measure the remaining qubit in sequence, the first unsharply
and the second projectively.  :func:`joint_table` produces the exact joint
distribution of all outcomes for every combination of local setting
choices, and :func:`marginal_tripartite` reduces it to the statistics seen
by one observer per wing together with the central party.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .measurement import (
    ALICE,
    CHARLIE,
    Observable,
    PointerSpec,
    bsm_reduce,
    strong_instrument,
    weak_instrument,
)
from .qcore import kron, werner_state

__all__ = [
    "JointTable",
    "ScenarioConfig",
    "TripartiteDistribution",
    "build_initial",
    "joint_table",
    "marginal_tripartite",
]

#: Tolerance on probability positivity and per-context normalization.
PROB_TOL = 1e-10

_AnglePair = tuple[float, float]
_WingAngles = tuple[_AnglePair, _AnglePair]


def _as_wing_angles(angles) -> _WingAngles:
    pairs = tuple(tuple(float(a) for a in pair) for pair in angles)
    if len(pairs) != 2 or any(len(p) != 2 for p in pairs):
        raise ValueError("angles must be two (setting-0, setting-1) pairs")
    for pair in pairs:
        for a in pair:
            if not 0.0 <= a <= math.pi:
                raise ValueError(f"angle must lie in [0, pi], got {a}")
    return pairs  # type: ignore[return-value]


@dataclass(frozen=True)
class ScenarioConfig:
    """Source visibilities, pointer specs, and all eight measurement angles.

    ``alice_angles[n][i]`` is the angle used by the n-th alice observer
    (0 = first, unsharp; 1 = second, projective) under setting ``i``;
    ``charlie_angles`` likewise.  Visibilities scale the entangled fraction
    of each source.
    """

    v1: float = 1.0
    v2: float = 1.0
    alice1: PointerSpec = field(default_factory=lambda: PointerSpec.optimal(1.0))
    charlie1: PointerSpec = field(default_factory=lambda: PointerSpec.optimal(1.0))
    alice_angles: _WingAngles = ((math.pi / 4,) * 2, (math.pi / 4,) * 2)
    charlie_angles: _WingAngles = ((math.pi / 4,) * 2, (math.pi / 4,) * 2)

    def __post_init__(self) -> None:
        for name, v in (("v1", self.v1), ("v2", self.v2)):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        object.__setattr__(self, "alice_angles", _as_wing_angles(self.alice_angles))
        object.__setattr__(self, "charlie_angles", _as_wing_angles(self.charlie_angles))

    @classmethod
    def symmetric(
        cls,
        alice1: PointerSpec,
        charlie1: PointerSpec,
        theta_first: float = math.pi / 4,
        theta_second: float = math.pi / 4,
        v1: float = 1.0,
        v2: float = 1.0,
    ) -> "ScenarioConfig":
        """Config with setting-independent angles per observer (the usual ansatz)."""
        return cls(
            v1=v1,
            v2=v2,
            alice1=alice1,
            charlie1=charlie1,
            alice_angles=((theta_first, theta_first), (theta_second, theta_second)),
            charlie_angles=((theta_first, theta_first), (theta_second, theta_second)),
        )

    def observable(self, wing: str, observer: int, setting: int) -> Observable:
        """Observable of the given observer (1 or 2) under the given setting."""
        angles = self.alice_angles if wing == ALICE else self.charlie_angles
        return Observable(wing, setting, angles[observer - 1][setting])


def build_initial(config: ScenarioConfig) -> np.ndarray:
    """16x16 initial state on qubits (alice, central-1, central-2, charlie)."""
    return kron(werner_state(config.v1), werner_state(config.v2))


@dataclass(frozen=True)
class JointTable:
    """Joint distribution P(a1 a2 b c1 c2 | i1 i2 j1 j2) over all contexts.

    ``probs`` has shape ``(2,) * 10`` with axes ordered
    ``(i1, i2, j1, j2, a1, a2, b0, b1, c1, c2)``: four binary setting
    choices, the four outcome bits of the wing observers, and the two bits
    of the central Bell outcome.  Each of the 16 setting contexts sums to 1.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.ascontiguousarray(self.probs, dtype=float)
        if probs.shape != (2,) * 10:
            raise ValueError(f"expected shape {(2,) * 10}, got {probs.shape}")
        if float(probs.min()) < -PROB_TOL or float(probs.max()) > 1.0 + PROB_TOL:
            raise ValueError("probabilities out of [0, 1] beyond tolerance")
        sums = probs.sum(axis=(4, 5, 6, 7, 8, 9))
        if float(np.max(np.abs(sums - 1.0))) > PROB_TOL:
            raise ValueError("setting contexts are not normalized")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def context(self, i1: int, i2: int, j1: int, j2: int) -> np.ndarray:
        """Outcome block for one setting context, axes (a1, a2, b0, b1, c1, c2)."""
        return self.probs[i1, i2, j1, j2]

    def iter_rows(self) -> Iterator[tuple[int, ...]]:
        """Yield (i1, i2, j1, j2, a1, a2, b0, b1, c1, c2) index tuples in order."""
        return itertools.product((0, 1), repeat=10)

    def to_csv(self) -> str:
        """CSV with columns i1,i2,j1,j2,a1,a2,b0,b1,c1,c2,p."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow("i1 i2 j1 j2 a1 a2 b0 b1 c1 c2".split() + ["p"])
        for idx in self.iter_rows():
            writer.writerow(list(idx) + [f"{self.probs[idx]:.17g}"])
        return buf.getvalue()

    def to_json_records(self) -> list[dict]:
        """One record per setting context with outcome-bitstring keys.

        Keys concatenate the outcome bits in the order ``a1 a2 b0 b1 c1 c2``.
        """
        records = []
        for i1, i2, j1, j2 in itertools.product((0, 1), repeat=4):
            block = self.probs[i1, i2, j1, j2]
            probs = {
                "".join(map(str, idx)): float(block[idx])
                for idx in itertools.product((0, 1), repeat=6)
            }
            records.append(
                {"settings": {"i1": i1, "i2": i2, "j1": j1, "j2": j2}, "probs": probs}
            )
        return records


def joint_table(config: ScenarioConfig) -> JointTable:
    """Exact joint outcome distribution for all 16 setting contexts.

    For each context and each central outcome the chain is: Bell projection
    and reduction, unsharp measurement of the first alice, projective
    measurement of the second alice, then the same on the charlie wing.
    The chain is never renormalized; the final trace is the probability.
    Raises if a probability acquires an imaginary part above ``PROB_TOL``,
    which would indicate an inconsistency in the pipeline.
    """
    rho0 = build_initial(config)
    reduced = {
        (b0, b1): bsm_reduce(rho0, b0, b1)
        for b0, b1 in itertools.product((0, 1), repeat=2)
    }
    probs = np.empty((2,) * 10, dtype=float)
    for (b0, b1), rho_b in reduced.items():
        for i1, a1 in itertools.product((0, 1), repeat=2):
            after_a1 = weak_instrument(
                rho_b, config.observable(ALICE, 1, i1), a1, config.alice1
            )
            for i2, a2 in itertools.product((0, 1), repeat=2):
                after_a2 = strong_instrument(
                    after_a1, config.observable(ALICE, 2, i2), a2
                )
                for j1, c1 in itertools.product((0, 1), repeat=2):
                    after_c1 = weak_instrument(
                        after_a2, config.observable(CHARLIE, 1, j1), c1, config.charlie1
                    )
                    for j2, c2 in itertools.product((0, 1), repeat=2):
                        final = strong_instrument(
                            after_c1, config.observable(CHARLIE, 2, j2), c2
                        )
                        tr = complex(np.trace(final))
                        if abs(tr.imag) > PROB_TOL:
                            raise RuntimeError(
                                f"probability has imaginary residue {tr.imag:g}"
                            )
                        probs[i1, i2, j1, j2, a1, a2, b0, b1, c1, c2] = tr.real
    sums = probs.sum(axis=(4, 5, 6, 7, 8, 9), keepdims=True)
    if float(np.max(np.abs(sums - 1.0))) > PROB_TOL:
        raise RuntimeError("setting contexts do not sum to one before normalization")
    return JointTable(probs / sums)


@dataclass(frozen=True)
class TripartiteDistribution:
    """P(a, b, c | i, j) for one alice observer and one charlie observer.

    ``n`` and ``m`` (1 or 2) identify the observers; ``probs`` has shape
    ``(2,) * 6`` with axes ``(i, j, a, b0, b1, c)``.
    """

    n: int
    m: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if self.n not in (1, 2) or self.m not in (1, 2):
            raise ValueError("observer labels must be 1 or 2")
        probs = np.ascontiguousarray(self.probs, dtype=float)
        if probs.shape != (2,) * 6:
            raise ValueError(f"expected shape {(2,) * 6}, got {probs.shape}")
        if float(probs.min()) < -PROB_TOL:
            raise ValueError("negative probability beyond tolerance")
        sums = probs.sum(axis=(2, 3, 4, 5))
        if float(np.max(np.abs(sums - 1.0))) > PROB_TOL:
            raise ValueError("setting contexts are not normalized")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)


# einsum routes from (i1,i2,j1,j2,a1,a2,b0,b1,c1,c2) to (i,j,a,b0,b1,c):
# sum the other wing-observer's outcomes, average their setting choices.
_MARGINAL_ROUTES = {
    (1, 1): "stuvabpqcd->suapqc",
    (1, 2): "stuvabpqcd->svapqd",
    (2, 1): "stuvabpqcd->tubpqc",
    (2, 2): "stuvabpqcd->tvbpqd",
}


def marginal_tripartite(table: JointTable, n: int, m: int) -> TripartiteDistribution:
    """Marginal statistics of alice observer ``n`` and charlie observer ``m``.

    The other observer on each wing is summed over outcomes and averaged
    over its two equally likely setting choices (hence the factor 1/4).
    """
    if (n, m) not in _MARGINAL_ROUTES:
        raise ValueError("observer labels must be 1 or 2")
    reduced = np.einsum(_MARGINAL_ROUTES[(n, m)], table.probs) / 4.0
    return TripartiteDistribution(n=n, m=m, probs=reduced)
