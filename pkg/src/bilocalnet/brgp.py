"""Tripartite correlators and the nonlinear two-source network inequality.

For a tripartite distribution over one observer per wing plus the central
party, the quantities

    I = (1/4) sum_{i,j} <X_i Y_0 Z_j>
    J = (1/4) sum_{i,j} (-1)^(i+j) <X_i Y_1 Z_j>

combine into B = sqrt|I| + sqrt|J|.  Any model with two independent local
sources satisfies B <= 1, so B > 1 certifies network nonlocality for that
observer triple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import JointTable, ScenarioConfig, TripartiteDistribution, joint_table, marginal_tripartite

__all__ = ["BrgpResult", "brgp_quantities", "correlator", "evaluate_all", "evaluate_pair"]

# Parity (-1)^(a + b_k + c) on the outcome axes (a, b0, b1, c), per central bit k.
_IDX = np.indices((2, 2, 2, 2))
_PARITY = (
    (-1.0) ** (_IDX[0] + _IDX[1] + _IDX[3]),
    (-1.0) ** (_IDX[0] + _IDX[2] + _IDX[3]),
)


def correlator(dist: TripartiteDistribution, i: int, j: int, k: int) -> float:
    """Expectation of ``(-1)^(a + b_k + c)`` under setting context ``(i, j)``."""
    if k not in (0, 1):
        raise ValueError(f"central bit index must be 0 or 1, got {k!r}")
    signed = _PARITY[k] * dist.probs[i, j]
    # Reduce the wing-outcome axes first so that outcome-symmetric
    # distributions cancel exactly instead of leaving rounding residue.
    return float(signed.sum(axis=0).sum(axis=-1).sum())


@dataclass(frozen=True)
class BrgpResult:
    """Inequality quantities for one observer triple.

    ``B = sqrt|I| + sqrt|J|`` always holds; ``violated`` flags ``B > 1``.
    The signs of ``I`` and ``J`` are kept for diagnostics.
    """

    n: int
    m: int
    I: float
    J: float
    B: float
    violated: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "I": self.I,
            "J": self.J,
            "B": self.B,
            "violated": self.violated,
        }


def brgp_quantities(dist: TripartiteDistribution) -> BrgpResult:
    """Inequality quantities I, J, and B for a tripartite distribution."""
    i_val = sum(correlator(dist, i, j, 0) for i in (0, 1) for j in (0, 1)) / 4.0
    j_val = (
        sum(
            (-1.0) ** (i + j) * correlator(dist, i, j, 1)
            for i in (0, 1)
            for j in (0, 1)
        )
        / 4.0
    )
    b = float(np.sqrt(abs(i_val)) + np.sqrt(abs(j_val)))
    return BrgpResult(n=dist.n, m=dist.m, I=i_val, J=j_val, B=b, violated=b > 1.0)


def evaluate_pair(config: ScenarioConfig, n: int, m: int) -> BrgpResult:
    """Run the full pipeline and evaluate one observer triple."""
    return brgp_quantities(marginal_tripartite(joint_table(config), n, m))


def evaluate_all(
    config: ScenarioConfig, table: JointTable | None = None
) -> dict[tuple[int, int], BrgpResult]:
    """Evaluate all four observer triples from a single pipeline run."""
    if table is None:
        table = joint_table(config)
    return {
        (n, m): brgp_quantities(marginal_tripartite(table, n, m))
        for n in (1, 2)
        for m in (1, 2)
    }
