"""Closed-form benchmarks, angle optimization, parameter sweeps, and noise limits.

At the standard angle choice (pi/4 for every observer and setting) the four
inequality quantities have closed forms in the pointer factors alone:

    B11 = sqrt(2 G1 G2)            B12 = sqrt((1 + F2) G1)
    B21 = sqrt((1 + F1) G2)        B22 = sqrt((1 + F1)(1 + F2) / 2)

and with noisy sources every B picks up an extra factor sqrt(v1 v2).  These
formulas are the independent oracle against which the full pipeline is
verified.  The optimizer searches measurement angles with a coarse grid
followed by Nelder-Mead refinement; the sweeps and the noise analysis map
out where several triples violate the inequality simultaneously.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np
from scipy import optimize as sciopt

from .brgp import evaluate_all
from .measurement import PointerSpec, bsm_reduce, pointer_factors
from .network import ScenarioConfig
from .qcore import SIGMA_X, SIGMA_Z, kron, werner_state

__all__ = [
    "ActiveSolution",
    "ConstraintInfeasibleError",
    "MixedSearchResult",
    "NoiseAnalysis",
    "OptimizationResult",
    "SweepPoint",
    "VerifyReport",
    "active_sweep",
    "active_violation_window",
    "closed_form_active",
    "closed_form_passive",
    "double_violation_window",
    "equal_g_search",
    "mixed_pointer_search",
    "noise_sweep",
    "optimize_angles",
    "passive_sweep",
    "pointer_quality",
    "quadruple_violation_window",
    "sweep_points_to_csv",
    "verify_closed_forms",
]

_PI4 = math.pi / 4.0


class ConstraintInfeasibleError(RuntimeError):
    """Raised when a constrained angle search has no feasible point."""


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def pointer_quality(model: str, g):
    """Quality factor F for a pointer model at precision g (array friendly)."""
    g = np.asarray(g, dtype=float)
    if model == "optimal":
        return np.sqrt(np.clip(1.0 - g * g, 0.0, None))
    if model == "square":
        return 1.0 - g
    raise ValueError(f"pointer model must be 'optimal' or 'square', got {model!r}")


def closed_form_passive(g1, f1, g2, f2):
    """The four inequality maxima at pi/4 angles, as (B11, B12, B21, B22)."""
    g1, f1, g2, f2 = (np.asarray(x, dtype=float) for x in (g1, f1, g2, f2))
    b11 = np.sqrt(2.0 * g1 * g2)
    b12 = np.sqrt((1.0 + f2) * g1)
    b21 = np.sqrt((1.0 + f1) * g2)
    b22 = np.sqrt((1.0 + f1) * (1.0 + f2) / 2.0)
    return b11, b12, b21, b22


class ActiveSolution(NamedTuple):
    """Analytical helping strategy for equal precision factors, optimal pointers.

    Below g = 0.8 the best strategy is the pi/4 point; above it the first
    observers rotate to a smaller angle so that the second pair keeps a
    violation, at the cost of their own.  The solution is suboptimal but
    exact for the stated angles, and keeps both quantities above 1 on
    (1/sqrt(2), 1).
    """

    b11: float
    b22: float
    theta_first: float
    theta_second: float
    branch: str

    @property
    def both_violated(self) -> bool:
        return self.b11 > 1.0 and self.b22 > 1.0


def closed_form_active(g: float) -> ActiveSolution:
    """Closed-form helping strategy at precision ``g`` (optimal pointer)."""
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"precision factor must lie in [0, 1], got {g}")
    f = math.sqrt(max(0.0, 1.0 - g * g))
    if g <= 0.8:
        return ActiveSolution(
            b11=math.sqrt(2.0) * g,
            b22=(1.0 + f) / math.sqrt(2.0),
            theta_first=_PI4,
            theta_second=_PI4,
            branch="pi4",
        )
    theta1 = 0.5 * math.acos(1.0 - f * f / (1.0 - f))
    theta2 = math.acos((2.0 - f * f) / math.sqrt(4.0 + 2.0 * f**3 * (2.0 + f)))
    b11 = (f + math.sqrt(2.0 - f * (2.0 + f))) * g / math.sqrt(2.0 - 2.0 * f)
    b22 = math.sqrt(1.0 + f**3 + 0.5 * f**4)
    return ActiveSolution(
        b11=b11, b22=b22, theta_first=theta1, theta_second=theta2, branch="rotated"
    )


# ---------------------------------------------------------------------------
# Fast batched evaluation
#
# Probabilities never have to be materialized to get the correlators: in the
# Heisenberg picture the first observer's outcome-parity effect is G times
# the observable, and the second observer's effect is the observable partly
# dephased into the first observer's two possible bases.  This reproduces
# the pipeline's I, J, B exactly and vectorizes over angle batches, which is
# what makes grid searches cheap.  The equivalence with the sequential
# pipeline is asserted in the test suite.
# ---------------------------------------------------------------------------

# (-1)^{b0} and (-1)^{b1} for central outcomes ordered (00, 01, 10, 11).
_CENTER_PARITY = (
    np.array([1.0, 1.0, -1.0, -1.0]),
    np.array([1.0, -1.0, 1.0, -1.0]),
)
_SETTING_PARITY = np.array([[1.0, -1.0], [-1.0, 1.0]])  # (-1)^(i+j)


def _center_tensors(v1: float, v2: float) -> np.ndarray:
    """Unnormalized post-projection wing states as (4, rowA, rowC, colA, colC)."""
    rho0 = kron(werner_state(v1), werner_state(v2))
    return np.stack(
        [
            bsm_reduce(rho0, b0, b1).reshape(2, 2, 2, 2)
            for b0, b1 in itertools.product((0, 1), repeat=2)
        ]
    )


def _observable_batch(theta: np.ndarray, wing_sign: float) -> np.ndarray:
    """Observables for angle array (..., observer, setting) -> (..., obs, set, 2, 2)."""
    theta = np.asarray(theta, dtype=float)
    setting_sign = np.array([1.0, -1.0])  # (-1)^setting
    cos = np.cos(theta)[..., None, None]
    sin = np.sin(theta)[..., None, None]
    return cos * SIGMA_Z + wing_sign * setting_sign[:, None, None] * sin * SIGMA_X


def _parity_effect(mats: np.ndarray, f: float, g: float, observer: int) -> np.ndarray:
    """Outcome-parity effect of one wing observer, shape (..., setting, 2, 2).

    For the first observer the effect is ``g`` times its observable.  For
    the second it is the observable sent backwards through the first
    observer's unconditioned channel, averaged over that observer's two
    equally likely settings.
    """
    if observer == 1:
        return g * mats[..., 0, :, :, :]
    m2 = mats[..., 1, :, :, :]
    total = np.zeros_like(m2)
    for i1 in (0, 1):
        m1 = mats[..., 0, i1, :, :][..., None, :, :]
        total = total + f * m2 + 0.5 * (1.0 - f) * (m2 + m1 @ m2 @ m1)
    return 0.5 * total


def _batched_brgp(
    a_theta: np.ndarray,
    c_theta: np.ndarray,
    alice1: PointerSpec,
    charlie1: PointerSpec,
    v1: float = 1.0,
    v2: float = 1.0,
    pairs: Sequence[tuple[int, int]] = ((1, 1), (1, 2), (2, 1), (2, 2)),
) -> dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """I, J, B for the requested observer pairs over a batch of angle sets.

    ``a_theta`` and ``c_theta`` have shape (..., observer, setting); the
    returned arrays have the batch shape.
    """
    f1, g1 = pointer_factors(alice1)
    f2, g2 = pointer_factors(charlie1)
    tensors = _center_tensors(v1, v2)
    a_mats = _observable_batch(a_theta, wing_sign=-1.0)
    c_mats = _observable_batch(c_theta, wing_sign=+1.0)
    a_effects = {n: _parity_effect(a_mats, f1, g1, n) for n in {n for n, _ in pairs}}
    c_effects = {m: _parity_effect(c_mats, f2, g2, m) for m in {m for _, m in pairs}}

    out: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    for n, m in pairs:
        t = np.einsum(
            "...iab,...jcd,wbdac->...ijw", a_effects[n], c_effects[m], tensors
        ).real
        i_val = (t * _CENTER_PARITY[0]).sum(-1).mean(axis=(-2, -1))
        j_val = ((t * _CENTER_PARITY[1]).sum(-1) * _SETTING_PARITY).sum(
            axis=(-2, -1)
        ) / 4.0
        b = np.sqrt(np.abs(i_val)) + np.sqrt(np.abs(j_val))
        out[(n, m)] = (i_val, j_val, b)
    return out


# ---------------------------------------------------------------------------
# Angle optimization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OptimizationResult:
    """Best angles found for one objective, with the achieved value.

    ``value`` re-evaluates to the same number (within 1e-9) when the full
    pipeline is run at the reported angles.  ``grid_value`` is the best
    value on the coarse grid before refinement; refinement never goes below
    it.  ``constraint_slack`` is the margin of the constrained quantity
    above its bound (constrained mode only).
    """

    mode: str
    value: float
    alice_angles: tuple[tuple[float, float], tuple[float, float]]
    charlie_angles: tuple[tuple[float, float], tuple[float, float]]
    grid_value: float
    constraint_slack: float | None = None

    def angles_flat(self) -> tuple[float, ...]:
        """All eight angles, alice then charlie, observer-major."""
        return tuple(
            angle
            for wing in (self.alice_angles, self.charlie_angles)
            for pair in wing
            for angle in pair
        )

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "value": self.value,
            "alice_angles": [list(p) for p in self.alice_angles],
            "charlie_angles": [list(p) for p in self.charlie_angles],
            "grid_value": self.grid_value,
            "constraint_slack": self.constraint_slack,
        }


_PENALTY = 100.0


def _resolve_pairs(objective: str, targets) -> tuple[tuple[int, int], ...]:
    if objective == "max":
        pairs = tuple(targets) if targets else ((1, 1),)
        if len(pairs) != 1:
            raise ValueError("objective 'max' takes exactly one target pair")
        return pairs
    if objective in ("maxmin", "constrained"):
        pairs = tuple(targets) if targets else ((1, 1), (2, 2))
        if objective == "constrained" and pairs != ((1, 1), (2, 2)):
            raise ValueError("constrained mode fixes targets to ((1,1),(2,2))")
        return pairs
    raise ValueError(f"unknown objective {objective!r}")


def optimize_angles(
    config: ScenarioConfig,
    objective: str = "max",
    targets: Sequence[tuple[int, int]] | None = None,
    symmetric: bool = True,
    grid_budget: int = 65536,
    refine: bool = True,
    max_iterations: int = 200,
    ftol: float = 1e-10,
) -> OptimizationResult:
    """Search measurement angles for one of three objectives.

    ``"max"`` maximizes B of a single observer pair, ``"maxmin"`` maximizes
    the minimum B over a set of pairs, and ``"constrained"`` maximizes B22
    subject to B11 >= 1 (raising :class:`ConstraintInfeasibleError` when the
    bound is unreachable).  With ``symmetric=True`` each observer uses one
    angle for both settings, which is the ansatz behind all closed forms;
    otherwise all angles of the involved observers vary independently.

    The search grids [0, pi] per free angle (64 points for up to two free
    angles, shrinking to keep the total budget when more angles are free),
    then refines the best grid point and a few analytic starting points with
    Nelder-Mead.  Angles that cannot influence the objective are left at the
    template's values.
    """
    pairs = _resolve_pairs(objective, targets)
    slots = [("alice", 0), ("charlie", 0)]
    if any(n == 2 for n, _ in pairs):
        slots.insert(1, ("alice", 1))
    if any(m == 2 for _, m in pairs):
        slots.append(("charlie", 1))
    slots.sort(key=lambda s: (s[0], s[1]))
    n_params = len(slots) * (1 if symmetric else 2)

    template_a = np.array(config.alice_angles, dtype=float)
    template_c = np.array(config.charlie_angles, dtype=float)

    def angle_arrays(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        batch = x.shape[:-1]
        a = np.broadcast_to(template_a, batch + (2, 2)).copy()
        c = np.broadcast_to(template_c, batch + (2, 2)).copy()
        pos = 0
        for wing, observer in slots:
            target = a if wing == "alice" else c
            if symmetric:
                target[..., observer, 0] = x[..., pos]
                target[..., observer, 1] = x[..., pos]
                pos += 1
            else:
                target[..., observer, 0] = x[..., pos]
                target[..., observer, 1] = x[..., pos + 1]
                pos += 2
        return a, c

    def b_values(x: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
        a, c = angle_arrays(x)
        stats = _batched_brgp(
            a, c, config.alice1, config.charlie1, config.v1, config.v2, pairs
        )
        return {pair: stats[pair][2] for pair in pairs}

    def score(x: np.ndarray) -> np.ndarray:
        values = b_values(x)
        if objective == "max":
            return values[pairs[0]]
        if objective == "maxmin":
            return np.minimum.reduce([values[p] for p in pairs])
        b11, b22 = values[(1, 1)], values[(2, 2)]
        return b22 - _PENALTY * np.maximum(0.0, 1.0 - b11)

    points_per_angle = 64 if n_params <= 2 else int(grid_budget ** (1.0 / n_params))
    axis = np.linspace(0.0, math.pi, points_per_angle)
    mesh = np.meshgrid(*([axis] * n_params), indexing="ij")
    grid = np.stack([m.ravel() for m in mesh], axis=-1)

    scores = np.empty(grid.shape[0])
    chunk = 16384
    for lo in range(0, grid.shape[0], chunk):
        scores[lo : lo + chunk] = score(grid[lo : lo + chunk])
    best_idx = int(np.argmax(scores))  # first max = lexicographically smallest angles
    grid_best = grid[best_idx]
    grid_value = float(scores[best_idx])

    starts = [grid_best, np.full(n_params, _PI4)]
    template_x = []
    for wing, observer in slots:
        pair = (config.alice_angles if wing == "alice" else config.charlie_angles)[observer]
        template_x.extend([pair[0]] if symmetric else list(pair))
    starts.append(np.array(template_x))
    starts.extend(_analytic_starts(config, pairs, slots, symmetric))

    best_x = grid_best
    best_score = grid_value
    if refine:
        for x0 in starts:
            res = sciopt.minimize(
                lambda x: -float(score(np.asarray(x))),
                x0=np.clip(x0, 0.0, math.pi),
                method="Nelder-Mead",
                bounds=[(0.0, math.pi)] * n_params,
                options={"maxiter": max_iterations, "fatol": ftol, "xatol": 1e-8},
            )
            candidate = np.clip(res.x, 0.0, math.pi)
            value = float(score(candidate))
            if value > best_score:
                best_score = value
                best_x = candidate

    final_values = b_values(best_x[None, :])
    slack = None
    if objective == "constrained":
        b11 = float(final_values[(1, 1)][0])
        slack = b11 - 1.0
        if slack < -1e-9:
            raise ConstraintInfeasibleError(
                f"B11 >= 1 is unreachable; best found B11 = {b11:.6f}"
            )
        reported = float(final_values[(2, 2)][0])
    elif objective == "max":
        reported = float(final_values[pairs[0]][0])
    else:
        reported = float(np.minimum.reduce([final_values[p][0] for p in pairs]))

    a_arr, c_arr = angle_arrays(best_x)
    to_pairs = lambda arr: tuple(tuple(float(v) for v in row) for row in arr)
    return OptimizationResult(
        mode=objective,
        value=reported,
        alice_angles=to_pairs(a_arr),
        charlie_angles=to_pairs(c_arr),
        grid_value=grid_value,
        constraint_slack=slack,
    )


def _analytic_starts(config, pairs, slots, symmetric) -> list[np.ndarray]:
    """Known-good starting points: the closed-form helping strategy, when it applies."""
    if pairs != ((1, 1), (2, 2)) or not symmetric:
        return []
    if config.alice1.model != "optimal" or config.charlie1.model != "optimal":
        return []
    if config.alice1.g != config.charlie1.g or config.alice1.g <= 0.8:
        return []
    sol = closed_form_active(config.alice1.g)
    by_slot = {0: sol.theta_first, 1: sol.theta_second}
    return [np.array([by_slot[observer] for _, observer in slots])]


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepPoint:
    """All four inequality values at one point of a precision sweep."""

    g1: float
    g2: float
    model1: str
    model2: str
    f1: float
    f2: float
    b11: float
    b12: float
    b21: float
    b22: float
    all_violated: bool

    @property
    def min_b(self) -> float:
        return min(self.b11, self.b12, self.b21, self.b22)

    @property
    def double_violated(self) -> bool:
        return self.b11 > 1.0 and self.b22 > 1.0


def _point_from_results(g1, g2, model1, model2, f1, f2, results) -> SweepPoint:
    b = {pair: results[pair].B for pair in results}
    return SweepPoint(
        g1=float(g1),
        g2=float(g2),
        model1=model1,
        model2=model2,
        f1=float(f1),
        f2=float(f2),
        b11=b[(1, 1)],
        b12=b[(1, 2)],
        b21=b[(2, 1)],
        b22=b[(2, 2)],
        all_violated=min(b.values()) > 1.0,
    )


def passive_sweep(
    model1: str, model2: str, g_values: Iterable[float]
) -> list[SweepPoint]:
    """Full-pipeline sweep at pi/4 angles with equal precision on both wings."""
    points = []
    for g in g_values:
        spec1 = PointerSpec(model1, float(g))
        spec2 = PointerSpec(model2, float(g))
        config = ScenarioConfig.symmetric(spec1, spec2)
        results = evaluate_all(config)
        f1, _ = pointer_factors(spec1)
        f2, _ = pointer_factors(spec2)
        points.append(_point_from_results(g, g, model1, model2, f1, f2, results))
    return points


def active_sweep(g_values: Iterable[float]) -> list[SweepPoint]:
    """Full-pipeline sweep along the closed-form helping strategy (optimal pointers)."""
    points = []
    for g in g_values:
        sol = closed_form_active(float(g))
        spec = PointerSpec.optimal(float(g))
        config = ScenarioConfig.symmetric(
            spec, spec, theta_first=sol.theta_first, theta_second=sol.theta_second
        )
        results = evaluate_all(config)
        f, _ = pointer_factors(spec)
        points.append(_point_from_results(g, g, "optimal", "optimal", f, f, results))
    return points


def sweep_points_to_csv(points: Sequence[SweepPoint]) -> str:
    """CSV for sweep points; a single G column when both wings share it."""
    equal_g = all(p.g1 == p.g2 for p in points)
    g_cols = ["G"] if equal_g else ["G1", "G2"]
    header = g_cols + "F1 F2 B11 B12 B21 B22 all_violated".split()
    lines = [",".join(header)]
    for p in points:
        gs = [p.g1] if equal_g else [p.g1, p.g2]
        values = gs + [p.f1, p.f2, p.b11, p.b12, p.b21, p.b22]
        lines.append(
            ",".join(f"{v:.17g}" for v in values) + f",{str(p.all_violated).lower()}"
        )
    return "\n".join(lines) + "\n"


def _closed_form_min(model1: str, model2: str, g, pairs="all"):
    f1 = pointer_quality(model1, g)
    f2 = pointer_quality(model2, g)
    b11, b12, b21, b22 = closed_form_passive(g, f1, g, f2)
    if pairs == "double":
        return np.minimum(b11, b22)
    return np.minimum.reduce([b11, b12, b21, b22])


def _bisect_window(gap: Callable[[float], float], tol: float) -> tuple[float, float] | None:
    """Locate the G interval where ``gap`` is positive, by bisection on its edges."""
    grid = np.linspace(0.0, 1.0, 4097)
    values = np.array([gap(g) for g in grid])
    inside = np.flatnonzero(values > 0.0)
    if inside.size == 0:
        return None
    lo = (
        0.0
        if inside[0] == 0
        else sciopt.bisect(gap, grid[inside[0] - 1], grid[inside[0]], xtol=tol)
    )
    hi = (
        1.0
        if inside[-1] == grid.size - 1
        else sciopt.bisect(gap, grid[inside[-1]], grid[inside[-1] + 1], xtol=tol)
    )
    return float(lo), float(hi)


def quadruple_violation_window(
    model1: str, model2: str, tol: float = 1e-6
) -> tuple[float, float] | None:
    """Equal-G range where all four quantities exceed 1, or None.

    Endpoints are located by bisection on the closed forms.
    """
    return _bisect_window(
        lambda g: float(_closed_form_min(model1, model2, g)) - 1.0, tol
    )


def active_violation_window(tol: float = 1e-6) -> tuple[float, float] | None:
    """Equal-G range where the helping strategy keeps both B11 and B22 above 1."""

    def gap(g: float) -> float:
        sol = closed_form_active(g)
        return min(sol.b11, sol.b22) - 1.0

    return _bisect_window(gap, tol)


def double_violation_window(
    model1: str, model2: str, visibility: float = 1.0, tol: float = 1e-6
) -> tuple[float, float] | None:
    """Equal-G range where B11 and B22 both exceed 1 at effective visibility.

    ``visibility`` is sqrt(v1 v2); every closed form scales linearly with it.
    """
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility}")
    return _bisect_window(
        lambda g: visibility * float(_closed_form_min(model1, model2, g, pairs="double"))
        - 1.0,
        tol,
    )


@dataclass(frozen=True)
class MixedSearchResult:
    """Best simultaneous (B11, B22) value over precision factors."""

    value: float
    g1: float
    g2: float
    b11: float
    b22: float
    model1: str
    model2: str

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "g1": self.g1,
            "g2": self.g2,
            "b11": self.b11,
            "b22": self.b22,
            "model1": self.model1,
            "model2": self.model2,
        }


def mixed_pointer_search(
    model1: str = "square",
    model2: str = "optimal",
    grid_points: int = 401,
    refine: bool = True,
) -> MixedSearchResult:
    """Maximize min(B11, B22) over independent (G1, G2) via the closed forms."""
    axis = np.linspace(0.0, 1.0, grid_points)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    f1 = pointer_quality(model1, g1)
    f2 = pointer_quality(model2, g2)
    b11, _, _, b22 = closed_form_passive(g1, f1, g2, f2)
    obj = np.minimum(b11, b22)
    idx = np.unravel_index(int(np.argmax(obj)), obj.shape)
    best = np.array([g1[idx], g2[idx]])

    def neg(x):
        xg1, xg2 = np.clip(x, 0.0, 1.0)
        v11, _, _, v22 = closed_form_passive(
            xg1, pointer_quality(model1, xg1), xg2, pointer_quality(model2, xg2)
        )
        return -float(min(v11, v22))

    if refine:
        res = sciopt.minimize(
            neg,
            x0=best,
            method="Nelder-Mead",
            bounds=[(0.0, 1.0)] * 2,
            options={"maxiter": 400, "fatol": 1e-12, "xatol": 1e-10},
        )
        if -res.fun >= float(obj[idx]):
            best = np.clip(res.x, 0.0, 1.0)

    bg1, bg2 = float(best[0]), float(best[1])
    v11, _, _, v22 = closed_form_passive(
        bg1, pointer_quality(model1, bg1), bg2, pointer_quality(model2, bg2)
    )
    return MixedSearchResult(
        value=float(min(v11, v22)),
        g1=bg1,
        g2=bg2,
        b11=float(v11),
        b22=float(v22),
        model1=model1,
        model2=model2,
    )


def equal_g_search(model1: str, model2: str) -> tuple[float, float]:
    """Maximize min(B11, B22) under G1 = G2 = G; returns (value, G)."""
    neg = lambda g: -float(_closed_form_min(model1, model2, g, pairs="double"))
    grid = np.linspace(0.0, 1.0, 2001)
    coarse = _closed_form_min(model1, model2, grid, pairs="double")
    g0 = float(grid[int(np.argmax(coarse))])
    lo, hi = max(0.0, g0 - 2e-3), min(1.0, g0 + 2e-3)
    res = sciopt.minimize_scalar(
        neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    return -float(res.fun), float(res.x)


# ---------------------------------------------------------------------------
# Noise robustness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoiseAnalysis:
    """Critical visibility for a simultaneous (B11, B22) violation.

    Every B value scales with sqrt(v1 v2), so V = sqrt(v1 v2) is the only
    noise parameter that matters: a double violation survives exactly when
    V > 1 / peak, with ``peak`` the best noiseless min(B11, B22) over G.
    ``boundary`` holds rows (G, V) of the minimal visibility per G, over the
    G range where a double violation is possible at all.
    """

    model1: str
    model2: str
    peak: float
    g_star: float
    v_star: float | None
    boundary: np.ndarray

    @property
    def has_double_violation(self) -> bool:
        return self.v_star is not None


def noise_sweep(
    model1: str = "optimal",
    model2: str = "optimal",
    resolution: float = 1e-4,
) -> NoiseAnalysis:
    """Locate the critical visibility for the given pointer models."""
    if resolution < 1e-12:
        raise ValueError("resolution must be positive")
    grid = np.linspace(0.0, 1.0, max(101, int(round(1.0 / resolution)) + 1))
    values = _closed_form_min(model1, model2, grid, pairs="double")
    g0 = float(grid[int(np.argmax(values))])
    res = sciopt.minimize_scalar(
        lambda g: -float(_closed_form_min(model1, model2, g, pairs="double")),
        bounds=(max(0.0, g0 - 2e-2), min(1.0, g0 + 2e-2)),
        method="bounded",
        options={"xatol": min(resolution, 1e-9)},
    )
    peak = -float(res.fun)
    g_star = float(res.x)
    v_star = 1.0 / peak if peak > 1.0 else None
    mask = values > 1.0
    boundary = np.column_stack([grid[mask], 1.0 / values[mask]])
    return NoiseAnalysis(
        model1=model1,
        model2=model2,
        peak=peak,
        g_star=g_star,
        v_star=v_star,
        boundary=boundary,
    )


# ---------------------------------------------------------------------------
# Random-config verification of the closed forms against the pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    """Outcome of comparing closed forms against the full pipeline."""

    trials: int
    seed: int
    tolerance: float
    max_deviation: float
    worst_config: dict
    passed: bool


def _random_pointer(rng: np.random.Generator, models: Sequence[str]) -> PointerSpec:
    model = models[int(rng.integers(len(models)))]
    g = float(rng.uniform(0.0, 1.0))
    if model == "explicit":
        f = float(rng.uniform(0.0, math.sqrt(1.0 - g * g)))
        return PointerSpec.explicit(g, f)
    return PointerSpec(model, g)


def verify_closed_forms(
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-9,
    models: Sequence[str] = ("optimal", "square", "explicit"),
) -> VerifyReport:
    """Compare all four closed forms against the pipeline on random pointers."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    worst: dict = {}
    for _ in range(trials):
        spec1 = _random_pointer(rng, models)
        spec2 = _random_pointer(rng, models)
        config = ScenarioConfig.symmetric(spec1, spec2)
        results = evaluate_all(config)
        f1, g1 = pointer_factors(spec1)
        f2, g2 = pointer_factors(spec2)
        expected = dict(
            zip(
                ((1, 1), (1, 2), (2, 1), (2, 2)),
                closed_form_passive(g1, f1, g2, f2),
            )
        )
        for pair, res in results.items():
            dev = abs(res.B - float(expected[pair]))
            if dev > max_dev:
                max_dev = dev
                worst = {
                    "pair": list(pair),
                    "pointer1": {"model": spec1.model, "g": spec1.g, "f": f1},
                    "pointer2": {"model": spec2.model, "g": spec2.g, "f": f2},
                    "pipeline": res.B,
                    "closed_form": float(expected[pair]),
                }
    return VerifyReport(
        trials=trials,
        seed=seed,
        tolerance=tolerance,
        max_deviation=max_dev,
        worst_config=worst,
        passed=max_dev < tolerance,
    )
