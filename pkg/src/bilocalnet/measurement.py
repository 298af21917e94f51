"""Dichotomic qubit observables, pointer models, and measurement instruments.

An :class:`Observable` is a direction in the x-z plane attached to one wing
of the network; the two wings carry opposite signs on the x component.  A
:class:`PointerSpec` fixes the trade-off between the information gain ``G``
of an unsharp measurement and the quality factor ``F`` measuring how little
the state is disturbed.  The instruments below act on the two-qubit state
shared by the outer wings after the central projection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import IDENTITY_2, SIGMA_X, SIGMA_Z, bell_state, kron, partial_trace

__all__ = [
    "ALICE",
    "CHARLIE",
    "Observable",
    "PointerSpec",
    "bsm_reduce",
    "observable_matrix",
    "pointer_factors",
    "projector",
    "strong_instrument",
    "weak_instrument",
]

ALICE = "alice"
CHARLIE = "charlie"
_WINGS = (ALICE, CHARLIE)

#: Slack allowed on the pointer trade-off F^2 + G^2 <= 1.
_TRADEOFF_SLACK = 1e-12


@dataclass(frozen=True)
class Observable:
    """A dichotomic observable ``cos(angle) sz -/+ (-1)^setting sin(angle) sx``.

    The minus sign applies on the alice wing, the plus sign on the charlie
    wing.  The resulting matrix is Hermitian, traceless, and squares to the
    identity, so its eigenvalues are +/-1.
    """

    wing: str
    setting: int
    angle: float

    def __post_init__(self) -> None:
        if self.wing not in _WINGS:
            raise ValueError(f"wing must be one of {_WINGS}, got {self.wing!r}")
        if self.setting not in (0, 1):
            raise ValueError(f"setting must be a bit, got {self.setting!r}")
        if not 0.0 <= self.angle <= math.pi:
            raise ValueError(f"angle must lie in [0, pi], got {self.angle}")


def observable_matrix(obs: Observable) -> np.ndarray:
    """2x2 matrix of the observable, with the wing's x-sign convention."""
    wing_sign = -1.0 if obs.wing == ALICE else 1.0
    return (
        math.cos(obs.angle) * SIGMA_Z
        + wing_sign * (-1.0) ** obs.setting * math.sin(obs.angle) * SIGMA_X
    )


def projector(obs: Observable, outcome: int) -> np.ndarray:
    """Projector onto the ``(-1)^outcome`` eigenspace (outcome 0 <-> eigenvalue +1)."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be a bit, got {outcome!r}")
    return (IDENTITY_2 + (-1.0) ** outcome * observable_matrix(obs)) / 2.0


@dataclass(frozen=True)
class PointerSpec:
    """Pointer model of an unsharp measurement with precision factor ``g``.

    ``optimal`` pointers saturate ``F^2 + G^2 = 1``, ``square`` pointers
    satisfy ``F + G = 1``, and ``explicit`` pointers carry a user-supplied
    quality factor that must respect ``F^2 + G^2 <= 1``.
    """

    model: str
    g: float
    f: float | None = None

    def __post_init__(self) -> None:
        if self.model not in ("optimal", "square", "explicit"):
            raise ValueError(f"unknown pointer model {self.model!r}")
        if not 0.0 <= self.g <= 1.0:
            raise ValueError(f"precision factor must lie in [0, 1], got {self.g}")
        if self.model == "explicit" and self.f is None:
            raise ValueError("explicit pointer requires a quality factor f")

    @classmethod
    def optimal(cls, g: float) -> "PointerSpec":
        return cls("optimal", g)

    @classmethod
    def square(cls, g: float) -> "PointerSpec":
        return cls("square", g)

    @classmethod
    def explicit(cls, g: float, f: float) -> "PointerSpec":
        return cls("explicit", g, f)


def pointer_factors(spec: PointerSpec) -> tuple[float, float]:
    """Resolve a pointer spec to the pair ``(F, G)``.

    Raises ``ValueError`` for an explicit pointer outside the physical
    region ``F, G in [0, 1]`` with ``F^2 + G^2 <= 1``; the instrument is
    completely positive exactly on that region.
    """
    g = float(spec.g)
    if spec.model == "optimal":
        return math.sqrt(max(0.0, 1.0 - g * g)), g
    if spec.model == "square":
        return 1.0 - g, g
    f = float(spec.f)
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"quality factor must lie in [0, 1], got {f}")
    if f * f + g * g > 1.0 + _TRADEOFF_SLACK:
        raise ValueError(f"pointer trade-off violated: F^2 + G^2 = {f * f + g * g}")
    return f, g


def _embed(op: np.ndarray, wing: str) -> np.ndarray:
    """Lift a single-qubit operator to the two-qubit alice-charlie space."""
    if wing == ALICE:
        return kron(op, IDENTITY_2)
    return kron(IDENTITY_2, op)


def weak_instrument(
    rho: np.ndarray, obs: Observable, outcome: int, spec: PointerSpec
) -> np.ndarray:
    """Unnormalized post-measurement state of an unsharp measurement.

    For outcome ``a`` the map is

        (F/2) rho + (1 + (-1)^a G - F)/2 * U0 rho U0
                  + (1 - (-1)^a G - F)/2 * U1 rho U1

    with ``Uo`` the embedded projector onto the ``(-1)^o`` eigenspace of the
    observable.  Summed over both outcomes this preserves the trace; for
    ``G = 1`` it reduces to a projective measurement and for ``G = 0`` each
    outcome carries ``rho / 2``.  The coefficient on the anti-aligned
    projector may be negative; the map is nevertheless completely positive
    whenever ``F^2 + G^2 <= 1``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit state, got shape {rho.shape}")
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be a bit, got {outcome!r}")
    f, g = pointer_factors(spec)
    signed_g = (-1.0) ** outcome * g
    c0 = (1.0 + signed_g - f) / 2.0
    c1 = (1.0 - signed_g - f) / 2.0
    u0 = _embed(projector(obs, 0), obs.wing)
    u1 = _embed(projector(obs, 1), obs.wing)
    return (f / 2.0) * rho + c0 * (u0 @ rho @ u0) + c1 * (u1 @ rho @ u1)


def strong_instrument(rho: np.ndarray, obs: Observable, outcome: int) -> np.ndarray:
    """Unnormalized post-measurement state of a projective measurement."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit state, got shape {rho.shape}")
    u = _embed(projector(obs, outcome), obs.wing)
    return u @ rho @ u


def bsm_reduce(rho_abc: np.ndarray, b0: int, b1: int) -> np.ndarray:
    """Project the central pair onto a Bell state and trace it out.

    ``rho_abc`` lives on four qubits ordered (alice, central-1, central-2,
    charlie).  The result is the unnormalized two-qubit state left on the
    outer wings; summed over the four ``(b0, b1)`` outcomes the traces add
    up to ``trace(rho_abc)``.
    """
    rho_abc = np.asarray(rho_abc, dtype=complex)
    if rho_abc.shape != (16, 16):
        raise ValueError(f"expected a four-qubit state, got shape {rho_abc.shape}")
    proj = kron(kron(IDENTITY_2, bell_state(b0, b1)), IDENTITY_2)
    return partial_trace(proj @ rho_abc @ proj, [2, 2, 2, 2], keep=(0, 3))
