"""Dense complex linear algebra and qubit-state primitives.

Operators are plain complex ``numpy`` arrays.  Density operators may be
unnormalized: post-measurement branches keep their raw weight so that
outcome probabilities can be read off as traces at the end of a chain of
measurements.  Everything here is a pure function on immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "IDENTITY_2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "DensityReport",
    "bell_state",
    "kron",
    "partial_trace",
    "validate_density",
    "werner_state",
]

#: Default tolerance for Hermiticity / positivity / trace checks.  Double
#: precision on 16x16 products accumulates ~1e-13, so 1e-9 leaves margin.
DEFAULT_TOL = 1e-9

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square operators."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(
    rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]
) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    Parameters
    ----------
    rho:
        Square matrix on the tensor product of subsystems with dimensions
        ``dims`` (row and column indices both factor as ``dims``).
    dims:
        Dimension of each subsystem; their product must equal ``rho``'s size.
    keep:
        Indices of the subsystems to retain, in any order.  The reduced
        operator keeps them in their original tensor order.

    Returns
    -------
    numpy.ndarray
        Reduced operator; its trace equals ``trace(rho)`` up to rounding.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    total = math.prod(dims)
    if rho.shape != (total, total):
        raise ValueError(f"operator shape {rho.shape} does not match dims {dims}")
    kept = sorted({int(k) for k in keep})
    if not kept:
        raise ValueError("keep must select at least one subsystem")
    if kept[0] < 0 or kept[-1] >= n:
        raise ValueError(f"keep indices {kept} out of range for {n} subsystems")

    reshaped = rho.reshape(dims + dims)
    row = list(range(n))
    col = [n + k if k in kept else k for k in range(n)]
    out = kept + [n + k for k in kept]
    reduced = np.einsum(reshaped, row + col, out)
    d_keep = math.prod(dims[k] for k in kept)
    return reduced.reshape(d_keep, d_keep)


def bell_state(b0: int, b1: int) -> np.ndarray:
    """Rank-1 projector onto one of the four maximally entangled two-qubit states.

    The two bits select the state: ``00`` and ``01`` give
    ``(|00> +/- |11>)/sqrt(2)``, ``10`` and ``11`` give
    ``(|01> +/- |10>)/sqrt(2)``, with ``b1`` choosing the sign.
    """
    if b0 not in (0, 1) or b1 not in (0, 1):
        raise ValueError("b0 and b1 must be bits")
    ket = np.zeros(4, dtype=complex)
    ket[b0] = 1.0
    ket[2 + (1 - b0)] = (-1.0) ** b1
    ket /= math.sqrt(2.0)
    return np.outer(ket, ket.conj())


def werner_state(v: float) -> np.ndarray:
    """Two-qubit state ``v * |phi+><phi+| + (1 - v)/4 * I``.

    ``v = 1`` is the maximally entangled state, ``v = 0`` white noise.
    """
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    return v * bell_state(0, 0) + (1.0 - v) / 4.0 * np.eye(4, dtype=complex)


@dataclass(frozen=True)
class DensityReport:
    """Diagnostics for a candidate (possibly unnormalized) density operator."""

    dim: int
    trace: complex
    hermiticity_error: float
    min_eigenvalue: float
    tol: float
    is_valid: bool


def validate_density(rho: np.ndarray, tol: float = DEFAULT_TOL) -> DensityReport:
    """Check Hermiticity, positivity, and trace of a density operator.

    Eigenvalues are computed on the Hermitian part ``(rho + rho^dag)/2`` so
    the check is robust to rounding-induced asymmetry.  Valid means: the
    Hermiticity deviation is at most ``tol``, the minimum eigenvalue is at
    least ``-tol``, and the trace is real within ``tol`` and lies in
    ``[-tol, 1 + tol]`` (unnormalized branches are allowed).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    herm_err = float(np.max(np.abs(rho - rho.conj().T)))
    hermitian_part = (rho + rho.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(hermitian_part)[0])
    tr = complex(np.trace(rho))
    ok = (
        herm_err <= tol
        and min_eig >= -tol
        and abs(tr.imag) <= tol
        and -tol <= tr.real <= 1.0 + tol
    )
    return DensityReport(
        dim=rho.shape[0],
        trace=tr,
        hermiticity_error=herm_err,
        min_eigenvalue=min_eig,
        tol=tol,
        is_valid=ok,
    )
