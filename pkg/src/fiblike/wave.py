"""Leapfrog scheme for the 1-D wave equation on a path or a cycle.

    u[i]^(n+1) = 2 u[i]^n + c^2 (u[i-1]^n - 2 u[i]^n + u[i+1]^n) - u[i]^(n-1)

Projected onto a Laplacian eigenvector with eigenvalue lam, the scheme turns
into F[n+2] = (2 - c^2 lam) F[n+1] - F[n]: a Fibonacci-like recurrence with
A = 0, C = -1, so each mode is periodic in time when |2 - c^2 lam| < 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ._backend import kernels
from .recurrence import RecurrenceError

__all__ = [
    "PATH",
    "CYCLE",
    "WaveLattice",
    "WaveState",
    "Eigenmode",
    "ModalSeries",
    "InstabilityError",
    "step",
    "run",
    "laplacian_eigenmodes",
    "modal_coefficients",
    "verify_modal_recurrence",
    "modal_period",
    "modal_B",
]

PATH = "path_dirichlet"
CYCLE = "cycle"
_TOPOLOGY_ALIASES = {"path": PATH, PATH: PATH, "cycle": CYCLE}


class InstabilityError(RecurrenceError, OverflowError):
    def __init__(self, time_index: int):
        super().__init__(f"scheme blew up: non-finite value at time index {time_index}")
        self.time_index = time_index


def _frozen(values) -> np.ndarray:
    a = np.array(values, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WaveLattice:
    node_count: int
    topology: str = PATH
    courant: float = 1.0

    def __post_init__(self):
        topo = _TOPOLOGY_ALIASES.get(self.topology)
        if topo is None:
            raise ValueError(f"unknown topology {self.topology!r}; expected 'path' or 'cycle'")
        object.__setattr__(self, "topology", topo)
        minimum = 3 if topo == CYCLE else 2
        if self.node_count < minimum:
            raise ValueError(f"{topo} lattice needs at least {minimum} nodes, got {self.node_count}")
        if not (math.isfinite(self.courant) and self.courant > 0):
            raise ValueError(f"courant number must be finite and positive, got {self.courant!r}")

    @property
    def cyclic(self) -> bool:
        return self.topology == CYCLE


@dataclass(frozen=True, eq=False)
class WaveState:
    current: np.ndarray
    previous: np.ndarray
    time_index: int = 0

    def __post_init__(self):
        cur, prev = _frozen(self.current), _frozen(self.previous)
        if cur.ndim != 1 or cur.shape != prev.shape:
            raise ValueError("current and previous must be 1-D and of equal length")
        if not (np.all(np.isfinite(cur)) and np.all(np.isfinite(prev))):
            raise ValueError("wave state must be finite")
        object.__setattr__(self, "current", cur)
        object.__setattr__(self, "previous", prev)


@dataclass(frozen=True, eq=False)
class Eigenmode:
    index: int
    eigenvalue: float
    vector: np.ndarray


@dataclass(frozen=True, eq=False)
class ModalSeries:
    mode_index: int
    eigenvalue: float
    coefficients: np.ndarray


def _check_state(lattice: WaveLattice, state: WaveState) -> None:
    if state.current.shape[0] != lattice.node_count:
        raise ValueError(f"state has {state.current.shape[0]} nodes, lattice has {lattice.node_count}")


def step(lattice: WaveLattice, state: WaveState, backend=None) -> WaveState:
    _check_state(lattice, state)
    k = backend or kernels
    nxt = k.leapfrog_step(
        np.ascontiguousarray(state.current), np.ascontiguousarray(state.previous),
        lattice.courant**2, lattice.cyclic,
    )
    if not np.all(np.isfinite(nxt)):
        raise InstabilityError(state.time_index + 1)
    return WaveState(nxt, state.current, state.time_index + 1)


def run(
    lattice: WaveLattice,
    initial_current: Sequence[float],
    initial_previous: Sequence[float],
    steps: int,
    backend=None,
) -> List[WaveState]:
    """Snapshots at time levels 0..steps, the first being the initial state."""
    if steps < 1:
        raise ValueError("steps must be positive")
    start = WaveState(initial_current, initial_previous, 0)
    _check_state(lattice, start)
    k = backend or kernels
    rows, bad = k.leapfrog_run(
        np.ascontiguousarray(start.current), np.ascontiguousarray(start.previous),
        lattice.courant**2, lattice.cyclic, int(steps),
    )
    if bad >= 0:
        raise InstabilityError(bad)
    snaps = [start]
    for t in range(1, steps + 1):
        snaps.append(WaveState(rows[t], rows[t - 1], t))
    return snaps


def _orient(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return _frozen(v)


def laplacian_eigenmodes(lattice: WaveLattice) -> List[Eigenmode]:
    """Closed-form spectrum of the lattice Laplacian, ascending by eigenvalue.

    Path modes are labelled m = 1..N, cycle modes m = 0..N-1; cycle modes with
    m > N/2 carry the sine partner of mode N - m.
    """
    N = lattice.node_count
    modes = []
    if lattice.topology == PATH:
        i = np.arange(1, N + 1)
        for m in range(1, N + 1):
            lam = 4.0 * math.sin(m * math.pi / (2 * (N + 1))) ** 2
            modes.append(Eigenmode(m, lam, _orient(np.sin(m * i * math.pi / (N + 1)))))
    else:
        j = np.arange(N)
        for m in range(N):
            lam = 2.0 - 2.0 * math.cos(2.0 * math.pi * m / N)
            if 2 * m <= N:
                v = np.cos(2.0 * math.pi * m * j / N)
            else:
                v = np.sin(2.0 * math.pi * (N - m) * j / N)
            modes.append(Eigenmode(m, lam, _orient(v)))
    modes.sort(key=lambda md: (md.eigenvalue, md.index))
    return modes


def modal_coefficients(trajectory: Sequence[WaveState], mode: Eigenmode) -> ModalSeries:
    U = np.array([s.current for s in trajectory], dtype=np.float64)
    if U.shape[1] != mode.vector.shape[0]:
        raise ValueError("eigenvector length does not match the lattice")
    return ModalSeries(mode.index, mode.eigenvalue, _frozen(U @ mode.vector))


def modal_B(courant: float, eigenvalue: float) -> float:
    return 2.0 - courant**2 * eigenvalue


def verify_modal_recurrence(series: ModalSeries, courant: float) -> float:
    """Max |x[t+2] - B x[t+1] + x[t]| with B = 2 - c^2 lam."""
    x = np.asarray(series.coefficients, dtype=np.float64)
    if x.size < 3:
        raise ValueError("need at least 3 modal coefficients")
    B = modal_B(courant, series.eigenvalue)
    return float(np.max(np.abs(x[2:] - B * x[1:-1] + x[:-2])))


def modal_period(courant: float, eigenvalue: float) -> Optional[float]:
    """Time period 2*pi/arccos(B/2) of a mode, or None when |B| >= 2."""
    B = modal_B(courant, eigenvalue)
    if not abs(B) < 2.0:
        return None
    return 2.0 * math.pi / math.acos(B / 2.0)
