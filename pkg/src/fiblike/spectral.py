"""Fourier-coefficient checks for f(x+1) = A + B*f(x) + C*f(x-1).

Substituting f(x) = a0 + sum_n a_n cos(n*w*x) + b_n sin(n*w*x) into the
functional equation leaves a residual series with coefficients

    c0  = a0 - C*a0 - B*a0 - A
    c_n = a_n*(cos(w n) - C cos(w n) - B) + b_n*(1 + C)*sin(w n)
    d_n = -a_n*(1 + C)*sin(w n) + b_n*(cos(w n) - C cos(w n) - B)

and f solves the equation exactly when all of them vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from .recurrence import ClosedFormSolution, DomainError, TermSequence

__all__ = [
    "FourierModel",
    "CoefficientResiduals",
    "HarmonicSet",
    "residual_coefficients",
    "admissible_harmonics",
    "verify_functional_equation",
    "check_period2_identity",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FourierModel:
    a0: float
    harmonics: Tuple[Tuple[int, float, float], ...]
    omega: float

    def __post_init__(self):
        hs = tuple((int(n), float(a), float(b)) for n, a, b in self.harmonics)
        idx = [n for n, _, _ in hs]
        if any(n < 1 for n in idx) or any(j <= i for i, j in zip(idx, idx[1:])):
            raise ValueError(f"harmonic indices must be positive and strictly increasing, got {idx}")
        if not all(math.isfinite(v) for _, a, b in hs for v in (a, b)) or not math.isfinite(self.a0):
            raise ValueError("Fourier amplitudes must be finite")
        object.__setattr__(self, "harmonics", hs)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "omega", float(self.omega))

    @classmethod
    def from_closed_form(cls, cf: ClosedFormSolution, extra: Iterable[Tuple[int, float, float]] = ()):
        harmonics = sorted([(1, cf.a1, cf.b1), *extra])
        return cls(cf.a0, tuple(harmonics), cf.omega)

    @property
    def period(self) -> float:
        return TWO_PI / self.omega

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.full_like(x, self.a0)
        for n, a, b in self.harmonics:
            arg = n * self.omega * x
            out = out + a * np.cos(arg) + b * np.sin(arg)
        return out


@dataclass(frozen=True)
class CoefficientResiduals:
    c0: float
    per_harmonic: Tuple[Tuple[int, float, float], ...]

    def max_abs(self) -> float:
        vals = [abs(self.c0)] + [max(abs(c), abs(d)) for _, c, d in self.per_harmonic]
        return max(vals)


@dataclass(frozen=True)
class HarmonicSet:
    omega: float
    max_n: int
    members: FrozenSet[int] = field(default_factory=frozenset)
    tolerance: float = 1e-12

    def __contains__(self, n) -> bool:
        return n in self.members

    def sorted(self) -> list:
        return sorted(self.members)


def residual_coefficients(A: float, B: float, C: float, omega: float, model: FourierModel) -> CoefficientResiduals:
    if not 0.0 < omega < math.pi:
        raise DomainError(f"omega must lie in (0, pi), got {omega!r}")
    a0 = model.a0
    c0 = a0 - C * a0 - B * a0 - A
    rows = []
    for n, a, b in model.harmonics:
        cs = math.cos(omega * n)
        sn = math.sin(omega * n)
        k = cs - C * cs - B
        s = (1.0 + C) * sn
        rows.append((n, a * k + b * s, -a * s + b * k))
    return CoefficientResiduals(c0, tuple(rows))


def _near_multiple_of_two_pi(x: float, tolerance: float) -> bool:
    k = round(x / TWO_PI)
    return k >= 1 and abs(x - TWO_PI * k) <= tolerance


def admissible_harmonics(omega: float, max_n: int, tolerance: float = 1e-12) -> HarmonicSet:
    """Harmonics n in [2, max_n] with (n - 1)*omega or (n + 1)*omega = 2*pi*k, k >= 1.

    The fundamental n = 1 is never a member: k = 0 is not admitted.
    """
    if not 0.0 < omega < math.pi:
        raise DomainError(f"omega must lie in (0, pi), got {omega!r}")
    members = frozenset(
        n
        for n in range(2, max_n + 1)
        if _near_multiple_of_two_pi((n - 1) * omega, tolerance)
        or _near_multiple_of_two_pi((n + 1) * omega, tolerance)
    )
    return HarmonicSet(omega=omega, max_n=max_n, members=members, tolerance=tolerance)


def verify_functional_equation(
    model: FourierModel,
    A: float,
    B: float,
    C: float,
    sample_count: int = 1024,
    x_range: Optional[Tuple[float, float]] = None,
) -> float:
    """Max |f(x+1) - A - B f(x) - C f(x-1)| over evenly spaced x.

    ``x_range`` defaults to four fundamental periods starting at 0.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    lo, hi = x_range if x_range is not None else (0.0, 4.0 * model.period)
    x = np.linspace(lo, hi, sample_count)
    r = model(x + 1.0) - A - B * model(x) - C * model(x - 1.0)
    return float(np.max(np.abs(r)))


def check_period2_identity(A: float, C: float, seq: TermSequence | Sequence[float], tol: float = 1e-12) -> bool:
    """True iff F[n+1] = A/(1-C) - F[n] for every consecutive pair."""
    if C == 1.0:
        raise DomainError("C == 1 leaves D = A/(1 - C) undefined")
    D = A / (1.0 - C)
    t = list(seq.terms if isinstance(seq, TermSequence) else seq)
    if not t:
        raise ValueError("sequence must be nonempty")
    return all(abs(t[n + 1] - (D - t[n])) <= tol for n in range(len(t) - 1))
