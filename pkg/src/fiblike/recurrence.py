"""Generation, periodicity classification, closed forms and fitting for

    F[n+2] = A + B*F[n+1] + C*F[n],   F[0] = f0,  F[1] = f1.

Coefficient tests (C == -1, B == 1, ...) are exact comparisons on the values
the caller supplied. A tolerance would silently move a recurrence from one
regime into another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from ._backend import kernels

__all__ = [
    "RecurrenceParams",
    "TermSequence",
    "RootAnalysis",
    "PeriodClassification",
    "ClosedFormSolution",
    "FitResult",
    "RecurrenceError",
    "RecurrenceOverflowError",
    "DomainError",
    "DegenerateDataError",
    "generate",
    "characteristic_roots",
    "classify",
    "fixed_point",
    "closed_form",
    "evaluate_closed_form",
    "detect_exact_period",
    "fit_recurrence",
    "casimir_invariant",
    "casimir_series",
]

CONSTANT = "Constant"
ALTERNATING = "Alternating"
SAMPLED_PERIODIC = "SampledPeriodic"
NON_PERIODIC = "NonPeriodic"

ALTERNATING_TOL = 1e-12
FIXED_POINT_TOL = 1e-12
RATIONAL_MAX_DENOMINATOR = 64
RATIONAL_TOL = 1e-9
UNIT_CIRCLE_TOL = 1e-12
RANK_RTOL = 1e-10


class RecurrenceError(ValueError):
    """Base class for errors raised by this package."""


class RecurrenceOverflowError(RecurrenceError, OverflowError):
    def __init__(self, index: int):
        super().__init__(f"non-finite term at index {index}")
        self.index = index


class DomainError(RecurrenceError):
    """An operation was called outside the parameter region where it is defined."""


class DegenerateDataError(RecurrenceError):
    def __init__(self, rank: int, message: str | None = None):
        super().__init__(message or f"design matrix has rank {rank} < 3; coefficients are not identifiable")
        self.rank = rank


@dataclass(frozen=True)
class RecurrenceParams:
    A: float
    B: float
    C: float
    f0: float
    f1: float

    def __post_init__(self):
        for name in ("A", "B", "C", "f0", "f1"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class TermSequence:
    terms: Tuple[float, ...]
    start_index: int = 0

    def __post_init__(self):
        terms = tuple(float(x) for x in self.terms)
        if not terms:
            raise ValueError("a term sequence must be nonempty")
        if not all(math.isfinite(x) for x in terms):
            raise ValueError("all terms must be finite")
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]

    def __iter__(self):
        return iter(self.terms)

    def as_array(self) -> np.ndarray:
        return np.array(self.terms, dtype=np.float64)


@dataclass(frozen=True)
class RootAnalysis:
    """Roots of r**2 - B*r - C = 0, the homogeneous characteristic polynomial."""

    roots: Tuple[complex, complex]
    magnitudes: Tuple[float, float]
    on_unit_circle: Tuple[bool, bool]
    discriminant: float

    @property
    def spectral_radius(self) -> float:
        return max(self.magnitudes)


@dataclass(frozen=True)
class PeriodClassification:
    variant: str
    T: Optional[float] = None
    omega: Optional[float] = None
    D: Optional[float] = None
    exact_integer_period: Optional[int] = None
    roots: Optional[RootAnalysis] = None
    note: Optional[str] = None

    @property
    def is_periodic(self) -> bool:
        return self.variant != NON_PERIODIC


@dataclass(frozen=True)
class ClosedFormSolution:
    """F[n] = a0 + a1*cos(omega*n) + b1*sin(omega*n)."""

    a0: float
    a1: float
    b1: float
    omega: float

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def __call__(self, n):
        return evaluate_closed_form(self, n)


@dataclass(frozen=True)
class FitResult:
    params: RecurrenceParams
    rms: float
    rank: int = 3


def generate(params: RecurrenceParams, count: int) -> TermSequence:
    """Return the first ``count`` terms F[0..count-1].

    Raises RecurrenceOverflowError at the first term that is not finite.
    """
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    p = params
    terms, bad = kernels.generate_terms(p.A, p.B, p.C, p.f0, p.f1, int(count))
    if bad >= 0:
        raise RecurrenceOverflowError(bad)
    return TermSequence(tuple(terms.tolist()))


def characteristic_roots(B: float, C: float) -> RootAnalysis:
    disc = B * B + 4.0 * C
    if disc >= 0:
        s = math.sqrt(disc)
        # pick the cancellation-free root first, recover the other from the product -C
        big = (B + math.copysign(s, B)) / 2.0
        small = -C / big if big != 0 else 0.0
        r1, r2 = complex(big), complex(small)
        if B < 0:
            r1, r2 = r2, r1
    else:
        s = math.sqrt(-disc)
        r1 = complex(B / 2.0, s / 2.0)
        r2 = r1.conjugate()
    mags = (abs(r1), abs(r2))
    return RootAnalysis(
        roots=(r1, r2),
        magnitudes=mags,
        on_unit_circle=tuple(abs(m - 1.0) <= UNIT_CIRCLE_TOL for m in mags),
        discriminant=disc,
    )


def _rational_period(T: float) -> Optional[int]:
    frac = Fraction(T).limit_denominator(RATIONAL_MAX_DENOMINATOR)
    if abs(T - frac.numerator / frac.denominator) < RATIONAL_TOL:
        return frac.numerator
    return None


def classify(params: RecurrenceParams) -> PeriodClassification:
    """Decide periodicity from the coefficients and initial terms.

    Constant needs A=0, B=1, C=0 and f0 == f1. Alternating needs B = C - 1,
    C != 1 and f0 + f1 = A/(1-C). SampledPeriodic needs C = -1 and |B| < 2;
    the continuous period T is reported always, the integer period only when T
    is (numerically) a small-denominator rational p/q, in which case it is p.
    """
    A, B, C, f0, f1 = params.A, params.B, params.C, params.f0, params.f1

    if A == 0.0 and B == 1.0 and C == 0.0 and f0 == f1:
        return PeriodClassification(CONSTANT, T=1.0)

    note = None
    if C != 1.0 and B == C - 1.0:
        D = A / (1.0 - C)
        if abs(f0 + f1 - D) <= ALTERNATING_TOL:
            return PeriodClassification(ALTERNATING, T=2.0, D=D)
        note = f"B = C - 1 but f0 + f1 != D = {D!r}; period 2 is broken by the initial terms"

    if C == -1.0 and abs(B) < 2.0:
        omega = math.acos(B / 2.0)
        T = 2.0 * math.pi / omega
        return PeriodClassification(
            SAMPLED_PERIODIC, T=T, omega=omega, exact_integer_period=_rational_period(T)
        )

    return PeriodClassification(NON_PERIODIC, roots=characteristic_roots(B, C), note=note)


def fixed_point(A: float, B: float, C: float) -> Optional[float]:
    denom = 1.0 - B - C
    if abs(denom) <= FIXED_POINT_TOL:
        return None
    return A / denom


def _require_sampled(params: RecurrenceParams) -> None:
    if params.C != -1.0:
        raise DomainError(f"requires C == -1, got C={params.C!r}")
    if not abs(params.B) < 2.0:
        raise DomainError(f"requires |B| < 2, got B={params.B!r}")


def closed_form(params: RecurrenceParams) -> ClosedFormSolution:
    """Trigonometric solution of a C = -1, |B| < 2 recurrence through f0, f1."""
    _require_sampled(params)
    omega = math.acos(params.B / 2.0)
    a0 = params.A / (2.0 - params.B)
    a1 = params.f0 - a0
    b1 = (params.f1 - a0 - a1 * math.cos(omega)) / math.sin(omega)
    return ClosedFormSolution(a0=a0, a1=a1, b1=b1, omega=omega)


def evaluate_closed_form(cf: ClosedFormSolution, n):
    """Evaluate at integer ``n`` (scalar or array)."""
    if np.ndim(n) == 0:
        x = cf.omega * n
        return cf.a0 + cf.a1 * math.cos(x) + cf.b1 * math.sin(x)
    x = cf.omega * np.asarray(n, dtype=np.float64)
    return cf.a0 + cf.a1 * np.cos(x) + cf.b1 * np.sin(x)


def detect_exact_period(seq: TermSequence | Sequence[float], tol: float = 1e-9) -> Optional[int]:
    """Smallest p <= len/2 with |F[n+p] - F[n]| <= tol for every n, else None."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    terms = np.ascontiguousarray(seq.terms if isinstance(seq, TermSequence) else seq, dtype=np.float64)
    if terms.size < 4:
        raise ValueError("need at least 4 terms to look for a period")
    p = kernels.first_period(terms, float(tol))
    return p or None


def _snap(x: float, decimals: int) -> float:
    r = round(x, decimals)
    return r if abs(r - x) <= 1e-9 * max(1.0, abs(x)) else x


def fit_recurrence(seq: TermSequence | Sequence[float], snap_decimals: Optional[int] = 6) -> FitResult:
    """Least-squares estimate of (A, B, C) from observed terms.

    Solves the normal equations of rows (1, F[n+1], F[n]) -> F[n+2]. Rank is
    judged from the singular values of the design matrix (relative cutoff
    1e-10); rank < 3 raises DegenerateDataError.

    Estimates lying within 1e-9 of a value with ``snap_decimals`` decimals are
    snapped onto it so that, e.g., C = -0.9999999999999998 is reported as -1
    and classifies the same way as the generating recurrence. Pass
    ``snap_decimals=None`` for the raw solution.
    """
    terms = np.asarray(seq.terms if isinstance(seq, TermSequence) else seq, dtype=np.float64)
    if terms.size < 5:
        raise ValueError("need at least 5 terms to fit three coefficients")
    X = np.column_stack([np.ones(terms.size - 2), terms[1:-1], terms[:-2]])
    y = terms[2:]
    sv = np.linalg.svd(X, compute_uv=False)
    rank = int(np.sum(sv > RANK_RTOL * sv[0])) if sv[0] > 0 else 0
    if rank < 3:
        raise DegenerateDataError(rank)
    # column-equilibrated normal equations plus one refinement pass; the
    # normal matrix squares cond(X), which is large for growing sequences
    scale = np.sqrt(np.sum(X * X, axis=0))
    Xs = X / scale
    gram = Xs.T @ Xs
    z = np.linalg.solve(gram, Xs.T @ y)
    z += np.linalg.solve(gram, Xs.T @ (y - Xs @ z))
    A, B, C = (float(c) for c in z / scale)
    if snap_decimals is not None:
        A, B, C = (_snap(c, snap_decimals) for c in (A, B, C))
    resid = y - (A + B * terms[1:-1] + C * terms[:-2])
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult(RecurrenceParams(A, B, C, float(terms[0]), float(terms[1])), rms, rank)


def casimir_invariant(params: RecurrenceParams, fn: float, fn1: float) -> float:
    """Conserved quadratic g**2 - B*g*h + h**2 of consecutive terms about the fixed point."""
    _require_sampled(params)
    a0 = params.A / (2.0 - params.B)
    g = fn - a0
    h = fn1 - a0
    return g * g - params.B * g * h + h * h


def casimir_series(params: RecurrenceParams, seq: TermSequence | Sequence[float]) -> np.ndarray:
    """casimir_invariant over every consecutive pair of ``seq``."""
    _require_sampled(params)
    t = np.asarray(seq.terms if isinstance(seq, TermSequence) else seq, dtype=np.float64)
    a0 = params.A / (2.0 - params.B)
    g = t[:-1] - a0
    h = t[1:] - a0
    return g * g - params.B * g * h + h * h
