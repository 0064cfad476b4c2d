"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Every arithmetic expression is written in the same order as the Cython source
so both backends produce bit-identical floats.
"""

from __future__ import annotations

import math

import numpy as np


def generate_terms(A, B, C, f0, f1, count):
    t = [float(f0), float(f1)]
    prev, cur = t[0], t[1]
    for n in range(2, count):
        nxt = A + B * cur + C * prev
        if not math.isfinite(nxt):
            return np.array(t, dtype=np.float64), n
        t.append(nxt)
        prev, cur = cur, nxt
    return np.array(t[:count], dtype=np.float64), -1


def first_period(terms, tol):
    t = [float(x) for x in terms]
    size = len(t)
    for p in range(1, size // 2 + 1):
        if all(abs(t[n + p] - t[n]) <= tol for n in range(size - p)):
            return p
    return 0


def _leapfrog(cur, prev, c2, cyclic):
    size = len(cur)
    nxt = [0.0] * size
    for i in range(size):
        u = cur[i]
        if i > 0:
            left = cur[i - 1]
        elif cyclic:
            left = cur[size - 1]
        else:
            left = 0.0
        if i < size - 1:
            right = cur[i + 1]
        elif cyclic:
            right = cur[0]
        else:
            right = 0.0
        nxt[i] = 2.0 * u + c2 * (left - 2.0 * u + right) - prev[i]
    return nxt


def leapfrog_step(cur, prev, c2, cyclic):
    return np.array(_leapfrog(list(map(float, cur)), list(map(float, prev)), c2, cyclic))


def leapfrog_run(cur, prev, c2, cyclic, steps):
    before = [float(x) for x in prev]
    now = [float(x) for x in cur]
    rows = [now]
    for t in range(steps):
        nxt = _leapfrog(now, before, c2, cyclic)
        if not all(math.isfinite(x) for x in nxt):
            return np.array(rows), t + 1
        rows.append(nxt)
        before, now = now, nxt
    return np.array(rows), -1
