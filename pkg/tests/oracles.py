"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from math import isqrt

import numpy as np


def _isqrt_vec(v: np.ndarray) -> np.ndarray:
    s = np.sqrt(v.astype(np.float64)).astype(np.int64)
    # float sqrt can be off by one near 2^63; fix up exactly in integers
    s -= (s * s > v).astype(np.int64)
    s += ((s + 1) * (s + 1) <= v).astype(np.int64)
    return s


def brute_min_pell(d: int, horizon: int, chunk: int = 1 << 20) -> tuple[int, int] | None:
    """First y >= 1 with d*y^2 + 1 a square, scanning y up to ``horizon``; None if none below it."""
    if d * horizon * horizon >= 2**62:
        raise ValueError("horizon too large for int64 arithmetic")
    start = 1
    while start <= horizon:
        y = np.arange(start, min(start + chunk, horizon + 1), dtype=np.int64)
        v = d * y * y + 1
        s = _isqrt_vec(v)
        hit = np.nonzero(s * s == v)[0]
        if hit.size:
            i = hit[0]
            return int(s[i]), int(y[i])
        start += chunk
    return None


def chakravala(d: int) -> tuple[int, int]:
    """Minimal solution of x^2 - d*y^2 = 1 by the chakravala (cyclic) method."""
    r = isqrt(d)
    a, b, k = r, 1, r * r - d
    if k == 0:
        raise ValueError("square d")
    while k != 1:
        # choose m = -a/b (mod |k|) minimizing |m^2 - d|
        ak = abs(k)
        m0 = next(m for m in range(ak) if (a + b * m) % ak == 0)
        best = None
        m = m0
        while m * m <= 4 * d + ak * ak:
            if best is None or abs(m * m - d) < abs(best * best - d):
                best = m
            m += ak
        m = best
        a, b, k = (a * m + d * b) // ak, (a + b * m) // ak, (m * m - d) // k
        if k == -1:
            # the square of the norm -1 unit is the minimal norm +1 unit
            a, b, k = a * a + d * b * b, 2 * a * b, 1
    return a, b


def brute_general(d: int, ns: list[int], y_bound: int) -> dict[int, set[tuple[int, int]]]:
    """All (x, y) with x^2 - d*y^2 = N and |y| <= y_bound, for each N in ``ns``."""
    y = np.arange(0, y_bound + 1, dtype=np.int64)
    out = {}
    for n in ns:
        v = d * y * y + n
        ok = v >= 0
        s = np.zeros_like(v)
        s[ok] = _isqrt_vec(v[ok])
        hit = np.nonzero(ok & (s * s == v))[0]
        sols = set()
        for i in hit:
            x, yy = int(s[i]), int(y[i])
            sols |= {(x, yy), (-x, yy), (x, -yy), (-x, -yy)}
        out[n] = sols
    return out


def fano_minus2_box(e: int, bound: int) -> list[tuple[int, int]]:
    """(-2)-classes x*g + y*gamma with |x|, |y| <= bound, by direct evaluation of q."""
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if e % 6 == 0:
                q = 6 * x * x - (e // 3) * y * y
            else:
                q = 6 * x * x + 4 * x * y + ((2 - e) // 3) * y * y
            if q == -2:
                out.append((x, y))
    return out
