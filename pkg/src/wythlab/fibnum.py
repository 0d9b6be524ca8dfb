"""Exact integer arithmetic in the Fibonacci numeration system.

Numbers are written in the Zeckendorf base F_0=1, F_1=2, F_{i+2}=F_{i+1}+F_i:
every natural has a unique representation with digits in {0,1}, no two
adjacent 1s, and no leading zero.  Left-shifting a representation (appending
a 0) multiplies by the golden ratio up to bounded error, which yields exact
formulas for the Beatty floors floor(n*phi) and floor(n*phi^2) without any
floating point.  The module also provides the Hofstadter G-sequence, mex,
and integer certificates for comparisons against multiples of sqrt(5).
"""
from __future__ import annotations

from bisect import bisect_right
from collections.abc import Sequence

import numpy as np

__all__ = [
    "fib",
    "rep_F",
    "val_F",
    "is_canonical",
    "shift",
    "floor_phi",
    "floor_phi2",
    "floor_phi_range",
    "is_floor_phi",
    "hofstadter_h",
    "mex",
    "sqrt5_times_leq",
    "sqrt5_times_geq",
]

_FIBS: list[int] = [1, 2]


def _fibs_through(n: int) -> list[int]:
    """Extend the weight table until it covers n and return it."""
    while _FIBS[-1] <= n:
        _FIBS.append(_FIBS[-1] + _FIBS[-2])
    return _FIBS


def fib(i: int) -> int:
    """The i-th numeration weight: fib(0)=1, fib(1)=2, fib(2)=3, ..."""
    if i < 0:
        raise ValueError(f"negative index {i}")
    while len(_FIBS) <= i:
        _FIBS.append(_FIBS[-1] + _FIBS[-2])
    return _FIBS[i]


def rep_F(n: int) -> str:
    """Greedy Zeckendorf representation of n, msd first; rep_F(0) = ''."""
    if n < 0:
        raise ValueError(f"negative argument {n}")
    if n == 0:
        return ""
    fs = _fibs_through(n)
    i = bisect_right(fs, n) - 1
    digits = []
    for j in range(i, -1, -1):
        if fs[j] <= n:
            digits.append("1")
            n -= fs[j]
        else:
            digits.append("0")
    return "".join(digits)


def val_F(word: str | Sequence[int]) -> int:
    """Value of a 0/1 word under the Fibonacci weights (canonicity not required)."""
    total = 0
    for i, d in enumerate(reversed(word)):
        if d in ("1", 1):
            total += fib(i)
        elif d not in ("0", 0):
            raise ValueError(f"non-binary symbol {d!r} in word")
    return total


def is_canonical(word: str | Sequence[int]) -> bool:
    """True iff the word is a valid greedy representation (of its own value)."""
    s = "".join(str(d) for d in word)
    if s == "":
        return True
    if s[0] != "1" or set(s) - {"0", "1"}:
        return False
    return "11" not in s


def shift(n: int) -> int:
    """Value of rep_F(n) with one zero appended."""
    return val_F(rep_F(n) + "0")


def floor_phi(n: int) -> int:
    """floor(n * phi), exactly, via the shift identity."""
    if n < 0:
        raise ValueError(f"negative argument {n}")
    return 0 if n == 0 else shift(n - 1) + 1


def floor_phi2(n: int) -> int:
    """floor(n * phi^2), exactly, via the double-shift identity."""
    if n < 0:
        raise ValueError(f"negative argument {n}")
    return 0 if n == 0 else shift(shift(n - 1)) + 2


def floor_phi_range(n_max: int) -> np.ndarray:
    """Array of floor(n*phi) for n = 0..n_max.

    The per-step difference floor(n*phi) - floor((n-1)*phi) is 2 exactly when
    n-1 lies in the lower Wythoff sequence, i.e. when letter n-1 (1-indexed)
    of the infinite Fibonacci word is 'a'.  Expanding that word costs O(n_max)
    integer work, so large sweeps avoid n_max separate shift computations.
    """
    if n_max < 0:
        raise ValueError(f"negative argument {n_max}")
    w = bytearray((0, 1))  # 0 = 'a', 1 = 'b'
    i = 1
    while len(w) < n_max:  # need letters 1..n_max-1 (1-indexed)
        w.extend((0, 1) if w[i] == 0 else (0,))
        i += 1
    d = np.ones(n_max + 1, dtype=np.int64)
    d[0] = 0
    if n_max >= 2:
        d[2:] = 2 - np.frombuffer(bytes(w[: n_max - 1]), dtype=np.uint8)
    return np.cumsum(d)


def is_floor_phi(n: int, m: int) -> bool:
    """Independent oracle: m == floor(n*phi), by integer arithmetic only.

    m <= n*phi < m+1 is equivalent to (2m-n)^2 < 5n^2 and (2m+2-n)^2 > 5n^2
    for n >= 1 (both sides of each comparison are integers; equality cannot
    occur because sqrt(5) is irrational).
    """
    if n == 0:
        return m == 0
    return (2 * m - n) ** 2 < 5 * n * n and (2 * m + 2 - n) ** 2 > 5 * n * n


def hofstadter_h(n: int) -> int:
    """Hofstadter G-sequence: h(n) = floor((n+1)/phi) = floor((n+1)*phi) - n - 1."""
    return floor_phi(n + 1) - n - 1


def mex(s) -> int:
    """Least natural number not contained in the finite set s."""
    present = set(s)
    m = 0
    while m in present:
        m += 1
    return m


def sqrt5_times_leq(x: int, z: int) -> bool:
    """Exact decision of sqrt(5)*x <= z for integers x, z.

    Equality sqrt(5)*x == z only happens at x == z == 0, so signs plus one
    squared comparison settle every case without rounding.
    """
    if x >= 0:
        return z >= 0 and 5 * x * x <= z * z
    return z >= 0 or z * z <= 5 * x * x


def sqrt5_times_geq(x: int, z: int) -> bool:
    """Exact decision of sqrt(5)*x >= z for integers x, z."""
    return sqrt5_times_leq(-x, -z)
