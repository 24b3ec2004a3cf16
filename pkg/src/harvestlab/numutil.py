"""Small numeric helpers used in several modules."""

from __future__ import annotations

import math
from typing import Callable

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi


def golden_section_min(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-10, max_iter: int = 200) -> float:
    """Return the abscissa of the minimum of a unimodal f on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-10, max_iter: int = 200) -> float:
    """Abscissa of the maximum of a unimodal f on [a, b]."""
    return golden_section_min(lambda x: -f(x), a, b, tol=tol, max_iter=max_iter)


def round_sig12(x: float) -> float:
    """Round to 12 significant digits, the precision used for CSV and JSON output."""
    if x != x or x in (float("inf"), float("-inf")):
        return x
    return float(f"{x:.12g}")
