"""Closed-form finite-key bounds, key rate and the asymptotic threshold curve.

Bounds are returned exactly as the formulas give them, including values above
one; :func:`clamp` exists for display.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

BISECT_TOL = 1e-9


def h2(x: float) -> float:
    """Binary entropy in bits, with ``h2(0) = h2(1) = 0``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy is defined on [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


@dataclass(frozen=True)
class BoundParams:
    n: int
    n_z: int
    n_x: int
    p_az: float
    p_ax: float
    eps_sec: float
    eps_rel: float
    R: float

    def __post_init__(self):
        for name in ("n", "n_z", "n_x"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        for name in ("p_az", "p_ax"):
            v = getattr(self, name)
            if not 0.0 <= v < 0.5:
                raise ValueError(f"{name} must lie in [0, 1/2), got {v}")
        for name in ("eps_sec", "eps_rel"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.R <= 1.0:
            raise ValueError(f"R must lie in (0, 1], got {self.R}")
        if self.p_ax + self.eps_sec > 0.5:
            raise ValueError("p_ax + eps_sec must not exceed 1/2")
        if self.p_az + self.eps_rel > 0.5:
            raise ValueError("p_az + eps_rel must not exceed 1/2")

    @property
    def delta(self) -> float:
        """Smallest relative distance ``d_rm / n`` the security bound asks for."""
        return 2.0 * (self.p_ax + self.eps_sec)


def prop1_bound(m: int, tail: float) -> float:
    """``2 m sqrt(tail)``: bound on the trace distance between two keys' states."""
    if not 0.0 <= tail <= 1.0:
        raise ValueError(f"tail probability must lie in [0, 1], got {tail}")
    return 2.0 * m * math.sqrt(tail)


def sampling_exponent_bound(n: int, n_test: int, eps: float) -> float:
    """``exp(-2 (n_test / (n + n_test))^2 n eps^2)``, the sampling tail bound."""
    frac = n_test / (n + n_test)
    return math.exp(-2.0 * frac * frac * n * eps * eps)


def security_exponent_bound(p: BoundParams) -> float:
    frac = p.n_x / (p.n + p.n_x)
    return 2.0 * p.R * p.n * math.exp(-frac * frac * p.n * p.eps_sec**2)


def reliability_bound(p: BoundParams) -> float:
    return sampling_exponent_bound(p.n, p.n_z, p.eps_rel)


def secret_rate(p_az: float, p_ax: float, eps_sec: float = 0.0, eps_rel: float = 0.0, inv_n: float = 0.0) -> float:
    """``1 - h2(2 p_ax + 2 eps_sec) - h2(p_az + eps_rel + inv_n)``.

    Negative values mean no secure rate.
    """
    return 1.0 - h2(2.0 * p_ax + 2.0 * eps_sec) - h2(p_az + eps_rel + inv_n)


def key_rate(p: BoundParams) -> float:
    return secret_rate(p.p_az, p.p_ax, p.eps_sec, p.eps_rel, 1.0 / p.n)


def _bisect_increasing(f, lo: float, hi: float, tol: float = BISECT_TOL) -> float:
    """Root of an increasing ``f`` with ``f(lo) <= 0 <= f(hi)``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _h2_inverse_low(target: float) -> float:
    """The ``u`` in [0, 1/2] with ``h2(u) = target``."""
    if target <= 0.0:
        return 0.0
    if target >= 1.0:
        return 0.5
    return _bisect_increasing(lambda u: h2(u) - target, 0.0, 0.5)


def max_p_ax(p_az: float, eps_sec: float = 0.0, eps_rel: float = 0.0, inv_n: float = 0.0) -> float:
    """Largest ``p_ax`` keeping the secret rate nonnegative for this ``p_az``."""
    if not 0.0 <= p_az <= 0.5:
        raise ValueError(f"p_az must lie in [0, 1/2], got {p_az}")
    z_arg = p_az + eps_rel + inv_n
    if z_arg > 1.0:
        return 0.0
    u = _h2_inverse_low(1.0 - h2(min(z_arg, 1.0)))
    return max(0.0, u / 2.0 - eps_sec)


def max_p_az(p_ax: float) -> float:
    """Largest ``p_az`` on the asymptotic curve for this ``p_ax``."""
    if not 0.0 <= p_ax <= 0.25:
        raise ValueError(f"p_ax must lie in [0, 1/4], got {p_ax}")
    return _h2_inverse_low(1.0 - h2(2.0 * p_ax))


def threshold_curve(p_az_grid: Iterable[float], eps_sec: float = 0.0, eps_rel: float = 0.0, inv_n: float = 0.0) -> list[tuple[float, float]]:
    """``(p_az, p_ax_max)`` pairs tracing the edge of the secure region.

    The defaults give the asymptotic curve; pass the finite-size slacks to
    get the curve for a concrete block length.
    """
    return [(float(z), max_p_ax(z, eps_sec, eps_rel, inv_n)) for z in p_az_grid]


def symmetric_threshold() -> float:
    """The error rate ``p`` at which ``p_az = p_ax = p`` sits on the curve."""
    return _bisect_increasing(lambda p: h2(2.0 * p) + h2(p) - 1.0, 0.0, 0.25)


def default_grid(points: int = 101) -> list[float]:
    if points < 2:
        raise ValueError("need at least two grid points")
    return [0.5 * i / (points - 1) for i in range(points)]


def curve_csv(rows: Sequence[tuple[float, float]]) -> str:
    buf = io.StringIO()
    buf.write("p_az,p_ax_max\n")
    for z, x in rows:
        buf.write(f"{z:.9f},{x:.9f}\n")
    return buf.getvalue()


def clamp(bound: float) -> float:
    """Clip a bound to [0, 1] for display."""
    return min(1.0, max(0.0, bound))
