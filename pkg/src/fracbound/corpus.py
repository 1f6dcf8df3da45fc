"""Piecewise-linear Lipschitz test functions with exact fractional integrals.

Piecewise-linear functions are the test corpus because they make both
sides of every check computable without quadrature:

  * the sharp Lipschitz constant is max |segment slope|, exactly;
  * against a power kernel, each segment f(t) = c + d*(t - anchor)
    integrates termwise by the power rule, so the fractional integrals
    close in a handful of power evaluations.

That separates formula bugs from quadrature error: the closed forms here
are the oracle the adaptive integrator is compared to, and vice versa.

Random generation is deterministic per seed (numpy PCG64 seeded through
SeedSequence) with no global state.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .quadrature import DomainError, Interval, Order, gamma_fn

__all__ = [
    "LipschitzWitness",
    "PiecewiseLinearFunction",
    "exact_rl_left",
    "exact_rl_mid",
    "exact_rl_right",
    "from_text",
    "lipschitz_constant",
    "random_lipschitz",
    "tent",
    "to_text",
]


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Continuous piecewise-linear function given by breakpoints and values.

    Breakpoints are strictly increasing and span the domain; evaluation
    between breakpoints is linear interpolation.  Evaluation clamps the
    argument to [a, b] so that quadrature nodes perturbed past an endpoint
    by one rounding step stay legal.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bps = tuple(float(t) for t in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) < 2:
            raise DomainError("need at least 2 breakpoints")
        if len(bps) != len(vals):
            raise DomainError(f"{len(bps)} breakpoints vs {len(vals)} values")
        if not all(math.isfinite(t) for t in bps) or not all(math.isfinite(v) for v in vals):
            raise DomainError("breakpoints and values must be finite")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise DomainError("breakpoints must be strictly increasing")

    @property
    def a(self) -> float:
        return self.breakpoints[0]

    @property
    def b(self) -> float:
        return self.breakpoints[-1]

    @property
    def interval(self) -> Interval:
        return Interval(self.a, self.b)

    @property
    def slopes(self) -> tuple:
        bps, vals = self.breakpoints, self.values
        return tuple((vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i]) for i in range(len(bps) - 1))

    def __call__(self, t: float) -> float:
        bps, vals = self.breakpoints, self.values
        if t <= bps[0]:
            return vals[0]
        if t >= bps[-1]:
            return vals[-1]
        i = bisect_right(bps, t) - 1
        return vals[i] + (vals[i + 1] - vals[i]) * (t - bps[i]) / (bps[i + 1] - bps[i])


@dataclass(frozen=True)
class LipschitzWitness:
    """A piecewise-linear function together with its sharp Lipschitz constant."""

    function: PiecewiseLinearFunction
    constant: float

    def __post_init__(self):
        if not (self.constant >= 0.0 and math.isfinite(self.constant)):
            raise DomainError(f"Lipschitz constant must be finite and >= 0, got {self.constant}")


def lipschitz_constant(f: PiecewiseLinearFunction) -> float:
    """Sharp Lipschitz constant: max absolute segment slope (0 if constant)."""
    return max(abs(s) for s in f.slopes)


def tent(interval: Interval, center: float) -> PiecewiseLinearFunction:
    """The function t -> |t - center| on the interval (Lipschitz constant 1).

    Tents centered on the evaluation node achieve equality in the
    coincident-node bound, which makes them the sharpness witnesses used
    throughout the tests.
    """
    a, b = interval.a, interval.b
    if not (a <= center <= b):
        raise DomainError(f"center {center} outside [{a}, {b}]")
    if center in (a, b):
        return PiecewiseLinearFunction((a, b), (abs(a - center), abs(b - center)))
    return PiecewiseLinearFunction((a, center, b), (center - a, 0.0, b - center))


def random_lipschitz(seed: int, interval: Interval, segments: int = 6,
                     m_max: float = 2.0) -> LipschitzWitness:
    """Deterministic random witness: `segments` linear pieces on the interval.

    Interior breakpoints are uniform draws (sorted, endpoints pinned),
    slopes are uniform in [-m_max, m_max], and the starting value is
    uniform in [-m_max, m_max].  The witness constant is computed sharply
    from the realized slopes, so it is exact rather than just m_max.
    Identical seeds give bit-identical witnesses.
    """
    if segments < 1:
        raise DomainError(f"segments must be >= 1, got {segments}")
    if m_max < 0.0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    a, b = interval.a, interval.b
    while True:
        interior = np.sort(rng.uniform(a, b, segments - 1))
        bps = (a, *map(float, interior), b)
        if all(bps[i] < bps[i + 1] for i in range(len(bps) - 1)):
            break
    slopes = rng.uniform(-m_max, m_max, segments)
    start = float(rng.uniform(-m_max, m_max))
    vals = [start]
    for i in range(segments):
        vals.append(vals[-1] + float(slopes[i]) * (bps[i + 1] - bps[i]))
    f = PiecewiseLinearFunction(bps, tuple(vals))
    return LipschitzWitness(f, lipschitz_constant(f))


def _clipped_segments(f: PiecewiseLinearFunction, lo: float, hi: float):
    """Yield (t0, t1, f(t0), slope) for each segment piece inside [lo, hi]."""
    bps, vals = f.breakpoints, f.values
    for i in range(len(bps) - 1):
        t0, t1 = bps[i], bps[i + 1]
        s0, s1 = max(t0, lo), min(t1, hi)
        if s1 <= s0:
            continue
        slope = (vals[i + 1] - vals[i]) / (t1 - t0)
        yield s0, s1, vals[i] + slope * (s0 - t0), slope


def exact_rl_left(f: PiecewiseLinearFunction, order: Order, upper: float) -> float:
    """Closed-form left fractional integral (1/Gamma(a)) int_a^upper (t-a)^(a-1) f dt.

    On each segment piece, with f(t) = c + d*(t-a), the power rule gives
    c*(P1^a - P0^a)/a + d*(P1^(a+1) - P0^(a+1))/(a+1) for P = t - a.
    Exact up to rounding; no quadrature.
    """
    a = f.a
    if not (a <= upper <= f.b):
        raise DomainError(f"upper={upper} outside [{a}, {f.b}]")
    alpha = order.alpha
    total = 0.0
    for lo, hi, v_lo, slope in _clipped_segments(f, a, upper):
        c = v_lo - slope * (lo - a)
        p0, p1 = lo - a, hi - a
        total += c * (p1 ** alpha - p0 ** alpha) / alpha
        total += slope * (p1 ** (alpha + 1.0) - p0 ** (alpha + 1.0)) / (alpha + 1.0)
    return total / gamma_fn(alpha)


def exact_rl_right(f: PiecewiseLinearFunction, order: Order, lower: float) -> float:
    """Closed-form right fractional integral (1/Gamma(a)) int_lower^b (b-t)^(a-1) f dt.

    Mirror of exact_rl_left: on each piece f(t) = c + d*(b-t) with
    c = f extrapolated at b and d = -slope, integrated in w = b - t.
    """
    b = f.b
    if not (f.a <= lower <= b):
        raise DomainError(f"lower={lower} outside [{f.a}, {b}]")
    alpha = order.alpha
    total = 0.0
    for lo, hi, v_lo, slope in _clipped_segments(f, lower, b):
        c = v_lo + slope * (b - lo)
        w0, w1 = b - hi, b - lo
        total += c * (w1 ** alpha - w0 ** alpha) / alpha
        total -= slope * (w1 ** (alpha + 1.0) - w0 ** (alpha + 1.0)) / (alpha + 1.0)
    return total / gamma_fn(alpha)


def exact_rl_mid(f: PiecewiseLinearFunction, v1: float, v2: float, order: Order) -> float:
    """Closed-form panel integral (1/Gamma(a)) int_v1^v2 (v2-t)^(a-1) f dt.

    Same decomposition as exact_rl_right with the kernel anchored at v2.
    Returns 0 when v1 == v2.
    """
    if v1 > v2:
        raise DomainError(f"need v1 <= v2, got v1={v1}, v2={v2}")
    if not (f.a <= v1 and v2 <= f.b):
        raise DomainError(f"[{v1}, {v2}] outside [{f.a}, {f.b}]")
    alpha = order.alpha
    total = 0.0
    for lo, hi, v_lo, slope in _clipped_segments(f, v1, v2):
        c = v_lo + slope * (v2 - lo)
        w0, w1 = v2 - hi, v2 - lo
        total += c * (w1 ** alpha - w0 ** alpha) / alpha
        total -= slope * (w1 ** (alpha + 1.0) - w0 ** (alpha + 1.0)) / (alpha + 1.0)
    return total / gamma_fn(alpha)


def to_text(f: PiecewiseLinearFunction) -> str:
    """Serialize as two whitespace-separated columns: breakpoint, value."""
    lines = ["# fracbound piecewise-linear witness: breakpoint value"]
    for t, v in zip(f.breakpoints, f.values):
        lines.append("%.17g %.17g" % (t, v))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> PiecewiseLinearFunction:
    """Parse the two-column text format written by :func:`to_text`."""
    bps, vals = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"expected 'breakpoint value', got {raw!r}")
        bps.append(float(parts[0]))
        vals.append(float(parts[1]))
    return PiecewiseLinearFunction(tuple(bps), tuple(vals))
