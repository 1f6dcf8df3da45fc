"""Closed-form weighted absolute-moment integrals and piecewise bound coefficients.

Every bound coefficient evaluated here is, underneath, a sum of panel
moments

    int over panel |node - t| * (power kernel)^(alpha-1) dt

and each moment closes under the power rule.  Two independent encodings
are kept for the full two-panel and three-panel coefficients:

  * a per-ordering literal term list (one closed expression per ordering
    of the nodes against the panel edges), and
  * an assembly from the three panel-moment functions.

``v_hadamard`` / ``v_bullen`` evaluate both and raise
:class:`InconsistencyError` if they disagree beyond 1e-12 relative, which
catches transcription slips in either encoding.  The moment assembly is
the encoding that is pinned against the adaptive-quadrature oracle in the
test suite, so agreement chains both encodings down to raw quadrature.

Orientation note for the middle panel: when the node y lies left of the
panel [v1, v2], |y - t| = t - y throughout, so the closed form is
w^a * ((v2-y)/a - w/(a+1)) with w = v2 - v1; the node-distance term
dominates and the value is positive.  The mirrored bracket is negative
there and fails both the quadrature cross-check and continuity at
y = v1, so only this orientation is used.  The corresponding literal
three-point corner-weight coefficient (``n_coeff`` orderings 7 and 8)
intentionally keeps the mirrored bracket so the audit can measure it;
see ``n_coeff``.

Case selection at exact ordering boundaries takes the lowest-index
ordering; adjacent orderings agree there (continuity), so the choice
never changes a value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quadrature import DomainError, Interval, Order

__all__ = [
    "BoundBreakdown",
    "BullenConfig",
    "HadamardConfig",
    "InconsistencyError",
    "abs_moment_left_closed",
    "abs_moment_mid_closed",
    "abs_moment_right_closed",
    "bullen_remark_coeff",
    "l_coeff",
    "l_coeff_reference",
    "n_case_index",
    "n_coeff",
    "n_coeff_reference",
    "simpson_remark_coeff",
    "unit_order_two_point_table",
    "v_bullen",
    "v_hadamard",
    "weighted_bullen_coeff",
    "weighted_bullen_reference",
]

# Relative agreement demanded between the literal and assembled encodings.
DUAL_PATH_RTOL = 1e-12


class InconsistencyError(ArithmeticError):
    """Literal and assembled encodings of a bound disagree: transcription bug."""


def _pw(base: float, exponent: float) -> float:
    # Fractional power with the limit convention 0^e = 0 for e > 0.  Bases
    # can round to a tiny negative at ordering boundaries; clamp to the
    # limit value instead of producing a complex number.
    return 0.0 if base <= 0.0 else base ** exponent


def abs_moment_left_closed(x: float, anchor_a: float, upper_v: float, order: Order) -> float:
    """int_anchor^upper |x - t| (t - anchor)^(alpha-1) dt in closed form.

    Requires x >= anchor (nodes left of the left kernel anchor do not occur
    in any bound here).
    """
    if upper_v < anchor_a:
        raise DomainError(f"need anchor_a <= upper_v, got {anchor_a} > {upper_v}")
    if x < anchor_a:
        raise DomainError(f"node x={x} left of kernel anchor {anchor_a}")
    alpha = order.alpha
    w = upper_v - anchor_a
    p = x - anchor_a
    if x >= upper_v:
        return _pw(w, alpha) * (p / alpha - w / (alpha + 1.0))
    return (2.0 * _pw(p, alpha + 1.0) / (alpha * (alpha + 1.0))
            + _pw(w, alpha) * (w / (alpha + 1.0) - p / alpha))


def abs_moment_right_closed(y: float, lower_v: float, anchor_b: float, order: Order) -> float:
    """int_lower^anchor |y - t| (anchor - t)^(alpha-1) dt in closed form.

    Mirror of :func:`abs_moment_left_closed`; requires y <= anchor.
    """
    if anchor_b < lower_v:
        raise DomainError(f"need lower_v <= anchor_b, got {lower_v} > {anchor_b}")
    if y > anchor_b:
        raise DomainError(f"node y={y} right of kernel anchor {anchor_b}")
    alpha = order.alpha
    w = anchor_b - lower_v
    q = anchor_b - y
    if y <= lower_v:
        return _pw(w, alpha) * (q / alpha - w / (alpha + 1.0))
    return (2.0 * _pw(q, alpha + 1.0) / (alpha * (alpha + 1.0))
            + _pw(w, alpha) * (w / (alpha + 1.0) - q / alpha))


def abs_moment_mid_closed(y: float, v1: float, v2: float, order: Order) -> float:
    """int_v1^v2 |y - t| (v2 - t)^(alpha-1) dt in closed form, any real y.

    Three branches: node right of the panel (y >= v2), node inside, node
    left of the panel (y < v1).  Adjacent branches agree at y = v1 and
    y = v2.
    """
    if v2 < v1:
        raise DomainError(f"need v1 <= v2, got {v1} > {v2}")
    alpha = order.alpha
    w = v2 - v1
    r = v2 - y
    if y >= v2:
        return _pw(w, alpha) * ((y - v2) / alpha + w / (alpha + 1.0))
    if y >= v1:
        return (2.0 * _pw(r, alpha + 1.0) / (alpha * (alpha + 1.0))
                + _pw(w, alpha) * (w / (alpha + 1.0) - r / alpha))
    return _pw(w, alpha) * (r / alpha - w / (alpha + 1.0))


def _clamp(t: float, lo: float, hi: float) -> float:
    return lo if t < lo else hi if t > hi else t


@dataclass(frozen=True)
class HadamardConfig:
    """Two-point configuration: interval, order, weight lam, nodes x <= y.

    The derived node V = (1-lam)*a + lam*b splits the interval into the two
    kernel panels.
    """

    interval: Interval
    order: Order
    lam: float
    x: float
    y: float

    def __post_init__(self):
        a, b = self.interval.a, self.interval.b
        if not (0.0 <= self.lam <= 1.0):
            raise DomainError(f"lam must be in [0, 1], got {self.lam}")
        if not (a <= self.x <= self.y <= b):
            raise DomainError(f"need a <= x <= y <= b, got x={self.x}, y={self.y} on [{a}, {b}]")

    @property
    def v_node(self) -> float:
        a, b = self.interval.a, self.interval.b
        return _clamp((1.0 - self.lam) * a + self.lam * b, a, b)


@dataclass(frozen=True)
class BullenConfig:
    """Three-point configuration: weights (lam, eta, mu) summing to 1, nodes x <= y <= z.

    Derived panel edges V1 = (1-lam)*a + lam*b and V2 = mu*a + (lam+eta)*b
    satisfy a <= V1 <= V2 <= b with V2 - V1 = eta*(b-a).  Weights are
    renormalized on construction when the sum drifts from 1 by float noise
    (at most 1e-9).
    """

    interval: Interval
    order: Order
    lam: float
    eta: float
    mu: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        lam, eta, mu = float(self.lam), float(self.eta), float(self.mu)
        for name, wgt in (("lam", lam), ("eta", eta), ("mu", mu)):
            if not (0.0 <= wgt <= 1.0 + 1e-12):
                raise DomainError(f"{name} must be in [0, 1], got {wgt}")
        total = lam + eta + mu
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"weights must sum to 1, got {total}")
        object.__setattr__(self, "lam", lam / total)
        object.__setattr__(self, "eta", eta / total)
        object.__setattr__(self, "mu", mu / total)
        a, b = self.interval.a, self.interval.b
        if not (a <= self.x <= self.y <= self.z <= b):
            raise DomainError(
                f"need a <= x <= y <= z <= b, got ({self.x}, {self.y}, {self.z}) on [{a}, {b}]")

    @property
    def v1_node(self) -> float:
        a, b = self.interval.a, self.interval.b
        return _clamp((1.0 - self.lam) * a + self.lam * b, a, b)

    @property
    def v2_node(self) -> float:
        a, b = self.interval.a, self.interval.b
        return _clamp(self.mu * a + (self.lam + self.eta) * b, self.v1_node, b)


@dataclass(frozen=True)
class BoundBreakdown:
    """A bound coefficient with its per-term decomposition.

    ``terms`` are the named summands of the literal per-ordering expression
    and ``total`` is their sum; ``cross_total`` is the same value assembled
    from the panel-moment functions.  The constructor enforces that the
    terms add up and that the total is nonnegative.
    """

    case_tag: str
    terms: tuple
    total: float
    cross_total: float

    def __post_init__(self):
        s = math.fsum(v for _, v in self.terms)
        if abs(s - self.total) > 1e-12 * max(1.0, abs(self.total)):
            raise InconsistencyError(f"terms sum to {s}, total recorded as {self.total}")
        if self.total < -1e-12:
            raise InconsistencyError(f"bound total must be nonnegative, got {self.total}")

    def as_record(self) -> dict:
        rec = {"case": self.case_tag}
        rec.update({name: value for name, value in self.terms})
        rec["total"] = self.total
        rec["cross_total"] = self.cross_total
        return rec


def _dual_path_guard(literal: float, assembled: float, tag: str) -> None:
    if abs(literal - assembled) > DUAL_PATH_RTOL * max(1.0, abs(assembled)):
        raise InconsistencyError(
            f"case {tag}: literal={literal!r} vs assembled={assembled!r}")


def v_hadamard(config: HadamardConfig) -> BoundBreakdown:
    """Two-panel bound coefficient: sum of the left moment at x over [a, V]
    and the right moment at y over [V, b], in closed form.

    The scaled inequality bound is alpha * M * total / (b-a)^alpha.
    """
    a, b = config.interval.a, config.interval.b
    alpha = config.order.alpha
    x, y, v = config.x, config.y, config.v_node

    assembled = (abs_moment_left_closed(x, a, v, config.order)
                 + abs_moment_right_closed(y, v, b, config.order))

    left_kink = 2.0 * _pw(x - a, alpha + 1.0) / (alpha * (alpha + 1.0))
    right_kink = 2.0 * _pw(b - y, alpha + 1.0) / (alpha * (alpha + 1.0))
    if v <= x:
        tag = "V<=x<=y"
        terms = (
            ("left_node", _pw(v - a, alpha) * ((x - a) / alpha - (v - a) / (alpha + 1.0))),
            ("right_kink", right_kink),
            ("right_node", _pw(b - v, alpha) * ((b - v) / (alpha + 1.0) - (b - y) / alpha)),
        )
    elif v <= y:
        tag = "x<=V<=y"
        terms = (
            ("left_kink", left_kink),
            ("left_node", _pw(v - a, alpha) * ((v - a) / (alpha + 1.0) - (x - a) / alpha)),
            ("right_kink", right_kink),
            ("right_node", _pw(b - v, alpha) * ((b - v) / (alpha + 1.0) - (b - y) / alpha)),
        )
    else:
        tag = "x<=y<=V"
        terms = (
            ("left_kink", left_kink),
            ("left_node", _pw(v - a, alpha) * ((v - a) / (alpha + 1.0) - (x - a) / alpha)),
            ("right_node", _pw(b - v, alpha) * ((b - y) / alpha - (b - v) / (alpha + 1.0))),
        )
    total = math.fsum(v_ for _, v_ in terms)
    _dual_path_guard(total, assembled, tag)
    return BoundBreakdown(tag, terms, total, assembled)


def v_bullen(config: BullenConfig) -> BoundBreakdown:
    """Three-panel bound coefficient: left moment at x over [a, V1], middle
    moment at y over [V1, V2], right moment at z over [V2, b].

    Eight orderings of (x, y, z) against (V1, V2) are possible given
    x <= y <= z and V1 <= V2; the tag names the selected one.
    """
    a, b = config.interval.a, config.interval.b
    alpha = config.order.alpha
    x, y, z = config.x, config.y, config.z
    v1, v2 = config.v1_node, config.v2_node

    assembled = (abs_moment_left_closed(x, a, v1, config.order)
                 + abs_moment_mid_closed(y, v1, v2, config.order)
                 + abs_moment_right_closed(z, v2, b, config.order))

    denom = alpha * (alpha + 1.0)
    w1, w, w2 = v1 - a, v2 - v1, b - v2

    if x >= v1:
        left = (("left_node", _pw(w1, alpha) * ((x - a) / alpha - w1 / (alpha + 1.0))),)
    else:
        left = (
            ("left_kink", 2.0 * _pw(x - a, alpha + 1.0) / denom),
            ("left_node", _pw(w1, alpha) * (w1 / (alpha + 1.0) - (x - a) / alpha)),
        )
    if y >= v2:
        mid = (("mid_node", _pw(w, alpha) * ((y - v2) / alpha + w / (alpha + 1.0))),)
        mid_pos = "upper"
    elif y >= v1:
        mid = (
            ("mid_kink", 2.0 * _pw(v2 - y, alpha + 1.0) / denom),
            ("mid_node", _pw(w, alpha) * (w / (alpha + 1.0) - (v2 - y) / alpha)),
        )
        mid_pos = "middle"
    else:
        mid = (("mid_node", _pw(w, alpha) * ((v2 - y) / alpha - w / (alpha + 1.0))),)
        mid_pos = "lower"
    if z >= v2:
        right = (
            ("right_kink", 2.0 * _pw(b - z, alpha + 1.0) / denom),
            ("right_node", _pw(w2, alpha) * (w2 / (alpha + 1.0) - (b - z) / alpha)),
        )
    else:
        right = (("right_node", _pw(w2, alpha) * ((b - z) / alpha - w2 / (alpha + 1.0))),)

    tags = {
        (True, "upper", True): "V1<=V2<=x<=y<=z",
        (True, "middle", True): "V1<=x<=y<=V2<=z",
        (True, "middle", False): "V1<=x<=y<=z<=V2",
        (False, "upper", True): "x<=V1<=V2<=y<=z",
        (False, "middle", True): "x<=V1<=y<=V2<=z",
        (False, "middle", False): "x<=V1<=y<=z<=V2",
        (False, "lower", True): "x<=y<=V1<=V2<=z",
        (False, "lower", False): "x<=y<=V1<=z<=V2",
    }
    tag = tags[(x >= v1, mid_pos, z >= v2)]
    terms = left + mid + right
    total = math.fsum(v_ for _, v_ in terms)
    _dual_path_guard(total, assembled, tag)
    return BoundBreakdown(tag, terms, total, assembled)


def _check_delta(delta: float, lo: float = 0.5) -> None:
    if not (lo <= delta <= 1.0):
        raise DomainError(f"delta must be in [{lo}, 1], got {delta}")


def l_coeff(order: Order, lam: float, delta: float) -> float:
    """Three-case coefficient for the symmetric two-node bound
    M * L * (b-a)/(alpha+1), nodes delta*a+(1-delta)*b and (1-delta)*a+delta*b.

    Cases split at lam = 1-delta and lam = delta.  Algebraically equal to
    alpha*(alpha+1) times the two-panel coefficient on [0, 1]; see
    :func:`l_coeff_reference`.
    """
    _check_delta(delta)
    if not (0.0 <= lam <= 1.0):
        raise DomainError(f"lam must be in [0, 1], got {lam}")
    alpha = order.alpha
    d1 = 1.0 - delta
    lam1 = 1.0 - lam
    edge = _pw(d1, alpha + 1.0)
    up = _pw(lam, alpha) * (lam * alpha - d1 * (1.0 + alpha))
    down = _pw(lam1, alpha) * (lam1 * alpha - d1 * (1.0 + alpha))
    if lam <= d1:
        return -up + 2.0 * edge + down
    if lam <= delta:
        return 4.0 * edge + up + down
    return 2.0 * edge + up - down


def l_coeff_reference(order: Order, lam: float, delta: float) -> float:
    """Audit value for l_coeff: alpha*(alpha+1)*v_hadamard on [0, 1]."""
    cfg = HadamardConfig(Interval(0.0, 1.0), order, lam, 1.0 - delta, delta)
    return order.alpha * (order.alpha + 1.0) * v_hadamard(cfg).total


def n_case_index(lam: float, eta: float, delta: float) -> int:
    """Ordering index 1..8 for the three-node midpoint coefficient.

    Splits on the positions of lam and lam+eta against 1-delta, 1/2 and
    delta; first matching case wins at exact boundaries.
    """
    _check_delta(delta)
    if lam < 0.0 or eta < 0.0 or lam + eta > 1.0 + 1e-12:
        raise DomainError(f"need lam, eta >= 0 and lam+eta <= 1, got {lam}, {eta}")
    d1 = 1.0 - delta
    le = lam + eta
    if le <= d1 or (lam <= d1 <= le <= 0.5):
        return 1
    if lam <= d1 and 0.5 <= le <= delta:
        return 2
    if lam <= d1 and delta <= le:
        return 3
    if d1 <= lam and le <= 0.5:
        return 4
    if d1 <= lam <= 0.5 <= le <= delta:
        return 5
    if d1 <= lam <= 0.5 and delta <= le:
        return 6
    if 0.5 <= lam and le <= delta:
        return 7
    return 8


def n_coeff(order: Order, lam: float, eta: float, delta: float) -> float:
    """Literal eight-case coefficient for the three-node bound with the
    middle node pinned at the midpoint: M * N * (b-a)/(alpha+1).

    Evaluated literally, term by term.  In orderings 7 and 8 the
    middle-panel bracket appears with the mirrored (negative) orientation;
    the audit measures the resulting deviation from
    :func:`n_coeff_reference` rather than silently correcting it here.
    """
    alpha = order.alpha
    case = n_case_index(lam, eta, delta)
    d1 = 1.0 - delta
    mu = 1.0 - lam - eta
    edge = _pw(d1, alpha + 1.0)
    half_kink = 2.0 * _pw(lam + eta - 0.5, alpha + 1.0)
    l_up = _pw(lam, alpha) * (d1 * (alpha + 1.0) - alpha * lam)
    l_down = _pw(lam, alpha) * (alpha * lam - d1 * (alpha + 1.0))
    e_upper = _pw(eta, alpha) * ((0.5 - lam - eta) * (alpha + 1.0) + alpha * eta)
    e_middle = _pw(eta, alpha) * (alpha * eta - (alpha + 1.0) * (lam + eta - 0.5))
    m_double = _pw(mu, alpha) * (alpha * mu - (alpha + 1.0) * d1)
    m_single = _pw(mu, alpha) * ((alpha + 1.0) * d1 - alpha * mu)
    if case == 1:
        return l_up + e_upper + 2.0 * edge + m_double
    if case == 2:
        return l_up + half_kink + e_middle + 2.0 * edge + m_double
    if case == 3:
        return l_up + half_kink + e_middle + m_single
    if case == 4:
        return 4.0 * edge + l_down + e_upper + m_double
    if case == 5:
        return 4.0 * edge + l_down + half_kink + e_middle + m_double
    if case == 6:
        return 2.0 * edge + l_down + half_kink + e_middle + m_single
    if case == 7:
        return 4.0 * edge + l_down + e_middle + m_double
    return 2.0 * edge + l_down + e_middle + m_single


def n_coeff_reference(order: Order, lam: float, eta: float, delta: float) -> float:
    """Audit value for n_coeff: alpha*(alpha+1)*v_bullen on [0, 1] with
    nodes (1-delta, 1/2, delta)."""
    _check_delta(delta)
    cfg = BullenConfig(Interval(0.0, 1.0), order, lam, eta, 1.0 - lam - eta,
                       1.0 - delta, 0.5, delta)
    return order.alpha * (order.alpha + 1.0) * v_bullen(cfg).total


def weighted_bullen_coeff(order: Order, theta: float) -> float:
    """Bracket of the theta-weighted endpoint/midpoint bound,
    M * bracket * (b-a)/(alpha+1), with endpoint weights (theta/2)^alpha
    and midpoint weight (1-theta)^alpha."""
    if not (0.0 <= theta <= 1.0):
        raise DomainError(f"theta must be in [0, 1], got {theta}")
    alpha = order.alpha
    return (2.0 * alpha * _pw(theta / 2.0, alpha + 1.0)
            + _pw(1.0 - theta, alpha + 1.0) * (alpha - 1.0) / 2.0
            + 2.0 * _pw((1.0 - theta) / 2.0, alpha + 1.0))


def weighted_bullen_reference(order: Order, theta: float) -> float:
    """Audit value for weighted_bullen_coeff: alpha*(alpha+1)*v_bullen on
    [0, 1] with nodes (0, 1/2, 1) and weights (theta/2, 1-theta, theta/2)."""
    if not (0.0 <= theta <= 1.0):
        raise DomainError(f"theta must be in [0, 1], got {theta}")
    cfg = BullenConfig(Interval(0.0, 1.0), order, theta / 2.0, 1.0 - theta, theta / 2.0,
                       0.0, 0.5, 1.0)
    return order.alpha * (order.alpha + 1.0) * v_bullen(cfg).total


def bullen_remark_coeff(alpha: float) -> float:
    """Literal coefficient of M*(b-a) in the quarter-node three-point bound
    (the theta = 1/2 shortcut form)."""
    return (alpha + 1.0 + 2.0 ** (alpha - 1.0) * (alpha - 1.0)) / (2.0 ** (alpha + 2.0) * (alpha + 1.0))


def simpson_remark_coeff(alpha: float) -> float:
    """Literal coefficient of M*(b-a) in the Simpson-weight three-point
    bound (the theta = 1/3 shortcut form), reading the ambiguous factor 3
    as multiplying the 2^(2*alpha)*(alpha-1) term."""
    return (alpha + 3.0 * 2.0 ** (2.0 * alpha) * (alpha - 1.0) + 2.0 ** (alpha + 1.0)) / (18.0 * (alpha + 1.0))


def unit_order_two_point_table(interval: Interval, lam: float, x: float, y: float) -> float:
    """Quadratic three-case table for the unit-order two-point inequality.

    Used by the reduction tests: at order 1 the two-panel coefficient
    equals exactly half of this table.
    """
    a, b = interval.a, interval.b
    if not (0.0 <= lam <= 1.0):
        raise DomainError(f"lam must be in [0, 1], got {lam}")
    if not (a <= x <= y <= b):
        raise DomainError(f"need a <= x <= y <= b, got x={x}, y={y}")
    v = (1.0 - lam) * a + lam * b
    if v <= x:
        return (x - a) ** 2 - (x - v) ** 2 + (y - v) ** 2 + (b - y) ** 2
    if v <= y:
        return (x - a) ** 2 + (v - x) ** 2 + (y - v) ** 2 + (b - y) ** 2
    return (x - a) ** 2 + (v - x) ** 2 + (b - y) ** 2 - (v - y) ** 2
