"""Storage-bandwidth tradeoff region for centralized repair, in exact rationals.

Points live in the normalized plane (alpha_bar, beta_bar) = (alpha, beta)/F.
The module computes:

- the two extreme points (minimum storage, minimum bandwidth) for (k, d, e);
- the functional-repair outer bound as a family of linear inequalities;
- the achievable points of the complete-design construction at n=k+e, d=k,
  one per group size r, and their corner subset (which r are hull vertices);
- a from-scratch convex hull oracle used to cross-check the corner formulas;
- achievable (alpha_bar, beta_bar) curves for general (n, k, d) systems with
  a precode, one curve per erasure budget m.

Everything is Fraction arithmetic; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Optional, Sequence

from .bandwidth import beta_formula
from .errors import IntegrityError, ValidationError


@dataclass(frozen=True)
class TradeoffPoint:
    alpha_bar: Fraction
    beta_bar: Fraction
    label: str
    r: Optional[int] = None
    m: Optional[int] = None

    def coords(self) -> tuple[Fraction, Fraction]:
        return (self.alpha_bar, self.beta_bar)


@dataclass(frozen=True)
class BoundParams:
    k: int
    d: int
    e: int

    def __post_init__(self) -> None:
        if not 1 <= self.e <= self.k <= self.d:
            raise ValidationError(
                f"need 1 <= e <= k <= d, got e={self.e} k={self.k} d={self.d}"
            )


def _require_ek(k: int, e: int) -> None:
    if not 1 <= e < k:
        raise ValidationError(f"need 1 <= e < k, got e={e} k={k}")


# -- extreme points ---------------------------------------------------------------


def msmr_point(k: int, d: int, e: int) -> TradeoffPoint:
    """Minimum-storage extreme: alpha_bar = 1/k, beta_bar = e/(k(d-k+e))."""
    BoundParams(k=k, d=d, e=e)
    return TradeoffPoint(Fraction(1, k), Fraction(e, k * (d - k + e)), "msmr")


def mbcr_point(k: int, d: int, e: int) -> TradeoffPoint:
    """Minimum-bandwidth extreme on the functional-repair bound."""
    BoundParams(k=k, d=d, e=e)
    den = k * (2 * d - k + e)
    return TradeoffPoint(Fraction(2 * d + e - 1, den), Fraction(2 * e, den), "mbcr")


# -- functional-repair outer bound ---------------------------------------------


def functional_bound_check(
    point: TradeoffPoint, bound: BoundParams
) -> tuple[bool, list[Fraction]]:
    """Evaluate the outer-bound inequalities at a point.

    With q = ceil(k/e) - 1 and t_rem = k - q e, inequality p (p = 0..q-1)
    reads (t_rem + p e) alpha_bar + sum_{i=p}^{q-1} (d - t_rem - i e) beta_bar >= 1.
    Returns (all hold, slack list); a negative slack marks the violated one.
    """
    k, d, e = bound.k, bound.d, bound.e
    q = -(-k // e) - 1
    t_rem = k - q * e
    slacks: list[Fraction] = []
    for p in range(q):
        lhs = (t_rem + p * e) * point.alpha_bar
        for i in range(p, q):
            lhs += (d - t_rem - i * e) * point.beta_bar
        slacks.append(lhs - 1)
    if q == 0:  # k <= e: storing one fraction 1/k of the data per node suffices
        slacks.append(k * point.alpha_bar - 1)
    return all(s >= 0 for s in slacks), slacks


# -- achievable points at n = k+e, d = k ------------------------------------------


def achievable_point_c1(k: int, e: int, r: int) -> TradeoffPoint:
    """Normalized (alpha, beta)/F of the complete-design code with group size r."""
    _require_ek(k, e)
    if not e + 1 <= r <= k + e:
        raise ValidationError(f"need e+1 <= r <= k+e, got r={r}")
    a = Fraction(r, (k + e) * (r - e))
    b = Fraction(r * (r - 1), (k + e) * (k + e - 1) * (r - e))
    return TradeoffPoint(a, b, f"construction1(r={r})", r=r, m=e)

def achievable_points_c1(k: int, e: int) -> list[TradeoffPoint]:
    _require_ek(k, e)
    return [achievable_point_c1(k, e, r) for r in range(e + 1, k + e + 1)]


def slope_c1(k: int, e: int, r: int) -> Fraction:
    """Slope of the achievable curve between group sizes r and r+1."""
    _require_ek(k, e)
    if not e + 1 <= r <= k + e - 1:
        raise ValidationError(f"slope needs e+1 <= r <= k+e-1, got r={r}")
    return Fraction(-r * (r - 2 * e + 1), e * (k + e - 1))


# -- corner-point machinery ---------------------------------------------------


def p_max(e: int) -> int:
    """Largest p with C(p+1,2) < 2 C(e,2); defined for e >= 2."""
    if e < 2:
        raise ValidationError(f"p_max needs e >= 2, got e={e}")
    return (isqrt(8 * e * (e - 1) - 1) - 1) // 2


def k_threshold(e: int, p: int) -> int:
    """Smallest k past which at least p interior group sizes drop off the hull."""
    if e < 2:
        raise ValidationError(f"k_threshold needs e >= 2, got e={e}")
    if not 0 <= p <= p_max(e):
        raise ValidationError(f"need 0 <= p <= p_max({e}) = {p_max(e)}, got p={p}")
    num = (1 - e) * (comb(p + 1, 2) + 2 * comb(e + 1, 2) + e * p)
    den = comb(p + 1, 2) - 2 * comb(e, 2)
    return -(-num // den)


def _floor_frac_plus_sqrt(a: int, rad: int, b: int) -> int:
    """floor((a + sqrt(rad)) / b) for nonnegative rad and positive b, exactly."""
    if rad < 0 or b <= 0:
        raise ValidationError("radicand must be >= 0 and divisor > 0")
    s = isqrt(rad)
    j = (a + s) // b
    # isqrt floors; bump if the true square root still clears the next step
    t = (j + 1) * b - a
    if t <= 0 or t * t <= rad:
        j += 1
    return j


def p_star(k: int, e: int) -> int:
    """Number of group sizes below 2e + p_star that fall off the hull, plus one.

    Corner points are exactly MBCR and the r in [2e + p_star, k+e]. For e = 1
    every r >= 2 is a corner and p_star = 1.
    """
    _require_ek(k, e)
    if e == 1:
        return 1
    rad = (2 * e * e - e + k - 1) ** 2 + 8 * (k + e - 1) * e * (e - 1) * (k - e - 1)
    j = _floor_frac_plus_sqrt(e - k - 2 * e * e + 1, rad, 2 * (e + k - 1))
    return j + 1


def _n2(k: int, e: int, p: int) -> int:
    """Sign of the gap between the chord over r=2e+p-1..2e+p+1 and its midpoint."""
    return (
        (k + e - 1) * p * p
        + p * (2 * e * e + k - e - 1)
        + 2 * e * (e - 1) * (e + 1 - k)
    )


@dataclass(frozen=True)
class Region:
    k: int
    e: int
    corners: tuple[TradeoffPoint, ...]
    p_star: int

    @property
    def n_corners(self) -> int:
        return len(self.corners)

    def __post_init__(self) -> None:
        pts = self.corners
        if len(pts) < 2:
            raise IntegrityError("a region needs at least its two extreme corners")
        for a, b in zip(pts, pts[1:]):
            if not (a.alpha_bar > b.alpha_bar and a.beta_bar < b.beta_bar):
                raise IntegrityError("corners must strictly trade storage for bandwidth")
        # corners run right to left (alpha_bar decreasing), so segment slopes
        # must strictly steepen along the list for lower convexity
        slopes = [
            (b.beta_bar - a.beta_bar) / (b.alpha_bar - a.alpha_bar)
            for a, b in zip(pts, pts[1:])
        ]
        for s1, s2 in zip(slopes, slopes[1:]):
            if not s1 > s2:
                raise IntegrityError("corner chain is not strictly convex")


def corner_points(k: int, e: int) -> Region:
    """The corner points of the achievable region at n=k+e, d=k.

    MBCR first, then the construction points with r from 2e + p_star(k,e)
    up to k+e (descending alpha_bar). For e = 1 the MBCR point coincides
    with the r=2 construction point and opens the chain.
    """
    _require_ek(k, e)
    ps = p_star(k, e)
    lo = 2 * e + ps
    if lo > k + e:
        raise IntegrityError(f"p_star={ps} leaves no construction corners for k={k} e={e}")
    pts = [mbcr_point(k, k, e)]
    for r in range(lo, k + e + 1):
        pts.append(achievable_point_c1(k, e, r))
    if e == 1:
        # mbcr and the (excluded) r=2 point coincide exactly for e=1; carry
        # both names on the single opening corner
        if pts[0].coords() != achievable_point_c1(k, 1, 2).coords():
            raise IntegrityError("e=1 expects mbcr to equal the r=2 construction point")
        pts[0] = TradeoffPoint(
            pts[0].alpha_bar, pts[0].beta_bar, "mbcr=construction1(r=2)", r=2, m=1
        )
    return Region(k=k, e=e, corners=tuple(pts), p_star=ps)


# -- independent hull oracle -------------------------------------------------------


def hull_oracle(points: Sequence[TradeoffPoint]) -> list[TradeoffPoint]:
    """Lower-left convex hull vertices, computed only from coordinates.

    Deduplicates exact coordinates, drops dominated points, then runs a
    monotone chain keeping strict turns only (collinear interior points are
    not vertices). Returned in decreasing alpha_bar, like corner_points.
    """
    seen: dict[tuple[Fraction, Fraction], TradeoffPoint] = {}
    for pt in sorted(points, key=lambda p: (p.alpha_bar, p.beta_bar, p.label)):
        seen.setdefault(pt.coords(), pt)
    pts = [seen[c] for c in sorted(seen)]
    if not pts:
        return []
    # Pareto filter: keep points strictly better in beta_bar as alpha_bar grows
    frontier: list[TradeoffPoint] = []
    best: Optional[Fraction] = None
    for pt in pts:
        if best is None or pt.beta_bar < best:
            frontier.append(pt)
            best = pt.beta_bar
    hull: list[TradeoffPoint] = []
    for pt in frontier:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a.alpha_bar - o.alpha_bar) * (pt.beta_bar - o.beta_bar) - (
                a.beta_bar - o.beta_bar
            ) * (pt.alpha_bar - o.alpha_bar)
            if cross <= 0:  # right turn or straight: middle point is no vertex
                hull.pop()
            else:
                break
        hull.append(pt)
    hull.reverse()
    return hull


# -- general (n, k, d) achievable curves -----------------------------------------


def achievable_points_general(
    n: int, k: int, d: int, e: int, m_values: Optional[Sequence[int]] = None
) -> list[TradeoffPoint]:
    """Precoded-construction curves: one point per (m, r), normalized by rho.

    alpha_bar = alpha / rho and beta_bar = beta_formula / rho with
    rho = rho(n, k, m, r) the retained data size. m defaults to every value
    in e..n-k whose whole curve stays in the formula domain (d >= n-m-e+1);
    passing an explicit out-of-domain m raises instead.
    """
    from .precoded import rho  # deferred: precoded imports layered machinery

    if not 1 <= e <= n - k or not k <= d <= n - e:
        raise ValidationError(
            f"need 1 <= e <= n-k and k <= d <= n-e, got n={n} k={k} d={d} e={e}"
        )
    explicit = m_values is not None
    if m_values is None:
        m_values = [m for m in range(e, n - k + 1) if d >= n - m - e + 1]
    out: list[TradeoffPoint] = []
    for m in m_values:
        if not e <= m <= n - k:
            raise ValidationError(f"need e <= m <= n-k, got m={m}")
        if d < n - m - e + 1:
            raise ValidationError(f"m={m} puts d={d} outside the formula domain")
        for r in range(m + 1, n + 1):
            denom = rho(n, k, m, r)
            alpha = comb(n - 1, r - 1)
            beta = beta_formula(n, e, m, r, d)
            out.append(
                TradeoffPoint(
                    Fraction(alpha, denom),
                    beta / denom,
                    f"precoded(m={m},r={r})",
                    r=r,
                    m=m,
                )
            )
    if explicit and not out:
        raise ValidationError("no (m, r) pairs to evaluate")
    return out


# -- CSV emission ------------------------------------------------------------------

CSV_HEADER = [
    "label",
    "r",
    "m",
    "alpha_bar_num",
    "alpha_bar_den",
    "beta_bar_num",
    "beta_bar_den",
    "alpha_bar_float",
    "beta_bar_float",
    "is_corner",
]


def csv_rows(
    points: Sequence[TradeoffPoint], corners: Sequence[TradeoffPoint] = ()
) -> list[list[str]]:
    corner_coords = {pt.coords() for pt in corners}
    rows = []
    for pt in points:
        rows.append(
            [
                pt.label,
                "" if pt.r is None else str(pt.r),
                "" if pt.m is None else str(pt.m),
                str(pt.alpha_bar.numerator),
                str(pt.alpha_bar.denominator),
                str(pt.beta_bar.numerator),
                str(pt.beta_bar.denominator),
                repr(float(pt.alpha_bar)),
                repr(float(pt.beta_bar)),
                "1" if pt.coords() in corner_coords else "0",
            ]
        )
    return rows
