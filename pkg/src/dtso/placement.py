"""Connected K-server placement on a path network.

Servers occupy K consecutive nodes.  solve_k_center minimizes the largest
weighted distance from any node to its nearest server; solve_k_median
minimizes the sum of weighted distances.  Both run in O(N log N) with all
decisions taken in exact integer arithmetic; numpy is used only to sort,
deduplicate, and batch-evaluate, never to compare geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .model import DtsoError, PlacementInstance, validate_placement

# Beyond this coordinate span the batched int64 sweep could wrap, so the
# solver falls back to the exact cursor walk.  The validated overflow
# contract makes the bound unreachable for any instance with a weight >= 2.
_VECTOR_SPAN_MAX = 2**62


class CursorMisuse(DtsoError):
    """Envelope cursor reused across envelopes or fed decreasing queries."""


@dataclass(frozen=True)
class PlacementResult:
    """Interval start q (1-based, servers on nodes q .. q+K-1) and objective."""

    q: int
    objective: int


@dataclass(frozen=True)
class EnvelopeSegment:
    """Maximal interval on which one node's distance term dominates."""

    source: int                # 1-based node index
    x_lo: Optional[Fraction]   # None when unbounded below
    x_hi: Optional[Fraction]   # None when unbounded above


class Envelope:
    """Upper envelope of one-sided weighted distances from path nodes.

    A 'right' envelope carries, at coordinate x, the largest value of
    w(j) * (x - x(j)) over nodes j with x(j) <= x; the 'left' orientation
    is the mirror image.  Zero-weight nodes contribute nothing, and
    coordinates outside every contribution evaluate to 0.
    """

    def __init__(self, orientation: str, srcs, anchors, weights,
                 thr_nums, thr_dens, dom: Optional[int]):
        self.orientation = orientation
        self._srcs = srcs        # dominating node per segment, left to right
        self._anchors = anchors  # that node's coordinate
        self._weights = weights  # that node's weight (> 0)
        self._nums = thr_nums    # breakpoint i between segments i and i+1
        self._dens = thr_dens    # is thr_nums[i] / thr_dens[i], dens > 0
        self._dom = dom          # tightest covered coordinate, None if empty
        self._segments = None

    def __len__(self) -> int:
        return len(self._srcs)

    def cursor(self) -> "EnvelopeCursor":
        return EnvelopeCursor(self)

    @property
    def segments(self) -> List[EnvelopeSegment]:
        """Domination intervals clipped to the covered part of the axis."""
        if self._segments is None:
            self._segments = self._materialize()
        return self._segments

    def _materialize(self):
        if not self._srcs:
            return []
        bps = [Fraction(nu, de) for nu, de in zip(self._nums, self._dens)]
        dom = Fraction(self._dom)
        out = []
        if self.orientation == "right":
            start = 0
            while start < len(bps) and bps[start] <= dom:
                start += 1
            for i in range(start, len(self._srcs)):
                lo = dom if i == start else bps[i - 1]
                hi = bps[i] if i < len(bps) else None
                out.append(EnvelopeSegment(self._srcs[i], lo, hi))
        else:
            stop = len(self._srcs)
            while stop >= 2 and bps[stop - 2] >= dom:
                stop -= 1
            for i in range(stop):
                lo = bps[i - 1] if i > 0 else None
                hi = dom if i == stop - 1 else bps[i]
                out.append(EnvelopeSegment(self._srcs[i], lo, hi))
        return out


class EnvelopeCursor:
    """Walks one envelope left to right; queries must be non-decreasing."""

    __slots__ = ("_env", "_idx", "_last")

    def __init__(self, env: Envelope):
        self._env = env
        self._idx = 0
        self._last = None


def envelope_eval(env: Envelope, cursor: EnvelopeCursor, x: int) -> int:
    """Evaluate the envelope at x, advancing the cursor.

    Returns 0 outside the covered part of the axis.  Repeating the same x
    is allowed; going backwards raises CursorMisuse.
    """
    if cursor._env is not env:
        raise CursorMisuse("cursor was created for a different envelope")
    if cursor._last is not None and x < cursor._last:
        raise CursorMisuse(
            f"queries must be non-decreasing, got {x} after {cursor._last}")
    cursor._last = x
    if not env._srcs:
        return 0
    if env.orientation == "right":
        if x < env._dom:
            return 0
    elif x > env._dom:
        return 0
    idx = cursor._idx
    nums, dens = env._nums, env._dens
    stop = len(nums)
    # advance while x lies strictly right of the next breakpoint
    while idx < stop and x * dens[idx] > nums[idx]:
        idx += 1
    cursor._idx = idx
    w = env._weights[idx]
    a = env._anchors[idx]
    return w * (x - a) if env.orientation == "right" else w * (a - x)


def _slope_candidates(xsh, ws_arr, right: bool):
    """Reduce nodes to one candidate line per distinct slope.

    Works in shifted coordinates (path start at 0) so every product fits
    int64.  Among equal weights only the node whose one-sided distance
    dominates the others can matter: smallest coordinate for the right
    orientation, largest for the left.  Returns slope-ascending python
    lists (slope, intercept, 1-based source) plus the covered bound.
    """
    mask = ws_arr > 0
    if not mask.any():
        return [], [], [], None
    idx = np.nonzero(mask)[0]
    w = ws_arr[idx]
    ax = xsh[idx]
    if right:
        m = w
        c = -(w * ax)
        dom = int(ax.min())
    else:
        m = -w
        c = w * ax
        dom = int(ax.max())
    order = np.lexsort((c, m))
    sm = m[order]
    last = np.empty(len(order), dtype=bool)
    last[-1] = True
    np.not_equal(sm[1:], sm[:-1], out=last[:-1])
    keep = order[last]
    return m[keep].tolist(), c[keep].tolist(), (idx[keep] + 1).tolist(), dom


def _hull(ms, cs, srcs):
    """Exact upper-hull prune of slope-sorted lines with distinct slopes.

    The middle of three lines is discarded when it never rises above both
    neighbours; the test cross-multiplies, so it is exact for any integer
    magnitude.  Ties favour the neighbours, keeping breakpoints strictly
    increasing.
    """
    hm: list = []
    hc: list = []
    hs: list = []
    for j in range(len(ms)):
        m = ms[j]
        c = cs[j]
        while len(hm) >= 2 and \
                (hc[-2] - hc[-1]) * (m - hm[-1]) >= (hc[-1] - c) * (hm[-1] - hm[-2]):
            hm.pop()
            hc.pop()
            hs.pop()
        hm.append(m)
        hc.append(c)
        hs.append(srcs[j])
    return hm, hc, hs


def _breakpoints(hm, hc):
    nums = []
    dens = []
    for i in range(len(hm) - 1):
        nums.append(hc[i] - hc[i + 1])
        dens.append(hm[i + 1] - hm[i])
    return nums, dens


def build_envelopes(inst: PlacementInstance) -> Tuple[Envelope, Envelope]:
    """Build the right- and left-oriented distance envelopes of an instance.

    On the covered part of the axis the envelope of the one-sided distance
    half-lines coincides with the envelope of their full extensions (the
    extensions are never positive there), so a single slope-sorted prune
    is sufficient.
    """
    validate_placement(inst)
    xs, ws, n = inst.xs, inst.ws, inst.n
    if max(ws) == 0:
        return (Envelope("right", [], [], [], [], [], None),
                Envelope("left", [], [], [], [], [], None))
    xs_arr = np.fromiter(xs, dtype=np.int64, count=n)
    ws_arr = np.fromiter(ws, dtype=np.int64, count=n)
    x0 = int(xs_arr[0])
    xsh = xs_arr - x0
    built = []
    for right in (True, False):
        ms, cs, srcs, dom = _slope_candidates(xsh, ws_arr, right)
        hm, hc, hs = _hull(ms, cs, srcs)
        nums, dens = _breakpoints(hm, hc)
        anchors = [xs[s - 1] for s in hs]
        weights = [ws[s - 1] for s in hs]
        nums_nat = [nu + de * x0 for nu, de in zip(nums, dens)]
        built.append(Envelope("right" if right else "left",
                              hs, anchors, weights, nums_nat, dens,
                              None if dom is None else dom + x0))
    return built[0], built[1]


def _sweep(env: Envelope, queries, x0: int):
    """Batch-evaluate an envelope at sorted shifted coordinates.

    Breakpoints are turned into integer keys (x passes breakpoint r/s
    exactly when x >= floor(r/s) + 1), clamped to the query range so the
    key array stays within int64 no matter where the true crossing lies.
    """
    res = np.zeros(len(queries), dtype=np.int64)
    n_seg = len(env._srcs)
    if n_seg == 0 or len(queries) == 0:
        return res
    sign = 1 if env.orientation == "right" else -1
    m = np.fromiter((sign * wi for wi in env._weights),
                    dtype=np.int64, count=n_seg)
    c = np.fromiter((-sign * wi * (ai - x0)
                     for wi, ai in zip(env._weights, env._anchors)),
                    dtype=np.int64, count=n_seg)
    qlo = int(queries[0]) - 1
    qhi = int(queries[-1]) + 1
    keys = [min(max((nu - de * x0) // de + 1, qlo), qhi)
            for nu, de in zip(env._nums, env._dens)]
    seg = np.searchsorted(np.array(keys, dtype=np.int64), queries, side="right")
    val = m[seg] * queries + c[seg]
    dom_sh = env._dom - x0
    if env.orientation == "right":
        np.copyto(res, val, where=queries >= dom_sh)
    else:
        np.copyto(res, val, where=queries <= dom_sh)
    return res


def solve_k_center(inst: PlacementInstance) -> PlacementResult:
    """Place K consecutive servers minimizing the worst weighted distance.

    For interval start q the objective is the larger of the right envelope
    at x(q) and the left envelope at x(q+K-1); the minimum over q is found
    with one batched pass.  Smallest optimal q wins ties.
    """
    validate_placement(inst)
    n, k = inst.n, inst.k
    xs = inst.xs
    if k == n or xs[-1] == xs[0] or max(inst.ws) == 0:
        return PlacementResult(1, 0)
    right_env, left_env = build_envelopes(inst)
    if xs[-1] - xs[0] <= _VECTOR_SPAN_MAX:
        xs_arr = np.fromiter(xs, dtype=np.int64, count=n)
        xsh = xs_arr - xs_arr[0]
        x0 = int(xs_arr[0])
        wd1 = _sweep(right_env, xsh[0:n - k + 1], x0)
        wd2 = _sweep(left_env, xsh[k - 1:n], x0)
        cost = np.maximum(wd1, wd2)
        qi = int(np.argmin(cost))
        return PlacementResult(qi + 1, int(cost[qi]))
    # huge-magnitude fallback: exact scalar walk over both envelopes
    rc = right_env.cursor()
    lc = left_env.cursor()
    best = None
    best_q = 1
    for qi in range(n - k + 1):
        v1 = envelope_eval(right_env, rc, xs[qi])
        v2 = envelope_eval(left_env, lc, xs[qi + k - 1])
        v = v1 if v1 >= v2 else v2
        if best is None or v < best:
            best = v
            best_q = qi + 1
    return PlacementResult(best_q, best)


def solve_k_median(inst: PlacementInstance) -> PlacementResult:
    """Place K consecutive servers minimizing the total weighted distance.

    Maintains four running sums while the interval slides right by one
    node: weight and weighted distance of everything left of the interval
    start, and the same pair for everything right of the interval end.
    Each step updates them incrementally, so the scan is linear after the
    O(N) initialization.  Smallest optimal q wins ties.
    """
    validate_placement(inst)
    n, k = inst.n, inst.k
    xs, ws = inst.xs, inst.ws
    wleft = 0
    wsumleft = 0
    wright = sum(ws[k:])
    xe = xs[k - 1]
    wsumright = sum(ws[j] * (xs[j] - xe) for j in range(k, n))
    best = wsumleft + wsumright
    best_q = 1
    for s in range(1, n - k + 1):
        wleft += ws[s - 1]
        wsumleft += wleft * (xs[s] - xs[s - 1])
        e = s + k - 1
        wsumright -= wright * (xs[e] - xs[e - 1])
        wright -= ws[e]
        cost = wsumleft + wsumright
        if cost < best:
            best = cost
            best_q = s + 1
    return PlacementResult(best_q, best)


def envelope_csv(env: Envelope) -> str:
    """Render envelope segments as CSV for inspection.

    Breakpoints are exact rationals; an unbounded endpoint is encoded with
    denominator 0 and numerator -1 (below) or 1 (above).
    """
    lines = ["orientation,source,x_lo_num,x_lo_den,x_hi_num,x_hi_den"]
    for seg in env.segments:
        lo = (-1, 0) if seg.x_lo is None else (seg.x_lo.numerator,
                                               seg.x_lo.denominator)
        hi = (1, 0) if seg.x_hi is None else (seg.x_hi.numerator,
                                              seg.x_hi.denominator)
        lines.append(f"{env.orientation},{seg.source},"
                     f"{lo[0]},{lo[1]},{hi[0]},{hi[1]}")
    return "\n".join(lines) + "\n"
