"""Brute-force reference solvers, deliberately naive and separate.

Nothing here shares algorithmic machinery with the fast solvers: the
placement oracle prices every interval directly, the sequencing oracle
tries every swap subset, and the scheduling oracle either enumerates
whole assignments or walks the time axis step by step.  Size caps keep
them honest about what they can check.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .model import (DtsoError, PlacementInstance, SchedulingInstance,
                    SequencingInstance, serialize_instance,
                    validate_placement, validate_scheduling,
                    validate_sequencing)

PLACEMENT_CAP = 500
PAIR_CAP = 20
EXHAUSTIVE_PATH_CAP = 5
EXHAUSTIVE_PACKET_CAP = 14
SCAN_CAP = 10**6


class InstanceTooLarge(DtsoError):
    """Instance exceeds what the requested brute force can enumerate."""


class TooManyPairs(DtsoError):
    """Swap-subset enumeration refuses more than PAIR_CAP pairs."""


@dataclass(frozen=True)
class VerificationOutcome:
    """Side-by-side result of a fast solver and its oracle."""

    solver_objective: int
    oracle_objective: int
    match: bool
    counterexample: Optional[str] = None


def compare(solver_objective: int, oracle_objective: int,
            inst=None) -> VerificationOutcome:
    """Build a VerificationOutcome, serializing inst on disagreement."""
    if solver_objective == oracle_objective:
        return VerificationOutcome(solver_objective, oracle_objective, True)
    ce = serialize_instance(inst) if inst is not None else None
    return VerificationOutcome(solver_objective, oracle_objective, False, ce)


def brute_placement(inst: PlacementInstance, objective: str = "center") -> int:
    """Price every K-interval directly; objective 'center' or 'median'."""
    if objective not in ("center", "median"):
        raise ValueError(f"objective must be 'center' or 'median', got {objective!r}")
    validate_placement(inst)
    n, k = inst.n, inst.k
    if n > PLACEMENT_CAP:
        raise InstanceTooLarge(f"brute placement capped at {PLACEMENT_CAP} nodes")
    xs, ws = inst.xs, inst.ws
    best = None
    for s in range(n - k + 1):
        a = xs[s]
        b = xs[s + k - 1]
        cost = 0
        for j in range(n):
            x = xs[j]
            if x < a:
                v = ws[j] * (a - x)
            elif x > b:
                v = ws[j] * (x - b)
            else:
                v = 0
            if objective == "center":
                if v > cost:
                    cost = v
            else:
                cost += v
        if best is None or cost < best:
            best = cost
    return best


def brute_sequencing(inst: SequencingInstance) -> int:
    """Price every subset of swaps and keep the mode's best total."""
    validate_sequencing(inst)
    k = len(inst.pairs)
    if k > PAIR_CAP:
        raise TooManyPairs(f"swap enumeration capped at {PAIR_CAP} pairs")
    spots = [(p.a - 1, p.b - 1) for p in inst.pairs]
    base = list(inst.types)
    d = inst.d
    n = inst.n
    is_min = inst.mode == "min"
    best = None
    for mask in range(1 << k):
        order = base[:]
        m = mask
        i = 0
        while m:
            if m & 1:
                a, b = spots[i]
                order[a], order[b] = order[b], order[a]
            m >>= 1
            i += 1
        cost = 0
        for j in range(n - 1):
            cost += d[order[j] - 1][order[j + 1] - 1]
        if best is None or (cost < best if is_min else cost > best):
            best = cost
    return best


def _scan_schedule(inst: SchedulingInstance) -> int:
    # walk the time axis; availability counted by repeated addition only
    n, q = inst.n, inst.q
    t = 0
    while True:
        if t > SCAN_CAP:
            raise InstanceTooLarge(
                f"time-axis scan capped at t = {SCAN_CAP}")
        avail = []
        for path in inst.paths:
            got = 0
            arr = path.ci + path.ps
            while got < n and arr <= t:
                got += 1
                arr += path.ps
            avail.append(got)
        if sum(heapq.nlargest(q, avail)) >= n:
            return t
        t += 1


def brute_schedule(inst: SchedulingInstance,
                   exhaustive: Optional[bool] = None) -> int:
    """Reference makespan by enumeration.

    exhaustive=True tries every split of the N packets over at most Q
    paths (P <= 5, N <= 14); exhaustive=False walks t = 0, 1, 2, ...
    until enough packets can land.  The default picks whichever fits.
    """
    validate_scheduling(inst)
    p, n, q = inst.p, inst.n, inst.q
    fits = p <= EXHAUSTIVE_PATH_CAP and n <= EXHAUSTIVE_PACKET_CAP
    if exhaustive is None:
        exhaustive = fits
    if exhaustive:
        if not fits:
            raise InstanceTooLarge(
                f"exhaustive split capped at {EXHAUSTIVE_PATH_CAP} paths "
                f"and {EXHAUSTIVE_PACKET_CAP} packets")
        return _enumerate_splits(inst)
    return _scan_schedule(inst)


def _enumerate_splits(inst: SchedulingInstance) -> int:
    paths, p, n, q = inst.paths, inst.p, inst.n, inst.q
    best = None

    def rec(i, remaining, used, finish):
        nonlocal best
        if used > q:
            return
        if i == p:
            if remaining == 0 and (best is None or finish < best):
                best = finish
            return
        path = paths[i]
        rec(i + 1, remaining, used, finish)
        for cnt in range(1, remaining + 1):
            rec(i + 1, remaining - cnt, used + 1,
                max(finish, path.ci + cnt * path.ps))

    rec(0, n, 0, 0)
    if best is None:
        raise RuntimeError("no split covers all packets")  # q >= 1 forbids this
    return best
