"""Minimum-makespan delivery of N identical packets over disjoint paths.

A path becomes usable once its connection is initiated (time ci) and then
delivers one packet every ps time units, so its k-th packet lands at
ci + k*ps.  At most Q of the P paths may carry packets.  Two exact
solvers: a greedy merge of the per-path arrival progressions (Q = P
only), and a binary search on the time axis that also handles Q < P.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .model import DtsoError, SchedulingInstance, TransferPath, \
    validate_scheduling


class RestrictedQ(DtsoError):
    """Greedy solver invoked although fewer than P paths may be used."""


@dataclass(frozen=True)
class ScheduleResult:
    """Packets per path and the finishing time of the last one."""

    counts: tuple
    makespan: int


@dataclass(frozen=True)
class FeasibilityProbe:
    """Evidence for one time-axis query: can N packets land by time t?"""

    t: int
    np: tuple      # packets each path alone could deliver by t
    sumnp: int     # best achievable with Q paths: sum of the Q largest np
    ok: bool


def np_count(path: TransferPath, t: int, n_cap: int) -> int:
    """Packets path alone delivers by time t, capped at n_cap."""
    if path.ci > t:
        return 0
    if path.ps == 0:
        return n_cap
    return min(n_cap, (t - path.ci) // path.ps)


def feasible(inst: SchedulingInstance, t: int) -> FeasibilityProbe:
    """Probe time t: the Q highest-yield paths must cover all N packets."""
    validate_scheduling(inst)
    nps = tuple(np_count(path, t, inst.n) for path in inst.paths)
    sumnp = sum(heapq.nlargest(inst.q, nps))
    return FeasibilityProbe(t, nps, sumnp, sumnp >= inst.n)


def _check_witness(inst, counts, makespan):
    used = 0
    finish = 0
    total = 0
    for cnt, path in zip(counts, inst.paths):
        if cnt == 0:
            continue
        used += 1
        total += cnt
        finish = max(finish, path.ci + cnt * path.ps)
    if total != inst.n or used > inst.q or finish != makespan:
        raise RuntimeError(
            f"witness disagrees with makespan {makespan}: "
            f"{total} packets, {used} paths, finish {finish}")


def binary_search_makespan(inst: SchedulingInstance) -> ScheduleResult:
    """Smallest t with a feasible assignment, plus one such assignment.

    Monotone predicate: whatever lands by t also lands by t + 1, so
    bisection on [0, min_i(ci + N*ps_i)] pins the exact optimum.  The
    witness fills the highest-yield paths first (lower index on ties) and
    necessarily finishes exactly at the optimum.
    """
    validate_scheduling(inst)
    p, n = inst.p, inst.n
    if n == 0:
        return ScheduleResult((0,) * p, 0)
    lo = 0
    hi = min(path.ci + n * path.ps for path in inst.paths)
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(inst, mid).ok:
            hi = mid
        else:
            lo = mid + 1
    probe = feasible(inst, lo)
    order = sorted(range(p), key=lambda i: (-probe.np[i], i))
    counts = [0] * p
    remaining = n
    for i in order[:inst.q]:
        take = min(remaining, probe.np[i])
        counts[i] = take
        remaining -= take
        if remaining == 0:
            break
    if remaining != 0:
        raise RuntimeError(f"probe at t={lo} cannot place {remaining} packets")
    _check_witness(inst, counts, lo)
    return ScheduleResult(tuple(counts), lo)


def greedy_schedule(inst: SchedulingInstance) -> ScheduleResult:
    """Pop the N earliest packet arrivals off a heap of path progressions.

    Each heap entry carries a path's next arrival time, starting at
    ci + ps: nothing lands during connection initiation.  Requires Q = P;
    the makespan is the arrival popped last.  Ties open the lower-index
    path first, which keeps witnesses deterministic.
    """
    validate_scheduling(inst)
    p, n = inst.p, inst.n
    if inst.q != p:
        raise RestrictedQ(f"greedy needs q == {p} usable paths, got {inst.q}")
    if n == 0:
        return ScheduleResult((0,) * p, 0)
    # single-int heap entries, arrival in the high bits and path index in
    # the low: int ordering matches the (arrival, index) rule exactly and
    # heapreplace never has to build tuples
    bits = max(1, (p - 1).bit_length())
    mask = (1 << bits) - 1
    heap = [((path.ci + path.ps) << bits) | i
            for i, path in enumerate(inst.paths)]
    heapq.heapify(heap)
    step = [path.ps << bits for path in inst.paths]
    counts = [0] * p
    packed = 0
    replace = heapq.heapreplace
    for _ in range(n):
        packed = heap[0]
        i = packed & mask
        counts[i] += 1
        replace(heap, packed + step[i])
    makespan = packed >> bits
    _check_witness(inst, counts, makespan)
    return ScheduleResult(tuple(counts), makespan)
