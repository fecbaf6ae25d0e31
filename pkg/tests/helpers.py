"""Shared generators and definition-level reference calculations.

Everything here works straight from problem definitions so tests never
lean on solver machinery to judge solver output.
"""

import heapq

from dtso import (PlacementInstance, SchedulingInstance, SequencingInstance,
                  SwapPair, TransferPath)


def random_placement(rng, n_max=60, coord_max=100, w_max=100):
    n = rng.randint(1, n_max)
    xs = sorted(rng.randint(0, coord_max) for _ in range(n))
    ws = [rng.randint(0, w_max) for _ in range(n)]
    return PlacementInstance(tuple(xs), tuple(ws), rng.randint(1, n))


def interval_cost(inst, q, kind):
    """Cost of servers on nodes q..q+K-1 straight from the definition."""
    a = inst.xs[q - 1]
    b = inst.xs[q + inst.k - 2]
    total = 0
    worst = 0
    for x, w in zip(inst.xs, inst.ws):
        if x < a:
            v = w * (a - x)
        elif x > b:
            v = w * (x - b)
        else:
            v = 0
        total += v
        if v > worst:
            worst = v
    return worst if kind == "center" else total


def direct_half_line_max(inst, x, right):
    """Largest one-sided weighted distance at x over defined half-lines."""
    best = 0
    for xi, wi in zip(inst.xs, inst.ws):
        if wi == 0:
            continue
        if right:
            if xi <= x:
                best = max(best, wi * (x - xi))
        elif xi >= x:
            best = max(best, wi * (xi - x))
    return best


def laminar_pairs(rng, n, budget):
    """Random laminar pair set on 1..n with at most budget pairs."""
    acc = []
    left = [budget]

    def block(lo, hi):
        pos = lo
        while pos <= hi:
            ln = rng.randint(1, hi - pos + 1)
            if ln >= 2 and left[0] > 0 and rng.random() < 0.6:
                acc.append(SwapPair(pos, pos + ln - 1))
                left[0] -= 1
                block(pos + 1, pos + ln - 2)
            pos += ln

    block(1, n)
    return tuple(acc)


def random_sequencing(rng, n_max=12, t_max=4, d_lo=-20, d_hi=20,
                      pair_budget=None, mode=None):
    n = rng.randint(1, n_max)
    t = rng.randint(1, t_max)
    types = tuple(rng.randint(1, t) for _ in range(n))
    d = tuple(tuple(rng.randint(d_lo, d_hi) for _ in range(t))
              for _ in range(t))
    if pair_budget is None:
        pair_budget = rng.randint(0, n // 2)
    pairs = laminar_pairs(rng, n, pair_budget)
    if mode is None:
        mode = rng.choice(("min", "max"))
    return SequencingInstance(t, types, d, pairs, mode)


def sequence_cost(inst, swapped):
    """Total decoding time of one swap choice, from the definition."""
    order = list(inst.types)
    for flag, pr in zip(swapped, inst.pairs):
        if flag:
            order[pr.a - 1], order[pr.b - 1] = order[pr.b - 1], order[pr.a - 1]
    return sum(inst.d[order[i] - 1][order[i + 1] - 1]
               for i in range(len(order) - 1))


def crossing_free(pairs):
    """Quadratic pairwise laminarity check: distinct endpoints, and each
    two pairs either disjoint or strictly nested."""
    ivs = [(p.a, p.b) for p in pairs]
    for i in range(len(ivs)):
        a1, b1 = ivs[i]
        for j in range(i + 1, len(ivs)):
            a2, b2 = ivs[j]
            if len({a1, b1, a2, b2}) != 4:
                return False
            disjoint = b1 < a2 or b2 < a1
            nested = (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)
            if not (disjoint or nested):
                return False
    return True


def random_scheduling(rng, p_max=4, n_max=12, ci_max=10, ps_max=6,
                      full_q=False):
    p = rng.randint(1, p_max)
    n = rng.randint(0, n_max)
    q = p if full_q else rng.randint(1, p)
    paths = tuple(TransferPath(rng.randint(0, ci_max), rng.randint(0, ps_max))
                  for _ in range(p))
    return SchedulingInstance(paths, n, q)


def schedule_finish(inst, counts):
    """Check a count vector against the instance and price it."""
    assert len(counts) == inst.p
    assert all(c >= 0 for c in counts)
    assert sum(counts) == inst.n
    used = [i for i, c in enumerate(counts) if c]
    assert len(used) <= inst.q
    return max((inst.paths[i].ci + counts[i] * inst.paths[i].ps
                for i in used), default=0)


def literal_key_greedy(inst):
    """Heap greedy with keys initialized to ci alone, no first-packet lag.

    Regression foil kept only in the test suite: starting keys at ci makes
    the extraction order ignore per-packet times on the first send, which
    is suboptimal.  Returns the true finishing time of the resulting
    assignment.
    """
    p = inst.p
    heap = [(path.ci, i) for i, path in enumerate(inst.paths)]
    heapq.heapify(heap)
    counts = [0] * p
    for _ in range(inst.n):
        key, i = heap[0]
        counts[i] += 1
        heapq.heapreplace(heap, (key + inst.paths[i].ps, i))
    return max((inst.paths[i].ci + counts[i] * inst.paths[i].ps
                for i in range(p) if counts[i]), default=0)
