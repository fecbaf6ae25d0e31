"""Best packet-sequence decoding cost under laminar swap pairs.

Each swap pair may exchange its two packets; pairs are disjoint and never
interleave, so the sequence decomposes into nested and side-by-side
intervals.  A chunk (contiguous run of whole intervals) is summarized by a
2x2 table indexed by the swap state of its first and last positions, and
tables combine left to right.  The machine below is iterative throughout:
nesting N/2 pairs deep must not touch the interpreter recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import DtsoError, SequencingInstance, validate_sequencing


class DecompositionViolation(DtsoError):
    """Interval endpoints disagree with the pair structure."""


@dataclass(frozen=True)
class SequencingResult:
    """Objective, per-pair swap choices, and the resulting type order."""

    objective: int
    swapped: tuple
    final_order: tuple


@dataclass(frozen=True)
class EndpointCostTable:
    """Best inner transition cost of a chunk for each endpoint state.

    rez[p][q] covers positions a..b with the packet finally at a being the
    original (p = 0) or the pair partner's (p = 1), and likewise q at b.
    Impossible combinations are None.  For a == b both indices describe
    the same position, so only the diagonal exists.
    """

    a: int
    b: int
    rez: tuple

    def cell(self, p: int, q: int):
        return self.rez[p][q]


@dataclass(frozen=True)
class Decomposition:
    """How an interval [a, b] splits: kind and, for concat, the cut."""

    kind: str                 # 'single' | 'spanning' | 'concat'
    cut: Optional[int] = None  # last position of the left part


def single_table(pos: int) -> EndpointCostTable:
    """Table of a one-position chunk: no transitions, both states free."""
    return EndpointCostTable(pos, pos, ((0, None), (None, 0)))


def decompose(a: int, b: int, c) -> Decomposition:
    """Classify interval [a, b] against the partner map c.

    Either a single position, an interval spanned by the pair (a, b), or a
    concatenation cut after a's own interval (after a itself if unpaired).
    Raises DecompositionViolation when c[a] falls outside [a, b].
    """
    ca = c[a]
    if ca < a or ca > b:
        raise DecompositionViolation(
            f"partner {ca} of position {a} lies outside [{a}, {b}]")
    if a == b:
        return Decomposition("single")
    if ca == b:
        return Decomposition("spanning")
    return Decomposition("concat", ca)


def _mode_tools(inst: SequencingInstance):
    c = validate_sequencing(inst)
    t = [0]
    t.extend(inst.types)
    return t, c, inst.d, inst.mode == "min"


def combine_spanning(inner: Optional[EndpointCostTable], a: int, b: int,
                     inst: SequencingInstance) -> EndpointCostTable:
    """Wrap the chunk table of positions a+1 .. b-1 in the pair (a, b).

    Keeping the pair routes d(type a, first inner type) in front and
    d(last inner type, type b) behind; swapping exchanges the roles of a
    and b.  Pass inner=None when b == a + 1.  The result is diagonal: the
    pair's endpoints swap together or not at all.
    """
    t, c, d, is_min = _mode_tools(inst)
    if c[a] != b:
        raise DecompositionViolation(f"({a}, {b}) is not a swap pair")
    if b == a + 1:
        if inner is not None:
            raise DecompositionViolation("adjacent pair takes no inner table")
        keep = d[t[a] - 1][t[b] - 1]
        swap = d[t[b] - 1][t[a] - 1]
        return EndpointCostTable(a, b, ((keep, None), (None, swap)))
    if inner is None or inner.a != a + 1 or inner.b != b - 1:
        got = "nothing" if inner is None else f"[{inner.a}, {inner.b}]"
        raise DecompositionViolation(
            f"inner table covers {got}, expected [{a + 1}, {b - 1}]")
    cells = (inner.rez[0][0], inner.rez[0][1], inner.rez[1][0], inner.rez[1][1])
    v0, v1, _, _ = _span_cells(a, b, cells, t, c, d, is_min)
    return EndpointCostTable(a, b, ((v0, None), (None, v1)))


def combine_concat(left: EndpointCostTable, right: EndpointCostTable,
                   inst: SequencingInstance) -> EndpointCostTable:
    """Join the tables of two adjacent chunks [a, m] and [m+1, b].

    The junction contributes d(final type at m, final type at m+1); each
    final type follows from the swap state on its side of the cut.
    """
    t, c, d, is_min = _mode_tools(inst)
    if right.a != left.b + 1:
        raise DecompositionViolation(
            f"chunks [{left.a}, {left.b}] and [{right.a}, {right.b}] "
            "are not adjacent")
    m, v = left.b, right.a
    tq = (t[m], t[c[m]])
    tr = (t[v], t[c[v]])
    out = [[None, None], [None, None]]
    for p in (0, 1):
        for q in (0, 1):
            lv = left.rez[p][q]
            if lv is None:
                continue
            for r in (0, 1):
                step = lv + d[tq[q] - 1][tr[r] - 1]
                for s in (0, 1):
                    rv = right.rez[r][s]
                    if rv is None:
                        continue
                    val = step + rv
                    cur = out[p][s]
                    if cur is None or (val < cur if is_min else val > cur):
                        out[p][s] = val
    return EndpointCostTable(left.a, right.b,
                             ((out[0][0], out[0][1]), (out[1][0], out[1][1])))


def _span_cells(a, b, cells, t, c, d, is_min):
    """Best wrapped value for pair (a, b) kept (v0) and swapped (v1).

    cells are the inner chunk's four entries packed as 2*p + q; returns
    (v0, v1, arg0, arg1) with the chosen packed inner cell per state.
    Earlier cells win ties, which keeps witnesses deterministic.
    """
    ta = t[a]
    tb = t[b]
    tl = (t[a + 1], t[c[a + 1]])
    trr = (t[b - 1], t[c[b - 1]])
    best0 = best1 = None
    arg0 = arg1 = -1
    for packed in range(4):
        val = cells[packed]
        if val is None:
            continue
        front = tl[packed >> 1]
        back = trr[packed & 1]
        v0 = d[ta - 1][front - 1] + val + d[back - 1][tb - 1]
        v1 = d[tb - 1][front - 1] + val + d[back - 1][ta - 1]
        if best0 is None or (v0 < best0 if is_min else v0 > best0):
            best0 = v0
            arg0 = packed
        if best1 is None or (v1 < best1 if is_min else v1 > best1):
            best1 = v1
            arg1 = packed
    return best0, best1, arg0, arg1


class _Frame:
    __slots__ = ("a", "b", "pos", "acc", "segs", "args", "pend")

    def __init__(self, a, b):
        self.a = a
        self.b = b
        self.pos = a
        self.acc = None
        self.segs = []
        self.args = []
        self.pend = None


def _fold(f, seg, sv0, sv1, t, c, d, is_min):
    """Append one segment to a chunk accumulator.

    Segment tables are diagonal (a lone position or a whole pair), so only
    the segment's own state r and the accumulator's previous right state q
    interact; the chosen q is recorded per output cell for reconstruction.
    """
    if f.acc is None:
        f.acc = (sv0, None, None, sv1)
        f.segs.append(seg)
        f.args.append(None)
        return
    v = seg[0]
    u = v - 1
    tq0 = t[u]
    tq1 = t[c[u]]
    tr0 = t[v]
    tr1 = t[c[v]]
    d00 = d[tq0 - 1][tr0 - 1]
    d01 = d[tq0 - 1][tr1 - 1]
    d10 = d[tq1 - 1][tr0 - 1]
    d11 = d[tq1 - 1][tr1 - 1]
    a00, a01, a10, a11 = f.acc
    out = [None, None, None, None]
    arg = [-1, -1, -1, -1]
    for p in (0, 1):
        ap0 = a00 if p == 0 else a10
        ap1 = a01 if p == 0 else a11
        for r in (0, 1):
            sv = sv0 if r == 0 else sv1
            if sv is None:
                continue
            c0 = None if ap0 is None else ap0 + (d00 if r == 0 else d01)
            c1 = None if ap1 is None else ap1 + (d10 if r == 0 else d11)
            if c0 is None:
                if c1 is None:
                    continue
                best, qq = c1, 1
            elif c1 is None or (c0 <= c1 if is_min else c0 >= c1):
                best, qq = c0, 0
            else:
                best, qq = c1, 1
            out[2 * p + r] = best + sv
            arg[2 * p + r] = qq
    f.acc = tuple(out)
    f.segs.append(seg)
    f.args.append(tuple(arg))


def _eval_chunk(a0, b0, t, c, d, is_min):
    """Evaluate chunk [a0, b0] with an explicit work stack.

    Returns (segs, args, cells): the segment roster, per-fold argument
    choices, and the four endpoint-state values packed as 2*p + u.
    """
    stack = [_Frame(a0, b0)]
    done = None
    while True:
        f = stack[-1]
        if done is not None:
            pa, pb = f.pend
            f.pend = None
            sv0, sv1, g0, g1 = _span_cells(pa, pb, done[2], t, c, d, is_min)
            _fold(f, (pa, pb, done, (g0, g1)), sv0, sv1, t, c, d, is_min)
            done = None
            f.pos = pb + 1
        pos = f.pos
        suspended = False
        while pos <= f.b:
            cp = c[pos]
            if cp == pos:
                _fold(f, (pos, pos, None, None), 0, 0, t, c, d, is_min)
                pos += 1
            elif cp == pos + 1:
                keep = d[t[pos] - 1][t[cp] - 1]
                swap = d[t[cp] - 1][t[pos] - 1]
                _fold(f, (pos, cp, None, None), keep, swap, t, c, d, is_min)
                pos = cp + 1
            elif cp > pos:
                if cp > f.b:
                    raise DecompositionViolation(
                        f"pair ({pos}, {cp}) escapes chunk [{f.a}, {f.b}]")
                f.pos = pos
                f.pend = (pos, cp)
                stack.append(_Frame(pos + 1, cp - 1))
                suspended = True
                break
            else:
                raise DecompositionViolation(
                    f"position {pos} pairs backwards to {cp}")
        if suspended:
            continue
        rec = (f.segs, f.args, f.acc)
        stack.pop()
        if not stack:
            return rec
        done = rec


def _seg_states(rec, p, u):
    """Right-endpoint state of every segment on the chosen optimal path."""
    segs, args, _ = rec
    states = [0] * len(segs)
    st = u
    for i in range(len(segs) - 1, 0, -1):
        states[i] = st
        st = args[i][2 * p + st]
    states[0] = st
    return states


def _extract(root_rec, root_packed, inst):
    """Walk the records backwards and read off every pair's swap flag."""
    slot = {(pr.a, pr.b): i for i, pr in enumerate(inst.pairs)}
    swapped = [False] * len(inst.pairs)
    work = [(root_rec, root_packed >> 1, root_packed & 1)]
    while work:
        rec, p, u = work.pop()
        states = _seg_states(rec, p, u)
        for seg, st in zip(rec[0], states):
            sa, sb, child, wargs = seg
            if sb == sa:
                continue
            if st == 1:
                swapped[slot[(sa, sb)]] = True
            if child is not None:
                packed = wargs[st]
                work.append((child, packed >> 1, packed & 1))
    return swapped


def solve_sequencing(inst: SequencingInstance) -> SequencingResult:
    """Optimal swap choices for the instance's mode ('min' or 'max').

    Evaluates the chunk covering the whole sequence, reconstructs the
    per-pair choices behind the best endpoint cell (unswapped preferred on
    ties), and re-prices the resulting order as a self-check.
    """
    t, c, d, is_min = _mode_tools(inst)
    n = inst.n
    rec = _eval_chunk(1, n, t, c, d, is_min)
    cells = rec[2]
    best = None
    best_packed = 0
    for packed in range(4):
        val = cells[packed]
        if val is None:
            continue
        if best is None or (val < best if is_min else val > best):
            best = val
            best_packed = packed
    swapped = _extract(rec, best_packed, inst)
    order = list(inst.types)
    for flag, pr in zip(swapped, inst.pairs):
        if flag:
            order[pr.a - 1], order[pr.b - 1] = order[pr.b - 1], order[pr.a - 1]
    total = 0
    for i in range(n - 1):
        total += d[order[i] - 1][order[i + 1] - 1]
    if total != best:
        raise RuntimeError(
            f"witness disagrees with objective: {total} != {best}")
    return SequencingResult(best, tuple(swapped), tuple(order))


def decomposition_trace(inst: SequencingInstance) -> str:
    """Readable account of the decomposition and the choices made.

    One line per chunk with its endpoint states and cost, then one line
    per segment; nested pair interiors are indented beneath their pair.
    """
    t, c, d, is_min = _mode_tools(inst)
    rec = _eval_chunk(1, inst.n, t, c, d, is_min)
    cells = rec[2]
    best = None
    best_packed = 0
    for packed in range(4):
        val = cells[packed]
        if val is None:
            continue
        if best is None or (val < best if is_min else val > best):
            best = val
            best_packed = packed
    out = []
    stack = [("chunk", rec, best_packed >> 1, best_packed & 1, 0)]
    while stack:
        item = stack.pop()
        if item[0] == "text":
            out.append(item[1])
            continue
        _, r, p, u, depth = item
        segs, _, ch_cells = r
        ind = "  " * depth
        a = segs[0][0]
        b = segs[-1][1]
        out.append(f"{ind}[{a}..{b}] states ({p},{u}) cost {ch_cells[2 * p + u]}")
        states = _seg_states(r, p, u)
        entries = []
        for seg, st in zip(segs, states):
            sa, sb, child, wargs = seg
            if sa == sb:
                entries.append(("text", f"{ind}  packet {sa} (type {t[sa]})"))
                continue
            word = "swap" if st else "keep"
            entries.append(("text", f"{ind}  pair ({sa},{sb}): {word}"))
            if child is not None:
                packed = wargs[st]
                entries.append(("chunk", child, packed >> 1, packed & 1,
                                depth + 2))
        for e in reversed(entries):
            stack.append(e)
    return "\n".join(out) + "\n"
