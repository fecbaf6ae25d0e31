"""Instance types, validation, and the canonical JSON exchange format.

All quantities are integers.  Inputs are accepted only when every stored
value and every product a solver may form fits in a signed 64-bit word;
this keeps results exact here and reproducible in fixed-width ports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Sequence

INT64_MAX = 2**63 - 1


# --------------------------------------------------------------------------
# errors

class DtsoError(Exception):
    """Base class for every error raised by this package."""


class DocumentError(DtsoError):
    """A document could not be understood at all (I/O or shape level)."""


class MalformedDocument(DocumentError):
    """Input is not valid JSON."""


class SchemaViolation(DocumentError):
    """JSON parsed but does not match the instance schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path or '$'}: {message}")


class ValidationError(DtsoError):
    """A well-formed document describes a semantically invalid instance."""


class UnsortedCoordinates(ValidationError):
    """Node coordinates decrease somewhere along the path."""

    def __init__(self, index: int):
        self.index = index  # 1-based: x(index) > x(index+1)
        super().__init__(f"coordinates out of order at position {index}")


class BadK(ValidationError):
    """Number of servers K outside [1, N]."""


class NegativeWeight(ValidationError):
    """A node weight is negative."""


class BadTypeValue(ValidationError):
    """A packet type lies outside [1, num_types]."""


class BadMode(ValidationError):
    """Optimization mode is neither 'min' nor 'max'."""


class EmptySequence(ValidationError):
    """A packet sequence must contain at least one packet."""


class OutOfRange(ValidationError):
    """A swap-pair position lies outside [1, N]."""


class PositionReused(ValidationError):
    """A position occurs in more than one swap pair, or is paired with itself."""


class CrossingPairs(ValidationError):
    """Two swap pairs interleave instead of nesting or staying disjoint."""


class NegativePathTime(ValidationError):
    """A connection-initiation or per-packet time is negative."""


class BadN(ValidationError):
    """Packet count N is negative."""


class BadQ(ValidationError):
    """Usable-path bound Q outside [1, P]."""


class MagnitudeOverflow(ValidationError):
    """Values are individually or jointly too large for 64-bit arithmetic."""


# --------------------------------------------------------------------------
# placement

@dataclass(frozen=True)
class PathNode:
    """One network node: coordinate on the path and demand weight."""

    x: int
    w: int


@dataclass(frozen=True)
class PlacementInstance:
    """Server-placement problem: nodes along a path, K connected servers.

    Coordinates and weights are stored as parallel tuples so that
    million-node instances stay cheap to build and to scan.
    """

    xs: tuple
    ws: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "ws", tuple(self.ws))
        if len(self.xs) != len(self.ws):
            raise ValueError("xs and ws must have equal length")

    @classmethod
    def from_nodes(cls, nodes: Sequence[PathNode], k: int) -> "PlacementInstance":
        return cls(tuple(n.x for n in nodes), tuple(n.w for n in nodes), k)

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def nodes(self) -> tuple:
        return tuple(PathNode(x, w) for x, w in zip(self.xs, self.ws))


def validate_placement(inst: PlacementInstance) -> None:
    """Check ordering, K range, weight signs, and the overflow contract."""
    if getattr(inst, "_valid", False):
        return
    n = inst.n
    if n < 1:
        raise BadK("instance has no nodes")
    if not 1 <= inst.k <= n:
        raise BadK(f"k={inst.k} outside [1, {n}]")
    xs, ws = inst.xs, inst.ws
    _require_int64_range(min(xs), max(xs), "x")
    wmin, wmax = min(ws), max(ws)
    if wmin < 0:
        raise NegativeWeight(f"weight {wmin} is negative")
    if wmax > INT64_MAX:
        raise MagnitudeOverflow(f"weight {wmax} exceeds 64-bit range")
    prev = xs[0]
    for i in range(1, n):
        cur = xs[i]
        if cur < prev:
            raise UnsortedCoordinates(i)
        prev = cur
    span = xs[-1] - xs[0]
    if wmax * span > INT64_MAX:
        raise MagnitudeOverflow(
            f"max weight {wmax} times span {span} exceeds 64-bit range")
    object.__setattr__(inst, "_valid", True)


# --------------------------------------------------------------------------
# sequencing

@dataclass(frozen=True)
class SwapPair:
    """Two sequence positions whose packets may be exchanged.

    Stored with a < b regardless of construction order; a pair of equal
    positions is rejected immediately.
    """

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == b:
            raise PositionReused(f"position {a} paired with itself")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)


@dataclass(frozen=True)
class SequencingInstance:
    """Packet sequence with a type-transition cost table and swappable pairs."""

    num_types: int
    types: tuple
    d: tuple
    pairs: tuple
    mode: str = "min"

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "d", tuple(tuple(row) for row in self.d))
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @property
    def n(self) -> int:
        return len(self.types)


def validate_pairs(n: int, pairs: Sequence[SwapPair]) -> list:
    """Check the pairs are disjoint and laminar; return the partner map.

    The result C has length n + 1 with C[0] = 0; C[i] = j when (i, j) is a
    pair and C[i] = i when position i is unpaired.  Laminarity is checked
    with a single stack sweep over pairs sorted by opening position: a pair
    opening at a closes every active pair ending before a, and crosses any
    still-active pair it does not nest inside.
    """
    c = list(range(n + 1))
    for p in pairs:
        for end in (p.a, p.b):
            if not 1 <= end <= n:
                raise OutOfRange(f"position {end} outside [1, {n}]")
            if c[end] != end:
                raise PositionReused(f"position {end} used by two pairs")
        c[p.a] = p.b
        c[p.b] = p.a
    opened = sorted(pairs, key=lambda p: p.a)
    active = []  # closing positions of currently open pairs
    for p in opened:
        while active and active[-1] < p.a:
            active.pop()
        if active and p.b > active[-1]:
            raise CrossingPairs(
                f"pair ({p.a}, {p.b}) crosses pair ending at {active[-1]}")
        active.append(p.b)
    return c


def validate_sequencing(inst: SequencingInstance) -> list:
    """Full semantic check; returns the partner map from validate_pairs."""
    cached = getattr(inst, "_pair_map", None)
    if cached is not None:
        return cached
    n = inst.n
    if n < 1:
        raise EmptySequence("sequence has no packets")
    t = inst.num_types
    if t < 1:
        raise BadTypeValue(f"num_types={t} must be at least 1")
    if inst.mode not in ("min", "max"):
        raise BadMode(f"mode must be 'min' or 'max', got {inst.mode!r}")
    if len(inst.d) != t or any(len(row) != t for row in inst.d):
        raise BadTypeValue(f"cost table must be {t}x{t}")
    for tv in inst.types:
        if not 1 <= tv <= t:
            raise BadTypeValue(f"type {tv} outside [1, {t}]")
    dmax = max((abs(v) for row in inst.d for v in row), default=0)
    if dmax > INT64_MAX or n * dmax > INT64_MAX:
        raise MagnitudeOverflow(
            f"sequence length {n} times max |cost| {dmax} exceeds 64-bit range")
    c = validate_pairs(n, inst.pairs)
    object.__setattr__(inst, "_pair_map", c)
    return c


# --------------------------------------------------------------------------
# scheduling

@dataclass(frozen=True)
class TransferPath:
    """One disjoint network path: connection initiation and per-packet time."""

    ci: int
    ps: int


@dataclass(frozen=True)
class SchedulingInstance:
    """N identical packets over P disjoint paths, at most Q paths usable."""

    paths: tuple
    n: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))

    @property
    def p(self) -> int:
        return len(self.paths)


def validate_scheduling(inst: SchedulingInstance) -> None:
    if getattr(inst, "_valid", False):
        return
    p = inst.p
    if p < 1:
        raise BadQ("instance has no paths")
    if inst.n < 0:
        raise BadN(f"n={inst.n} is negative")
    if not 1 <= inst.q <= p:
        raise BadQ(f"q={inst.q} outside [1, {p}]")
    worst = 0
    for path in inst.paths:
        if path.ci < 0 or path.ps < 0:
            raise NegativePathTime(
                f"path times ({path.ci}, {path.ps}) must be non-negative")
        worst = max(worst, path.ci, path.ps)
    if worst > INT64_MAX or max(pt.ci + inst.n * pt.ps for pt in inst.paths) > INT64_MAX:
        raise MagnitudeOverflow(
            "ci + n*ps exceeds 64-bit range on some path")
    object.__setattr__(inst, "_valid", True)


# --------------------------------------------------------------------------
# solver reports

@dataclass(frozen=True)
class SolveReport:
    """Objective value plus a checkable witness, as exchanged over JSON."""

    objective: int
    witness: dict
    verified: Optional[bool] = None


# --------------------------------------------------------------------------
# JSON layer
#
# Schema errors carry the JSON-pointer-ish path of the offending field.
# bool is deliberately excluded from the integer checks: JSON true/false
# must not masquerade as 0/1.

def _require_obj(v, path):
    if not isinstance(v, dict):
        raise SchemaViolation(path, "expected an object")
    return v


def _require_list(v, path):
    if not isinstance(v, list):
        raise SchemaViolation(path, "expected an array")
    return v


def _require_int(v, path):
    if type(v) is not int:
        raise SchemaViolation(path, "expected an integer")
    return v


def _require_int64_range(lo, hi, name):
    if lo < -INT64_MAX or hi > INT64_MAX:
        raise MagnitudeOverflow(f"{name} value exceeds 64-bit range")


def _reject_unknown(doc, allowed, path):
    for key in doc:
        if key not in allowed:
            raise SchemaViolation(f"{path}.{key}" if path else key,
                                  "unknown field")


def _get(doc, key, path):
    if key not in doc:
        raise SchemaViolation(f"{path}.{key}" if path else key,
                              "missing field")
    return doc[key]


def _loads(text) -> Any:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8", errors="replace")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None


def _placement_from_doc(doc) -> PlacementInstance:
    _require_obj(doc, "")
    _reject_unknown(doc, {"nodes", "k"}, "")
    nodes = _require_list(_get(doc, "nodes", ""), "nodes")
    xs = []
    ws = []
    for i, item in enumerate(nodes):
        here = f"nodes[{i}]"
        _require_obj(item, here)
        _reject_unknown(item, {"x", "w"}, here)
        xs.append(_require_int(_get(item, "x", here), f"{here}.x"))
        ws.append(_require_int(_get(item, "w", here), f"{here}.w"))
    if not xs:
        raise SchemaViolation("nodes", "at least one node required")
    k = _require_int(_get(doc, "k", ""), "k")
    return PlacementInstance(tuple(xs), tuple(ws), k)


def _sequencing_from_doc(doc) -> SequencingInstance:
    _require_obj(doc, "")
    _reject_unknown(doc, {"num_types", "types", "d", "pairs", "mode"}, "")
    t = _require_int(_get(doc, "num_types", ""), "num_types")
    types = [_require_int(v, f"types[{i}]")
             for i, v in enumerate(_require_list(_get(doc, "types", ""), "types"))]
    if not types:
        raise SchemaViolation("types", "at least one packet required")
    d_rows = _require_list(_get(doc, "d", ""), "d")
    d = []
    for i, row in enumerate(d_rows):
        _require_list(row, f"d[{i}]")
        d.append(tuple(_require_int(v, f"d[{i}][{j}]")
                       for j, v in enumerate(row)))
    pairs_doc = _require_list(_get(doc, "pairs", ""), "pairs")
    pairs = []
    for i, item in enumerate(pairs_doc):
        here = f"pairs[{i}]"
        _require_list(item, here)
        if len(item) != 2:
            raise SchemaViolation(here, "expected [a, b]")
        a = _require_int(item[0], f"{here}[0]")
        b = _require_int(item[1], f"{here}[1]")
        if a == b:
            raise SchemaViolation(here, "pair endpoints must differ")
        pairs.append(SwapPair(a, b))
    mode = doc.get("mode", "min")
    if mode not in ("min", "max"):
        raise SchemaViolation("mode", "expected 'min' or 'max'")
    return SequencingInstance(t, tuple(types), tuple(d), tuple(pairs), mode)


def _scheduling_from_doc(doc) -> SchedulingInstance:
    _require_obj(doc, "")
    _reject_unknown(doc, {"paths", "n", "q"}, "")
    paths_doc = _require_list(_get(doc, "paths", ""), "paths")
    paths = []
    for i, item in enumerate(paths_doc):
        here = f"paths[{i}]"
        _require_obj(item, here)
        _reject_unknown(item, {"ci", "ps"}, here)
        paths.append(TransferPath(
            _require_int(_get(item, "ci", here), f"{here}.ci"),
            _require_int(_get(item, "ps", here), f"{here}.ps")))
    if not paths:
        raise SchemaViolation("paths", "at least one path required")
    n = _require_int(_get(doc, "n", ""), "n")
    if "q" in doc:
        q = _require_int(doc["q"], "q")
    else:
        q = len(paths)
    return SchedulingInstance(tuple(paths), n, q)


def parse_placement(text) -> PlacementInstance:
    return _placement_from_doc(_loads(text))


def parse_sequencing(text) -> SequencingInstance:
    return _sequencing_from_doc(_loads(text))


def parse_scheduling(text) -> SchedulingInstance:
    return _scheduling_from_doc(_loads(text))


def parse_instance(text):
    """Parse any instance document, dispatching on its distinguishing key."""
    doc = _loads(text)
    _require_obj(doc, "")
    if "nodes" in doc:
        return _placement_from_doc(doc)
    if "types" in doc:
        return _sequencing_from_doc(doc)
    if "paths" in doc:
        return _scheduling_from_doc(doc)
    raise SchemaViolation("", "unrecognized instance document")


def instance_to_doc(inst) -> dict:
    if isinstance(inst, PlacementInstance):
        return {"nodes": [{"x": x, "w": w} for x, w in zip(inst.xs, inst.ws)],
                "k": inst.k}
    if isinstance(inst, SequencingInstance):
        return {"num_types": inst.num_types,
                "types": list(inst.types),
                "d": [list(row) for row in inst.d],
                "pairs": [[p.a, p.b] for p in inst.pairs],
                "mode": inst.mode}
    if isinstance(inst, SchedulingInstance):
        return {"paths": [{"ci": p.ci, "ps": p.ps} for p in inst.paths],
                "n": inst.n,
                "q": inst.q}
    raise TypeError(f"not an instance: {type(inst).__name__}")


def _dumps(doc) -> str:
    # Canonical bytes: sorted keys, no whitespace.  Equal documents
    # serialize identically, so outputs can be diffed byte for byte.
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def serialize_instance(inst) -> str:
    return _dumps(instance_to_doc(inst))


def serialize_report(report: SolveReport) -> str:
    doc = {"objective": report.objective, "witness": report.witness}
    if report.verified is not None:
        doc["verified"] = report.verified
    return _dumps(doc)


def parse_report(text) -> SolveReport:
    doc = _require_obj(_loads(text), "")
    _reject_unknown(doc, {"objective", "witness", "verified"}, "")
    objective = _require_int(_get(doc, "objective", ""), "objective")
    witness = _require_obj(_get(doc, "witness", ""), "witness")
    verified = None
    if "verified" in doc:
        if not isinstance(doc["verified"], bool):
            raise SchemaViolation("verified", "expected a boolean")
        verified = doc["verified"]
    return SolveReport(objective, witness, verified)
