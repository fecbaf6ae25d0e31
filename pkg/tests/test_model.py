"""Instance types, validation rules, and the JSON exchange format."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtso import (INT64_MAX, BadK, BadMode, BadN, BadQ, BadTypeValue,
                  CrossingPairs, EmptySequence, MagnitudeOverflow,
                  MalformedDocument, NegativePathTime, NegativeWeight,
                  OutOfRange, PlacementInstance, PositionReused,
                  SchedulingInstance, SchemaViolation, SequencingInstance,
                  SolveReport, SwapPair, TransferPath, UnsortedCoordinates,
                  parse_instance, parse_placement, parse_report,
                  parse_scheduling, parse_sequencing, serialize_instance,
                  serialize_report, validate_pairs, validate_placement,
                  validate_scheduling, validate_sequencing)
from helpers import (crossing_free, laminar_pairs, random_placement,
                     random_scheduling, random_sequencing)


# --------------------------------------------------------------------------
# placement validation

def test_sorted_instance_accepted():
    validate_placement(PlacementInstance((0, 1, 2), (1, 1, 1), 2))


def test_unsorted_coordinates_reports_first_violation():
    inst = PlacementInstance((0, 2, 1), (1, 1, 1), 1)
    with pytest.raises(UnsortedCoordinates) as ei:
        validate_placement(inst)
    assert ei.value.index == 2


def test_equal_coordinates_allowed():
    validate_placement(PlacementInstance((3, 3, 3), (1, 2, 3), 1))


def test_k_out_of_range():
    with pytest.raises(BadK):
        validate_placement(PlacementInstance((0, 1), (1, 1), 3))
    with pytest.raises(BadK):
        validate_placement(PlacementInstance((0, 1), (1, 1), 0))


def test_negative_weight_rejected():
    with pytest.raises(NegativeWeight):
        validate_placement(PlacementInstance((0, 1), (1, -1), 1))


def test_placement_overflow_contract_boundary():
    span = 2**31
    w = INT64_MAX // span
    validate_placement(PlacementInstance((0, span), (1, w), 1))
    with pytest.raises(MagnitudeOverflow):
        validate_placement(PlacementInstance((0, span), (1, w + 1), 1))


def test_coordinate_outside_int64_rejected():
    with pytest.raises(MagnitudeOverflow):
        validate_placement(PlacementInstance((0, 2**63), (0, 0), 1))


def test_from_nodes_round_trip():
    from dtso import PathNode
    inst = PlacementInstance.from_nodes([PathNode(0, 5), PathNode(2, 1)], 1)
    assert inst.xs == (0, 2) and inst.ws == (5, 1)
    assert inst.nodes == (PathNode(0, 5), PathNode(2, 1))


# --------------------------------------------------------------------------
# swap pairs

def test_swap_pair_normalizes_order():
    assert SwapPair(4, 1) == SwapPair(1, 4)


def test_swap_pair_rejects_self_pairing():
    with pytest.raises(PositionReused):
        SwapPair(3, 3)


def test_partner_map_golden():
    c = validate_pairs(4, (SwapPair(1, 4), SwapPair(2, 3)))
    assert c == [0, 4, 3, 2, 1]


def test_partner_map_identity_without_pairs():
    assert validate_pairs(3, ()) == [0, 1, 2, 3]


def test_crossing_pairs_rejected():
    with pytest.raises(CrossingPairs):
        validate_pairs(4, (SwapPair(1, 3), SwapPair(2, 4)))


def test_pair_position_out_of_range():
    with pytest.raises(OutOfRange):
        validate_pairs(3, (SwapPair(1, 4),))
    with pytest.raises(OutOfRange):
        validate_pairs(3, (SwapPair(0, 2),))


def test_pair_position_reuse_rejected():
    with pytest.raises(PositionReused):
        validate_pairs(5, (SwapPair(1, 3), SwapPair(3, 5)))


def test_pair_acceptance_matches_pairwise_check():
    # the fast stack check must agree with the quadratic definition,
    # on valid and invalid sets alike
    rng = random.Random(9014)
    for _ in range(400):
        n = rng.randint(2, 12)
        k = rng.randint(0, 5)
        pairs = []
        for _ in range(k):
            a = rng.randint(1, n - 1)
            b = rng.randint(a + 1, n)
            pairs.append(SwapPair(a, b))
        pairs = tuple(pairs)
        try:
            validate_pairs(n, pairs)
            accepted = True
        except (PositionReused, CrossingPairs):
            accepted = False
        assert accepted == crossing_free(pairs)


@settings(max_examples=150)
@given(st.data())
def test_partner_map_is_an_involution(data):
    n = data.draw(st.integers(min_value=1, max_value=30))
    seed = data.draw(st.integers(min_value=0, max_value=10**9))
    pairs = laminar_pairs(random.Random(seed), n, n // 2)
    c = validate_pairs(n, pairs)
    assert len(c) == n + 1 and c[0] == 0
    for i in range(1, n + 1):
        assert 1 <= c[i] <= n
        assert c[c[i]] == i
    paired = {p.a for p in pairs} | {p.b for p in pairs}
    for i in range(1, n + 1):
        assert (c[i] != i) == (i in paired)


# --------------------------------------------------------------------------
# sequencing validation

def test_sequencing_accepts_minimal():
    inst = SequencingInstance(1, (1,), ((0,),), ())
    assert validate_sequencing(inst) == [0, 1]


def test_empty_sequence_rejected():
    with pytest.raises(EmptySequence):
        validate_sequencing(SequencingInstance(1, (), ((0,),), ()))


def test_type_value_out_of_range():
    with pytest.raises(BadTypeValue):
        validate_sequencing(SequencingInstance(2, (1, 3), ((0, 0), (0, 0)), ()))
    with pytest.raises(BadTypeValue):
        validate_sequencing(SequencingInstance(2, (0,), ((0, 0), (0, 0)), ()))


def test_cost_table_shape_checked():
    with pytest.raises(BadTypeValue):
        validate_sequencing(SequencingInstance(2, (1,), ((0, 0),), ()))


def test_bad_mode_rejected():
    with pytest.raises(BadMode):
        validate_sequencing(SequencingInstance(1, (1,), ((0,),), (), "best"))


def test_sequencing_overflow_boundary():
    n = 4
    dmax = INT64_MAX // n
    ok = SequencingInstance(1, (1,) * n, ((dmax,),), ())
    validate_sequencing(ok)
    bad = SequencingInstance(1, (1,) * n, ((-(dmax + 1),),), ())
    with pytest.raises(MagnitudeOverflow):
        validate_sequencing(bad)


# --------------------------------------------------------------------------
# scheduling validation

def test_scheduling_accepts_minimal():
    validate_scheduling(SchedulingInstance((TransferPath(0, 1),), 0, 1))


def test_negative_path_times_rejected():
    with pytest.raises(NegativePathTime):
        validate_scheduling(SchedulingInstance((TransferPath(-1, 1),), 1, 1))
    with pytest.raises(NegativePathTime):
        validate_scheduling(SchedulingInstance((TransferPath(0, -2),), 1, 1))


def test_bad_n_and_q():
    with pytest.raises(BadN):
        validate_scheduling(SchedulingInstance((TransferPath(0, 1),), -1, 1))
    with pytest.raises(BadQ):
        validate_scheduling(SchedulingInstance((TransferPath(0, 1),), 1, 2))
    with pytest.raises(BadQ):
        validate_scheduling(SchedulingInstance((TransferPath(0, 1),), 1, 0))


def test_scheduling_overflow_boundary():
    n = 8
    ps = INT64_MAX // n
    validate_scheduling(SchedulingInstance((TransferPath(INT64_MAX - n * ps, ps),), n, 1))
    with pytest.raises(MagnitudeOverflow):
        validate_scheduling(SchedulingInstance((TransferPath(8, ps),), n, 1))


# --------------------------------------------------------------------------
# JSON documents

def test_parse_placement_golden():
    inst = parse_placement('{"nodes": [{"x": 0, "w": 2}, {"x": 3, "w": 1}], "k": 1}')
    assert inst == PlacementInstance((0, 3), (2, 1), 1)


def test_parse_sequencing_defaults_min_mode():
    inst = parse_sequencing(
        '{"num_types": 2, "types": [1, 2], "d": [[0, 5], [2, 0]],'
        ' "pairs": [[1, 2]]}')
    assert inst.mode == "min"
    assert inst.pairs == (SwapPair(1, 2),)


def test_parse_scheduling_q_defaults_to_path_count():
    inst = parse_scheduling('{"paths": [{"ci": 0, "ps": 1}, {"ci": 2, "ps": 0}], "n": 3}')
    assert inst.q == 2
    assert inst.paths == (TransferPath(0, 1), TransferPath(2, 0))


def test_parse_instance_dispatches_on_keys():
    assert isinstance(parse_instance('{"nodes": [{"x": 0, "w": 0}], "k": 1}'),
                      PlacementInstance)
    assert isinstance(parse_instance('{"paths": [{"ci": 0, "ps": 0}], "n": 0}'),
                      SchedulingInstance)
    with pytest.raises(SchemaViolation):
        parse_instance('{"k": 1}')


def test_malformed_json():
    with pytest.raises(MalformedDocument):
        parse_placement('{"nodes": [')


def test_empty_node_list_is_a_schema_violation():
    with pytest.raises(SchemaViolation) as ei:
        parse_placement('{"nodes": [], "k": 1}')
    assert "nodes" in str(ei.value)


def test_boolean_rejected_where_integer_expected():
    with pytest.raises(SchemaViolation):
        parse_placement('{"nodes": [{"x": true, "w": 1}], "k": 1}')


def test_unknown_key_rejected():
    with pytest.raises(SchemaViolation):
        parse_placement('{"nodes": [{"x": 0, "w": 1}], "k": 1, "extra": 0}')


def test_missing_field_rejected():
    with pytest.raises(SchemaViolation):
        parse_placement('{"nodes": [{"x": 0}], "k": 1}')


def test_pair_arity_and_self_pair_rejected():
    base = '{"num_types": 1, "types": [1, 1], "d": [[0]], "pairs": %s}'
    with pytest.raises(SchemaViolation):
        parse_sequencing(base % '[[1, 2, 3]]')
    with pytest.raises(SchemaViolation):
        parse_sequencing(base % '[[2, 2]]')


def test_bad_mode_is_schema_level():
    with pytest.raises(SchemaViolation):
        parse_sequencing('{"num_types": 1, "types": [1], "d": [[0]],'
                         ' "pairs": [], "mode": "fast"}')


def test_schema_violation_reports_path():
    with pytest.raises(SchemaViolation) as ei:
        parse_placement('{"nodes": [{"x": 0, "w": 1}, {"x": 1, "w": []}], "k": 1}')
    assert ei.value.path == "nodes[1].w"


# --------------------------------------------------------------------------
# round trips

def _assert_round_trip(inst):
    text = serialize_instance(inst)
    again = parse_instance(text)
    assert again == inst
    assert serialize_instance(again) == text


def test_round_trip_random_instances():
    rng = random.Random(5152)
    for _ in range(200):
        _assert_round_trip(random_placement(rng, n_max=12))
        _assert_round_trip(random_sequencing(rng))
        _assert_round_trip(random_scheduling(rng))


@settings(max_examples=120)
@given(nodes=st.lists(st.tuples(st.integers(0, 10**6), st.integers(0, 10**3)),
                      min_size=1, max_size=12),
       k=st.integers(1, 12))
def test_round_trip_placement_documents(nodes, k):
    nodes.sort()
    inst = PlacementInstance(tuple(x for x, _ in nodes),
                             tuple(w for _, w in nodes),
                             min(k, len(nodes)))
    _assert_round_trip(inst)


def test_serialized_form_is_canonical():
    inst = SchedulingInstance((TransferPath(2, 3), TransferPath(0, 5)), 5, 1)
    text = serialize_instance(inst)
    assert text == '{"n":5,"paths":[{"ci":2,"ps":3},{"ci":0,"ps":5}],"q":1}'


# --------------------------------------------------------------------------
# reports

def test_report_round_trip():
    rep = SolveReport(7, {"counts": [1, 1, 3]}, True)
    text = serialize_report(rep)
    assert parse_report(text) == rep
    assert text == '{"objective":7,"verified":true,"witness":{"counts":[1,1,3]}}'


def test_report_omits_verified_when_absent():
    text = serialize_report(SolveReport(3, {"q": 3}))
    assert text == '{"objective":3,"witness":{"q":3}}'
    assert parse_report(text).verified is None
