import random

import pytest

from hma.behavior import (
    Trace,
    TraceSet,
    behaviors,
    is_consistent,
    semantics_impl,
    semantics_spec,
    trace_intersection,
    trace_subset,
)
from hma.complete import complete_chaos, complete_ignore
from hma.core import EPSILON, Hma, Ma, Transition, is_complete, is_deterministic
from hma.errors import ContextError, MismatchError, SizeCapError
from hma.flatten import flatten

from genlib import random_det_complete_hma, random_hma, random_ma, simulate_traces


def tr(ins, outs):
    return Trace(tuple(ins), tuple(outs))


def two_loop_ma():
    return Ma(
        {"s"},
        {"a", "b"},
        {Transition("s", "a", "b", "s"), Transition("s", "b", EPSILON, "s")},
        {"s"},
    )


def chaos_singleton():
    return Hma(states={"s"}, messages={"a"}, transitions=frozenset(), initial={"s"})


class TestTraceTypes:
    def test_more_outputs_than_inputs_rejected(self):
        with pytest.raises(ValueError):
            tr(["a"], ["b", "c"])

    def test_epsilon_entries_rejected(self):
        with pytest.raises(ValueError):
            tr([EPSILON], [])

    def test_canonical_order(self):
        traces = [tr("ab", "b"), tr("", ""), tr("aa", "bb"), tr("a", "b")]
        ts = TraceSet(2, {"a", "b"}, frozenset(traces))
        assert ts.ordered() == [tr("", ""), tr("a", "b"), tr("aa", "bb"), tr("ab", "b")]

    def test_depth_bound_enforced(self):
        with pytest.raises(ValueError):
            TraceSet(1, {"a"}, frozenset({tr("aa", "")}))

    def test_render(self):
        assert tr("", "").render() == "- / -"
        assert tr("ab", "c").render() == "a b / c"


class TestBehaviors:
    def test_empty_initial_means_empty_set(self):
        m = Ma({"s"}, {"a"}, {Transition("s", "a", "a", "s")}, frozenset())
        for depth in range(4):
            assert len(behaviors(m, depth)) == 0

    def test_two_loop_depth_two(self):
        expected = {
            tr("", ""),
            tr("a", "b"),
            tr("b", ""),
            tr("aa", "bb"),
            tr("ab", "b"),
            tr("ba", "b"),
            tr("bb", ""),
        }
        assert behaviors(two_loop_ma(), 2).traces == expected

    def test_depth_zero(self):
        m = Ma({"s"}, {"a"}, frozenset(), {"s"})
        assert behaviors(m, 0).traces == {tr("", "")}

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            behaviors(two_loop_ma(), -1)

    def test_trace_cap_is_loud(self):
        m = complete_chaos(Ma({"s", "t"}, {"a", "b"}, frozenset(), {"s"}))
        with pytest.raises(SizeCapError):
            behaviors(m, 3, trace_cap=10)

    def test_matches_forward_simulation_oracle(self):
        rng = random.Random(43)
        for _ in range(100):
            m = random_ma(rng, max_states=3, max_messages=2)
            for depth in range(4):
                got = {(t.inputs, t.outputs) for t in behaviors(m, depth).traces}
                assert got == simulate_traces(m, depth)


class TestSemantics:
    def test_impl_of_empty_relation_ignores_everything(self):
        h = chaos_singleton()
        assert semantics_impl(h, 2).traces == {tr("", ""), tr("a", ""), tr("aa", "")}

    def test_spec_of_empty_relation_allows_everything(self):
        h = chaos_singleton()
        assert semantics_spec(h, 1).traces == {tr("", ""), tr("a", ""), tr("a", "a")}

    def test_strict_context_conditions_enforced(self):
        h = Hma(states={"s"}, messages={"a"})
        with pytest.raises(ContextError):
            semantics_impl(h, 1)
        with pytest.raises(ContextError):
            semantics_spec(h, 1)

    def test_deterministic_complete_semantics_is_a_function(self):
        rng = random.Random(47)
        for _ in range(40):
            h = random_det_complete_hma(rng)
            flat = flatten(h)
            assert is_deterministic(flat)[0] and is_complete(flat)[0]
            result = semantics_impl(h, 3)
            by_inputs = {}
            for t in result.traces:
                by_inputs.setdefault(t.inputs, []).append(t)
            for group in by_inputs.values():
                assert len(group) == 1

    def test_complete_deterministic_impl_equals_spec(self):
        h = Hma(
            states={"p", "q"},
            messages={"a"},
            transitions={Transition("p", "a", "a", "q"), Transition("q", "a", EPSILON, "p")},
            initial={"p"},
        )
        for depth in range(4):
            assert semantics_impl(h, depth) == semantics_spec(h, depth)

    def test_impl_contained_in_spec(self):
        rng = random.Random(53)
        for _ in range(40):
            h = random_hma(rng, max_states=4, max_messages=2)
            for depth in range(4):
                ok, witness = trace_subset(semantics_impl(h, depth), semantics_spec(h, depth))
                assert ok, witness

    def test_depth_restriction_is_consistent(self):
        h = chaos_singleton()
        full = semantics_spec(h, 3)
        for d in range(4):
            assert full.at_depth(d) == semantics_spec(h, d)

    def test_depth_monotonicity(self):
        rng = random.Random(59)
        for _ in range(30):
            h = random_hma(rng, max_states=4, max_messages=2)
            for fn in (semantics_impl, semantics_spec):
                previous = fn(h, 0).traces
                for d in range(1, 4):
                    current = fn(h, d).traces
                    assert previous <= current
                    previous = current

    def test_output_bound_and_prefix_realizability(self):
        rng = random.Random(61)
        for _ in range(30):
            h = random_hma(rng, max_states=4, max_messages=2)
            result = semantics_spec(h, 3)
            traces = result.traces
            for t in traces:
                assert len(t.outputs) <= len(t.inputs)
                for k in range(len(t.inputs)):
                    prefix_inputs = t.inputs[:k]
                    assert any(
                        u.inputs == prefix_inputs and t.outputs[: len(u.outputs)] == u.outputs
                        for u in traces
                    )


class TestTraceSetAlgebra:
    def test_subset_reflexive(self):
        a = semantics_spec(chaos_singleton(), 2)
        assert trace_subset(a, a) == (True, None)

    def test_subset_by_construction(self):
        a = TraceSet(1, {"a", "b", "c"}, frozenset({tr("a", "b")}))
        b = TraceSet(1, {"a", "b", "c"}, frozenset({tr("a", "b"), tr("a", "c")}))
        assert trace_subset(a, b) == (True, None)

    def test_disjoint_singletons_with_witness(self):
        a = TraceSet(1, {"a", "b", "c"}, frozenset({tr("a", "c")}))
        b = TraceSet(1, {"a", "b", "c"}, frozenset({tr("a", "b")}))
        ok, witness = trace_subset(a, b)
        assert not ok and witness == tr("a", "c")

    def test_subset_depth_mismatch(self):
        a = TraceSet(1, {"a"}, frozenset())
        b = TraceSet(2, {"a"}, frozenset())
        with pytest.raises(MismatchError):
            trace_subset(a, b)

    def test_intersection_idempotent_and_absorbing(self):
        a = semantics_spec(chaos_singleton(), 2)
        empty = TraceSet(2, {"a"}, frozenset())
        assert trace_intersection(a, a) == a
        assert trace_intersection(a, empty) == empty

    def test_intersection_alphabet_mismatch(self):
        a = TraceSet(1, {"a"}, frozenset())
        b = TraceSet(1, {"b"}, frozenset())
        with pytest.raises(MismatchError):
            trace_intersection(a, b)

    def test_composition_of_nested_specifications(self):
        base = dict(states={"s"}, messages={"a", "b", "c"}, initial={"s"})
        tight = Hma(transitions={Transition("s", "a", "b", "s")}, **base)
        loose = Hma(
            transitions={Transition("s", "a", "b", "s"), Transition("s", "a", "c", "s")},
            **base,
        )
        t_sem = semantics_spec(tight, 2)
        l_sem = semantics_spec(loose, 2)
        assert trace_intersection(t_sem, l_sem) == t_sem


class TestConsistency:
    def test_empty_initial_is_inconsistent(self):
        h = Hma(states={"s"}, messages={"a"})
        for depth in range(3):
            assert not is_consistent(h, depth)

    def test_strict_valid_documents_are_consistent(self):
        rng = random.Random(67)
        for _ in range(30):
            h = random_hma(rng)
            assert is_consistent(h, 2)

    def test_composite_initial_with_basic_substates(self):
        h = Hma(
            states={"Top", "A"},
            containment={("A", "Top")},
            messages={"x"},
            initial={"Top"},
        )
        assert is_consistent(h, 1)

    def test_rejects_cyclic_containment(self):
        h = Hma(states={"A", "B"}, containment={("A", "B"), ("B", "A")}, initial={"A"})
        with pytest.raises(ContextError):
            is_consistent(h, 1)
