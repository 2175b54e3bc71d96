import random

import pytest

from hma.core import EPSILON, Hma, Ma, Transition, basic_states
from hma.errors import ContextError
from hma.flatten import embed, flatten, flatten_with_witnesses

from genlib import flatten_oracle, random_hma, random_ma


def test_flat_input_is_identity():
    m = Ma(
        {"p", "q"},
        {"a"},
        {Transition("p", "a", EPSILON, "q")},
        {"p"},
    )
    flat = flatten(embed(m))
    assert flat == m


def test_composite_source_projects_to_all_substates():
    h = Hma(
        states={"Top", "A", "B"},
        containment={("A", "Top"), ("B", "Top")},
        messages={"x", "y"},
        transitions={Transition("Top", "x", "y", "B")},
        initial={"A"},
    )
    flat = flatten(h)
    assert flat.states == {"A", "B"}
    assert flat.messages == {"x", "y"}
    assert flat.transitions == {
        Transition("A", "x", "y", "B"),
        Transition("B", "x", "y", "B"),
    }
    assert flat.initial == {"A"}


def test_composite_target_resolves_to_basic_substates():
    h = Hma(
        states={"Top", "A"},
        containment={("A", "Top")},
        messages={"x"},
        transitions={Transition("A", "x", EPSILON, "Top")},
        initial={"Top"},
    )
    flat = flatten(h)
    assert flat.transitions == {Transition("A", "x", EPSILON, "A")}
    assert flat.initial == {"A"}


def test_rejects_cyclic_containment():
    h = Hma(states={"A", "B"}, containment={("A", "B"), ("B", "A")})
    with pytest.raises(ContextError):
        flatten(h)


def test_tolerates_empty_initial_and_preserves_emptiness():
    rng = random.Random(3)
    for _ in range(100):
        h = random_hma(rng, initial_mode="any")
        flat = flatten(h)
        assert bool(h.initial) == bool(flat.initial)


def test_idempotent_on_embedded_flat_automata():
    rng = random.Random(5)
    for _ in range(100):
        m = random_ma(rng)
        assert flatten(embed(m)) == m


def test_structure_bounds_and_alphabet_preserved():
    rng = random.Random(9)
    for _ in range(100):
        h = random_hma(rng, initial_mode="any")
        flat = flatten(h)
        assert len(flat.states) <= len(h.states)
        assert flat.messages == h.messages
        assert flat.states == basic_states(h)


def test_every_flat_transition_has_a_witness():
    rng = random.Random(21)
    for _ in range(100):
        h = random_hma(rng, initial_mode="any")
        flat, witnesses = flatten_with_witnesses(h)
        assert set(witnesses) == set(flat.transitions)
        closure = h.containment_closure()

        def leq(a, b):
            return a == b or (a, b) in closure

        for projected, sources in witnesses.items():
            assert sources
            for w in sources:
                assert w in h.transitions
                assert projected.input == w.input and projected.output == w.output
                assert leq(projected.source, w.source)
                assert leq(projected.target, w.target)


def test_matches_comprehension_oracle():
    rng = random.Random(33)
    for _ in range(150):
        h = random_hma(rng, initial_mode="any")
        assert flatten(h) == flatten_oracle(h)


def test_every_composite_has_a_basic_substate():
    # The condition a childless-composite diagnostic would flag cannot arise:
    # finite acyclic containment forces a basic state below every composite.
    rng = random.Random(41)
    for _ in range(100):
        h = random_hma(rng, initial_mode="any")
        closure = h.containment_closure()
        basics = basic_states(h)
        for composite in {p for (_, p) in closure}:
            assert any((b, composite) in closure for b in basics)
