"""Hierarchy removal: project every transition onto the basic states below
its endpoints.

A transition whose source (target) is a composite state stands for one
transition per basic substate of that source (target).  The flat automaton
keeps the message alphabet unchanged and resolves initial states to the basic
states nested in them.
"""

from __future__ import annotations

from hma.core import Hma, Ma, Transition, basic_states, require_valid


def _basics_below(h: Hma) -> dict[str, frozenset[str]]:
    """For each state, the basic states reflexively-transitively nested in it."""
    closure = h.containment_closure()
    basics = basic_states(h)
    below: dict[str, set[str]] = {s: set() for s in h.states}
    for b in basics:
        below[b].add(b)
    for c, p in closure:
        if c in basics:
            below[p].add(c)
    return {s: frozenset(v) for s, v in below.items()}


def _flatten_unchecked(h: Hma) -> Ma:
    below = _basics_below(h)
    flat_transitions = {
        Transition(s2, t.input, t.output, t2)
        for t in h.transitions
        for s2 in below[t.source]
        for t2 in below[t.target]
    }
    flat_initial = {s2 for s in h.initial for s2 in below[s]}
    return Ma(
        states=basic_states(h),
        messages=h.messages,
        transitions=frozenset(flat_transitions),
        initial=frozenset(flat_initial),
    )


def flatten(h: Hma) -> Ma:
    """Remove the state hierarchy, preserving the transition structure.

    Rejects documents with context-condition errors (lenient mode: cyclic
    containment).  An empty initial set is tolerated here and propagates to
    an empty flat initial set.
    """
    require_valid(h, "lenient")
    return _flatten_unchecked(h)


def flatten_with_witnesses(h: Hma) -> tuple[Ma, dict[Transition, tuple[Transition, ...]]]:
    """Like :func:`flatten`, also mapping each flat transition to the
    hierarchical transitions it was projected from."""
    require_valid(h, "lenient")
    below = _basics_below(h)
    witnesses: dict[Transition, set[Transition]] = {}
    for t in h.transitions:
        for s2 in below[t.source]:
            for t2 in below[t.target]:
                witnesses.setdefault(Transition(s2, t.input, t.output, t2), set()).add(t)
    flat = _flatten_unchecked(h)
    return flat, {k: tuple(sorted(v)) for k, v in witnesses.items()}


def embed(m: Ma) -> Hma:
    """View a flat automaton as a hierarchical one with empty containment."""
    return Hma(
        states=m.states,
        containment=frozenset(),
        messages=m.messages,
        transitions=m.transitions,
        initial=m.initial,
    )
