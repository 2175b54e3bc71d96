"""Completion of partial flat automata.

A (state, input) pair is *partial* when no transition accepts that input in
that state.  Two completions exist, matching the two readings of a missing
transition:

* ignore: the message is dropped, nothing happens (a self-loop with no
  output) — the default-implementation reading;
* chaos: anything may happen (every output, every target state) — the
  underspecification reading used for specifications.

Both leave explicitly given transitions untouched and yield complete
automata.
"""

from __future__ import annotations

from hma.core import EPSILON, Ma, Transition
from hma.errors import SizeCapError

#: Default cap on the size of a chaos-completed transition relation.  The
#: added set is |partial| * (|M|+1) * |S|, cubic in practice, and downstream
#: enumeration is exponential in it, so overruns fail loudly instead of
#: grinding.
DEFAULT_CHAOS_CAP = 1_000_000


def partial_pairs(m: Ma) -> frozenset[tuple[str, str]]:
    """All (state, input) pairs with no accepting transition."""
    covered = {(t.source, t.input) for t in m.transitions}
    return frozenset(
        (s, i) for s in m.states for i in m.messages if (s, i) not in covered
    )


def complete_ignore(m: Ma) -> Ma:
    """Complete by adding a no-output self-loop at every partial pair."""
    added = {Transition(s, i, EPSILON, s) for (s, i) in partial_pairs(m)}
    if not added:
        return m
    return Ma(
        states=m.states,
        messages=m.messages,
        transitions=m.transitions | added,
        initial=m.initial,
    )


def complete_chaos(m: Ma, cap: int = DEFAULT_CHAOS_CAP) -> Ma:
    """Complete by adding every possible transition at every partial pair.

    Raises :class:`SizeCapError` when the completed relation would exceed
    ``cap`` transitions.
    """
    partial = partial_pairs(m)
    outputs = sorted(m.messages) + [EPSILON]
    total = len(m.transitions) + len(partial) * len(outputs) * len(m.states)
    if total > cap:
        raise SizeCapError(
            f"chaos completion would create {total} transitions, over the cap of {cap}"
        )
    if not partial:
        return m
    added = {
        Transition(s, i, u, p)
        for (s, i) in partial
        for u in outputs
        for p in m.states
    }
    return Ma(
        states=m.states,
        messages=m.messages,
        transitions=m.transitions | added,
        initial=m.initial,
    )
