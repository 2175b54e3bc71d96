"""Refinement checking and the constructive transformation rules.

An automaton refines another when its specification-semantics trace set is
included in the other's: refining removes underspecification without adding
behavior.  The check is bounded, so a positive verdict is evidence up to the
given depth while a refutation is definitive and comes with a witness trace.

Each rule application either fails one of its context conditions loudly or
yields a well-formed automaton; soundness of the rules is established by
running the refinement check on the result (the transformed automaton must
refine its origin).
"""

from __future__ import annotations

from dataclasses import dataclass

from hma.behavior import (
    DEFAULT_CHAOS_CAP,
    DEFAULT_TRACE_CAP,
    Trace,
    semantics_spec,
    trace_subset,
)
from hma.complete import partial_pairs
from hma.core import Hma, Transition, basic_states, is_identifier, require_valid
from hma.errors import MismatchError, RuleConditionError
from hma.flatten import flatten

RULE_NAMES = ("remove_initial", "remove_unreachable", "split_state")

REFINES = "refines_up_to_depth"
REFUTED = "refuted"


@dataclass(frozen=True)
class RuleApplication:
    """A named rule with its explicit arguments; nothing is ever inferred."""

    rule: str
    arguments: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "arguments", tuple(self.arguments))
        if self.rule not in RULE_NAMES:
            raise ValueError(f"unknown rule: {self.rule!r} (expected one of {RULE_NAMES})")


@dataclass(frozen=True)
class RefinementVerdict:
    relation: str  # refines_up_to_depth | refuted
    depth: int
    counterexample: Trace | None = None

    def __post_init__(self):
        if (self.relation == REFUTED) != (self.counterexample is not None):
            raise ValueError("a counterexample is present exactly when refuted")

    def render(self) -> str:
        if self.relation == REFINES:
            return f"refines-up-to-depth {self.depth}"
        return f"refuted: {self.counterexample.render()}"


def check_refinement(
    a2: Hma,
    a1: Hma,
    depth: int,
    chaos_cap: int = DEFAULT_CHAOS_CAP,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> RefinementVerdict:
    """Does ``a2`` refine ``a1`` up to ``depth``?

    Both automata must pass strict context conditions and share one message
    alphabet.  A refutation carries the smallest witness trace (canonical
    order) that ``a2`` allows and ``a1`` does not.
    """
    require_valid(a2, "strict")
    require_valid(a1, "strict")
    if a2.messages != a1.messages:
        raise MismatchError("refinement requires identical message alphabets")
    refined = semantics_spec(a2, depth, chaos_cap, trace_cap)
    original = semantics_spec(a1, depth, chaos_cap, trace_cap)
    ok, witness = trace_subset(refined, original)
    if ok:
        return RefinementVerdict(REFINES, depth)
    return RefinementVerdict(REFUTED, depth, witness)


def apply_rule(h: Hma, app: RuleApplication) -> Hma:
    """Apply one transformation rule, checking its context conditions.

    The subject automaton must itself pass strict context conditions, so
    every rule output does too.
    """
    require_valid(h, "strict")
    if app.rule == "remove_initial":
        return _remove_initial(h, *_arity(app, 1))
    if app.rule == "remove_unreachable":
        return _remove_unreachable(h, *_arity(app, 1))
    return _split_state(h, *_arity(app, 3))


def verify_rule_soundness(
    h: Hma,
    app: RuleApplication,
    depth: int,
    chaos_cap: int = DEFAULT_CHAOS_CAP,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> RefinementVerdict:
    """Check that the rule output refines its input (the rule did not add behavior)."""
    return check_refinement(apply_rule(h, app), h, depth, chaos_cap, trace_cap)


def parse_rule_line(line: str) -> RuleApplication:
    """Parse one batch-script line: ``rule-name arg1 arg2 ...``."""
    words = line.split()
    if not words:
        raise ValueError("empty rule line")
    name = words[0].replace("-", "_")
    if name not in RULE_NAMES:
        raise ValueError(f"unknown rule: {words[0]!r}")
    return RuleApplication(name, tuple(words[1:]))


def _arity(app, n):
    if len(app.arguments) != n:
        raise RuleConditionError(
            "argument-count", f"{app.rule} takes {n} argument(s), got {len(app.arguments)}"
        )
    return app.arguments


def _remove_initial(h: Hma, state: str) -> Hma:
    if state not in h.initial:
        raise RuleConditionError("state-not-initial", f"'{state}' is not an initial state")
    if len(h.initial) < 2:
        raise RuleConditionError(
            "last-initial-state", "cannot remove the only initial state"
        )
    return Hma(h.states, h.containment, h.messages, h.transitions, h.initial - {state})


def _remove_unreachable(h: Hma, state: str) -> Hma:
    """Remove one unreachable basic state with its incident containment edges
    and transitions.

    Beyond being basic, non-initial and unreachable, the removal must not
    disturb the flat view of the surviving states: no composite state may
    become basic (`removal-alters-basic-states`) and no surviving
    (state, input) pair may lose its last accepting transition
    (`removal-uncovers-pair`).  Either disturbance can enlarge the chaos
    completion of the result and break refinement, so both are rejected.
    """
    if state not in h.states:
        raise RuleConditionError("unknown-state", f"'{state}' is not a declared state")
    flat = flatten(h)
    if state not in basic_states(h):
        raise RuleConditionError("state-not-basic", f"'{state}' is not a basic state")
    if state in h.initial:
        raise RuleConditionError("state-initial", f"'{state}' is an initial state")
    if state in _reachable(flat):
        raise RuleConditionError(
            "state-reachable", f"'{state}' is reachable from the initial configuration"
        )
    result = Hma(
        states=h.states - {state},
        containment=frozenset(e for e in h.containment if state not in e),
        messages=h.messages,
        transitions=frozenset(
            t for t in h.transitions if t.source != state and t.target != state
        ),
        initial=h.initial,
    )
    flat_after = flatten(result)
    if flat_after.states != flat.states - {state}:
        raise RuleConditionError(
            "removal-alters-basic-states",
            f"removing '{state}' would turn a composite state into a basic one",
        )
    uncovered = partial_pairs(flat_after) - partial_pairs(flat)
    if uncovered:
        s, i = min(uncovered)
        raise RuleConditionError(
            "removal-uncovers-pair",
            f"removing '{state}' would leave state '{s}' without a transition for input '{i}'",
        )
    return result


def _split_state(h: Hma, state: str, fresh_a: str, fresh_b: str) -> Hma:
    if state not in h.states:
        raise RuleConditionError("unknown-state", f"'{state}' is not a declared state")
    if state not in basic_states(h):
        raise RuleConditionError("state-not-basic", f"'{state}' is not a basic state")
    for fresh in (fresh_a, fresh_b):
        if not is_identifier(fresh):
            raise RuleConditionError("bad-fresh-name", f"{fresh!r} is not a valid state name")
        if fresh in h.states:
            raise RuleConditionError(
                "fresh-name-collision", f"'{fresh}' already names a state"
            )
    if fresh_a == fresh_b:
        raise RuleConditionError("fresh-names-equal", "the two fresh names must differ")

    copies = (fresh_a, fresh_b)
    states = (h.states - {state}) | set(copies)
    containment = {e for e in h.containment if e[0] != state} | {
        (c, p) for (old, p) in h.containment if old == state for c in copies
    }
    transitions = set()
    for t in h.transitions:
        sources = copies if t.source == state else (t.source,)
        targets = copies if t.target == state else (t.target,)
        for s in sources:
            for g in targets:
                transitions.add(Transition(s, t.input, t.output, g))
    initial = h.initial
    if state in h.initial:
        initial = (h.initial - {state}) | set(copies)
    return Hma(states, frozenset(containment), h.messages, frozenset(transitions), initial)


def _reachable(flat) -> frozenset[str]:
    succ: dict[str, set[str]] = {s: set() for s in flat.states}
    for t in flat.transitions:
        succ[t.source].add(t.target)
    seen = set(flat.initial)
    frontier = list(flat.initial)
    while frontier:
        s = frontier.pop()
        for t in succ[s]:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return frozenset(seen)
