"""Data model for hierarchical Mealy automata and their well-formedness checks.

A hierarchical automaton couples a finite state set with a strict containment
order (states nest inside states), a message alphabet, a transition relation
whose entries carry one input and one optional output message, and a set of
initial states.  Flat automata drop the containment order.

Constructors enforce *referential* integrity only: every name is a valid
identifier and every reference points at a declared state or message.  The
remaining well-formedness rules (acyclic containment, nonempty initial set)
are the business of :func:`check_context_conditions`, so that ill-formed
documents can be represented, diagnosed and reported rather than being
unrepresentable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from hma.errors import ContextError

#: The absent-output marker.  It is the empty string, which can never be a
#: message name, so transitions store it directly in their output field.
EPSILON = ""

ERROR = "error"
WARNING = "warning"
INFO = "info"

#: Closed set of diagnostic codes.
#:
#: errors:   cyclic-containment, empty-initial
#: warnings: overlapping-states, unreachable-state, childless-composite
#: info:     nondeterministic-choice, partial-pair
#:
#: ``childless-composite`` is reserved: with finite state sets and acyclic
#: containment every composite state has a basic substate, so the condition
#: it would flag cannot arise under this representation.
DIAGNOSTIC_CODES = (
    "cyclic-containment",
    "empty-initial",
    "overlapping-states",
    "unreachable-state",
    "childless-composite",
    "nondeterministic-choice",
    "partial-pair",
)

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_identifier(name: str) -> bool:
    """True if ``name`` is a legal state or message name."""
    return isinstance(name, str) and bool(_IDENT.match(name))


def _require_identifier(name, kind):
    if not is_identifier(name):
        raise ValueError(f"invalid {kind} name: {name!r}")


@dataclass(frozen=True)
class Diagnostic:
    """One finding from a well-formedness or structural check."""

    severity: str  # error | warning | info
    code: str
    message: str
    subject: Optional[str] = None  # state id, transition, or "state/input"

    def sort_key(self):
        return (self.code, self.subject or "", self.message)

    def __str__(self):
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.severity} {self.code}{where}: {self.message}"


def _sorted_diagnostics(diags):
    return sorted(diags, key=Diagnostic.sort_key)


@dataclass(frozen=True, order=True)
class Transition:
    """One transition: source state, input message, optional output, target state.

    ``output`` is :data:`EPSILON` when the transition produces no output.
    """

    source: str
    input: str
    output: str
    target: str

    def __str__(self):
        return f"{self.source} -{self.input}/{self.output}-> {self.target}"


def _freeze(obj, value):
    object.__setattr__(obj, *value)


def _check_common(states, messages, transitions, initial):
    for s in states:
        _require_identifier(s, "state")
    for m in messages:
        _require_identifier(m, "message")
    for t in transitions:
        if not isinstance(t, Transition):
            raise ValueError(f"not a Transition: {t!r}")
        if t.source not in states:
            raise ValueError(f"transition source is not a declared state: {t}")
        if t.target not in states:
            raise ValueError(f"transition target is not a declared state: {t}")
        if t.input not in messages:
            raise ValueError(f"transition input is not a declared message: {t}")
        if t.output != EPSILON and t.output not in messages:
            raise ValueError(f"transition output is not a declared message: {t}")
    for s in initial:
        if s not in states:
            raise ValueError(f"initial state is not declared: {s!r}")


@dataclass(frozen=True)
class Hma:
    """Hierarchical Mealy automaton.

    ``containment`` holds immediate (child, parent) nesting edges; the full
    strict order is their transitive closure.  Acyclic edge sets are
    normalized to their transitive reduction at construction so that equal
    orders compare equal.  Cyclic edge sets are kept verbatim for
    :func:`check_context_conditions` to flag.
    """

    states: frozenset[str]
    containment: frozenset[tuple[str, str]] = frozenset()
    messages: frozenset[str] = frozenset()
    transitions: frozenset[Transition] = frozenset()
    initial: frozenset[str] = frozenset()

    def __post_init__(self):
        states = frozenset(self.states)
        containment = frozenset((c, p) for (c, p) in self.containment)
        messages = frozenset(self.messages)
        transitions = frozenset(self.transitions)
        initial = frozenset(self.initial)
        _check_common(states, messages, transitions, initial)
        for c, p in containment:
            if c not in states or p not in states:
                raise ValueError(f"containment edge references undeclared state: {(c, p)}")
        closure = _transitive_closure(containment)
        if all(c != p for (c, p) in closure):
            containment = _transitive_reduction(closure)
        _freeze(self, ("states", states))
        _freeze(self, ("containment", containment))
        _freeze(self, ("messages", messages))
        _freeze(self, ("transitions", transitions))
        _freeze(self, ("initial", initial))

    def containment_closure(self) -> frozenset[tuple[str, str]]:
        """The full strict containment order, (substate, superstate) pairs."""
        return _closure_of(self)


@dataclass(frozen=True)
class Ma:
    """Flat Mealy automaton: an :class:`Hma` without containment."""

    states: frozenset[str]
    messages: frozenset[str] = frozenset()
    transitions: frozenset[Transition] = frozenset()
    initial: frozenset[str] = frozenset()

    def __post_init__(self):
        states = frozenset(self.states)
        messages = frozenset(self.messages)
        transitions = frozenset(self.transitions)
        initial = frozenset(self.initial)
        _check_common(states, messages, transitions, initial)
        _freeze(self, ("states", states))
        _freeze(self, ("messages", messages))
        _freeze(self, ("transitions", transitions))
        _freeze(self, ("initial", initial))


def _transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for c, p in pairs:
        succ.setdefault(c, set()).add(p)
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for c, p in list(closure):
            for q in succ.get(p, ()):
                if (c, q) not in closure:
                    closure.add((c, q))
                    changed = True
    return frozenset(closure)


def _transitive_reduction(closure: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    # Unique for acyclic relations: keep (c, p) only if no state lies strictly between.
    return frozenset(
        (c, p)
        for (c, p) in closure
        if not any((c, q) in closure and (q, p) in closure for q in {b for (_, b) in closure})
    )


@lru_cache(maxsize=1024)
def _closure_of(h: Hma) -> frozenset[tuple[str, str]]:
    return _transitive_closure(h.containment)


def _has_cycle(closure) -> bool:
    return any(c == p for (c, p) in closure)


def basic_states(h: Hma) -> frozenset[str]:
    """The states with no proper substate; exactly these survive flattening."""
    closure = h.containment_closure()
    if _has_cycle(closure):
        raise ContextError(
            "containment is cyclic; basic states are undefined",
            [_cycle_diagnostic(closure)],
        )
    composite = {p for (_, p) in closure}
    return frozenset(h.states - composite)


def superstates(h: Hma, s: str) -> frozenset[str]:
    """``s`` together with every state it is (transitively) nested in."""
    if s not in h.states:
        raise ValueError(f"unknown state: {s!r}")
    closure = h.containment_closure()
    return frozenset({s} | {p for (c, p) in closure if c == s})


def _cycle_diagnostic(closure) -> Diagnostic:
    witness = min(c for (c, p) in closure if c == p)
    return Diagnostic(
        ERROR,
        "cyclic-containment",
        f"containment relation contains a cycle through '{witness}'",
        witness,
    )


def check_context_conditions(h: Hma, strictness: str = "strict") -> list[Diagnostic]:
    """Check the well-formedness rules beyond referential integrity.

    Errors: ``cyclic-containment`` always; ``empty-initial`` only in strict
    mode.  Warnings: ``overlapping-states`` (a state nested in two
    incomparable parents), ``unreachable-state`` (a basic state the flattened
    automaton cannot reach from its initial configuration).  A document is
    admitted exactly when no *errors* are reported.

    The returned list is deterministically ordered by (code, subject).
    """
    if strictness not in ("lenient", "strict"):
        raise ValueError(f"unknown strictness: {strictness!r}")
    diags: list[Diagnostic] = []
    closure = h.containment_closure()
    cyclic = _has_cycle(closure)
    if cyclic:
        diags.append(_cycle_diagnostic(closure))
    if strictness == "strict" and not h.initial:
        diags.append(Diagnostic(ERROR, "empty-initial", "the set of initial states is empty"))
    if not cyclic:
        diags.extend(_overlap_warnings(h, closure))
        diags.extend(_unreachable_warnings(h))
    return _sorted_diagnostics(diags)


def _overlap_warnings(h, closure):
    for s in sorted(h.states):
        parents = sorted(p for (c, p) in closure if c == s)
        pair = next(
            (
                (p, q)
                for i, p in enumerate(parents)
                for q in parents[i + 1 :]
                if (p, q) not in closure and (q, p) not in closure
            ),
            None,
        )
        if pair:
            yield Diagnostic(
                WARNING,
                "overlapping-states",
                f"state '{s}' is nested in incomparable states '{pair[0]}' and '{pair[1]}'",
                s,
            )


def _unreachable_warnings(h):
    from hma.flatten import _flatten_unchecked  # deferred to avoid an import cycle

    flat = _flatten_unchecked(h)
    succ: dict[str, set[str]] = {s: set() for s in flat.states}
    for t in flat.transitions:
        succ[t.source].add(t.target)
    seen = set(flat.initial)
    frontier = list(flat.initial)
    while frontier:
        nxt = frontier.pop()
        for t in succ[nxt]:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    for s in sorted(flat.states - seen):
        yield Diagnostic(
            WARNING,
            "unreachable-state",
            f"basic state '{s}' cannot be reached from the initial configuration",
            s,
        )


def require_valid(h: Hma, strictness: str = "strict") -> None:
    """Raise :class:`ContextError` if the document has context-condition errors."""
    errors = [d for d in check_context_conditions(h, strictness) if d.severity == ERROR]
    if errors:
        raise ContextError(
            "; ".join(str(d) for d in errors),
            errors,
        )


def is_deterministic(m: Ma) -> tuple[bool, list[Diagnostic]]:
    """True iff every (state, input) pair has at most one outcome in the
    transition relation; diagnostics name each violating pair."""
    outcomes: dict[tuple[str, str], set[tuple[str, str]]] = {}
    for t in m.transitions:
        outcomes.setdefault((t.source, t.input), set()).add((t.output, t.target))
    diags = [
        Diagnostic(
            INFO,
            "nondeterministic-choice",
            f"state '{s}' has {len(v)} possible outcomes for input '{i}'",
            f"{s}/{i}",
        )
        for (s, i), v in outcomes.items()
        if len(v) > 1
    ]
    return (not diags, _sorted_diagnostics(diags))


def is_complete(m: Ma) -> tuple[bool, list[Diagnostic]]:
    """True iff no (state, input) pair lacks an accepting transition."""
    from hma.complete import partial_pairs  # deferred to avoid an import cycle

    diags = [
        Diagnostic(
            INFO,
            "partial-pair",
            f"state '{s}' has no transition accepting input '{i}'",
            f"{s}/{i}",
        )
        for (s, i) in partial_pairs(m)
    ]
    return (not diags, _sorted_diagnostics(diags))
