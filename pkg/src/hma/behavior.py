"""Bounded input/output trace semantics.

The meaning of an automaton is the set of (input sequence, output sequence)
pairs it can exhibit, built by a step recursion from the initial states: the
empty trace is always possible, and a trace of n+1 steps is one transition
followed by a trace of n steps from its target.  Missing outputs vanish
under sequence attachment, so output sequences never record them and may be
shorter than their input sequences.

The full semantics unions over all step counts; this module computes the
restriction to a finite depth.  Verdicts built on it are qualified "up to
depth d": refutations are sound, confirmations are bounded evidence.

Two composed pipelines interpret a hierarchical document end to end:
:func:`semantics_impl` (flatten, ignore-complete, enumerate) and
:func:`semantics_spec` (flatten, chaos-complete, enumerate).

The per-level extension loop is the hot path.  A compiled kernel is used
when it was built and the alphabet/depth combination fits its packed
representation; otherwise a pure-Python twin takes over.  Set
HMA_PURE_PYTHON=1 to force the fallback.  Both produce identical sets.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from hma import _enumerate_py
from hma.complete import DEFAULT_CHAOS_CAP, complete_chaos, complete_ignore
from hma.core import EPSILON, Hma, Ma, require_valid
from hma.errors import MismatchError
from hma.flatten import flatten

try:
    from hma import _kernel
except ImportError:
    _kernel = None
if os.environ.get("HMA_PURE_PYTHON"):
    _kernel = None

#: Which implementation the package selected at import.
BACKEND = "native" if _kernel is not None else "pure-python"

#: Default cap on the number of enumerated traces.
DEFAULT_TRACE_CAP = 10_000_000


@dataclass(frozen=True, order=True)
class Trace:
    """One observed behavior: an input sequence and its output sequence.

    Output sequences never contain the absent-output marker and are at most
    as long as their input sequence.  Ordering is lexicographic by inputs,
    then outputs — the canonical order used everywhere traces are listed.
    """

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        if len(self.outputs) > len(self.inputs):
            raise ValueError(f"more outputs than inputs: {self!r}")
        if EPSILON in self.inputs or EPSILON in self.outputs:
            raise ValueError("the absent-output marker cannot appear in a sequence")

    def render(self) -> str:
        left = " ".join(self.inputs) if self.inputs else "-"
        right = " ".join(self.outputs) if self.outputs else "-"
        return f"{left} / {right}"


@dataclass(frozen=True)
class TraceSet:
    """A finite trace set together with the depth it was enumerated to."""

    depth: int
    alphabet: frozenset[str]
    traces: frozenset[Trace]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "traces", frozenset(self.traces))
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        for t in self.traces:
            if len(t.inputs) > self.depth:
                raise ValueError(f"trace longer than the declared depth: {t!r}")

    def ordered(self) -> list[Trace]:
        """Traces in canonical order."""
        return sorted(self.traces)

    def at_depth(self, depth: int) -> "TraceSet":
        """The restriction to traces of at most ``depth`` inputs."""
        if depth > self.depth:
            raise ValueError("cannot extend a trace set beyond its enumeration depth")
        return TraceSet(
            depth, self.alphabet, frozenset(t for t in self.traces if len(t.inputs) <= depth)
        )

    def __len__(self):
        return len(self.traces)

    def __contains__(self, trace):
        return trace in self.traces

    def __iter__(self):
        return iter(self.ordered())


def _select_backend(n_messages: int, depth: int):
    if (
        _kernel is not None
        and n_messages > 0
        and _kernel.packing_feasible(n_messages, depth)
    ):
        return _kernel.enumerate_traces
    return _enumerate_py.enumerate_traces


def behaviors(m: Ma, depth: int, trace_cap: int = DEFAULT_TRACE_CAP) -> TraceSet:
    """Every behavior of at most ``depth`` steps from the initial states.

    An empty initial set yields the empty trace set; otherwise the empty
    trace is always included.  Raises :class:`SizeCapError` when more than
    ``trace_cap`` traces would be produced.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    state_index = {s: k for k, s in enumerate(sorted(m.states))}
    message_names = sorted(m.messages)
    message_index = {name: k for k, name in enumerate(message_names)}
    transitions = [
        (
            state_index[t.source],
            message_index[t.input],
            -1 if t.output == EPSILON else message_index[t.output],
            state_index[t.target],
        )
        for t in m.transitions
    ]
    initial = sorted(state_index[s] for s in m.initial)
    run = _select_backend(len(message_names), depth)
    raw = run(len(state_index), len(message_names), transitions, initial, depth, trace_cap)
    traces = frozenset(
        Trace(
            tuple(message_names[i] for i in ins),
            tuple(message_names[o] for o in outs),
        )
        for (ins, outs) in raw
    )
    return TraceSet(depth, frozenset(m.messages), traces)


def semantics_impl(
    h: Hma,
    depth: int,
    chaos_cap: int = DEFAULT_CHAOS_CAP,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> TraceSet:
    """Implementation semantics: missing transitions ignore their input.

    ``chaos_cap`` is accepted for symmetry with :func:`semantics_spec` but
    unused; ignore-completion adds at most one transition per partial pair.
    """
    del chaos_cap
    require_valid(h, "strict")
    return behaviors(complete_ignore(flatten(h)), depth, trace_cap)


def semantics_spec(
    h: Hma,
    depth: int,
    chaos_cap: int = DEFAULT_CHAOS_CAP,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> TraceSet:
    """Specification semantics: missing transitions allow any behavior."""
    require_valid(h, "strict")
    return behaviors(complete_chaos(flatten(h), chaos_cap), depth, trace_cap)


def trace_subset(a: TraceSet, b: TraceSet) -> tuple[bool, Trace | None]:
    """Whether ``a`` is contained in ``b``; on failure, one witness trace.

    The two sets must have been enumerated to the same depth — comparing at
    unequal bounds would silently weaken the verdict.
    """
    if a.depth != b.depth:
        raise MismatchError(f"trace sets at different depths: {a.depth} vs {b.depth}")
    missing = a.traces - b.traces
    if missing:
        return False, min(missing)
    return True, None


def trace_intersection(a: TraceSet, b: TraceSet) -> TraceSet:
    """Traces allowed by both sets; the meaning of composing two documents."""
    if a.depth != b.depth:
        raise MismatchError(f"trace sets at different depths: {a.depth} vs {b.depth}")
    if a.alphabet != b.alphabet:
        raise MismatchError("trace sets over different message alphabets")
    return TraceSet(a.depth, a.alphabet, a.traces & b.traces)


def is_consistent(
    h: Hma,
    depth: int,
    chaos_cap: int = DEFAULT_CHAOS_CAP,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> bool:
    """Whether the document admits any implementation (nonempty meaning).

    For these automata this reduces to having an initial basic state after
    flattening; the enumeration and the reduction are cross-checked.
    """
    flat = flatten(h)
    result = behaviors(complete_chaos(flat, chaos_cap), depth, trace_cap)
    nonempty = len(result) > 0
    assert nonempty == bool(flat.initial), "consistency must equal initial-state nonemptiness"
    return nonempty
