"""Benchmark the native enumeration kernel against the pure-Python fallback.

Builds chaos-completed automata (the worst case for trace growth), runs both
implementations on identical encoded inputs, verifies they agree, and prints
a timing table.

    python benchmarks/bench_enumeration.py
    python benchmarks/bench_enumeration.py --states 5 --messages 3 --depth 6
"""

from __future__ import annotations

import argparse
import time

from hma import _enumerate_py
from hma.complete import complete_chaos
from hma.core import EPSILON, Ma, Transition

try:
    from hma import _kernel
except ImportError:
    _kernel = None


def build_case(n_states: int, n_messages: int):
    """A sparse ring automaton, chaos-completed over the rest of the alphabet."""
    states = [f"s{k}" for k in range(n_states)]
    messages = [f"m{k}" for k in range(n_messages)]
    ring = {
        Transition(states[k], messages[0], messages[k % n_messages], states[(k + 1) % n_states])
        for k in range(n_states)
    }
    m = Ma(frozenset(states), frozenset(messages), frozenset(ring), frozenset({states[0]}))
    return complete_chaos(m, cap=10**7)


def encode(m: Ma):
    state_index = {s: k for k, s in enumerate(sorted(m.states))}
    message_index = {name: k for k, name in enumerate(sorted(m.messages))}
    transitions = [
        (
            state_index[t.source],
            message_index[t.input],
            -1 if t.output == EPSILON else message_index[t.output],
            state_index[t.target],
        )
        for t in m.transitions
    ]
    return (
        len(state_index),
        len(message_index),
        transitions,
        sorted(state_index[s] for s in m.initial),
    )


def time_call(fn, args, repeat: int) -> tuple[float, object]:
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def run_one(n_states: int, n_messages: int, depth: int, repeat: int, cap: int):
    m = build_case(n_states, n_messages)
    encoded = encode(m)
    args = (*encoded, depth, cap)
    pure_time, pure_result = time_call(_enumerate_py.enumerate_traces, args, repeat)
    row = {
        "states": n_states,
        "messages": n_messages,
        "depth": depth,
        "traces": len(pure_result),
        "pure_s": pure_time,
        "native_s": None,
        "speedup": None,
    }
    if _kernel is not None and _kernel.packing_feasible(n_messages, depth):
        native_time, native_result = time_call(_kernel.enumerate_traces, args, repeat)
        if native_result != pure_result:
            raise AssertionError("backends disagree; this is a bug")
        row["native_s"] = native_time
        row["speedup"] = pure_time / native_time
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--states", type=int)
    parser.add_argument("--messages", type=int)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--cap", type=int, default=50_000_000)
    opts = parser.parse_args()

    if opts.states or opts.messages or opts.depth:
        cases = [(opts.states or 4, opts.messages or 3, opts.depth or 5)]
    else:
        cases = [(3, 2, 4), (3, 2, 6), (4, 3, 4), (4, 3, 5), (5, 3, 5), (6, 3, 5)]

    if _kernel is None:
        print("note: native kernel unavailable; timing the pure implementation only")
    header = f"{'states':>6} {'msgs':>5} {'depth':>5} {'traces':>9} {'pure':>9} {'native':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n_states, n_messages, depth in cases:
        row = run_one(n_states, n_messages, depth, opts.repeat, opts.cap)
        native = f"{row['native_s']:.4f}s" if row["native_s"] is not None else "-"
        speedup = f"{row['speedup']:.1f}x" if row["speedup"] is not None else "-"
        print(
            f"{row['states']:>6} {row['messages']:>5} {row['depth']:>5} "
            f"{row['traces']:>9} {row['pure_s']:>8.4f}s {native:>9} {speedup:>8}"
        )


if __name__ == "__main__":
    main()
