"""Pure-Python trace enumeration, the fallback for the native kernel.

Both implementations share one contract: states and messages are dense
integer indices, transitions are (source, input, output, target) tuples with
output -1 for "no output", and the result is the set of (inputs, outputs)
integer-tuple pairs of every behavior of length at most ``depth`` starting
from an initial state.

The recursion works backwards over the remaining step budget: the behaviors
for n+1 steps from a state are one transition prepended to the behaviors for
n steps from that transition's target, and the zero-step behavior is the
empty trace.  Outputs of -1 vanish instead of being recorded.
"""

from __future__ import annotations

from hma.errors import SizeCapError


def enumerate_traces(n_states, n_messages, transitions, initial, depth, cap):
    """Set of (input tuple, output tuple) pairs reachable within ``depth`` steps.

    Raises :class:`SizeCapError` when the result or an intermediate per-state
    table would exceed ``cap`` traces.
    """
    by_source = [[] for _ in range(n_states)]
    for (s, i, o, t) in transitions:
        by_source[s].append((i, o, t))

    total: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    if initial:
        total.add(((), ()))
    prev = [{((), ())} for _ in range(n_states)]
    for level in range(1, depth + 1):
        cur: list[set] = [set() for _ in range(n_states)]
        table_size = 0
        for s in range(n_states):
            bucket = cur[s]
            for (i, o, t) in by_source[s]:
                if o < 0:
                    bucket.update(((i,) + iq, oq) for (iq, oq) in prev[t])
                else:
                    bucket.update(((i,) + iq, (o,) + oq) for (iq, oq) in prev[t])
            table_size += len(bucket)
            if table_size > cap:
                raise SizeCapError(
                    f"trace enumeration exceeded the cap of {cap} at depth {level}"
                )
        for s in initial:
            total |= cur[s]
        if len(total) > cap:
            raise SizeCapError(
                f"trace enumeration exceeded the cap of {cap} at depth {level}"
            )
        prev = cur
    return total
