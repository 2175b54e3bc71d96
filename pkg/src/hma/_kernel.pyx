# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native trace-enumeration kernel.

Same contract as hma._enumerate_py.enumerate_traces, but traces are packed
into 64-bit integers (one base-(|M|+1) code per side, a leading sentinel
digit marking the length) and the per-state tables live in C++ hash sets.
packing_feasible() reports whether the alphabet/depth combination fits in a
word; callers fall back to the pure implementation when it does not.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from hma.errors import SizeCapError

ctypedef long long i64


cdef struct Edge:
    int msg
    int out   # -1 for no output
    int tgt


def packing_feasible(int n_messages, int depth):
    """True if every trace of length <= depth packs into one 64-bit key."""
    cdef i64 base = n_messages + 1
    cdef i64 limit = 1
    cdef int k
    if base < 2:
        return False
    # need base**(2*depth + 2) < 2**62
    for k in range(2 * depth + 2):
        if limit > (<i64>1 << 62) // base:
            return False
        limit *= base
    return True


cdef inline int _length_of(i64 code, vector[i64] &powers) nogil:
    cdef int k = 0
    while powers[k + 1] <= code:
        k += 1
    return k


def enumerate_traces(int n_states, int n_messages, transitions, initial, int depth, i64 cap):
    cdef i64 base = n_messages + 1
    if not packing_feasible(n_messages, depth):
        raise OverflowError("alphabet or depth too large for the packed kernel")

    cdef vector[i64] powers
    cdef int k
    powers.resize(depth + 2)
    powers[0] = 1
    for k in range(1, depth + 2):
        powers[k] = powers[k - 1] * base
    cdef i64 LIM = powers[depth + 1]

    cdef vector[vector[Edge]] edges
    edges.resize(n_states)
    cdef Edge e
    for (s, i, o, t) in transitions:
        e.msg = i
        e.out = o
        e.tgt = t
        edges[s].push_back(e)
    cdef vector[int] starts
    for s in initial:
        starts.push_back(s)

    cdef unordered_set[i64] total
    cdef i64 empty_key = powers[0] * LIM + powers[0]  # sentinel-only on both sides
    if starts.size() > 0:
        total.insert(empty_key)

    cdef vector[unordered_set[i64]] prev, cur
    prev.resize(n_states)
    cur.resize(n_states)
    cdef int st
    for st in range(n_states):
        prev[st].insert(empty_key)

    cdef int level, j, olen
    cdef i64 key, in_code, out_code, table_size
    cdef unordered_set[i64].iterator it
    for level in range(1, depth + 1):
        table_size = 0
        for st in range(n_states):
            cur[st].clear()
            for j in range(<int>edges[st].size()):
                e = edges[st][j]
                it = prev[e.tgt].begin()
                while it != prev[e.tgt].end():
                    key = deref(it)
                    inc(it)
                    in_code = key // LIM
                    out_code = key % LIM
                    # prepend the input: inputs at the previous level all have length level-1
                    in_code = powers[level] + (e.msg + 1) * powers[level - 1] + (in_code - powers[level - 1])
                    if e.out >= 0:
                        olen = _length_of(out_code, powers)
                        out_code = powers[olen + 1] + (e.out + 1) * powers[olen] + (out_code - powers[olen])
                    cur[st].insert(in_code * LIM + out_code)
            table_size += <i64>cur[st].size()
            if table_size > cap:
                raise SizeCapError(
                    f"trace enumeration exceeded the cap of {cap} at depth {level}"
                )
        for j in range(<int>starts.size()):
            st = starts[j]
            it = cur[st].begin()
            while it != cur[st].end():
                total.insert(deref(it))
                inc(it)
        if <i64>total.size() > cap:
            raise SizeCapError(
                f"trace enumeration exceeded the cap of {cap} at depth {level}"
            )
        prev.swap(cur)

    return _decode_all(total, base, LIM)


cdef _decode_all(unordered_set[i64] &total, i64 base, i64 LIM):
    result = set()
    cdef unordered_set[i64].iterator it = total.begin()
    cdef i64 key
    while it != total.end():
        key = deref(it)
        inc(it)
        result.add((_decode(key // LIM, base), _decode(key % LIM, base)))
    return result


cdef tuple _decode(i64 code, i64 base):
    digits = []
    while code > 1:
        digits.append(<int>(code % base) - 1)
        code //= base
    digits.reverse()
    return tuple(digits)
