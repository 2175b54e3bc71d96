"""Workbench for hierarchical Mealy automata.

Parse ``.hma`` documents, remove the state hierarchy, complete partial
transition relations (ignore or chaos variant), enumerate bounded
input/output trace sets, and check consistency, composition and refinement
by trace-set inclusion.
"""

from hma.behavior import (
    BACKEND,
    Trace,
    TraceSet,
    behaviors,
    is_consistent,
    semantics_impl,
    semantics_spec,
    trace_intersection,
    trace_subset,
)
from hma.complete import complete_chaos, complete_ignore, partial_pairs
from hma.core import (
    EPSILON,
    Diagnostic,
    Hma,
    Ma,
    Transition,
    basic_states,
    check_context_conditions,
    is_complete,
    is_deterministic,
    superstates,
)
from hma.errors import (
    ContextError,
    HmaError,
    MismatchError,
    RuleConditionError,
    SizeCapError,
    TraceFormatError,
    UnserializableError,
)
from hma.flatten import embed, flatten, flatten_with_witnesses
from hma.refine import (
    RefinementVerdict,
    RuleApplication,
    apply_rule,
    check_refinement,
    verify_rule_soundness,
)
from hma.textio import (
    ParseError,
    SourceSpan,
    parse_hma,
    parse_traces,
    serialize_hma,
    serialize_traces,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ContextError",
    "Diagnostic",
    "EPSILON",
    "Hma",
    "HmaError",
    "Ma",
    "MismatchError",
    "ParseError",
    "RefinementVerdict",
    "RuleApplication",
    "RuleConditionError",
    "SizeCapError",
    "SourceSpan",
    "Trace",
    "TraceFormatError",
    "TraceSet",
    "Transition",
    "UnserializableError",
    "apply_rule",
    "basic_states",
    "behaviors",
    "check_context_conditions",
    "check_refinement",
    "complete_chaos",
    "complete_ignore",
    "embed",
    "flatten",
    "flatten_with_witnesses",
    "is_complete",
    "is_consistent",
    "is_deterministic",
    "parse_hma",
    "parse_traces",
    "partial_pairs",
    "semantics_impl",
    "semantics_spec",
    "serialize_hma",
    "serialize_traces",
    "superstates",
    "trace_intersection",
    "trace_subset",
    "verify_rule_soundness",
]
