import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hma.behavior import Trace, TraceSet, semantics_impl
from hma.core import EPSILON, Hma, Transition, check_context_conditions
from hma.errors import TraceFormatError, UnserializableError
from hma.textio import ParseError, parse_hma, parse_traces, serialize_hma, serialize_traces

from genlib import random_hma

T = Transition


class TestParseDocuments:
    def test_minimal_document(self):
        h = parse_hma("hma T { messages { a } state s initial; trans s -a/-> s; }")
        assert isinstance(h, Hma)
        assert h.states == {"s"}
        assert h.messages == {"a"}
        assert h.transitions == {T("s", "a", EPSILON, "s")}
        assert h.initial == {"s"}

    def test_nested_document(self):
        h = parse_hma(
            """
            hma n {
              messages { x, y }
              state Top {
                state A initial;
                state B;
              }
              trans Top -x/y-> B;
            }
            """
        )
        assert isinstance(h, Hma)
        assert h.containment == {("A", "Top"), ("B", "Top")}
        assert h.transitions == {T("Top", "x", "y", "B")}
        assert h.initial == {"A"}

    def test_missing_target_reports_expected_state(self):
        errors = parse_hma("hma T { messages { a } state s initial; trans s -a/b-> }")
        assert isinstance(errors, list)
        assert len(errors) == 1
        assert errors[0].expected == "a state identifier"

    def test_initial_block(self):
        h = parse_hma("hma T { messages { a } state p; state q; initial { p, q } }")
        assert isinstance(h, Hma)
        assert h.initial == {"p", "q"}

    def test_comments_and_whitespace(self):
        h = parse_hma(
            "// header\nhma T { // inline\n messages { a }\n state s initial; }"
        )
        assert isinstance(h, Hma)

    def test_duplicate_state_declaration(self):
        errors = parse_hma("hma T { messages { a } state s; state s; }")
        assert isinstance(errors, list)
        assert any(e.expected == "a fresh state name" for e in errors)

    def test_duplicate_message_declaration(self):
        errors = parse_hma("hma T { messages { a, a } state s; }")
        assert isinstance(errors, list)
        assert any(e.expected == "a fresh message name" for e in errors)

    def test_undeclared_references(self):
        errors = parse_hma("hma T { messages { a } state s; trans s -b/-> t; }")
        assert isinstance(errors, list)
        kinds = {e.expected for e in errors}
        assert "a declared message identifier" in kinds
        assert "a declared state identifier" in kinds

    def test_state_after_transitions_is_an_order_error(self):
        errors = parse_hma(
            "hma T { messages { a } state s initial; trans s -a/-> s; state t; }"
        )
        assert isinstance(errors, list)

    def test_multiple_errors_are_collected(self):
        errors = parse_hma(
            "hma T { messages { a } trans s -a/-> ; trans -/-> q; state ok; }"
        )
        assert isinstance(errors, list)
        assert len(errors) >= 2

    def test_layer_separation(self):
        # Documents failing context conditions still parse; the checker,
        # not the parser, rejects them.
        h = parse_hma("hma T { messages { a } state s; trans s -a/-> s; }")
        assert isinstance(h, Hma)
        errors = [d for d in check_context_conditions(h, "strict") if d.severity == "error"]
        assert [d.code for d in errors] == ["empty-initial"]

    def test_error_spans_point_into_the_text(self):
        text = "hma T { messages { a }\n  state 5bad;\n}"
        errors = parse_hma(text)
        assert isinstance(errors, list)
        lines = text.split("\n")
        for e in errors:
            assert 1 <= e.span.line <= len(lines)
            assert 1 <= e.span.column <= len(lines[e.span.line - 1]) + 1

    def test_deep_nesting_is_bounded_not_fatal(self):
        text = "hma T { messages { a } " + "state x0 { " * 300 + "}" * 300 + " }"
        result = parse_hma(text)
        assert isinstance(result, (Hma, list))


class TestFuzzing:
    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=120))
    def test_parser_total_on_arbitrary_text(self, text):
        result = parse_hma(text)
        assert isinstance(result, (Hma, list))
        if isinstance(result, list):
            assert result
            for e in result:
                assert isinstance(e, ParseError)
                assert e.span.line >= 1 and e.span.column >= 1

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(
            st.sampled_from(
                ["hma", "messages", "state", "initial", "trans", "{", "}", ";", ",",
                 "-", "/", "->", "a", "s", "t0"]
            ),
            max_size=40,
        )
    )
    def test_parser_total_on_token_soup(self, words):
        result = parse_hma(" ".join(words))
        assert isinstance(result, (Hma, list))


class TestSerializeDocuments:
    def test_round_trip_identity(self):
        rng = random.Random(101)
        for _ in range(200):
            h = random_hma(rng, forest_only=True, initial_mode="any")
            assert parse_hma(serialize_hma(h)) == h

    def test_canonical_bytes_for_equal_automata(self):
        a = Hma(states=["s", "t"], messages=["b", "a"],
                transitions=[T("t", "a", "b", "s"), T("s", "a", EPSILON, "t")],
                initial=["s"])
        b = Hma(states=["t", "s"], messages=["a", "b"],
                transitions=[T("s", "a", EPSILON, "t"), T("t", "a", "b", "s")],
                initial=["s"])
        assert serialize_hma(a) == serialize_hma(b)

    def test_golden_flatten_output(self, corpus_dir, golden_dir):
        from hma.flatten import embed, flatten

        h = parse_hma((corpus_dir / "nested.hma").read_text(), "nested.hma")
        assert isinstance(h, Hma)
        got = serialize_hma(embed(flatten(h)))
        assert got == (golden_dir / "nested.flat.hma").read_text()

    def test_overlapping_containment_is_unserializable(self):
        h = Hma(states={"A", "B", "C"}, containment={("C", "A"), ("C", "B")},
                messages={"m"}, initial={"C"})
        with pytest.raises(UnserializableError):
            serialize_hma(h)

    def test_empty_alphabet_is_unserializable(self):
        with pytest.raises(UnserializableError):
            serialize_hma(Hma(states={"s"}, initial={"s"}))

    def test_keyword_names_are_unserializable(self):
        h = Hma(states={"state"}, messages={"m"}, initial={"state"})
        with pytest.raises(UnserializableError):
            serialize_hma(h)

    def test_corpus_parses_cleanly(self, corpus_dir):
        for path in sorted(corpus_dir.glob("*.hma")):
            result = parse_hma(path.read_text(), str(path))
            assert isinstance(result, Hma), f"{path}: {result}"


class TestTraceIo:
    def test_empty_trace_rendering(self):
        ts = TraceSet(0, {"a"}, frozenset({Trace((), ())}))
        assert serialize_traces(ts) == "depth 0 over a\n- / -\n"

    def test_seven_line_example(self, corpus_dir):
        h = parse_hma((corpus_dir / "two_loop.hma").read_text())
        text = serialize_traces(semantics_impl(h, 2))
        lines = text.splitlines()
        assert lines[0] == "depth 2 over a b"
        assert len(lines) == 8

    def test_round_trip(self):
        rng = random.Random(103)
        from hma.behavior import semantics_spec

        for _ in range(20):
            h = random_hma(rng, max_states=3, max_messages=2)
            ts = semantics_spec(h, 2)
            assert parse_traces(serialize_traces(ts)) == ts

    def test_missing_header(self):
        with pytest.raises(TraceFormatError):
            parse_traces("")
        with pytest.raises(TraceFormatError):
            parse_traces("traces 2\n- / -\n")

    def test_unknown_message(self):
        with pytest.raises(TraceFormatError):
            parse_traces("depth 1 over a\nb / -\n")

    def test_malformed_lines(self):
        for bad in ("a -\n", "a / b / c\n", "/ a\n", "a /\n"):
            with pytest.raises(TraceFormatError):
                parse_traces("depth 2 over a b\n" + bad)

    def test_outputs_longer_than_inputs_rejected(self):
        with pytest.raises(TraceFormatError):
            parse_traces("depth 2 over a b\na / a b\n")

    def test_trace_beyond_depth_rejected(self):
        with pytest.raises(TraceFormatError):
            parse_traces("depth 1 over a\na a / -\n")
