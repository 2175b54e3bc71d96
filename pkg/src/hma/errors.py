"""Exception hierarchy shared by all modules.

Kept free of imports so the native kernel can raise these without
creating import cycles.
"""


class HmaError(Exception):
    """Base class for all errors raised by this package."""


class ContextError(HmaError):
    """An operation was applied to a document that fails its context conditions.

    Carries the offending diagnostics in ``self.diagnostics``.
    """

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class SizeCapError(HmaError):
    """A completion or enumeration would exceed its configured size cap."""


class MismatchError(HmaError):
    """Two trace sets or automata are not comparable (depth or alphabet differ)."""


class RuleConditionError(HmaError):
    """A transformation rule's context condition failed.

    ``self.check`` names the failed check.
    """

    def __init__(self, check, message):
        super().__init__(f"{check}: {message}")
        self.check = check


class TraceFormatError(HmaError):
    """A trace-set document is malformed."""


class UnserializableError(HmaError):
    """The automaton lies outside the range of the concrete syntax."""
