# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Exceptions raised by ctslab.

All errors derive from :class:`CtsError`. Errors caused by malformed input
also derive from :class:`ValueError`, lookups of unknown identifiers from
:class:`KeyError`, so callers that only know the builtin types still catch
them.
"""

from typing import Optional, Sequence

__all__ = [
    "CtsError",
    "CtsSyntaxError",
    "UnknownSymbol",
    "DuplicateRewriteId",
    "MissingSection",
    "UnknownRewrite",
    "InvalidSystem",
    "G1Blocked",
    "G2SymbolAbsent",
    "G2RightmostMismatch",
    "G2Empty",
    "NotRealTime",
    "NotZeroSequential",
    "WordAlphabetError",
    "WrongFamily",
    "NotEnabled",
    "UnknownTransition",
    "SemanticsMismatch",
    "NonEmittingRule",
    "MultiInputTransition",
    "MultiTokenStart",
    "LambdaTransition",
    "UnclassifiableRewrite",
    "UnproducibleTerminal",
]


class CtsError(Exception):
    """Base class of every ctslab error."""


class CtsSyntaxError(CtsError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownSymbol(CtsError, ValueError):
    def __init__(self, name: str, line: Optional[int] = None):
        message = f"unknown symbol {name!r}"
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.name = name
        self.line = line


class DuplicateRewriteId(CtsError, ValueError):
    pass


class MissingSection(CtsError, ValueError):
    def __init__(self, section: str):
        super().__init__(f"missing section {section!r}")
        self.section = section


class UnknownRewrite(CtsError, KeyError):
    def __str__(self):
        # KeyError quotes its argument, keep the message readable.
        return str(self.args[0]) if self.args else ""


class InvalidSystem(CtsError, ValueError):
    def __init__(self, violations: Sequence):
        self.violations = tuple(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid system: {details}")


class G1Blocked(CtsError):
    pass


class G2SymbolAbsent(CtsError):
    pass


class G2RightmostMismatch(CtsError):
    pass


class G2Empty(CtsError):
    pass


class NotRealTime(CtsError):
    pass


class NotZeroSequential(CtsError):
    pass


class WordAlphabetError(CtsError, ValueError):
    pass


class WrongFamily(CtsError):
    pass


class NotEnabled(CtsError):
    pass


class UnknownTransition(CtsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class SemanticsMismatch(CtsError):
    pass


class NonEmittingRule(CtsError):
    pass


class MultiInputTransition(CtsError):
    pass


class MultiTokenStart(CtsError):
    pass


class LambdaTransition(CtsError):
    pass


class UnclassifiableRewrite(CtsError):
    pass


class UnproducibleTerminal(CtsError, ValueError):
    pass
