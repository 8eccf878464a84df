"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CentralizerLabError(Exception):
    """Base class for all errors raised by centralizer_lab."""


# group construction and manipulation


class NotAGroup(CentralizerLabError):
    def __init__(self, reason: str):
        super().__init__(f"not a group: {reason}")
        self.reason = reason


class DimensionMismatch(CentralizerLabError):
    pass


class OrderCapExceeded(CentralizerLabError):
    pass


class InvalidPermutation(CentralizerLabError):
    pass


class UnsupportedSpec(CentralizerLabError):
    pass


class NotASubgroup(CentralizerLabError):
    pass


class NotNormal(CentralizerLabError):
    pass


class EmptyCarrier(CentralizerLabError):
    pass


class GroupFileError(CentralizerLabError):
    pass


# centraliser engine


class PreconditionViolated(CentralizerLabError):
    pass


class TooLarge(CentralizerLabError):
    pass


# formulas


class FormulaSyntaxError(CentralizerLabError):
    """Raised by the formula parser; carries the offending offset."""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        msg = f"at offset {position}: expected {expected}"
        if text:
            snippet = text[position:position + 20]
            msg += f" near {snippet!r}"
        super().__init__(msg)


class EmptyGraph(CentralizerLabError):
    pass


class BadLength(CentralizerLabError):
    pass


class BadParameter(CentralizerLabError):
    pass


# model checking


class UnboundVariable(CentralizerLabError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class BudgetExceeded(CentralizerLabError):
    pass


class InconsistencyDetected(CentralizerLabError):
    """Two independent computations disagreed. Always an internal bug."""


# command line


class UnknownGroup(CentralizerLabError):
    pass


class BadGraph(CentralizerLabError):
    pass
