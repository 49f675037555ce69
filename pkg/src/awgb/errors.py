"""Exception hierarchy shared by all modules."""


class AwgbError(Exception):
    """Base class for every error raised by the package."""


# coefficient field
class ZeroDenominator(AwgbError, ZeroDivisionError):
    pass


class DivisionByZero(AwgbError, ZeroDivisionError):
    pass


class PoleAtPoint(AwgbError, ZeroDivisionError):
    pass


class BadSpecialization(AwgbError, ValueError):
    pass


# free algebra
class AlphabetMismatch(AwgbError, ValueError):
    pass


class DegenerateParameter(AwgbError, ValueError):
    pass


class UnmappedGenerator(AwgbError, KeyError):
    def __init__(self, letter):
        super().__init__(letter)
        self.letter = letter

    def __str__(self):
        return f"no image for generator {self.letter}"


class IndexOutOfRange(AwgbError, IndexError):
    pass


# presentation / subsets
class UnsupportedSize(AwgbError, ValueError):
    pass


class NotDisjoint(AwgbError, ValueError):
    pass


class MultipleHoles(AwgbError, ValueError):
    pass


class NonMonotonic(AwgbError, ValueError):
    pass


class Overlapping(AwgbError, ValueError):
    pass


# ideal engine
class BudgetExhausted(AwgbError, TimeoutError):
    """Completion ran out of time; ``system`` holds the partial result."""

    def __init__(self, msg, system=None):
        super().__init__(msg)
        self.system = system


class TooLarge(AwgbError, ValueError):
    pass


class IoFailure(AwgbError, OSError):
    pass


class ProvenanceMismatch(AwgbError, ValueError):
    pass


class FormatVersionMismatch(AwgbError, ValueError):
    pass


class ExprSyntaxError(AwgbError, SyntaxError):
    """Parse failure; carries 1-based line and column."""

    def __init__(self, msg, src="", pos=0):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col
