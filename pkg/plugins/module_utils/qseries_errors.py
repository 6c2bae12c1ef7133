"""
Exceptions raised by the q-series library.
"""


class QSeriesError(Exception):
    """Base class for every error raised by module_utils."""


class LeadingCoefficientNotUnit(QSeriesError):
    def __init__(self, coefficient):
        self.coefficient = coefficient
        super().__init__(f"Leading coefficient {coefficient} is not a unit (expected +1 or -1)")


class ZeroSeries(QSeriesError):
    def __init__(self, message="Cannot invert the zero series"):
        super().__init__(message)


class InsufficientOrder(QSeriesError):
    def __init__(self, requested, available, what="series"):
        self.requested = requested
        self.available = available
        super().__init__(f"Requested order {requested} exceeds the trusted order {available} of the {what}")


class NegativeValuation(QSeriesError):
    def __init__(self, valuation):
        self.valuation = valuation
        super().__init__(f"Extraction needs a power series, got valuation {valuation}")


class ResidueOutOfRange(QSeriesError):
    def __init__(self, residue, step):
        self.residue = residue
        self.step = step
        super().__init__(f"Residue {residue} is outside 0..{step - 1}")


class UnknownSeries(QSeriesError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"Unknown series: {name}")


class ClaimSyntaxError(QSeriesError):
    """Parse failure with a location and the set of tokens that would have been accepted."""

    def __init__(self, message, line, column, expected=None):
        self.line = line
        self.column = column
        self.expected = sorted(expected or [])
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class UnknownName(QSeriesError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}unknown name '{name}'")


class ArityError(QSeriesError):
    def __init__(self, func, expected, got, line=None, column=None):
        self.func = func
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{func}() takes {expected} arguments, got {got}")


class RelationFailure(QSeriesError):
    def __init__(self, relation, witness):
        self.relation = relation
        self.witness = witness
        super().__init__(f"Relation {relation} does not hold: {witness}")
