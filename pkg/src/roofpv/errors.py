"""Exception hierarchy shared by every roofpv module."""


class RoofPVError(Exception):
    """Base class for all roofpv errors."""


class ParseError(RoofPVError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RecordCountError(ParseError):
    def __init__(self, count, expected=8760):
        self.count = count
        self.expected = expected
        RoofPVError.__init__(self, f"expected {expected} hourly records, found {count}")
        self.line = None


class FieldError(ParseError):
    def __init__(self, message, row, column):
        self.row = row
        self.column = column
        RoofPVError.__init__(self, f"row {row}, column {column}: {message}")
        self.line = None


class DomainError(RoofPVError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(RoofPVError, ValueError):
    def __init__(self, message, violations=()):
        self.violations = list(violations)
        if self.violations:
            message = message + ": " + "; ".join(str(v) for v in self.violations)
        super().__init__(message)


class CalibrationError(RoofPVError, ValueError):
    pass


class ShapeError(RoofPVError, ValueError):
    pass


class UsageError(RoofPVError, ValueError):
    pass
