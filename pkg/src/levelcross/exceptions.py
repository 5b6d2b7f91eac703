class LevelCrossException(Exception):
    pass


class LevelCrossWarning(Warning):
    pass


class InvalidInput(LevelCrossException):
    pass


class TheoremViolation(LevelCrossException):
    """Raised when a witness that a theorem guarantees could not be produced.

    The guarantees hold unconditionally, so this exception always signals a bug
    in the code computing the witness, never a property of the input.
    """


class SchemaError(InvalidInput):
    def __init__(self, message: str, position: str | None = None) -> None:
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class UnsupportedDimension(InvalidInput):
    pass


class InfeasibleEnumeration(LevelCrossException):
    pass
