class BallastError(Exception):
    """
    Base class for every error raised by the library.
    """


class ValidationError(BallastError):
    """
    Raised when arguments or input documents fail validation.
    """


class StoreError(BallastError):
    """
    Raised when a store file cannot be read or holds a corrupt record.

    Args:
        message (str): Human-readable description of the problem.
        path (Path, optional): The offending store file.
        line (int, optional): 1-based line number of the offending record.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f" ({path}" + (f", line {line}" if line is not None else "") + ")"
        super().__init__(f"{message}{location}")


class FinalisationError(BallastError):
    """
    Raised when a cycle node is finalised more than once.
    """
