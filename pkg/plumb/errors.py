class ParseError(Exception):
    message: str


class NonBipartiteError(ParseError):
    message: str
    cycle: list[str]

    def __init__(self, message: str, cycle: list[str]):
        super().__init__(message)
        self.message = message
        self.cycle = cycle


class PreconditionError(Exception):
    message: str


class CapExceededError(Exception):
    message: str


class InvariantError(Exception):
    message: str


class DirectoryError(Exception):
    message: str


class UNCPathError(Exception):
    message: str
