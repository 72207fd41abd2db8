from .errors import (
    CapExceededError,
    DirectoryError,
    InvariantError,
    NonBipartiteError,
    ParseError,
    PreconditionError,
    UNCPathError,
)
from .version import __version__

__all__ = [
    "CapExceededError",
    "DirectoryError",
    "InvariantError",
    "NonBipartiteError",
    "ParseError",
    "PreconditionError",
    "UNCPathError",
    "__version__",
]
