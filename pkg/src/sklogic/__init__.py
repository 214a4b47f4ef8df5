"""sklogic: relational logic programming with stable-model negation and
integrity constraints, plus a brute-force stable-model oracle."""

from .engine import (
    ALL,
    CallNeg,
    CallPos,
    Conj,
    Disj,
    Fresh,
    Program,
    Solver,
    State,
    Unify,
    noto,
    run_query,
)
from .errors import (
    DepthLimitError,
    EngineError,
    GroundingError,
    LoadError,
    NonGroundError,
    ReadError,
    SklError,
    VerifierError,
)
from .frontend import compile_query, load_files, load_program, parse_program, parse_query
from .reader import read
from .terms import NIL, Pair, Var, print_term, reify, unify, walk

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "CallNeg",
    "CallPos",
    "Conj",
    "Disj",
    "Fresh",
    "NIL",
    "Pair",
    "Program",
    "Solver",
    "State",
    "Unify",
    "Var",
    "compile_query",
    "load_files",
    "load_program",
    "noto",
    "parse_program",
    "parse_query",
    "print_term",
    "read",
    "reify",
    "run_query",
    "unify",
    "walk",
    "DepthLimitError",
    "EngineError",
    "GroundingError",
    "LoadError",
    "NonGroundError",
    "ReadError",
    "SklError",
    "VerifierError",
    "__version__",
]
