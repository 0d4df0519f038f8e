"""
Errors - exception hierarchy for nclogic
Input and usage problems raise; mathematical outcomes are returned as verdicts
"""
from typing import Optional


class NCLogicError(ValueError):
    """Base class for every input/usage error"""


class FormulaSyntaxError(NCLogicError):
    """Malformed formula text"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class SignatureError(NCLogicError):
    """Signature declares overlapping or malformed names"""


class UnknownSymbolError(NCLogicError):
    """Relation or constant not declared in the signature"""

    def __init__(self, symbol: str, offset: Optional[int] = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"unknown symbol '{symbol}'{where}")
        self.symbol = symbol
        self.offset = offset


class ArityError(NCLogicError):
    """Atom or tuple disagrees with the declared arity"""


class ModelValidationError(NCLogicError):
    """A model violates one of its structural invariants"""


class UnboundVariableError(NCLogicError):
    """Assignment does not cover a free variable"""

    def __init__(self, name: str):
        super().__init__(f"unbound variable '{name}'")
        self.name = name


class BudgetExceededError(NCLogicError):
    """Requested bound is above the configured enumeration budget"""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what}: {required} exceeds budget {budget}")
        self.required = required
        self.budget = budget


class SchemaError(NCLogicError):
    """Bad axiom schema id or missing metavariable"""


class CaptureError(SchemaError):
    """Term is not free for the variable it replaces"""


class ProofFormatError(NCLogicError):
    """Proof document cannot be read into lines"""


class UniverseError(NCLogicError):
    """Bad fragment, non-classical input or failing witness"""


class UnknownCheckError(NCLogicError):
    """Unknown axiom, connective or battery name"""
