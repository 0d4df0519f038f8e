"""
Truth values - the four values of BS4 as (truth, falsity) bit pairs
The twin T/F clauses of the semantics act on the two bits independently
"""
from typing import Dict, Iterable, NamedTuple, Tuple

from src.core.errors import NCLogicError


class TruthValue(NamedTuple):
    """Independent truth and falsity components"""
    is_true: bool
    is_false: bool

    @property
    def name(self) -> str:
        return _NAMES[self]

    @property
    def designated(self) -> bool:
        return self.is_true

    @property
    def classical(self) -> bool:
        return self.is_true != self.is_false

    def __str__(self) -> str:
        return self.name

    @staticmethod
    def from_name(name: str) -> "TruthValue":
        try:
            return _BY_NAME[str(name).strip()]
        except KeyError:
            raise NCLogicError(f"unknown truth value '{name}' (expected 1, b, n or 0)") from None


ONE = TruthValue(True, False)
BOTH = TruthValue(True, True)
NEITHER = TruthValue(False, False)
ZERO = TruthValue(False, True)

# Display order of Table rows and columns
VALUES: Tuple[TruthValue, ...] = (ONE, BOTH, NEITHER, ZERO)

_NAMES: Dict[TruthValue, str] = {ONE: "1", BOTH: "b", NEITHER: "n", ZERO: "0"}
_BY_NAME: Dict[str, TruthValue] = {v: k for k, v in _NAMES.items()}


def combine(is_true: bool, is_false: bool) -> TruthValue:
    return TruthValue(bool(is_true), bool(is_false))


def neg(a: TruthValue) -> TruthValue:
    return TruthValue(a.is_false, a.is_true)


def conj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(a.is_true and b.is_true, a.is_false or b.is_false)


def disj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(a.is_true or b.is_true, a.is_false and b.is_false)


def imp(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue((not a.is_true) or b.is_true, a.is_true and b.is_false)


def iff(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(
        a.is_true == b.is_true,
        (a.is_true and b.is_false) or (a.is_false and b.is_true),
    )


def forall(values: Iterable[TruthValue]) -> TruthValue:
    """Iterated conjunction; the empty case is 1"""
    all_true, any_false = True, False
    for v in values:
        all_true = all_true and v.is_true
        any_false = any_false or v.is_false
        if not all_true and any_false:
            break
    return TruthValue(all_true, any_false)


def exists(values: Iterable[TruthValue]) -> TruthValue:
    """Iterated disjunction; the empty case is 0"""
    any_true, all_false = False, True
    for v in values:
        any_true = any_true or v.is_true
        all_false = all_false and v.is_false
        if any_true and not all_false:
            break
    return TruthValue(any_true, all_false)
