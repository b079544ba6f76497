"""Variable registry.

Every variable is a ``(family, index)`` pair.  Variables order by family
rank, then index.  Internally each variable owns a 16-bit "slot" used by
the packed monomial encoding in :mod:`kgroth.algebra.laurent`; slots are
handed out on first use and never reused.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

FAMILIES = (
    "alpha", "beta", "epsilon", "z", "omega", "sigma", "tau", "t", "x",
    "abar", "bbar",
)
FAMILY_RANK = {name: i for i, name in enumerate(FAMILIES)}

# short names used by the canonical text rendering
SHORT_NAMES = {
    "alpha": "a", "beta": "b", "epsilon": "e", "z": "z", "omega": "w",
    "sigma": "s", "tau": "u", "t": "t", "x": "x", "abar": "A", "bbar": "B",
}

SLOT_BITS = 16
MAX_EXPONENT = (1 << (SLOT_BITS - 1)) - 1

_slots: dict[tuple[str, int], int] = {}
_by_slot: list["Variable"] = []
_lock = threading.Lock()


@dataclass(frozen=True, order=True)
class Variable:
    rank: int = field(init=False, repr=False)
    family: str
    index: int

    def __init__(self, family: str, index: int):
        if family not in FAMILY_RANK:
            raise ValueError(f"unknown variable family {family!r}")
        if not isinstance(index, int) or index < 1:
            raise ValueError(f"variable index must be a positive integer, got {index!r}")
        object.__setattr__(self, "rank", FAMILY_RANK[family])
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "index", index)

    @property
    def slot(self) -> int:
        key = (self.family, self.index)
        s = _slots.get(key)
        if s is None:
            with _lock:
                s = _slots.get(key)
                if s is None:
                    s = len(_by_slot)
                    _by_slot.append(self)
                    _slots[key] = s
        return s

    @property
    def name(self) -> str:
        return f"{SHORT_NAMES[self.family]}{self.index}"

    def __str__(self) -> str:
        return self.name


def variable_for_slot(slot: int) -> Variable:
    return _by_slot[slot]


def alpha(i: int) -> Variable:
    return Variable("alpha", i)


def beta(i: int) -> Variable:
    return Variable("beta", i)


def epsilon(i: int) -> Variable:
    return Variable("epsilon", i)


def z(i: int) -> Variable:
    return Variable("z", i)


def omega(i: int) -> Variable:
    return Variable("omega", i)


def sigma(i: int) -> Variable:
    return Variable("sigma", i)


def tau(i: int = 1) -> Variable:
    return Variable("tau", i)


def t(i: int = 1) -> Variable:
    return Variable("t", i)


def x(i: int) -> Variable:
    return Variable("x", i)


def abar(i: int) -> Variable:
    return Variable("abar", i)


def bbar(i: int) -> Variable:
    return Variable("bbar", i)


_FAMILY_BY_SHORT = {v: k for k, v in SHORT_NAMES.items()}


def parse_variable(name: str) -> Variable:
    """Inverse of ``Variable.name``: 'a1' -> alpha(1), 'B2' -> bbar(2)."""
    fam = _FAMILY_BY_SHORT.get(name[:1])
    if fam is None or not name[1:].isdigit():
        raise ValueError(f"not a variable name: {name!r}")
    return Variable(fam, int(name[1:]))
