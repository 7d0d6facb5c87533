"""Finite abelian groups written as products of cyclic groups Z_n1 x ... x Z_nr.

Elements are residue vectors compared within a fixed presentation; the
presentations ``[6]`` and ``[2, 3]`` are different objects that happen to be
isomorphic.  Nothing downstream depends on more than the order of the group
and the number of even cyclic factors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import GroupMismatchError, InvalidGroupError


@dataclass(frozen=True)
class AbelianGroup:
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(self.cyclic_orders)
        if not orders:
            raise InvalidGroupError("a group needs at least one cyclic factor")
        for n in orders:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise InvalidGroupError(f"cyclic order must be an integer >= 1, got {n!r}")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse a comma separated list of cyclic orders such as ``"2,4"``."""
        try:
            orders = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise InvalidGroupError(f"malformed group description {text!r}") from None
        return cls(orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, *residues: int) -> "GroupElement":
        if len(residues) == 1 and not isinstance(residues[0], int):
            residues = tuple(residues[0])
        if len(residues) != self.rank:
            raise InvalidGroupError(f"expected {self.rank} residues, got {len(residues)}")
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.cyclic_orders)))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements, in mixed-radix order (last factor varies fastest)."""
        for res in itertools.product(*(range(n) for n in self.cyclic_orders)):
            yield GroupElement(self, res)

    def index(self, g: "GroupElement") -> int:
        """Mixed-radix position of ``g`` in :meth:`elements`."""
        self._check(g)
        idx = 0
        for r, n in zip(g.residues, self.cyclic_orders):
            idx = idx * n + r
        return idx

    def from_index(self, idx: int) -> "GroupElement":
        res = []
        for n in reversed(self.cyclic_orders):
            idx, r = divmod(idx, n)
            res.append(r)
        return GroupElement(self, tuple(reversed(res)))

    def epsilon(self) -> int:
        return epsilon(self)

    def involutions(self) -> list["GroupElement"]:
        return involution_set(self)

    def _check(self, g: "GroupElement") -> None:
        if not isinstance(g, GroupElement) or g.group != self:
            raise GroupMismatchError(f"{g!r} is not an element of {self}")

    def __str__(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.cyclic_orders)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, neg(other))

    def __rmul__(self, c: int) -> "GroupElement":
        if not isinstance(c, int):
            return NotImplemented
        return int_scale(c, self)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def to_json(self):
        """Plain residue for cyclic groups, residue list otherwise."""
        return self.residues[0] if len(self.residues) == 1 else list(self.residues)

    def __repr__(self) -> str:
        if len(self.residues) == 1:
            return f"{self.residues[0]} (Z_{self.group.cyclic_orders[0]})"
        return f"{self.residues} ({self.group})"


def make_group(cyclic_orders: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple(cyclic_orders))


def _same_group(g: GroupElement, h: GroupElement) -> AbelianGroup:
    if not isinstance(g, GroupElement) or not isinstance(h, GroupElement):
        raise GroupMismatchError("operands must be group elements")
    if g.group != h.group:
        raise GroupMismatchError(f"cannot combine elements of {g.group} and {h.group}")
    return g.group


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    G = _same_group(g, h)
    return GroupElement(
        G, tuple((a + b) % n for a, b, n in zip(g.residues, h.residues, G.cyclic_orders))
    )


def neg(g: GroupElement) -> GroupElement:
    return GroupElement(g.group, tuple((-a) % n for a, n in zip(g.residues, g.group.cyclic_orders)))


def int_scale(c: int, g: GroupElement) -> GroupElement:
    """``g`` added to itself ``c`` times; negative ``c`` scales the inverse."""
    if not isinstance(g, GroupElement):
        raise GroupMismatchError("int_scale needs a group element")
    return GroupElement(g.group, tuple((c * a) % n for a, n in zip(g.residues, g.group.cyclic_orders)))


def epsilon(G: AbelianGroup) -> int:
    """Largest d such that Z_2^d embeds in G: the number of even cyclic factors."""
    return sum(1 for n in G.cyclic_orders if n % 2 == 0)


def involution_set(G: AbelianGroup) -> list[GroupElement]:
    """Elements with 2g = 0, zero included.  There are 2**epsilon(G) of them."""
    choices = [(0, n // 2) if n % 2 == 0 else (0,) for n in G.cyclic_orders]
    return [GroupElement(G, res) for res in itertools.product(*choices)]


def double_solutions(gamma: GroupElement) -> list[GroupElement]:
    """All x with 2x = 2*gamma, i.e. the coset gamma + involution_set."""
    return [gamma + t for t in involution_set(gamma.group)]
