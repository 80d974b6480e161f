"""Hereditarily finite sets in canonical form.

Every HF set carries its Ackermann code ``sum(2**code(y) for y in x)``, a
bijection with the naturals that gives a canonical total order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .errors import ParseError


class HFSet:
    __slots__ = ("elements", "code", "rank", "_sorted")

    def __init__(self, elements: Iterable["HFSet"] = ()):
        elems = frozenset(elements)
        for e in elems:
            if not isinstance(e, HFSet):
                raise TypeError(f"HF set elements must be HFSet, got {type(e).__name__}")
        self.elements = elems
        self.code = sum(1 << e.code for e in elems)
        self.rank = max((e.rank + 1 for e in elems), default=0)
        self._sorted = tuple(sorted(elems, key=lambda e: e.code))

    def __eq__(self, other):
        return isinstance(other, HFSet) and self.code == other.code

    def __hash__(self):
        return hash(("HF", self.code))

    def __lt__(self, other: "HFSet") -> bool:
        return self.code < other.code

    def __iter__(self) -> Iterator["HFSet"]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    def __repr__(self):
        return f"HFSet({self})"

    def __str__(self):
        return "{" + ",".join(str(e) for e in self._sorted) + "}"

    def issubset(self, other: "HFSet") -> bool:
        return self.elements <= other.elements

    def union(self) -> "HFSet":
        return HFSet(y for x in self.elements for y in x.elements)

    def __or__(self, other: "HFSet") -> "HFSet":
        return HFSet(self.elements | other.elements)

    def __and__(self, other: "HFSet") -> "HFSet":
        return HFSet(self.elements & other.elements)

    def is_transitive(self) -> bool:
        return all(y in self.elements for x in self.elements for y in x.elements)

    def transitive_closure(self) -> "HFSet":
        seen: set[HFSet] = set()
        stack = list(self.elements)
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(x.elements)
        return HFSet(seen)

    @classmethod
    def parse(cls, text: str) -> "HFSet":
        return parse_hf(text)


EMPTY = HFSet()


@lru_cache(maxsize=None)
def from_code(n: int) -> HFSet:
    if n < 0:
        raise ValueError("Ackermann codes are non-negative")
    return HFSet(from_code(i) for i in range(n.bit_length()) if n >> i & 1)


def ordinal(n: int) -> HFSet:
    x = EMPTY
    for _ in range(n):
        x = x | HFSet([x])
    return x


def pair(a: HFSet, b: HFSet) -> HFSet:
    return HFSet([a, b])


def kpair(a: HFSet, b: HFSet) -> HFSet:
    """Kuratowski ordered pair ``{{a},{a,b}}``."""
    return HFSet([HFSet([a]), HFSet([a, b])])


def product_set(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(kpair(x, y) for x in a for y in b)


def cumulative_level(n: int) -> list[HFSet]:
    """``V_n``: all HF sets of rank below ``n``, in code order."""
    size = 0
    for _ in range(n):
        size = 1 << size
    return [from_code(i) for i in range(size)]


def parse_hf(text: str) -> HFSet:
    """Parse nested-brace literals such as ``{{},{{}}}``.  ``0``, ``1``, ``2``... denote ordinals."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def fail(msg):
        raise ParseError(msg, 1, pos + 1)

    def value() -> HFSet:
        nonlocal pos
        skip()
        if pos < len(text) and text[pos].isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return ordinal(int(text[start:pos]))
        if pos >= len(text) or text[pos] != "{":
            fail("expected '{' or an ordinal")
        pos += 1
        items = []
        skip()
        if pos < len(text) and text[pos] == "}":
            pos += 1
            return HFSet()
        while True:
            items.append(value())
            skip()
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == "}":
                pos += 1
                return HFSet(items)
            fail("expected ',' or '}'")

    result = value()
    skip()
    if pos != len(text):
        fail("trailing characters after HF literal")
    return result
