"""Finite inductive definitions: one-step operator, least fixed point, iteration stages."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Hashable, Iterable

from .errors import InputError, ParseError


@dataclass(frozen=True)
class InductiveDefinition:
    """A finite set of rules ``⟨X, a⟩`` over a finite base universe."""

    rules: frozenset[tuple[frozenset, Hashable]]
    universe: frozenset

    def __init__(self, rules: Iterable[tuple[Iterable, Hashable]], universe: Iterable | None = None):
        rs = frozenset((frozenset(X), a) for X, a in rules)
        if universe is None:
            universe = {a for _, a in rs} | {x for X, _ in rs for x in X}
        U = frozenset(universe)
        for X, a in rs:
            if a not in U or not X <= U:
                raise InputError(f"rule {sorted(map(str, X))} => {a} leaves the base universe")
        object.__setattr__(self, "rules", rs)
        object.__setattr__(self, "universe", U)


def gamma(phi: InductiveDefinition, C: Iterable) -> frozenset:
    """Conclusions of rules whose premises all lie in ``C``."""
    C = frozenset(C)
    return frozenset(a for X, a in phi.rules if X <= C)


def is_closed(phi: InductiveDefinition, C: Iterable) -> bool:
    C = frozenset(C)
    return gamma(phi, C) <= C


def iteration_class(phi: InductiveDefinition, stages: int) -> list[frozenset]:
    """Stages ``J^0..J^stages`` with ``J^n = Γ(⋃_{m<n} J^m)``."""
    if stages < 0:
        raise InputError("stages must be non-negative")
    out: list[frozenset] = []
    acc: frozenset = frozenset()
    for _ in range(stages + 1):
        stage = gamma(phi, acc)
        out.append(stage)
        acc = acc | stage
    return out


def least_fixed_point(phi: InductiveDefinition) -> frozenset:
    current: frozenset = frozenset()
    while True:
        nxt = gamma(phi, current)
        if nxt <= current:
            return current
        current = current | nxt


def stabilization_index(phi: InductiveDefinition) -> int:
    """First stage index ``n`` with ``J^n = J^{n+1}``."""
    stages = iteration_class(phi, len(phi.universe) + 1)
    for n in range(len(stages) - 1):
        if stages[n] == stages[n + 1]:
            return n
    raise AssertionError("iteration did not stabilize within |U| + 1 stages")


def verify_minimality(phi: InductiveDefinition, fixed: Iterable | None = None, limit: int = 12) -> bool:
    """No proper subset of the fixed point is closed (exhaustive; ``|U| <= limit``)."""
    if len(phi.universe) > limit:
        raise InputError(f"minimality check limited to |U| <= {limit}")
    fp = frozenset(least_fixed_point(phi) if fixed is None else fixed)
    if not is_closed(phi, fp):
        return False
    items = sorted(fp, key=repr)
    for k in range(len(items)):
        for sub in combinations(items, k):
            if is_closed(phi, sub):
                return False
    return True


def parse_rules(text: str) -> InductiveDefinition:
    """One rule per line, ``X => a`` with ``X`` a comma-separated (possibly empty) atom list.

    An optional ``universe: a b c`` line widens the base universe.
    """
    rules = []
    universe: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("universe:"):
            universe.update(line[len("universe:"):].replace(",", " ").split())
            continue
        lhs, arrow, rhs = line.partition("=>")
        if not arrow:
            raise ParseError("expected 'X => a'", lineno, 1)
        concl = rhs.strip()
        if not concl or len(concl.split()) != 1:
            raise ParseError("conclusion must be a single atom", lineno, raw.find("=>") + 3)
        prem = [p.strip() for p in lhs.split(",") if p.strip()]
        rules.append((prem, concl))
        universe.add(concl)
        universe.update(prem)
    return InductiveDefinition(rules, universe)


def load_rules(path: str | Path) -> InductiveDefinition:
    return parse_rules(Path(path).read_text())
