"""Names over a frame: the rank- and width-truncated universe of forcing names."""

from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Mapping

from .config import DEFAULT_CEILINGS
from .errors import BoundError, InputError
from .frames import Frame, FrameElement
from .hfsets import HFSet


class Name:
    """A finite function from names to frame elements.

    Identity is structural: two names are equal iff they live over the same
    frame and have the same entries.  Entries are kept sorted by the child's
    ``sort_key`` so iteration order is deterministic.
    """

    __slots__ = ("frame", "entries", "rank", "sort_key", "_hash")

    def __init__(self, frame: Frame, entries: Iterable[tuple["Name", FrameElement]] = ()):
        self.frame = frame
        pairs = list(entries)
        seen: dict[Name, FrameElement] = {}
        for child, value in pairs:
            if not isinstance(child, Name):
                raise InputError(f"name domain entries must be names, got {type(child).__name__}")
            if child.frame.frame_id != frame.frame_id:
                raise InputError(f"frame mismatch: {child.frame.frame_id} vs {frame.frame_id}")
            frame.check(value)
            if child in seen:
                raise InputError("duplicate key in name literal")
            seen[child] = value
        pairs.sort(key=lambda cv: cv[0].sort_key)
        self.entries: tuple[tuple[Name, FrameElement], ...] = tuple(pairs)
        self.rank = max((c.rank + 1 for c, _ in pairs), default=0)
        self.sort_key = (self.rank, len(pairs), tuple((c.sort_key, v.mask) for c, v in pairs))
        self._hash = hash((frame.frame_id, self.sort_key))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Name)
            and self._hash == other._hash
            and self.frame.frame_id == other.frame.frame_id
            and self.sort_key == other.sort_key
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Name") -> bool:
        return self.sort_key < other.sort_key

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple["Name", FrameElement]]:
        return iter(self.entries)

    @property
    def domain(self) -> tuple["Name", ...]:
        return tuple(c for c, _ in self.entries)

    def __getitem__(self, child: "Name") -> FrameElement:
        for c, v in self.entries:
            if c == child:
                return v
        raise KeyError(child)

    def __repr__(self):
        return f"Name({self})"

    def __str__(self):
        if not self.entries:
            return "empty"
        inner = ", ".join(f"{c}: [{','.join(v.atoms)}]" for c, v in self.entries)
        return "name{ " + inner + " }"


def empty_name(frame: Frame) -> Name:
    return Name(frame)


def make_name(frame: Frame, entries: Mapping[Name, FrameElement] | Iterable[tuple[Name, FrameElement]]) -> Name:
    items = entries.items() if isinstance(entries, Mapping) else entries
    return Name(frame, items)


def _same_frame(a: Name, b: Name) -> Frame:
    if a.frame.frame_id != b.frame.frame_id:
        raise InputError(f"frame mismatch: {a.frame.frame_id} vs {b.frame.frame_id}")
    return a.frame


def check_name(frame: Frame, x: HFSet) -> Name:
    """Canonical name: every member's canonical name with value ⊤."""
    top = frame.top
    cache: dict[HFSet, Name] = {}

    def go(s: HFSet) -> Name:
        if s not in cache:
            cache[s] = Name(frame, [(go(y), top) for y in s])
        return cache[s]

    return go(x)


def up(a: Name, b: Name) -> Name:
    frame = _same_frame(a, b)
    top = frame.top
    return Name(frame, [(a, top)] if a == b else [(a, top), (b, top)])


def op_pair(a: Name, b: Name) -> Name:
    return up(up(a, a), up(a, b))


def prune_bottom(a: Name) -> Name:
    """Drop every entry whose value is ⊥, recursively."""
    bot = a.frame.bottom_m
    return Name(a.frame, [(prune_bottom(c), v) for c, v in a.entries if v.mask != bot])


def map_values(a: Name, target: Frame, fn) -> Name:
    """Rebuild ``a`` over ``target`` with each value mask sent through ``fn``."""
    memo: dict[Name, Name] = {}

    def go(n: Name) -> Name:
        if n not in memo:
            merged: dict[Name, int] = {}
            for c, v in n.entries:
                m = go(c)
                merged[m] = target.join_m(merged[m], fn(v.mask)) if m in merged else fn(v.mask)
            memo[n] = Name(target, [(c, target.element(m)) for c, m in merged.items()])
        return memo[n]

    return go(a)


def domain_closure(names: Iterable[Name]) -> frozenset[Name]:
    out: set[Name] = set()
    stack = list(names)
    while stack:
        n = stack.pop()
        if n not in out:
            out.add(n)
            stack.extend(n.domain)
    return frozenset(out)


def is_transitive(names: Iterable[Name]) -> bool:
    s = set(names)
    return all(c in s for n in s for c in n.domain)


class NameUniverse:
    """All names up to a rank and domain-width bound, deterministically ordered."""

    def __init__(self, frame: Frame, rank_bound: int, width_bound: int, names: Iterable[Name]):
        self.frame = frame
        self.rank_bound = rank_bound
        self.width_bound = width_bound
        self.names: tuple[Name, ...] = tuple(sorted(set(names), key=lambda n: n.sort_key))
        self.index: dict[Name, int] = {n: k for k, n in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[Name]:
        return iter(self.names)

    def __contains__(self, n) -> bool:
        return n in self.index

    def __repr__(self):
        return f"NameUniverse({self.frame.frame_id}, rank<={self.rank_bound}, width<={self.width_bound}, {len(self)} names)"

    @property
    def count(self) -> int:
        return len(self.names)

    def of_rank(self, r: int) -> tuple[Name, ...]:
        return tuple(n for n in self.names if n.rank <= r)

    def sub_universe(self, names: Iterable[Name]) -> "NameUniverse":
        names = list(names)
        if not is_transitive(names):
            raise InputError("sub-universe is not closed under domains")
        return NameUniverse(self.frame, self.rank_bound, self.width_bound, names)


def projected_count(previous: int, values: int, width: int) -> int:
    return sum(comb(previous, i) * values**i for i in range(min(width, previous) + 1))


def enumerate_names(
    f: Frame, rank_bound: int, width_bound: int, ceiling: int = DEFAULT_CEILINGS.names
) -> NameUniverse:
    """Every name of rank ``<= rank_bound`` whose domain has ``<= width_bound`` entries.

    Entries with value ⊥ are left out; they never change an interpretation.
    """
    if rank_bound < 0 or width_bound < 0:
        raise InputError("bounds must be non-negative")
    values = [e for e in f.elements if e.mask != f.bottom_m]
    level: list[Name] = [Name(f)]
    for r in range(1, rank_bound + 1):
        projected = projected_count(len(level), len(values), width_bound)
        if projected > ceiling:
            raise BoundError(f"rank {r}: {projected} names projected, ceiling is {ceiling}")
        nxt = []
        for k in range(min(width_bound, len(level)) + 1):
            for dom in combinations(level, k):
                for vals in product(values, repeat=k):
                    nxt.append(Name(f, zip(dom, vals)))
        level = nxt
    return NameUniverse(f, rank_bound, width_bound, level)


def canonical_name(u: NameUniverse, x: HFSet) -> Name:
    if x.rank > u.rank_bound:
        raise BoundError(f"HF set {x} has rank {x.rank}, universe bound is {u.rank_bound}")
    return check_name(u.frame, x)


def relativized_names(f: Frame, A: Iterable[Name], rank_bound: int, width_bound: int) -> frozenset[Name]:
    """Names of the bounded universe constructed from inside the collection ``A``.

    The construction is the inductive definition whose rules are
    ``⟨dom a, a⟩`` for each admissible ``a ∈ A``; its least fixed point is the
    relativized universe.
    """
    from .inductive import InductiveDefinition, least_fixed_point

    A = list(A)
    rules = [
        (frozenset(a.domain), a)
        for a in A
        if a.frame.frame_id == f.frame_id
        and a.rank <= rank_bound
        and len(a) <= width_bound
        and all(v.mask != f.bottom_m for _, v in a.entries)
    ]
    universe = frozenset(A) | frozenset(c for a in A for c in a.domain)
    return frozenset(least_fixed_point(InductiveDefinition(rules, universe)))


def resolve_term(term, frame: Frame, assignment: Mapping[str, Name] | None = None) -> Name:
    """Build the name a term denotes over ``frame``; variables come from ``assignment``."""
    from . import formulas as fl
    from .errors import ResolutionError

    assignment = assignment or {}
    if isinstance(term, fl.Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise ResolutionError(f"unresolved term {term.name!r}") from None
    if isinstance(term, fl.EmptyLit):
        return Name(frame)
    if isinstance(term, fl.CheckLit):
        return check_name(frame, term.hf)
    if isinstance(term, fl.UpLit):
        return up(resolve_term(term.left, frame, assignment), resolve_term(term.right, frame, assignment))
    if isinstance(term, fl.OpLit):
        return op_pair(resolve_term(term.left, frame, assignment), resolve_term(term.right, frame, assignment))
    if isinstance(term, fl.NameLit):
        entries = []
        for key, atoms in term.entries:
            try:
                value = frame.element(atoms)
            except InputError as exc:
                raise ResolutionError(str(exc)) from None
            entries.append((resolve_term(key, frame, assignment), value))
        try:
            return Name(frame, entries)
        except InputError as exc:
            raise ResolutionError(str(exc)) from None
    raise TypeError(f"not a term: {term!r}")


def parse_name(text: str, frame: Frame, assignment: Mapping[str, Name] | None = None) -> Name:
    """Parse a name literal such as ``name{ empty: [0], check({{}}): [0,1] }``."""
    from .formulas import parse_term

    assignment = dict(assignment or {})
    return resolve_term(parse_term(text, params=assignment), frame, assignment)
