"""Finite formal topologies and their frames of stable lower sets.

Subsets of the carrier are int bitmasks (bit ``i`` is ``atoms[i]``).  A
covering relation is tabulated extensionally: ``covers[i]`` is an int whose
bit ``p`` is set when ``atoms[i]`` covers the subset with mask ``p``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .config import DEFAULT_CEILINGS
from .errors import BoundError, InputError, ParseError


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class FormalTopology:
    atoms: tuple[str, ...]
    order: frozenset[tuple[str, str]]
    covers: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise InputError("duplicate atoms in carrier")
        if len(self.covers) != len(self.atoms):
            raise InputError("cover table must have one row per atom")

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise InputError(f"atom {atom!r} is not in the carrier") from None

    def mask(self, atoms: Iterable[str]) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.index(str(a))
        return m

    def atoms_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.atoms[i] for i in bits(mask))

    def leq(self, i: int, j: int) -> bool:
        return (self.atoms[i], self.atoms[j]) in self.order

    @property
    def below(self) -> tuple[int, ...]:
        # mask of atoms <= atoms[i]
        return tuple(
            sum(1 << j for j in range(self.size) if self.leq(j, i)) for i in range(self.size)
        )

    def down(self, mask: int) -> int:
        below = self.below
        out = 0
        for i in bits(mask):
            out |= below[i]
        return out

    def is_lower(self, mask: int) -> bool:
        return self.down(mask) == mask

    def covered(self, i: int, p: int) -> bool:
        return bool(self.covers[i] >> p & 1)

    def nucleus(self, p: int) -> int:
        return sum(1 << i for i in range(self.size) if self.covered(i, p))

    def digest(self) -> str:
        payload = json.dumps(
            [list(self.atoms), sorted(self.order), list(self.covers)], separators=(",", ":")
        )
        return hashlib.sha1(payload.encode()).hexdigest()[:12]

    @classmethod
    def from_predicate(
        cls,
        atoms: Sequence[str],
        le: Iterable[tuple[str, str]],
        covers: Callable[[str, frozenset[str]], bool],
        name: str = "",
        close_order: bool = True,
    ) -> "FormalTopology":
        """Tabulate ``covers(atom, subset)`` over every subset of the carrier."""
        atoms = tuple(str(a) for a in atoms)
        if len(atoms) > DEFAULT_CEILINGS.carrier:
            raise BoundError(f"carrier of {len(atoms)} atoms exceeds ceiling {DEFAULT_CEILINGS.carrier}")
        order = order_closure(atoms, le) if close_order else frozenset((str(a), str(b)) for a, b in le)
        subsets = [frozenset(a for k, a in enumerate(atoms) if p >> k & 1) for p in range(1 << len(atoms))]
        rows = []
        for a in atoms:
            row = 0
            for p, sub in enumerate(subsets):
                if covers(a, sub):
                    row |= 1 << p
            rows.append(row)
        return cls(atoms, order, tuple(rows), name)


def order_closure(atoms: Sequence[str], le: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure of the generating pairs."""
    atoms = [str(a) for a in atoms]
    rel = {(a, a) for a in atoms}
    for a, b in le:
        a, b = str(a), str(b)
        if a not in atoms or b not in atoms:
            raise InputError(f"order pair {a}<={b} mentions an atom outside the carrier")
        rel.add((a, b))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return frozenset(rel)


def downset_topology(atoms, le=(), name: str = "") -> FormalTopology:
    """``x`` covers ``p`` iff ``x`` lies below some member of ``p``."""
    order = order_closure(atoms, le)
    return FormalTopology.from_predicate(
        atoms, order, lambda x, p: any((x, y) in order for y in p), name, close_order=False
    )


def discrete_topology(atoms, le=(), name: str = "") -> FormalTopology:
    """``x`` covers ``p`` iff ``x`` is a member of ``p``."""
    return FormalTopology.from_predicate(atoms, le, lambda x, p: x in p, name)


def dense_topology(atoms, le=(), name: str = "") -> FormalTopology:
    """Dense covering: every element below ``x`` has an element of ``↓p`` below it."""
    order = order_closure(atoms, le)

    def covers(x, p):
        lower = {z for z in atoms if any((z, y) in order for y in p)}
        return all(
            any((z, y) in order and z in lower for z in atoms) for y in atoms if (y, x) in order
        )

    return FormalTopology.from_predicate(atoms, order, covers, name, close_order=False)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom}: {self.witness}"


def validate_topology(t: FormalTopology) -> list[Violation]:
    """Every violated poset law or covering axiom instance; empty iff valid."""
    n = t.size
    out: list[Violation] = []
    if n == 0:
        return [Violation("carrier non-empty", ())]
    at = t.atoms
    fmt = t.atoms_of
    for i in range(n):
        if not t.leq(i, i):
            out.append(Violation("reflexivity", (at[i],)))
    for i, j in product(range(n), repeat=2):
        if i != j and t.leq(i, j) and t.leq(j, i):
            out.append(Violation("antisymmetry", (at[i], at[j])))
        for k in range(n):
            if t.leq(i, j) and t.leq(j, k) and not t.leq(i, k):
                out.append(Violation("transitivity", (at[i], at[j], at[k])))
    subsets = range(1 << n)
    below = t.below
    downs = [t.down(p) for p in subsets]
    for a in range(n):
        for p in subsets:
            if p >> a & 1 and not t.covered(a, p):
                out.append(Violation("reflexive cover", (at[a], fmt(p))))
    for a, b in product(range(n), repeat=2):
        if a != b and below[b] >> a & 1:
            for p in subsets:
                if t.covered(b, p) and not t.covered(a, p):
                    out.append(Violation("downward cover", (at[a], at[b], fmt(p))))
    # cov_by[q] = mask of atoms covering q
    cov_by = [t.nucleus(q) for q in subsets]
    for a in range(n):
        for p in subsets:
            if not t.covered(a, p):
                continue
            for q in subsets:
                if p & ~cov_by[q] == 0 and not t.covered(a, q):
                    out.append(Violation("transitive cover", (at[a], fmt(p), fmt(q))))
                if t.covered(a, q) and not t.covered(a, downs[p] & downs[q]):
                    out.append(Violation("meet cover", (at[a], fmt(p), fmt(q))))
    return out


@dataclass(frozen=True, order=False)
class FrameElement:
    mask: int
    frame_id: str
    atoms: tuple[str, ...] = field(compare=False, hash=False)

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.atoms)

    def __le__(self, other: "FrameElement") -> bool:
        _same_frame(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "FrameElement") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "FrameElement") -> bool:
        return other <= self

    def __gt__(self, other: "FrameElement") -> bool:
        return other < self

    def __repr__(self):
        return "{" + ",".join(self.atoms) + "}"


def _same_frame(p: FrameElement, q: FrameElement) -> None:
    if p.frame_id != q.frame_id:
        raise InputError(f"elements belong to different frames ({p.frame_id} vs {q.frame_id})")


class Frame:
    """The frame of stable lower sets of a formal topology, with all tables precomputed.

    Mask-level operations (``meet_m``, ``join_m``, ...) are the hot path for the
    evaluator; the element-level methods wrap them with frame checks.
    """

    def __init__(self, topology: FormalTopology, frame_id: str | None = None):
        self.topology = topology
        self.frame_id = frame_id or f"{topology.name or 'topology'}#{topology.digest()}"
        n = topology.size
        self.closure: tuple[int, ...] = tuple(topology.nucleus(p) for p in range(1 << n))
        masks = [p for p in range(1 << n) if topology.is_lower(p) and self.closure[p] == p]
        masks.sort(key=lambda m: (popcount(m), m))
        self.masks: tuple[int, ...] = tuple(masks)
        self.index: dict[int, int] = {m: k for k, m in enumerate(masks)}
        self.top_m = topology.full
        self.bottom_m = self.closure[0]
        self.elements: tuple[FrameElement, ...] = tuple(self._wrap(m) for m in masks)
        below = topology.below
        # x is in p -> q iff every y <= x in p is in q
        self._imp: dict[tuple[int, int], int] = {}
        for p in masks:
            for q in masks:
                r = 0
                for x in range(n):
                    if below[x] & p & ~q == 0:
                        r |= 1 << x
                self._imp[p, q] = r
        self._join = {(p, q): self.closure[p | q] for p in masks for q in masks}
        self.generators: tuple[int, ...] = tuple(
            sorted({self.closure[below[x]] for x in range(n)}, key=lambda m: (popcount(m), m))
        )
        self._neg = {p: self._imp[p, self.bottom_m] for p in masks}
        self._dn = {p: self._neg[self._neg[p]] for p in masks}

    def __repr__(self):
        return f"Frame({self.frame_id}, {len(self.masks)} elements)"

    def __len__(self) -> int:
        return len(self.masks)

    # mask level
    def meet_m(self, p: int, q: int) -> int:
        return p & q

    def join_m(self, p: int, q: int) -> int:
        return self._join[p, q]

    def imp_m(self, p: int, q: int) -> int:
        return self._imp[p, q]

    def neg_m(self, p: int) -> int:
        return self._neg[p]

    def dn_m(self, p: int) -> int:
        return self._dn[p]

    def big_join_m(self, masks: Iterable[int]) -> int:
        u = 0
        for m in masks:
            u |= m
        return self.closure[u]

    def big_meet_m(self, masks: Iterable[int]) -> int:
        out = self.top_m
        for m in masks:
            out &= m
        return out

    # element level
    def _wrap(self, mask: int) -> FrameElement:
        return FrameElement(mask, self.frame_id, self.topology.atoms_of(mask))

    def element(self, atoms_or_mask) -> FrameElement:
        """Look up a frame element by mask or by an iterable of atoms."""
        mask = atoms_or_mask if isinstance(atoms_or_mask, int) else self.topology.mask(atoms_or_mask)
        k = self.index.get(mask)
        if k is None:
            raise InputError(f"{self.topology.atoms_of(mask)} is not a stable lower set of {self.frame_id}")
        return self.elements[k]

    def owns(self, p: FrameElement) -> bool:
        return p.frame_id == self.frame_id and p.mask in self.index

    def check(self, *ps: FrameElement) -> None:
        for p in ps:
            if not isinstance(p, FrameElement) or not self.owns(p):
                raise InputError(f"{p!r} is not an element of frame {self.frame_id}")

    @property
    def top(self) -> FrameElement:
        return self.element(self.top_m)

    @property
    def bottom(self) -> FrameElement:
        return self.element(self.bottom_m)

    @property
    def generator_elements(self) -> tuple[FrameElement, ...]:
        return tuple(self.element(m) for m in self.generators)

    def meet(self, p: FrameElement, q: FrameElement) -> FrameElement:
        self.check(p, q)
        return self.element(p.mask & q.mask)

    def join(self, p: FrameElement, q: FrameElement) -> FrameElement:
        self.check(p, q)
        return self.element(self.join_m(p.mask, q.mask))

    def implies(self, p: FrameElement, q: FrameElement) -> FrameElement:
        self.check(p, q)
        return self.element(self.imp_m(p.mask, q.mask))

    def neg(self, p: FrameElement) -> FrameElement:
        self.check(p)
        return self.element(self.neg_m(p.mask))

    def big_join(self, ps: Iterable[FrameElement]) -> FrameElement:
        ps = list(ps)
        self.check(*ps)
        return self.element(self.big_join_m(p.mask for p in ps))

    def big_meet(self, ps: Iterable[FrameElement]) -> FrameElement:
        ps = list(ps)
        self.check(*ps)
        return self.element(self.big_meet_m(p.mask for p in ps))

    def is_boolean(self) -> bool:
        return all(self.join_m(p, self.neg_m(p)) == self.top_m for p in self.masks)

    def to_json(self) -> dict:
        k = self.index
        ms = self.masks
        return {
            "frame": self.frame_id,
            "atoms": list(self.topology.atoms),
            "elements": [list(self.topology.atoms_of(m)) for m in ms],
            "top": k[self.top_m],
            "bottom": k[self.bottom_m],
            "meet": [[k[p & q] for q in ms] for p in ms],
            "join": [[k[self.join_m(p, q)] for q in ms] for p in ms],
            "implies": [[k[self.imp_m(p, q)] for q in ms] for p in ms],
            "generators": [list(self.topology.atoms_of(m)) for m in self.generators],
        }


def enumerate_frame(t: FormalTopology, frame_id: str | None = None) -> Frame:
    violations = validate_topology(t)
    if violations:
        raise InputError(
            "invalid formal topology: " + "; ".join(str(v) for v in violations[:5])
            + (f" (+{len(violations) - 5} more)" if len(violations) > 5 else "")
        )
    return Frame(t, frame_id)


def nucleus_close(t: FormalTopology, p: Iterable[str], frame: Frame | None = None) -> FrameElement:
    mask = t.mask(p)
    frame = frame or enumerate_frame(t)
    return frame.element(t.nucleus(mask))


def frame_implies(f: Frame, p: FrameElement, q: FrameElement) -> FrameElement:
    return f.implies(p, q)


def dn_close(f: Frame, p: FrameElement) -> FrameElement:
    f.check(p)
    return f.element(f.dn_m(p.mask))


def booleanize(f: Frame) -> Frame:
    """The frame of ¬¬-stable elements, presented as the frame of a derived covering.

    ``x`` covers ``p`` in the derived topology iff ``x ∈ ¬¬ȷ(↓p)``; its stable
    lower sets are exactly the ¬¬-stable elements of ``f``, meets and
    implications are unchanged and joins are followed by ¬¬.
    """
    t = f.topology
    rows = []
    for i in range(t.size):
        row = 0
        for p in range(1 << t.size):
            if f.dn_m(f.closure[t.down(p)]) >> i & 1:
                row |= 1 << p
        rows.append(row)
    derived = FormalTopology(t.atoms, t.order, tuple(rows), t.name)
    fid = f.frame_id if f.is_boolean() else f.frame_id + "/dn"
    b = enumerate_frame(derived, fid)
    if not b.is_boolean():
        raise AssertionError("double-negation sublocale is not Boolean")
    return b


def _as_lower(f: Frame, P) -> int:
    t = f.topology
    mask = P.mask if isinstance(P, FrameElement) else P if isinstance(P, int) else t.mask(P)
    if not t.is_lower(mask):
        raise InputError(f"{t.atoms_of(mask)} is not a lower set")
    return mask


def dn_lower(f: Frame, P) -> frozenset[str]:
    """``P^¬¬`` for an arbitrary lower set: ¬¬ of its nucleus closure."""
    mask = _as_lower(f, P)
    return frozenset(f.topology.atoms_of(f.dn_m(f.closure[mask])))


def relativized_J(f: Frame, P, A: Iterable) -> frozenset[str]:
    """``J^A P``: union of ``q^¬¬`` over the members ``q`` of ``A`` contained in ``P``.

    ``P`` and the members of ``A`` are lower sets (frame elements or atom
    collections).  The result is a lower set, not necessarily stable.
    """
    p = _as_lower(f, P)
    out = 0
    for q in A:
        qm = _as_lower(f, q)
        if qm & ~p == 0:
            out |= f.dn_m(f.closure[qm])
    return frozenset(f.topology.atoms_of(out))


def class_J(f: Frame, P) -> frozenset[str]:
    """``JP``: ``J^A P`` with ``A`` ranging over every lower set of the carrier."""
    t = f.topology
    return relativized_J(f, P, [m for m in range(1 << t.size) if t.is_lower(m)])


# text format

def parse_topology(text: str, name: str = "") -> FormalTopology:
    """Parse the plain-text topology format.

    ::

        name: chain2
        atoms: 0 1
        le: 0<=1
        cover: downset            # or discrete, dense, or a listing:
        cover:
          1: {1} {0,1}
    """
    atoms: list[str] | None = None
    le: list[tuple[str, str]] = []
    shorthand: str | None = None
    listing: dict[str, list[frozenset[str]]] | None = None
    in_cover = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0].isspace()
        line = line.strip()
        key, sep, rest = line.partition(":")
        key = key.strip()
        if in_cover and indented:
            if not sep:
                raise ParseError("expected 'atom: {..} {..}' in cover listing", lineno, 1)
            listing.setdefault(key, []).extend(_parse_subsets(rest, lineno, raw))
            continue
        in_cover = False
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno, 1)
        rest = rest.strip()
        if key == "name":
            name = rest
        elif key == "atoms":
            atoms = rest.replace(",", " ").split()
        elif key == "le":
            for pair in filter(None, (s.strip() for s in rest.split(","))):
                a, op, b = pair.partition("<=")
                if not op or not a.strip() or not b.strip():
                    raise ParseError(f"bad order pair {pair!r}", lineno, raw.find(pair) + 1)
                le.append((a.strip(), b.strip()))
        elif key == "cover":
            if rest:
                shorthand = rest
            else:
                listing = {}
                in_cover = True
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
    if not atoms:
        raise ParseError("missing 'atoms:' line", 1, 1)
    try:
        if listing is not None:
            unknown = set(listing) - set(atoms)
            if unknown:
                raise InputError(f"cover listing mentions unknown atoms {sorted(unknown)}")
            table = {a: set(v) for a, v in listing.items()}
            return FormalTopology.from_predicate(atoms, le, lambda x, p: p in table.get(x, ()), name)
        makers = {"downset": downset_topology, "discrete": discrete_topology, "dense": dense_topology}
        if shorthand not in makers:
            raise ParseError(f"unknown cover shorthand {shorthand!r}", 0, 0)
        return makers[shorthand](atoms, le, name)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def _parse_subsets(text: str, lineno: int, raw: str) -> list[frozenset[str]]:
    out = []
    rest = text.strip()
    while rest:
        if not rest.startswith("{") or "}" not in rest:
            raise ParseError(f"expected '{{...}}' in {text.strip()!r}", lineno, raw.find(rest) + 1)
        inner, _, rest = rest[1:].partition("}")
        out.append(frozenset(a for a in inner.replace(",", " ").split()))
        rest = rest.strip()
    return out


def load_topology(path: str | Path) -> FormalTopology:
    path = Path(path)
    return parse_topology(path.read_text(), name=path.stem)


def topology_to_text(t: FormalTopology) -> str:
    """Serialize with an explicit cover listing (round-trips through ``parse_topology``)."""
    lines = []
    if t.name:
        lines.append(f"name: {t.name}")
    lines.append("atoms: " + " ".join(t.atoms))
    strict = sorted((a, b) for a, b in t.order if a != b)
    if strict:
        lines.append("le: " + ", ".join(f"{a}<={b}" for a, b in strict))
    lines.append("cover:")
    for i, a in enumerate(t.atoms):
        subs = [p for p in range(1 << t.size) if t.covered(i, p)]
        subs.sort(key=lambda p: (popcount(p), p))
        if subs:
            lines.append(f"  {a}: " + " ".join("{" + ",".join(t.atoms_of(p)) + "}" for p in subs))
    return "\n".join(lines) + "\n"
