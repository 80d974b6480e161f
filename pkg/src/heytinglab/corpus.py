"""Bundled test material: topologies, formula corpora and name samples."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import product

from . import formulas as fl
from .frames import Frame, FormalTopology, enumerate_frame, parse_topology
from .hfsets import ordinal
from .names import Name, check_name, enumerate_names, op_pair, up

TOPOLOGY_NAMES = (
    "point",
    "chain2",
    "antichain2",
    "chain3",
    "vee",
    "antichain3",
    "dense_vee",
    "dense_chain3",
    "joincover",
    "skipchain",
    "heavy_bottom",
    "diamond",
    "comb5",
    "grid6",
    "chain6",
)


def topology_text(name: str) -> str:
    return resources.files("heytinglab.data.topologies").joinpath(f"{name}.top").read_text()


@lru_cache(maxsize=None)
def topology(name: str) -> FormalTopology:
    return parse_topology(topology_text(name), name=name)


@lru_cache(maxsize=None)
def frame(name: str) -> Frame:
    return enumerate_frame(topology(name), frame_id=name)


def all_frames() -> list[Frame]:
    return [frame(n) for n in TOPOLOGY_NAMES]


def three_chain() -> Frame:
    return frame("chain2")


# propositional material: p, q, r stand for "empty in P" etc.

PROP_PARAMS = ("P", "Q", "R")

IPC_TAUTOLOGIES = (
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "p & q -> p",
    "p & q -> q",
    "p -> q -> p & q",
    "p -> p | q",
    "q -> p | q",
    "(p -> r) -> (q -> r) -> p | q -> r",
    "bot -> p",
    "p -> ~~p",
    "~~~p -> ~p",
    "~(p | q) -> ~p & ~q",
    "~p & ~q -> ~(p | q)",
    "~p | ~q -> ~(p & q)",
    "(p -> q) -> ~q -> ~p",
    "~~(p | ~p)",
    "~(p & ~p)",
    "p & (q | r) -> p & q | p & r",
    "p & q | p & r -> p & (q | r)",
    "(p -> q) & (q -> r) -> p -> r",
    "p | q -> q | p",
    "(p -> q & r) -> (p -> q) & (p -> r)",
    "~~(p -> q) -> ~~p -> ~~q",
    "(p | q) & ~p -> q",
)

CLASSICAL_ONLY = (
    "p | ~p",
    "((p -> q) -> p) -> p",
    "~~p -> p",
    "~(p & q) -> ~p | ~q",
    "(p -> q) | (q -> p)",
    "(~p -> ~q) -> q -> p",
    "~p | ~~p",
    "(p -> q) -> ~p | q",
)


def prop(schema: str) -> fl.Formula:
    """Instantiate a propositional schema: ``p`` becomes ``empty in P`` and so on."""
    text = schema
    for letter, param in zip("pqr", PROP_PARAMS):
        text = text.replace(letter, f"(empty in {param})")
    return fl.parse(text, PROP_PARAMS)


def peirce() -> fl.Formula:
    return prop("((p -> q) -> p) -> p")


def valuation_name(f: Frame, mask: int) -> Name:
    """A name ``b`` with ``⟦empty ∈ b⟧`` equal to the given element."""
    return Name(f, [(Name(f), f.element(mask))])


# bounded corpus over parameters a, b

BOUNDED_BASE = (
    "a in b",
    "b in a",
    "a = b",
    "empty in a",
    "empty = a",
    "a in up(a, b)",
    "op(a, b) = op(b, a)",
    "exists x in a. x in b",
    "all x in a. x in b",
    "all x in a. exists y in b. x = y",
    "exists x in a. all y in x. y in b",
    "exists x in a. x = empty",
    "all x in b. ~(x = a)",
    "exists x in up(a, b). x in a",
    "all x in a. all y in b. x = y",
    "exists x in b. exists y in x. y = a",
)


@lru_cache(maxsize=None)
def bounded_corpus() -> tuple[fl.Formula, ...]:
    base = [fl.parse(s, ("a", "b")) for s in BOUNDED_BASE]
    out = list(base)
    out += [fl.Not(p) for p in base]
    for i, (p, q) in enumerate(zip(base, base[1:] + base[:1])):
        out.append([fl.And, fl.Or, fl.Imp][i % 3](p, q))
    out += [fl.Or(p, fl.Not(q)) for p, q in zip(base[::2], base[1::2])]
    out.append(fl.BOT)
    return tuple(dict.fromkeys(out))


CONDITIONAL_BOUNDED = (
    "exists y. y in a",
    "all y. (y in a -> y in b)",
    "exists y. a in y & b in y",
    "all x. exists y. x in y",
    "exists y. all z in y. z in a",
    "(exists y. y = a) | a in b",
    "~(a in b) -> exists y. y in a",
    "all y. ~(y in empty)",
    "exists y. ~(y = a) & y in b",
    "all y. exists z in y. z = a",
    "(a = b -> all y. y in a) & exists y. y = b",
    "exists y. (y in a | y = b)",
)

FORALL_AND = (
    "all y. (y in a -> y in b)",
    "all y. ~(y in empty)",
    "(all y. y = y) & a in b",
    "all x. all y in x. y in a | ~(y in a)",
    "all x in a. all y. (y in x -> y in b)",
)


@lru_cache(maxsize=None)
def conditional_bounded_corpus() -> tuple[fl.Formula, ...]:
    return tuple(fl.parse(s, ("a", "b")) for s in CONDITIONAL_BOUNDED)


@lru_cache(maxsize=None)
def forall_and_corpus() -> tuple[fl.Formula, ...]:
    return tuple(fl.parse(s, ("a", "b")) for s in FORALL_AND)


def sample_names(f: Frame, max_names: int = 80) -> tuple[Name, ...]:
    """Names used by per-frame instance suites.

    The full rank-2 width-2 universe when it has at most ``max_names`` names;
    otherwise every rank-1 name plus canonical names and a few pairs.
    """
    u2 = enumerate_names(f, 2, 2, ceiling=10**6) if len(f) <= 5 else None
    if u2 is not None and len(u2) <= max_names:
        return u2.names
    base = list(enumerate_names(f, 1, 1).names)
    extra = [check_name(f, ordinal(k)) for k in range(3)]
    extra += [up(base[0], base[-1]), op_pair(base[0], base[-1]), up(base[1], extra[2])]
    return tuple(dict.fromkeys(base + extra))


def name_quads(names, limit_rank: int = 1):
    small = [n for n in names if n.rank <= limit_rank]
    return product(small, repeat=4)
