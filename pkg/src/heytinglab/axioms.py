"""Instances of the BCST axioms over a frame, each paired with an explicit witness name.

An :class:`Instance` carries a formula and an assignment covering its free
variables, so it can be evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from . import formulas as fl
from .evaluator import Evaluator
from .frames import Frame
from .names import Name, up

_P = ("a", "b", "w")


@dataclass(frozen=True)
class Instance:
    axiom: str
    formula: fl.Formula
    assignment: Mapping[str, Name]


def _f(text: str, params=_P) -> fl.Formula:
    return fl.parse(text, params)


EXTENSIONALITY = _f("(all x in a. x in b) & (all x in b. x in a) -> a = b")
PAIRING = _f("a in w & b in w & (all x in w. x = a | x = b)")
UNION = _f("(all y in a. all z in y. z in w) & (all z in w. exists y in a. z in y)")
INTERSECTION = _f("(all x in w. x in a & x in b) & (all x in a. x in b -> x in w)")
EMPTYSET = _f("all x in empty. bot")
# the class function x |-> up(x, x), as a formula in x and y
REPLACEMENT_GRAPH = "x in y & (all z in y. z = x)"
REPLACEMENT = _f(
    f"(all x in a. exists y in w. {REPLACEMENT_GRAPH}) & (all y in w. exists x in a. {REPLACEMENT_GRAPH})"
)

# Δ₀ separation predicates in the free variable x and parameter b
SEPARATION_PREDICATES = (
    "x in b",
    "x = b",
    "exists y in x. y in b",
    "all y in x. y = empty",
    "~(x in b)",
)


def separation_formula(pred: str) -> fl.Formula:
    return _f(f"(all x in w. x in a & ({pred})) & (all x in a. ({pred}) -> x in w)")


def union_witness(a: Name) -> Name:
    """``u(z) = ⋁_{y} a(y) ∧ y(z)``."""
    f = a.frame
    acc: dict[Name, int] = {}
    for y, ay in a.entries:
        for z, yz in y.entries:
            acc[z] = f.join_m(acc.get(z, f.bottom_m), ay.mask & yz.mask)
    return Name(f, [(z, f.element(m)) for z, m in acc.items()])


def separation_witness(a: Name, value: Callable[[Name], int]) -> Name:
    """``c(x) = a(x) ∧ value(x)`` on the domain of ``a``."""
    f = a.frame
    return Name(f, [(x, f.element(ax.mask & value(x))) for x, ax in a.entries])


def intersection_witness(a: Name, b: Name, ev: Evaluator | None = None) -> Name:
    ev = ev or Evaluator(a.frame)
    return separation_witness(a, lambda x: ev.mem_m(x, b))


def replacement_witness(a: Name) -> Name:
    """Image of ``a`` under ``x ↦ up(x, x)``, values carried along."""
    f = a.frame
    acc: dict[Name, int] = {}
    for x, ax in a.entries:
        y = up(x, x)
        acc[y] = f.join_m(acc.get(y, f.bottom_m), ax.mask)
    return Name(f, [(y, f.element(m)) for y, m in acc.items()])


def instances(f: Frame, names, pairs=None, ev: Evaluator | None = None) -> list[Instance]:
    """All instances over ``names``; binary axioms use ``pairs`` (default: all ordered pairs)."""
    ev = ev or Evaluator(f)
    names = list(names)
    pairs = list(pairs) if pairs is not None else [(a, b) for a in names for b in names]
    out = [Instance("emptyset", EMPTYSET, {})]
    for a in names:
        out.append(Instance("union", UNION, {"a": a, "w": union_witness(a)}))
        out.append(Instance("replacement", REPLACEMENT, {"a": a, "w": replacement_witness(a)}))
    for a, b in pairs:
        out.append(Instance("extensionality", EXTENSIONALITY, {"a": a, "b": b}))
        out.append(Instance("pairing", PAIRING, {"a": a, "b": b, "w": up(a, b)}))
        out.append(Instance("binary_intersection", INTERSECTION, {"a": a, "b": b, "w": intersection_witness(a, b, ev)}))
    for pred in SEPARATION_PREDICATES:
        phi = fl.parse(pred, ("x", "b"))
        sep = separation_formula(pred)
        for a, b in pairs:
            w = separation_witness(a, lambda x: ev.value_m(phi, {"x": x, "b": b}, ()))
            out.append(Instance("separation", sep, {"a": a, "b": b, "w": w}))
    return out


def evaluate_instances(f: Frame, insts, ev: Evaluator | None = None) -> list[tuple[Instance, int]]:
    """``(instance, value mask)`` for every instance whose value is not ⊤."""
    ev = ev or Evaluator(f)
    bad = []
    for inst in insts:
        m = ev.value_m(inst.formula, inst.assignment, ())
        if m != f.top_m:
            bad.append((inst, m))
    return bad
