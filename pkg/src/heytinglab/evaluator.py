"""Heyting-valued interpretation of the forcing language over a finite frame.

Unbounded quantifiers range over a finite truncation of the name universe, so
their values carry no claim about the full class-sized universe; result
records say so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import formulas as fl
from .errors import InputError, ResolutionError
from .frames import Frame, FrameElement, booleanize
from .names import Name, NameUniverse, check_name, is_transitive, map_values, op_pair, up


@dataclass
class AtomicCache:
    """Memo tables for ``⟦a=b⟧`` and ``⟦a∈b⟧`` keyed by name pairs (masks as values)."""

    eq: dict[tuple[Name, Name], int] = field(default_factory=dict)
    mem: dict[tuple[Name, Name], int] = field(default_factory=dict)

    def __len__(self):
        return len(self.eq) + len(self.mem)


@dataclass(frozen=True)
class Environment:
    assignment: Mapping[str, Name]
    universe: Sequence[Name]
    frame: Frame
    rank_bound: int | None = None
    width_bound: int | None = None

    def __post_init__(self):
        fid = self.frame.frame_id
        for var, n in self.assignment.items():
            if n.frame.frame_id != fid:
                raise InputError(f"{var} is assigned a name over {n.frame.frame_id}, expected {fid}")

    @classmethod
    def over(cls, universe: NameUniverse, **assignment: Name) -> "Environment":
        return cls(assignment, universe.names, universe.frame, universe.rank_bound, universe.width_bound)


class Evaluator:
    """Evaluates formulas over one frame, sharing an :class:`AtomicCache` across calls.

    ``resolve_frame``/``value_map`` let the element literals inside name terms be
    read in a different frame and transported (used for evaluation in the
    Booleanized frame).
    """

    def __init__(
        self,
        frame: Frame,
        memo: bool = True,
        cache: AtomicCache | None = None,
        resolve_frame: Frame | None = None,
        value_map: Callable[[int], int] | None = None,
    ):
        self.frame = frame
        self.memo = memo
        self.cache = cache if cache is not None else AtomicCache()
        self.resolve_frame = resolve_frame or frame
        self.value_map = value_map or (lambda m: m)
        self._empty = Name(frame)
        self._checks: dict = {}

    def _check(self, a: Name, b: Name):
        fid = self.frame.frame_id
        if a.frame.frame_id != fid or b.frame.frame_id != fid:
            raise InputError(f"frame mismatch: names over {a.frame.frame_id}/{b.frame.frame_id}, evaluating over {fid}")

    # atomic clauses (masks)
    def eq_m(self, a: Name, b: Name) -> int:
        if self.memo:
            hit = self.cache.eq.get((a, b))
            if hit is not None:
                return hit
        f = self.frame
        imp, closure = f.imp_m, f.closure
        left = f.top_m
        for x, ax in a.entries:
            u = 0
            for y, by in b.entries:
                u |= by.mask & self.eq_m(x, y)
            left &= imp(ax.mask, closure[u])
        right = f.top_m
        for y, by in b.entries:
            u = 0
            for x, ax in a.entries:
                u |= ax.mask & self.eq_m(x, y)
            right &= imp(by.mask, closure[u])
        out = left & right
        if self.memo:
            self.cache.eq[a, b] = out
            self.cache.eq[b, a] = out
        return out

    def mem_m(self, a: Name, b: Name) -> int:
        if self.memo:
            hit = self.cache.mem.get((a, b))
            if hit is not None:
                return hit
        u = 0
        for y, by in b.entries:
            u |= by.mask & self.eq_m(a, y)
        out = self.frame.closure[u]
        if self.memo:
            self.cache.mem[a, b] = out
        return out

    def eq(self, a: Name, b: Name) -> FrameElement:
        self._check(a, b)
        return self.frame.element(self.eq_m(a, b))

    def mem(self, a: Name, b: Name) -> FrameElement:
        self._check(a, b)
        return self.frame.element(self.mem_m(a, b))

    # formulas
    def term(self, t: fl.Term, assignment: Mapping[str, Name]) -> Name:
        if isinstance(t, fl.Var):
            try:
                n = assignment[t.name]
            except KeyError:
                raise ResolutionError(f"unresolved term {t.name!r}") from None
            if n.frame.frame_id != self.frame.frame_id:
                raise InputError(f"{t.name} is a name over {n.frame.frame_id}, evaluating over {self.frame.frame_id}")
            return n
        if isinstance(t, fl.EmptyLit):
            return self._empty
        if isinstance(t, fl.CheckLit):
            hit = self._checks.get(t.hf)
            if hit is None:
                hit = self._checks[t.hf] = check_name(self.frame, t.hf)
            return hit
        if isinstance(t, fl.UpLit):
            return up(self.term(t.left, assignment), self.term(t.right, assignment))
        if isinstance(t, fl.OpLit):
            return op_pair(self.term(t.left, assignment), self.term(t.right, assignment))
        if isinstance(t, fl.NameLit):
            merged: dict[Name, int] = {}
            for key, atoms in t.entries:
                try:
                    base = self.resolve_frame.element(atoms).mask
                except InputError as exc:
                    raise ResolutionError(str(exc)) from None
                k = self.term(key, assignment)
                if k in merged and self.resolve_frame is self.frame:
                    raise ResolutionError("duplicate key in name literal")
                v = self.value_map(base)
                merged[k] = self.frame.join_m(merged[k], v) if k in merged else v
            return Name(self.frame, [(k, self.frame.element(m)) for k, m in merged.items()])
        raise TypeError(f"not a term: {t!r}")

    def value_m(self, phi: fl.Formula, assignment: Mapping[str, Name], universe: Sequence[Name]) -> int:
        f = self.frame
        kind = type(phi)
        if kind is fl.Mem or kind is fl.Eq:
            left, right = phi.left, phi.right
            a = assignment[left.name] if type(left) is fl.Var and left.name in assignment else self.term(left, assignment)
            b = assignment[right.name] if type(right) is fl.Var and right.name in assignment else self.term(right, assignment)
            return self.mem_m(a, b) if kind is fl.Mem else self.eq_m(a, b)
        if kind is fl.Imp:
            return f.imp_m(self.value_m(phi.left, assignment, universe), self.value_m(phi.right, assignment, universe))
        if kind is fl.And:
            return self.value_m(phi.left, assignment, universe) & self.value_m(phi.right, assignment, universe)
        if kind is fl.Or:
            return f.join_m(self.value_m(phi.left, assignment, universe), self.value_m(phi.right, assignment, universe))
        if kind is fl.Bot:
            return f.bottom_m
        if kind is fl.Forall or kind is fl.Exists:
            env = dict(assignment)
            if phi.bound is not None:
                b = self.term(phi.bound, assignment)
                family = [(x, v.mask) for x, v in b.entries]
            else:
                family = [(x, f.top_m) for x in universe]
            if kind is fl.Forall:
                out = f.top_m
                for x, v in family:
                    env[phi.var] = x
                    out &= f.imp_m(v, self.value_m(phi.body, env, universe))
                return out
            u = 0
            for x, v in family:
                env[phi.var] = x
                u |= v & self.value_m(phi.body, env, universe)
            return f.closure[u]
        raise TypeError(f"not a formula: {phi!r}")

    def value(self, phi: fl.Formula, env: Environment) -> FrameElement:
        missing = fl.free_vars(phi) - set(env.assignment)
        if missing:
            raise ResolutionError(f"unresolved terms {sorted(missing)}")
        return self.frame.element(self.value_m(phi, env.assignment, env.universe))


# module-level API

def eval_eq(a: Name, b: Name, f: Frame, cache: AtomicCache | None = None) -> FrameElement:
    return Evaluator(f, cache=cache).eq(a, b)


def eval_mem(a: Name, b: Name, f: Frame, cache: AtomicCache | None = None) -> FrameElement:
    return Evaluator(f, cache=cache).mem(a, b)


def eval(phi: fl.Formula, env: Environment, cache: AtomicCache | None = None, memo: bool = True) -> FrameElement:
    return Evaluator(env.frame, memo=memo, cache=cache).value(phi, env)


class BooleanTransport:
    """Booleanized frame plus the ¬¬ value-map sending base names into it."""

    def __init__(self, frame: Frame):
        self.base = frame
        self.frame = booleanize(frame)
        self._memo: dict[Name, Name] = {}

    def name(self, n: Name) -> Name:
        hit = self._memo.get(n)
        if hit is None:
            hit = self._memo[n] = map_values(n, self.frame, self.base.dn_m)
        return hit

    def environment(self, env: Environment) -> Environment:
        mapped = {k: self.name(v) for k, v in env.assignment.items()}
        universe = tuple(dict.fromkeys(self.name(n) for n in env.universe))
        return Environment(mapped, universe, self.frame, env.rank_bound, env.width_bound)

    def evaluator(self, cache: AtomicCache | None = None) -> Evaluator:
        return Evaluator(self.frame, cache=cache, resolve_frame=self.base, value_map=self.base.dn_m)


_transports: dict[str, BooleanTransport] = {}


def boolean_transport(frame: Frame) -> BooleanTransport:
    t = _transports.get(frame.frame_id)
    if t is None or t.base is not frame:
        t = _transports[frame.frame_id] = BooleanTransport(frame)
    return t


def eval_boolean(phi: fl.Formula, env: Environment, cache: AtomicCache | None = None) -> FrameElement:
    """Evaluate in the Booleanized frame with every name value replaced by its ¬¬."""
    t = boolean_transport(env.frame)
    return t.evaluator(cache).value(phi, t.environment(env))


def eval_relativized(
    phi: fl.Formula, A: Iterable[Name], env: Environment, cache: AtomicCache | None = None
) -> FrameElement:
    """Evaluate with unbounded quantifiers ranging over the domain-closed collection ``A``."""
    A = tuple(sorted(set(A), key=lambda n: n.sort_key))
    if not is_transitive(A):
        raise InputError("relativizing collection is not closed under domains")
    for n in A:
        if n.frame.frame_id != env.frame.frame_id:
            raise InputError("relativizing collection contains names over another frame")
    sub = Environment(env.assignment, A, env.frame, env.rank_bound, env.width_bound)
    return Evaluator(env.frame, cache=cache).value(phi, sub)


def tilde(A: Iterable[Name], frame: Frame) -> Name:
    """The name with domain ``A`` and every value ⊤."""
    top = frame.top
    return Name(frame, [(n, top) for n in set(A)])


def extensional_classes(universe: NameUniverse, cache: AtomicCache | None = None) -> list[tuple[Name, ...]]:
    """Optional pass grouping names with ``⟦a=b⟧ = ⊤``; each class is ordered, first is the representative."""
    ev = Evaluator(universe.frame, cache=cache)
    top = universe.frame.top_m
    classes: list[list[Name]] = []
    for n in universe.names:
        for cls in classes:
            if ev.eq_m(cls[0], n) == top:
                cls.append(n)
                break
        else:
            classes.append([n])
    return [tuple(c) for c in classes]


def result_record(
    phi: fl.Formula, frame_label: str, mode: str, value: FrameElement, env: Environment
) -> dict:
    """The JSON result record for one evaluation."""
    truncation = None
    if not fl.is_bounded(phi):
        truncation = {"rank": env.rank_bound, "width": env.width_bound}
    top = frozenset(value.atoms) == frozenset(env.frame.topology.atoms)
    return {
        "formula": fl.show(phi),
        "frame": frame_label,
        "mode": mode,
        "value": sorted(value.atoms),
        "is_top": top,
        "truncation": truncation,
    }
