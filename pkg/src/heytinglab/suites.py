"""Property suites: exhaustive or seeded checks of every module's invariants.

Each check returns an :class:`Outcome`; :func:`run_suites` collects them into
sorted, JSON-ready :class:`SuiteResult` records.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from . import axioms, corpus
from . import formulas as fl
from .config import DEFAULT_CEILINGS, Ceilings
from .evaluator import Evaluator, boolean_transport, tilde
from .frames import Frame, booleanize, class_J, dn_lower, relativized_J, validate_topology
from .hfsets import HFSet, cumulative_level, ordinal
from .inductive import (
    InductiveDefinition,
    gamma,
    is_closed,
    iteration_class,
    least_fixed_point,
    verify_minimality,
)
from .largesets import (
    census,
    check_adjust_equivalences,
    full_subsets,
    is_full,
    is_regular,
    mv_enumerate,
    set_mv_refine,
    transitive_subsets,
)
from .names import (
    Name,
    check_name,
    domain_closure,
    enumerate_names,
    prune_bottom,
    relativized_names,
)


@dataclass(frozen=True)
class Outcome:
    passed: bool
    checked: int
    detail: str = ""


def _ok(checked: int) -> Outcome:
    return Outcome(True, checked, "")


def _fail(checked: int, detail: str) -> Outcome:
    return Outcome(False, checked, detail)


def _lower_sets(f: Frame) -> list[int]:
    t = f.topology
    return [m for m in range(1 << t.size) if t.is_lower(m)]


# frame_core

def check_topologies(frames: Sequence[Frame]) -> Outcome:
    n = 0
    for f in frames:
        n += 1
        bad = validate_topology(f.topology)
        if bad:
            return _fail(n, f"{f.frame_id}: {bad[0]}")
    return _ok(n)


def check_nucleus_laws(f: Frame) -> Outcome:
    """Inflationary, idempotent and meet-preserving on lower sets."""
    c = f.closure
    lows = _lower_sets(f)
    n = 0
    for p in lows:
        n += 1
        if p & ~c[p] or c[c[p]] != c[p]:
            return _fail(n, f"{f.frame_id}: closure fails on {f.topology.atoms_of(p)}")
        for q in lows:
            n += 1
            if c[p & q] != c[p] & c[q]:
                return _fail(n, f"{f.frame_id}: meet preservation fails")
    return _ok(n)


def check_distributivity(f: Frame, family_limit: int = 3, all_families_upto: int = 8) -> Outcome:
    """``a ∧ ⋁S = ⋁(a ∧ s)`` for every family up to ``family_limit`` members (all families on small frames)."""
    ms = f.masks
    sizes = range(len(ms) + 1) if len(ms) <= all_families_upto else range(family_limit + 1)
    n = 0
    for k in sizes:
        for fam in combinations(ms, k):
            j = f.big_join_m(fam)
            for a in ms:
                n += 1
                if f.meet_m(a, j) != f.big_join_m(f.meet_m(a, s) for s in fam):
                    return _fail(n, f"{f.frame_id}: distributivity fails for a={a}, family={fam}")
    return _ok(n)


def check_adjunction(f: Frame) -> Outcome:
    """``r ∧ p ≤ q`` iff ``r ≤ p → q`` for every triple."""
    ms = f.masks
    n = 0
    for r in ms:
        for p in ms:
            for q in ms:
                n += 1
                lhs = f.meet_m(r, p) & ~q == 0
                rhs = r & ~f.imp_m(p, q) == 0
                if lhs != rhs:
                    t = f.topology
                    return _fail(n, f"{f.frame_id}: r={t.atoms_of(r)} p={t.atoms_of(p)} q={t.atoms_of(q)}")
    return _ok(n)


def check_generators(f: Frame) -> Outcome:
    n = 0
    for m in f.masks:
        n += 1
        if f.big_join_m(g for g in f.generators if g & ~m == 0) != m:
            return _fail(n, f"{f.frame_id}: {f.topology.atoms_of(m)} is not the join of its generators")
    return _ok(n)


def check_double_negation(f: Frame) -> Outcome:
    """¬¬ is a nucleus on the frame, and its fixed points form a Boolean algebra."""
    n = 0
    for p in f.masks:
        n += 1
        d = f.dn_m(p)
        if p & ~d or f.dn_m(d) != d:
            return _fail(n, f"{f.frame_id}: ¬¬ not inflationary/idempotent")
        for q in f.masks:
            n += 1
            if f.dn_m(p & q) != d & f.dn_m(q):
                return _fail(n, f"{f.frame_id}: ¬¬ does not preserve meets")
    b = booleanize(f)
    if set(b.masks) != {f.dn_m(p) for p in f.masks}:
        return _fail(n, f"{f.frame_id}: Booleanization is not the ¬¬-fixed set")
    for p in b.masks:
        n += 1
        if b.join_m(p, b.neg_m(p)) != b.top_m or b.dn_m(p) != p:
            return _fail(n, f"{b.frame_id}: excluded middle or ¬¬-elimination fails")
    return _ok(n)


def check_relativized_J(f: Frame) -> Outcome:
    """``J^A P ⊆ J^B P ⊆ P^¬¬`` for ``A ⊆ B``, and ``P ⊆ J^A P`` once ``A`` holds the principal downsets."""
    t = f.topology
    lows = _lower_sets(f)
    principal = sorted({t.down(1 << i) for i in range(t.size)})
    fams = [frozenset(c) for k in range(len(lows) + 1) for c in combinations(lows, k)]
    n = 0
    for P in lows:
        top = dn_lower(f, P)
        if class_J(f, P) != top:
            return _fail(n, f"{f.frame_id}: JP differs from P^¬¬")
        values = {A: relativized_J(f, P, A) for A in fams}
        for A in fams:
            ja = values[A]
            if not ja <= top:
                return _fail(n, f"{f.frame_id}: J^A P not below P^¬¬")
            if set(principal) <= A and not set(t.atoms_of(P)) <= ja:
                return _fail(n, f"{f.frame_id}: P not below J^A P")
            for B in fams:
                if A <= B:
                    n += 1
                    if not ja <= values[B]:
                        return _fail(n, f"{f.frame_id}: J^A P not below J^B P")
    return _ok(n)


# name_universe

def check_rank_monotonicity(f: Frame, rank: int = 2, width: int = 2) -> Outcome:
    n = 0
    for a in enumerate_names(f, rank, width).names:
        for c in a.domain:
            n += 1
            if c.rank >= a.rank:
                return _fail(n, f"rank of {c} does not drop below {a}")
    return _ok(n)


def check_name_relativization(f: Frame, rank: int = 2, width: int = 2, seed: int = 0) -> Outcome:
    """Relativized enumeration over a domain-closed ``A`` equals the global enumeration intersected with ``A``."""
    u = enumerate_names(f, rank, width)
    rng = random.Random(seed)
    families = [domain_closure([a]) for a in u.names]
    families += [domain_closure(rng.sample(u.names, 3)) for _ in range(20)]
    n = 0
    for A in families:
        n += 1
        got = relativized_names(f, A, rank, width)
        if got != frozenset(u.names) & A:
            return _fail(n, f"relativized enumeration differs on a collection of {len(A)} names")
    return _ok(n)


def check_canonical_identity(f: Frame, level: int = 3) -> Outcome:
    xs = cumulative_level(level)
    checks = {x: check_name(f, x) for x in xs}
    n = 0
    for x, y in product(xs, repeat=2):
        n += 1
        if (x == y) != (checks[x] == checks[y]):
            return _fail(n, f"canonical names of {x} and {y} disagree with HF equality")
    return _ok(n)


def check_bottom_pruning(f: Frame) -> Outcome:
    """Adding or pruning ⊥-valued entries never changes an interpretation."""
    ev = Evaluator(f)
    names = list(enumerate_names(f, 2, 1).names)
    junk = Name(f, [(Name(f), f.top)])
    padded = []
    for a in names:
        extra = [(junk, f.bottom)] if junk not in a.domain else [(Name(f, [(junk, f.top)]), f.bottom)]
        padded.append(Name(f, list(a.entries) + extra))
    n = 0
    for a, p in zip(names, padded):
        n += 1
        if prune_bottom(p) != a:
            return _fail(n, f"pruning {p} does not give {a}")
        if ev.eq_m(a, p) != f.top_m:
            return _fail(n, f"{a} and its padded form are not equal")
        for b in names:
            n += 1
            if ev.mem_m(b, a) != ev.mem_m(b, p) or ev.mem_m(a, b) != ev.mem_m(p, b) or ev.eq_m(a, b) != ev.eq_m(p, b):
                return _fail(n, f"⊥ entries change a value for {a} against {b}")
    return _ok(n)


# formula_lang

def all_corpus_formulas() -> list[fl.Formula]:
    out = list(corpus.bounded_corpus())
    out += corpus.conditional_bounded_corpus()
    out += corpus.forall_and_corpus()
    out += [corpus.prop(s) for s in corpus.IPC_TAUTOLOGIES + corpus.CLASSICAL_ONLY]
    out += [axioms.EXTENSIONALITY, axioms.PAIRING, axioms.UNION, axioms.INTERSECTION, axioms.REPLACEMENT]
    return out


def check_round_trip(phis: Iterable[fl.Formula]) -> Outcome:
    n = 0
    for phi in phis:
        n += 1
        text = fl.show(phi)
        params = sorted(fl.free_vars(phi))
        back = fl.parse(text, params)
        if back != phi or fl.show(back) != text:
            return _fail(n, f"round trip changes {text}")
    return _ok(n)


def check_relativize(phis: Iterable[fl.Formula]) -> Outcome:
    n = 0
    for phi in phis:
        n += 1
        r = fl.relativize(phi, "A")
        if not fl.is_bounded(r) or (fl.is_bounded(phi) and r != phi):
            return _fail(n, f"relativizing {fl.show(phi)} gives {fl.show(r)}")
    return _ok(n)


def _valuations(f: Frame, phi: fl.Formula):
    letters = sorted(fl.free_vars(phi))
    names = [corpus.valuation_name(f, m) for m in f.masks]
    for combo in product(names, repeat=len(letters)):
        yield dict(zip(letters, combo))


def check_dn_stability(frames: Sequence[Frame]) -> Outcome:
    """``GG(GG φ)`` and ``GG φ`` take the same value under every valuation."""
    n = 0
    schemas = corpus.IPC_TAUTOLOGIES + corpus.CLASSICAL_ONLY
    for f in frames:
        ev = Evaluator(f)
        for s in schemas:
            phi = corpus.prop(s)
            once = fl.dn_translate(phi)
            twice = fl.dn_translate(once)
            for env in _valuations(f, phi):
                n += 1
                if ev.value_m(once, env, ()) != ev.value_m(twice, env, ()):
                    return _fail(n, f"{f.frame_id}: {s}")
    return _ok(n)


# evaluator

def check_ipc_soundness(frames: Sequence[Frame]) -> Outcome:
    n = 0
    for f in frames:
        ev = Evaluator(f)
        for s in corpus.IPC_TAUTOLOGIES:
            phi = corpus.prop(s)
            for env in _valuations(f, phi):
                n += 1
                if ev.value_m(phi, env, ()) != f.top_m:
                    return _fail(n, f"{f.frame_id}: {s} is not ⊤")
    return _ok(n)


def check_peirce(f: Frame) -> Outcome:
    ev = Evaluator(f)
    phi = corpus.peirce()
    low = [ev.value_m(phi, env, ()) for env in _valuations(f, phi)]
    if all(m == f.top_m for m in low):
        return _fail(len(low), f"{f.frame_id}: Peirce is ⊤ under every valuation")
    return _ok(len(low))


def check_bcst(frames: Sequence[Frame]) -> Outcome:
    n = 0
    for f in frames:
        ev = Evaluator(f)
        insts = axioms.instances(f, corpus.sample_names(f), ev=ev)
        n += len(insts)
        bad = axioms.evaluate_instances(f, insts, ev)
        if bad:
            inst, m = bad[0]
            return _fail(n, f"{f.frame_id}: {inst.axiom} instance has value {f.topology.atoms_of(m)}")
    return _ok(n)


def check_ordered_pairs(f: Frame) -> Outcome:
    phi = fl.parse("op(a, b) = op(c, d) <-> a = c & b = d", ("a", "b", "c", "d"))
    ev = Evaluator(f)
    names = enumerate_names(f, 1, 1).names
    n = 0
    for a, b, c, d in product(names, repeat=4):
        n += 1
        if ev.value_m(phi, {"a": a, "b": b, "c": c, "d": d}, ()) != f.top_m:
            return _fail(n, f"{f.frame_id}: ordered-pair law fails at {a}, {b}, {c}, {d}")
    return _ok(n)


def check_equality(f: Frame, names: Sequence[Name]) -> Outcome:
    ev = Evaluator(f)
    n = 0
    for a in names:
        if ev.eq_m(a, a) != f.top_m:
            return _fail(n, f"{f.frame_id}: [[{a} = {a}]] is not ⊤")
        for b in names:
            ab = ev.eq_m(a, b)
            if ab != ev.eq_m(b, a):
                return _fail(n, f"{f.frame_id}: equality not symmetric")
            for c in names:
                n += 1
                if ab & ev.eq_m(b, c) & ~ev.eq_m(a, c):
                    return _fail(n, f"{f.frame_id}: equality not transitive at {a}, {b}, {c}")
    return _ok(n)


def check_substitutivity(f: Frame, names: Sequence[Name], params: Sequence[Name]) -> Outcome:
    """``⟦a=a'⟧ ∧ ⟦φ(a,b)⟧ ≤ ⟦φ(a',b)⟧`` over the bounded corpus."""
    ev = Evaluator(f)
    n = 0
    for phi in corpus.bounded_corpus():
        for b in params:
            vals = {a: ev.value_m(phi, {"a": a, "b": b}, ()) for a in names}
            for a, a2 in product(names, repeat=2):
                n += 1
                if ev.eq_m(a, a2) & vals[a] & ~vals[a2]:
                    return _fail(n, f"{f.frame_id}: {fl.show(phi)} at {a}, {a2}, {b}")
    return _ok(n)


def propositional_corpus() -> list[fl.Formula]:
    return [corpus.prop(s) for s in corpus.IPC_TAUTOLOGIES + corpus.CLASSICAL_ONLY]


def check_dn_correspondence(frames: Sequence[Frame]) -> Outcome:
    """``⟦GG φ⟧ = ⟦φ⟧`` evaluated in the Booleanization, as elements of the base frame."""
    n = 0
    for f in frames:
        ev = Evaluator(f)
        tr = boolean_transport(f)
        bev = tr.evaluator()
        for phi in propositional_corpus():
            gg = fl.dn_translate(phi)
            for env in _valuations(f, phi):
                n += 1
                base = ev.value_m(gg, env, ())
                boolean = bev.value_m(phi, {k: tr.name(v) for k, v in env.items()}, ())
                if base != boolean:
                    return _fail(n, f"{f.frame_id}: {fl.show(phi)}")
    return _ok(n)


def check_delta0_lem(f: Frame, names: Sequence[Name]) -> Outcome:
    """``φ ∨ ¬φ`` is ⊤ in the Booleanization for every bounded corpus formula and parameter pair."""
    tr = boolean_transport(f)
    bev = tr.evaluator()
    mapped = [tr.name(a) for a in names]
    n = 0
    for phi in corpus.bounded_corpus():
        lem = fl.Or(phi, fl.Not(phi))
        for a, b in product(mapped, repeat=2):
            n += 1
            if bev.value_m(lem, {"a": a, "b": b}, ()) != tr.frame.top_m:
                return _fail(n, f"{f.frame_id}: {fl.show(lem)}")
    return _ok(n)


def delta0_lem_witness(f: Frame, names: Sequence[Name]):
    """First bounded ``(φ, a, b)`` whose excluded-middle instance is not ⊤ in the base frame."""
    ev = Evaluator(f)
    for phi in corpus.bounded_corpus():
        lem = fl.Or(phi, fl.Not(phi))
        for a, b in product(names, repeat=2):
            if ev.value_m(lem, {"a": a, "b": b}, ()) != f.top_m:
                return lem, a, b
    return None


def sub_universes(f: Frame, names: Sequence[Name]) -> list[tuple[Name, ...]]:
    """Domain-closed collections: closures of one or two names, each rank level, and the whole."""
    fams = {domain_closure([a]) for a in names}
    fams |= {domain_closure([a, b]) for a, b in combinations(names, 2)}
    for r in range(max(n.rank for n in names) + 1):
        fams.add(frozenset(n for n in names if n.rank <= r))
    ordered = sorted(fams, key=lambda s: (len(s), sorted(n.sort_key for n in s)))
    return [tuple(sorted(s, key=lambda n: n.sort_key)) for s in ordered]


def universe_pairs(fams):
    return [(A, B) for A in fams for B in fams if set(A) <= set(B)]


def check_absoluteness(f: Frame, names: Sequence[Name]) -> Outcome:
    """Bounded values agree across ``A ⊆ B``; values over ``A`` lie below those of ``φ^Ã`` over ``B``.

    ``φ^Ã`` is bounded, so its value over ``B`` is the value computed over
    ``A`` (bounded absoluteness, the first comparison below); each universe is
    therefore evaluated once and the pairs compare stored tables.
    """
    ev = Evaluator(f)
    fams = sub_universes(f, names)
    bounded = corpus.bounded_corpus()
    cond = corpus.conditional_bounded_corpus()
    fa = corpus.forall_and_corpus()
    rel = {phi: fl.relativize(phi, "A") for phi in cond + fa}
    tables = {}
    n = 0
    for U in fams:
        t = tilde(U, f)
        rows = {}
        for a, b in product(U, repeat=2):
            env = {"a": a, "b": b}
            renv = {"a": a, "b": b, "A": t}
            n += len(bounded) + 2 * len(rel)
            rows[a, b] = (
                tuple(ev.value_m(phi, env, U) for phi in bounded),
                tuple(ev.value_m(phi, env, U) for phi in cond),
                tuple(ev.value_m(rel[phi], renv, ()) for phi in cond),
                tuple(ev.value_m(phi, env, U) for phi in fa),
                tuple(ev.value_m(rel[phi], renv, ()) for phi in fa),
            )
        tables[U] = rows
    for A, B in universe_pairs(fams):
        ta, tb = tables[A], tables[B]
        for key, (bd, cv, cr, fv, fr) in ta.items():
            n += 1
            if bd != tb[key][0]:
                k = next(i for i, (x, y) in enumerate(zip(bd, tb[key][0])) if x != y)
                return _fail(n, f"{f.frame_id}: {fl.show(bounded[k])} differs between {len(A)} and {len(B)} names")
            for phi, x, y in zip(cond, cv, cr):
                if x & ~y:
                    return _fail(n, f"{f.frame_id}: inequality fails for {fl.show(phi)}")
            for phi, x, y in zip(fa, fv, fr):
                if x != y:
                    return _fail(n, f"{f.frame_id}: equality fails for {fl.show(phi)}")
    return _ok(n)


def check_cache_coherence(f: Frame, names: Sequence[Name]) -> Outcome:
    memo = Evaluator(f, memo=True)
    plain = Evaluator(f, memo=False)
    n = 0
    for a, b in product(names, repeat=2):
        n += 1
        if memo.eq_m(a, b) != plain.eq_m(a, b) or memo.mem_m(a, b) != plain.mem_m(a, b):
            return _fail(n, f"{f.frame_id}: memoized and direct values differ at {a}, {b}")
    return _ok(n)


# inductive_engine

def random_definition(rng: random.Random, size: int, rules: int) -> InductiveDefinition:
    U = list(range(size))
    rs = []
    for _ in range(rules):
        k = rng.choice([0, 0, 1, 1, 2, 3])
        rs.append((rng.sample(U, min(k, size)), rng.choice(U)))
    return InductiveDefinition(rs, U)


def all_definitions(size: int) -> Iterable[InductiveDefinition]:
    """Every rule set over ``range(size)`` built from rules ``⟨X, a⟩`` with ``a ∉ X``.

    Rules with ``a ∈ X`` never add anything to a set already containing ``X``,
    so they change neither closed sets nor the fixed point.
    """
    U = list(range(size))
    candidates = [
        (frozenset(X), a) for a in U for k in range(size) for X in combinations([u for u in U if u != a], k)
    ]
    for bits in range(1 << len(candidates)):
        yield InductiveDefinition([r for i, r in enumerate(candidates) if bits >> i & 1], U)


def check_definition(phi: InductiveDefinition) -> str | None:
    """Stages stabilize at the least fixed point, which is closed and minimal."""
    fp = least_fixed_point(phi)
    stages = iteration_class(phi, len(phi.universe) + 1)
    union = frozenset().union(*stages)
    if union != fp or stages[-1] != gamma(phi, fp):
        return "stages do not reach the least fixed point"
    if not is_closed(phi, fp):
        return "fixed point is not closed"
    if not verify_minimality(phi, fp):
        return "a proper subset of the fixed point is closed"
    return None


def check_inductive(seed: int = 0, random_count: int = 200, random_size: int = 6, full_size: int = 3) -> Outcome:
    rng = random.Random(seed)
    n = 0
    for _ in range(random_count):
        phi = random_definition(rng, random_size, rng.randint(1, 12))
        n += 1
        err = check_definition(phi)
        if err:
            return _fail(n, f"random definition {sorted(map(str, phi.rules))}: {err}")
    for phi in all_definitions(full_size):
        n += 1
        err = check_definition(phi)
        if err:
            return _fail(n, f"definition {sorted(map(str, phi.rules))}: {err}")
    return _ok(n)


def check_monotonicity(seed: int = 0, count: int = 50, size: int = 4) -> Outcome:
    rng = random.Random(seed)
    U = list(range(size))
    subsets = [frozenset(c) for k in range(size + 1) for c in combinations(U, k)]
    n = 0
    for _ in range(count):
        phi = random_definition(rng, size, rng.randint(1, 8))
        for C in subsets:
            gc = gamma(phi, C)
            for D in subsets:
                if C <= D:
                    n += 1
                    if not gc <= gamma(phi, D):
                        return _fail(n, "gamma is not monotone")
    return _ok(n)


# hf_lab

ADJUST_POOL = (HFSet(), ordinal(1), HFSet([ordinal(1)]), ordinal(2))


def check_adjust(ceilings: Ceilings = DEFAULT_CEILINGS) -> Outcome:
    v = check_adjust_equivalences(ADJUST_POOL)
    if not v.holds:
        R, S, first, second = v.witness
        return _fail(v.checked, f"R={R} S={S} first={first} second={second}")
    return _ok(v.checked)


def check_fullness(ceilings: Ceilings = DEFAULT_CEILINGS) -> Outcome:
    """Every full ``c`` contains each ⊆-minimal member of ``mv(a,b)``; ``mv(a,b)`` is full (``|a x b| <= 4``)."""
    pool = cumulative_level(2)
    bases = [HFSet(c) for k in range(3) for c in combinations(pool, k)]
    n = 0
    for a in bases:
        for b in bases:
            if len(a) * len(b) > 4:
                continue
            mv = mv_enumerate(a, b, ceilings)
            if not is_full(mv, mv):
                return _fail(n, f"mv({a},{b}) is not full")
            minimal = [r for r in mv if not any(s.pairs < r.pairs for s in mv)]
            for c in full_subsets(a, b, False, ceilings):
                n += 1
                if not all(r in c for r in minimal):
                    return _fail(n, f"full subset of mv({a},{b}) misses a minimal relation")
    return _ok(n)


def check_census(ceilings: Ceilings = DEFAULT_CEILINGS) -> Outcome:
    rows = census(4, 8, 0, ceilings)
    by_set = {r["set"]: r for r in rows}
    if not by_set.get("{{}}", {}).get("regular"):
        return _fail(len(rows), "{{}} is not reported regular")
    two = by_set.get("{{},{{}}}")
    if two is None or two["regular"]:
        return _fail(len(rows), "2 is not reported non-regular")
    for r in rows:
        if r["pairing_closure"] == "violated":
            return _fail(len(rows), f"pairing closure violated at {r['set']}")
        if r["contains_2"] and r["regular"]:
            return _fail(len(rows), f"{r['set']} contains 2 and is regular")
    return _ok(len(rows))


def check_refine(ceilings: Ceilings = DEFAULT_CEILINGS) -> Outcome:
    """Refinement succeeds on an instance exactly when the regularity clause has a witness for it."""
    n = 0
    for A in transitive_subsets(cumulative_level(3), 4):
        regular = is_regular(A, ceilings).holds
        for a in A:
            for R in mv_enumerate(a, A, ceilings):
                n += 1
                b = set_mv_refine(A, a, R)
                if regular and b is None:
                    return _fail(n, f"no refinement in regular {A}")
                if b is not None and not (b.issubset(R.as_hf()) and b in A):
                    return _fail(n, f"bad refinement {b} in {A}")
    return _ok(n)


def check_hf_canonical(level: int = 3) -> Outcome:
    n = 0
    xs = cumulative_level(level)
    for x in xs:
        n += 1
        tc = x.transitive_closure()
        if not tc.is_transitive() or not x.issubset(tc):
            return _fail(n, f"TC({x}) is not a transitive superset")
        for y in xs:
            if y.is_transitive() and x.issubset(y) and not tc.issubset(y):
                return _fail(n, f"TC({x}) is not minimal")
        if HFSet.parse(str(x)) != x:
            return _fail(n, f"{x} does not reparse")
    return _ok(n)


# registry

@dataclass(frozen=True)
class Suite:
    module: str
    name: str
    run: Callable[["SuiteContext"], Outcome]


@dataclass(frozen=True)
class SuiteContext:
    frames: tuple[Frame, ...]
    seed: int = 0
    ceilings: Ceilings = DEFAULT_CEILINGS

    def frame(self, frame_id: str) -> Frame:
        for f in self.frames:
            if f.frame_id == frame_id:
                return f
        return corpus.frame(frame_id)


def _each(check):
    def run(ctx: SuiteContext) -> Outcome:
        n = 0
        for f in ctx.frames:
            o = check(f)
            n += o.checked
            if not o.passed:
                return Outcome(False, n, o.detail)
        return _ok(n)

    return run


def _chain_names(ctx: SuiteContext) -> tuple[Frame, tuple[Name, ...]]:
    f = ctx.frame("chain2")
    return f, enumerate_names(f, 2, 2).names


def _small(ctx: SuiteContext, limit: int) -> list[Frame]:
    return [f for f in ctx.frames if f.topology.size <= limit]


SUITES: tuple[Suite, ...] = (
    Suite("frame_core", "topology_axioms", lambda c: check_topologies(c.frames)),
    Suite("frame_core", "nucleus_laws", _each(check_nucleus_laws)),
    Suite("frame_core", "distributivity", _each(check_distributivity)),
    Suite("frame_core", "adjunction", _each(check_adjunction)),
    Suite("frame_core", "generators", _each(check_generators)),
    Suite("frame_core", "double_negation", _each(check_double_negation)),
    Suite("frame_core", "relativized_J", lambda c: _each(check_relativized_J)(SuiteContext(tuple(_small(c, 3))))),
    Suite("name_universe", "rank_monotonicity", lambda c: check_rank_monotonicity(c.frame("chain2"))),
    Suite("name_universe", "relativization", lambda c: check_name_relativization(c.frame("chain2"), seed=c.seed)),
    Suite("name_universe", "canonical_identity", lambda c: check_canonical_identity(c.frame("chain2"))),
    Suite("name_universe", "bottom_pruning", lambda c: check_bottom_pruning(c.frame("heavy_bottom"))),
    Suite("formula_lang", "round_trip", lambda c: check_round_trip(all_corpus_formulas())),
    Suite("formula_lang", "relativize", lambda c: check_relativize(all_corpus_formulas())),
    Suite("formula_lang", "dn_stability", lambda c: check_dn_stability([f for f in c.frames if len(f) <= 8])),
    Suite("evaluator", "ipc_soundness", lambda c: check_ipc_soundness(c.frames)),
    Suite("evaluator", "peirce", lambda c: check_peirce(c.frame("chain2"))),
    Suite("evaluator", "bcst_instances", lambda c: check_bcst(c.frames)),
    Suite("evaluator", "ordered_pairs", lambda c: _each(check_ordered_pairs)(SuiteContext(tuple(f for f in c.frames if len(f) <= 8)))),
    Suite("evaluator", "equality", lambda c: check_equality(*_chain_names(c))),
    Suite("evaluator", "substitutivity", lambda c: check_substitutivity(*_chain_names(c), enumerate_names(c.frame("chain2"), 1, 1).names)),
    Suite("evaluator", "dn_correspondence", lambda c: check_dn_correspondence(c.frames)),
    Suite("evaluator", "delta0_lem", lambda c: check_delta0_lem(*_chain_names(c))),
    Suite("evaluator", "absoluteness", lambda c: check_absoluteness(*_chain_names(c))),
    Suite("evaluator", "cache_coherence", lambda c: check_cache_coherence(*_chain_names(c))),
    Suite("inductive_engine", "fixed_points", lambda c: check_inductive(seed=c.seed)),
    Suite("inductive_engine", "monotonicity", lambda c: check_monotonicity(seed=c.seed)),
    Suite("hf_lab", "adjustment", lambda c: check_adjust(c.ceilings)),
    Suite("hf_lab", "fullness", lambda c: check_fullness(c.ceilings)),
    Suite("hf_lab", "census", lambda c: check_census(c.ceilings)),
    Suite("hf_lab", "refinement", lambda c: check_refine(c.ceilings)),
    Suite("hf_lab", "hf_canonical", lambda c: check_hf_canonical()),
)


@dataclass(frozen=True)
class SuiteResult:
    module: str
    name: str
    passed: bool
    checked: int
    detail: str
    seconds: float = field(compare=False, default=0.0)

    def record(self) -> dict:
        """JSON record; timing is left out so reports are byte-stable."""
        return {
            "module": self.module,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
        }


def select(filter_text: str | None = None) -> list[Suite]:
    if not filter_text:
        return list(SUITES)
    keys = [k.strip() for k in filter_text.split(",") if k.strip()]
    return [s for s in SUITES if any(k in (s.module, s.name, f"{s.module}.{s.name}") for k in keys)]


def run_suites(
    frames: Sequence[Frame] | None = None,
    filter_text: str | None = None,
    seed: int = 0,
    ceilings: Ceilings = DEFAULT_CEILINGS,
    suites: Sequence[Suite] | None = None,
) -> list[SuiteResult]:
    ctx = SuiteContext(tuple(frames if frames is not None else corpus.all_frames()), seed, ceilings)
    out = []
    for s in suites if suites is not None else select(filter_text):
        start = time.perf_counter()
        try:
            o = s.run(ctx)
        except Exception as exc:  # a crashing suite is a failing suite
            o = Outcome(False, 0, f"{type(exc).__name__}: {exc}")
        out.append(SuiteResult(s.module, s.name, o.passed, o.checked, o.detail, time.perf_counter() - start))
    out.sort(key=lambda r: (r.module, r.name))
    return out
