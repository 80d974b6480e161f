"""Multi-valued functions, Fullness and regularity checkers over hereditarily finite sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations, product
from typing import Iterable, Iterator

from .config import DEFAULT_CEILINGS, Ceilings
from .errors import BoundError, InputError
from .hfsets import EMPTY, HFSet, cumulative_level, kpair, ordinal, product_set

Pair = tuple[HFSet, HFSet]


@dataclass(frozen=True)
class MVRelation:
    """A finite relation with a declared domain ``a`` and codomain ``B``."""

    pairs: frozenset[Pair]
    domain: HFSet
    codomain: HFSet

    def __init__(self, pairs: Iterable[Pair], domain: HFSet, codomain: HFSet):
        object.__setattr__(self, "pairs", frozenset(pairs))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)

    def validate(self) -> None:
        for x, y in self.pairs:
            if x not in self.domain or y not in self.codomain:
                raise InputError(f"pair ({x}, {y}) lies outside {self.domain} x {self.codomain}")

    def as_hf(self) -> HFSet:
        """The relation as an HF set of Kuratowski pairs."""
        return HFSet(kpair(x, y) for x, y in self.pairs)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs, key=lambda p: (p[0].code, p[1].code))

    def __str__(self):
        return "{" + ", ".join(f"<{x},{y}>" for x, y in self.sorted_pairs()) + "}"


def total_on(pairs: Iterable[Pair], dom: Iterable, target: Iterable) -> bool:
    """Every ``x`` in ``dom`` is related to some ``y`` in ``target``."""
    target = set(target)
    rel = set(pairs)
    return all(any((x, y) in rel for y in target) for x in dom)


def onto(pairs: Iterable[Pair], dom: Iterable, target: Iterable) -> bool:
    """Every ``y`` in ``target`` is related to from some ``x`` in ``dom``."""
    dom = set(dom)
    rel = set(pairs)
    return all(any((x, y) in rel for x in dom) for y in target)


def is_mvf(R: MVRelation) -> bool:
    R.validate()
    return total_on(R.pairs, R.domain, R.codomain)


def is_mvf_both(R: MVRelation) -> bool:
    R.validate()
    return total_on(R.pairs, R.domain, R.codomain) and onto(R.pairs, R.domain, R.codomain)


def adjust(R: MVRelation) -> MVRelation:
    """``{⟨a, ⟨a,b⟩⟩ | ⟨a,b⟩ ∈ R}`` as a relation from the domain to domain x codomain."""
    if not is_mvf(R):
        raise InputError("adjust needs a multi-valued function")
    return MVRelation(
        ((x, kpair(x, y)) for x, y in R.pairs), R.domain, product_set(R.domain, R.codomain)
    )


def mv_enumerate(a: HFSet, b: HFSet, ceilings: Ceilings = DEFAULT_CEILINGS) -> list[MVRelation]:
    """Every ``R ⊆ a x b`` with ``dom R = a``."""
    cells = len(a) * len(b)
    if 2**cells > ceilings.subset_search:
        raise BoundError(f"|a x b| = {cells}: 2^{cells} relations exceed the search ceiling")
    rows = []
    for x in a:
        choices = [s for k in range(1, len(b) + 1) for s in combinations(list(b), k)]
        rows.append([[(x, y) for y in s] for s in choices])
    out = [MVRelation(chain.from_iterable(sel), a, b) for sel in product(*rows)]
    out.sort(key=lambda r: (len(r.pairs), [(p[0].code, p[1].code) for p in r.sorted_pairs()]))
    return out


def is_full(c: Iterable[MVRelation], mv: Iterable[MVRelation]) -> bool:
    c = list(c)
    return all(any(s.pairs <= r.pairs for s in c) for r in mv)


def full_subsets(
    a: HFSet, b: HFSet, minimal: bool = False, ceilings: Ceilings = DEFAULT_CEILINGS
) -> list[frozenset[MVRelation]]:
    """All full ``c ⊆ mv(a, b)``, or only those of least cardinality."""
    mv = mv_enumerate(a, b, ceilings)
    if 2 ** len(mv) > ceilings.subset_search:
        raise BoundError(f"|mv(a,b)| = {len(mv)}: subset search exceeds the ceiling")
    out = []
    for k in range(len(mv) + 1):
        for c in combinations(mv, k):
            if is_full(c, mv):
                out.append(frozenset(c))
        if minimal and out:
            break
    return out


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.holds


def _require_transitive(A: HFSet) -> None:
    if not A.is_transitive():
        raise InputError(f"{A} is not transitive")


def _relations_by_size(a: HFSet, A: HFSet, graphs_only: bool) -> Iterator[frozenset[Pair]]:
    """Relations from ``a`` into ``A`` with full domain; function graphs first."""
    targets = list(A)
    for f in product(targets, repeat=len(a)):
        yield frozenset(zip(a, f))
    if graphs_only:
        return
    rows = [[s for k in range(1, len(targets) + 1) for s in combinations(targets, k)] for _ in a]
    for sel in product(*rows):
        if any(len(s) > 1 for s in sel):
            yield frozenset((x, y) for x, s in zip(a, sel) for y in s)


def collection_witness(R: Iterable[Pair], a: HFSet, A: HFSet) -> HFSet | None:
    """Some ``b ∈ A`` with ``R: a ⇄ b``, or None."""
    R = frozenset(R)
    for b in A:
        if total_on(R, a, b) and onto(R, a, b):
            return b
    return None


def is_regular(A: HFSet, ceilings: Ceilings = DEFAULT_CEILINGS) -> Verdict:
    """Second-order Strong Collection over the transitive set ``A``.

    Searches every ``a ∈ A`` and every ``R ⊆ a x A`` with ``dom R = a`` for
    one without a ``b ∈ A`` satisfying ``R: a ⇄ b``.  When ``|a x A|``
    exceeds ``ceilings.relation_cells`` only function graphs are tried; a
    counterexample found there is genuine, otherwise the check refuses.
    """
    _require_transitive(A)
    checked = 0
    for a in sorted(A, key=lambda x: (len(x), x.code)):
        big = len(a) * len(A) > ceilings.relation_cells
        for R in _relations_by_size(a, A, graphs_only=big):
            checked += 1
            if collection_witness(R, a, A) is None:
                return Verdict(False, (a, MVRelation(R, a, A)), checked)
        if big:
            raise BoundError(
                f"|a x A| = {len(a) * len(A)} exceeds {ceilings.relation_cells} for a = {a}; "
                "no counterexample among function graphs"
            )
    return Verdict(True, None, checked)


def closure_failures(A: HFSet) -> dict[str, tuple | None]:
    """First failure of each BCST closure condition (None when it holds)."""
    members = list(A)
    out: dict[str, tuple | None] = {"emptyset": None if EMPTY in A else ()}
    out["union"] = next(((x,) for x in members if x.union() not in A), None)
    out["pairing"] = next(
        ((x, y) for x, y in product(members, repeat=2) if HFSet([x, y]) not in A), None
    )
    out["binary_intersection"] = next(
        ((x, y) for x, y in product(members, repeat=2) if (x & y) not in A), None
    )
    return out


@dataclass(frozen=True)
class BCSTVerdict:
    holds: bool
    regular: Verdict
    union_regular: bool
    closure: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def is_bcst_regular(A: HFSet, ceilings: Ceilings = DEFAULT_CEILINGS) -> BCSTVerdict:
    reg = is_regular(A, ceilings)
    fails = closure_failures(A)
    union_regular = reg.holds and fails["union"] is None
    holds = reg.holds and all(v is None for v in fails.values())
    return BCSTVerdict(holds, reg, union_regular, fails)


def check_pairing_closure(A: HFSet, ceilings: Ceilings = DEFAULT_CEILINGS) -> tuple[str, tuple | None]:
    """Instance check of: regular and ``2 ∈ A`` imply ``⟨a,b⟩ ∈ A`` for all members."""
    reg = is_regular(A, ceilings)
    if not reg.holds or ordinal(2) not in A:
        return "vacuous", None
    for x, y in product(list(A), repeat=2):
        if kpair(x, y) not in A:
            return "violated", (x, y)
    return "satisfied", None


def set_mv_refine(A: HFSet, a: HFSet, R: MVRelation) -> HFSet | None:
    """Find ``b ∈ A`` with ``b ⊆ R`` and ``b: a ⇉ A`` through the adjusted relation.

    Collects ``𝒜(R): a ⇄ b`` inside ``A``; any such ``b`` is a subset of
    ``R`` (as Kuratowski pairs) that is still total on ``a``.
    """
    _require_transitive(A)
    if a not in A:
        raise InputError(f"precondition failed: {a} is not a member of A")
    if R.domain != a or not R.codomain.issubset(A):
        raise InputError("precondition failed: R must be declared from a into A")
    if not is_mvf(R):
        raise InputError("precondition failed: R is not total on a")
    adj = adjust(R)
    b = collection_witness(adj.pairs, a, A)
    if b is None:
        return None
    graph = R.as_hf()
    assert b.issubset(graph), "collected set is not contained in R"
    return b


def transitive_subsets(elements: list[HFSet], max_size: int, min_size: int = 0) -> list[HFSet]:
    """Transitive sets drawn from ``elements`` (assumed closed under members), sized within bounds."""
    elements = sorted(elements, key=lambda x: x.code)
    out: list[HFSet] = []

    def go(k: int, chosen: list[HFSet], present: set[HFSet]):
        if k == len(elements):
            if len(chosen) >= min_size:
                out.append(HFSet(chosen))
            return
        go(k + 1, chosen, present)
        x = elements[k]
        if len(chosen) < max_size and x.elements <= present:
            present.add(x)
            chosen.append(x)
            go(k + 1, chosen, present)
            chosen.pop()
            present.discard(x)

    if min_size <= max_size:
        go(0, [], set())
    out.sort(key=lambda s: (len(s), s.code))
    return out


def census(max_rank: int = 4, max_size: int = 8, min_size: int = 0, ceilings: Ceilings = DEFAULT_CEILINGS) -> list[dict]:
    """One row per transitive ``A ⊆ V_max_rank`` with ``min_size <= |A| <= max_size``.

    Rows are evidence about small instances only; they settle no scheme.
    """
    if max_rank > 4 and ceilings.subset_search <= DEFAULT_CEILINGS.subset_search:
        raise BoundError(f"V_{max_rank} is beyond the census ceiling (max rank 4)")
    rows = []
    for A in transitive_subsets(cumulative_level(max_rank), max_size, min_size):
        v = is_bcst_regular(A, ceilings)
        status, pc_witness = check_pairing_closure(A, ceilings)
        witness = None
        if v.regular.witness is not None:
            wa, wR = v.regular.witness
            witness = {"a": str(wa), "R": str(wR)}
        rows.append(
            {
                "set": str(A),
                "size": len(A),
                "transitive": True,
                "regular": v.regular.holds,
                "union_regular": v.union_regular,
                "bcst_regular": v.holds,
                "contains_2": ordinal(2) in A,
                "pairing_closure": status,
                "witnesses": {
                    "regular": witness,
                    **{k: (None if w is None else [str(x) for x in w]) for k, w in v.closure.items()},
                },
            }
        )
    return rows


def relates_into(pairs: Iterable[Pair], dom: Iterable[HFSet], target: Iterable[HFSet]) -> bool:
    """``R: dom ⇉ target`` read as a property of ``R``: each ``x ∈ dom`` meets ``target``."""
    return total_on(frozenset(pairs), dom, target)


def relates_onto(pairs: Iterable[Pair], dom: Iterable[HFSet], target: Iterable[HFSet]) -> bool:
    """``R: dom ⇇ target``: each ``y ∈ target`` is reached from ``dom``."""
    return onto(frozenset(pairs), dom, target)


def adjust_equivalences(R: MVRelation, S: HFSet, _pre=None) -> tuple[bool, bool]:
    """Whether both adjustment equivalences hold for ``R`` against the set ``S``.

    First: ``𝒜(R): A ⇉ S`` iff ``R ∩ S: A ⇉ B`` (``S`` read as Kuratowski pairs).
    Second: ``𝒜(R): A ⇇ S`` iff ``S ⊆ R``.
    """
    adj, graph, as_hf = _pre or _adjust_data(R)
    meet = [graph[s] for s in S if s in graph]
    first = relates_into(adj, R.domain, S) == relates_into(meet, R.domain, R.codomain)
    second = relates_onto(adj, R.domain, S) == S.issubset(as_hf)
    return first, second


def _adjust_data(R: MVRelation):
    graph = {kpair(x, y): (x, y) for x, y in R.pairs}
    return adjust(R).pairs, graph, HFSet(graph)


def adjust_instances(pool: Iterable[HFSet], max_size: int = 2) -> Iterator[tuple[MVRelation, list[HFSet]]]:
    """Every ``R`` with ``A, B`` drawn from ``pool`` (``|A|, |B| <= max_size``), with its ``S`` range.

    ``R`` ranges over ``mv(A, B)`` and ``S`` over the subsets of ``A x B``
    together with one stray pair outside it, so that ``S ⊄ A x B`` is covered.
    The stray pair is ``⟨x, x⟩`` for the first ``x ∈ V_3`` outside ``A``.
    """
    pool = sorted(set(pool), key=lambda x: x.code)
    bases = [HFSet(c) for k in range(max_size + 1) for c in combinations(pool, k)]
    for A in bases:
        for B in bases:
            x = next(y for y in cumulative_level(3) if y not in A)
            cells = sorted(product_set(A, B), key=lambda c: c.code) + [kpair(x, x)]
            subsets = [HFSet(c) for k in range(len(cells) + 1) for c in combinations(cells, k)]
            for R in mv_enumerate(A, B):
                yield R, subsets


def check_adjust_equivalences(pool: Iterable[HFSet], max_size: int = 2) -> Verdict:
    """Exhaustive instance check of both adjustment equivalences."""
    checked = 0
    for R, subsets in adjust_instances(pool, max_size):
        pre = _adjust_data(R)
        for S in subsets:
            checked += 1
            first, second = adjust_equivalences(R, S, pre)
            if not (first and second):
                return Verdict(False, (R, S, first, second), checked)
    return Verdict(True, None, checked)
