"""The ten acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import json
import time
from io import StringIO

from heytinglab import cli, corpus
from heytinglab.evaluator import boolean_transport
from heytinglab.names import enumerate_names
from heytinglab.suites import (
    check_absoluteness,
    check_adjunction,
    check_adjust,
    check_bcst,
    check_census,
    check_delta0_lem,
    check_distributivity,
    check_dn_correspondence,
    check_inductive,
    check_nucleus_laws,
    check_ordered_pairs,
    check_peirce,
    check_topologies,
    delta0_lem_witness,
)


def verdict(capsys, number, title, ok, detail=""):
    with capsys.disabled():
        print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def chain_universe():
    f = corpus.three_chain()
    return f, enumerate_names(f, 2, 2).names


def test_01_frame_laws(capsys):
    start = time.perf_counter()
    frames = corpus.all_frames()
    sizes = {f.topology.size for f in frames}
    # a covering beyond the order leaves some lower sets unstable
    non_downset = [f.frame_id for f in frames if len(f) < sum(f.topology.is_lower(m) for m in range(1 << f.topology.size))]
    outcomes = [check_topologies(frames)]
    for f in frames:
        outcomes += [check_nucleus_laws(f), check_distributivity(f), check_adjunction(f)]
    elapsed = time.perf_counter() - start
    ok = (
        len(frames) >= 8
        and sizes >= set(range(1, 7))
        and bool(non_downset)
        and all(o.passed for o in outcomes)
        and elapsed < 10
    )
    checked = sum(o.checked for o in outcomes)
    verdict(capsys, 1, "frame laws", ok, f"{len(frames)} topologies, {checked} checks, {elapsed:.2f}s")


def test_02_delta0_lem(capsys):
    f, names = chain_universe()
    found = delta0_lem_witness(f, names)
    boolean_top = False
    if found is not None:
        lem, a, b = found
        tr = boolean_transport(f)
        bv = tr.evaluator().value_m(lem, {"a": tr.name(a), "b": tr.name(b)}, ())
        boolean_top = bv == tr.frame.top_m
    lem_all = check_delta0_lem(f, names)
    peirce = check_peirce(f)
    ok = found is not None and boolean_top and lem_all.passed and peirce.passed and len(corpus.bounded_corpus()) >= 50
    verdict(capsys, 2, "bounded excluded middle in the Booleanization", ok, f"{lem_all.checked} instances")


def test_03_bcst_instances(capsys):
    o = check_bcst(corpus.all_frames())
    verdict(capsys, 3, "BCST axiom instances are top on every frame", o.passed, o.detail or f"{o.checked} instances")


def test_04_absoluteness(capsys):
    f, names = chain_universe()
    o = check_absoluteness(f, names)
    verdict(capsys, 4, "absoluteness across transitive sub-universes", o.passed, o.detail or f"{o.checked} comparisons")


def test_05_adjustment(capsys):
    o = check_adjust()
    ok = o.passed and o.checked >= 10_000
    verdict(capsys, 5, "adjustment equivalences", ok, o.detail or f"{o.checked} instances")


def test_06_fixed_points(capsys):
    o = check_inductive(seed=0, random_count=200, random_size=6, full_size=3)
    verdict(capsys, 6, "least fixed points and minimality", o.passed, o.detail or f"{o.checked} definitions")


def test_07_census(capsys):
    start = time.perf_counter()
    o = check_census()
    elapsed = time.perf_counter() - start
    ok = o.passed and elapsed < 60
    verdict(capsys, 7, "HF regularity census", ok, o.detail or f"{o.checked} rows, {elapsed:.2f}s")


def test_08_ordered_pairs(capsys):
    frames = [corpus.frame("chain2"), corpus.frame("vee"), corpus.frame("antichain2")]
    outcomes = [check_ordered_pairs(f) for f in frames]
    ok = all(o.passed for o in outcomes)
    verdict(capsys, 8, "ordered-pair law", ok, f"{sum(o.checked for o in outcomes)} tuples on {len(frames)} frames")


def test_09_dn_correspondence(capsys):
    o = check_dn_correspondence(corpus.all_frames())
    verdict(capsys, 9, "double-negation correspondence", o.passed, o.detail or f"{o.checked} valuations")


def test_10_determinism(capsys):
    runs = []
    for _ in range(2):
        out, err = StringIO(), StringIO()
        code = cli.run(["suite"], out=out, err=err)
        runs.append((code, out.getvalue()))
    ok = runs[0] == runs[1] and runs[0][0] == 0 and json.loads(runs[0][1])["passed"]
    verdict(capsys, 10, "byte-identical suite reports", ok, f"{len(runs[0][1])} bytes")
