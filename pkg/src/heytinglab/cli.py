"""Command-line front end.

Exit codes: 0 success, 1 validation or suite failure, 2 parse error, unbound
identifier or unreadable file, 3 ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import formulas as fl
from .config import DEFAULT_CEILINGS, Ceilings, ceilings_from_env, parse_overrides
from .errors import BoundError, HeytingLabError, InputError, ParseError, ResolutionError
from .evaluator import Environment, Evaluator, boolean_transport, eval_relativized, result_record
from .frames import Frame, booleanize, enumerate_frame, load_topology, validate_topology
from .inductive import iteration_class, least_fixed_point, load_rules, stabilization_index, verify_minimality
from .largesets import census
from .names import domain_closure, enumerate_names, resolve_term

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3
MODES = ("base", "boolean", "relativized")


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...] = ()
    rank: int = 2
    width: int = 2
    mode: str = "base"
    ceilings: Ceilings = DEFAULT_CEILINGS
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.rank < 0 or self.width < 0:
            raise InputError("rank and width bounds must be non-negative")
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}")


class Failure(Exception):
    """A run that completed with a negative verdict; carries the report."""

    def __init__(self, report):
        super().__init__("failure")
        self.report = report


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# markdown

def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return "`" + json.dumps(v, sort_keys=True, ensure_ascii=False) + "`"
    return str(v).replace("|", "\\|")


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["(no rows)"]
    keys = sorted({k for r in rows for k in r})
    out = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    out += ["| " + " | ".join(_cell(r.get(k, "")) for k in keys) + " |" for r in rows]
    return out


def to_markdown(title: str, report) -> str:
    lines = [f"# {title}", ""]
    if isinstance(report, list):
        lines += _table(report)
    else:
        scalars = {k: v for k, v in sorted(report.items()) if not (isinstance(v, list) and v and isinstance(v[0], dict))}
        for k, v in scalars.items():
            lines.append(f"- **{k}**: {_cell(v)}")
        for k, v in sorted(report.items()):
            if k not in scalars:
                lines += ["", f"## {k}", ""] + _table(v)
    return "\n".join(lines) + "\n"


# commands

def _frame_for(path: str, ceilings: Ceilings) -> Frame:
    t = load_topology(path)
    if t.size > ceilings.carrier:
        raise BoundError(f"carrier of {t.size} atoms exceeds the ceiling {ceilings.carrier}")
    return enumerate_frame(t, frame_id=t.name or Path(path).stem)


def cmd_check_topology(cfg: RunConfig) -> dict:
    t = load_topology(cfg.paths[0])
    bad = validate_topology(t)
    report = {
        "topology": t.name,
        "atoms": list(t.atoms),
        "valid": not bad,
        "violations": [{"axiom": v.axiom, "witness": str(v.witness)} for v in bad],
    }
    if bad:
        raise Failure(report)
    return report


def cmd_frame(cfg: RunConfig, boolean: bool = False) -> dict:
    t = load_topology(cfg.paths[0])
    bad = validate_topology(t)
    if bad:
        raise Failure({"topology": t.name, "valid": False, "violations": [{"axiom": v.axiom, "witness": str(v.witness)} for v in bad]})
    f = _frame_for(cfg.paths[0], cfg.ceilings)
    if boolean:
        f = booleanize(f)
    report = f.to_json()
    report["frame"] = f.frame_id
    report["is_boolean"] = f.is_boolean()
    return report


def _bounds(cfg: RunConfig) -> None:
    if cfg.rank > cfg.ceilings.rank:
        raise BoundError(f"rank {cfg.rank} exceeds the ceiling {cfg.ceilings.rank}")
    if cfg.width > cfg.ceilings.width:
        raise BoundError(f"width {cfg.width} exceeds the ceiling {cfg.ceilings.width}")


def cmd_names(cfg: RunConfig) -> dict:
    _bounds(cfg)
    f = _frame_for(cfg.paths[0], cfg.ceilings)
    u = enumerate_names(f, cfg.rank, cfg.width, ceiling=cfg.ceilings.names)
    return {
        "frame": f.frame_id,
        "rank": cfg.rank,
        "width": cfg.width,
        "count": len(u),
        "names": [str(n) for n in u.names],
    }


def cmd_eval(cfg: RunConfig) -> dict:
    """Evaluate a formula file: ``let`` bindings, then one formula.

    ``relativized`` mode lets unbounded quantifiers range over the domain
    closure of the bound names.
    """
    _bounds(cfg)
    program = fl.parse_program(Path(cfg.paths[0]).read_text())
    f = _frame_for(cfg.paths[1], cfg.ceilings)
    assignment = {}
    for var, term in program.bindings:
        assignment[var] = resolve_term(term, f, assignment)
    phi = program.formula
    if fl.is_bounded(phi):
        universe = ()
    else:
        universe = enumerate_names(f, cfg.rank, cfg.width, ceiling=cfg.ceilings.names).names
    env = Environment(assignment, universe, f, cfg.rank, cfg.width)
    if cfg.mode == "base":
        value = Evaluator(f).value(phi, env)
    elif cfg.mode == "boolean":
        tr = boolean_transport(f)
        value = tr.evaluator().value(phi, tr.environment(env))
    else:
        A = domain_closure(assignment.values())
        value = eval_relativized(phi, A, env)
        env = Environment(assignment, tuple(A), f, None, None)
    record = result_record(phi, f.frame_id, cfg.mode, value, env)
    if cfg.mode == "relativized" and record["truncation"] is not None:
        record["truncation"] = {"rank": None, "width": None, "universe": len(env.universe)}
    return record


def cmd_census(cfg: RunConfig, max_rank: int, max_size: int, min_size: int) -> list[dict]:
    if max_rank < 0 or max_size < 0 or min_size < 0:
        raise InputError("census bounds must be non-negative")
    return census(max_rank, max_size, min_size, cfg.ceilings)


def cmd_inductive(cfg: RunConfig, stages: int | None = None) -> dict:
    phi = load_rules(cfg.paths[0])
    fp = least_fixed_point(phi)
    n = stages if stages is not None else len(phi.universe) + 1
    report = {
        "universe": sorted(map(str, phi.universe)),
        "rules": len(phi.rules),
        "stages": [sorted(map(str, s)) for s in iteration_class(phi, n)],
        "least_fixed_point": sorted(map(str, fp)),
        "stabilization_index": stabilization_index(phi),
    }
    if len(phi.universe) <= 12:
        report["minimal"] = verify_minimality(phi, fp)
    return report


def cmd_suite(cfg: RunConfig, filter_text: str | None, frames=None, stream=None) -> dict:
    from .suites import run_suites

    results = run_suites(frames=frames, filter_text=filter_text, seed=cfg.seed, ceilings=cfg.ceilings)
    stream = stream if stream is not None else sys.stderr
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.module}.{r.name} ({r.seconds:.2f}s)", file=stream)
    report = {
        "passed": all(r.passed for r in results),
        "seed": cfg.seed,
        "suites": [r.record() for r in results],
    }
    if cfg.fmt == "md":
        report["timing"] = [{"suite": f"{r.module}.{r.name}", "seconds": round(r.seconds, 3)} for r in results]
    if not report["passed"]:
        raise Failure(report)
    return report


# argument handling

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--override-ceilings", metavar="K=V,...", default=None,
                        help="raise or lower ceilings, e.g. rank=4,carrier=7")
    p = argparse.ArgumentParser(prog="heytinglab", description="Heyting-valued models over finite formal topologies.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-topology", parents=[common], help="validate a topology file")
    s.add_argument("topology")

    s = sub.add_parser("frame", parents=[common], help="enumerate the frame of a topology")
    s.add_argument("topology")
    s.add_argument("--booleanize", action="store_true")

    s = sub.add_parser("names", parents=[common], help="enumerate the bounded name universe")
    s.add_argument("topology")
    s.add_argument("--rank", type=int, default=1)
    s.add_argument("--width", type=int, default=1)

    s = sub.add_parser("eval", parents=[common], help="evaluate a formula file over a topology")
    s.add_argument("formula")
    s.add_argument("topology")
    s.add_argument("--mode", choices=MODES, default="base")
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--width", type=int, default=2)

    s = sub.add_parser("census", parents=[common], help="regularity census of small transitive HF sets")
    s.add_argument("--max-rank", type=int, default=4)
    s.add_argument("--max-size", type=int, default=8)
    s.add_argument("--min-size", type=int, default=0)

    s = sub.add_parser("inductive", parents=[common], help="least fixed point of a rule file")
    s.add_argument("rules")
    s.add_argument("--stages", type=int, default=None)

    s = sub.add_parser("suite", parents=[common], help="run the property suites")
    s.add_argument("--filter", default=None, help="comma-separated module or suite names")
    s.add_argument("--seed", type=int, default=0)
    return p


def _ceilings(args) -> Ceilings:
    base = ceilings_from_env()
    if args.override_ceilings:
        return base.with_overrides(allow_raise=True, **parse_overrides(args.override_ceilings))
    return base


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command,
            paths=tuple(getattr(args, k) for k in ("formula", "topology", "rules") if getattr(args, k, None)),
            rank=getattr(args, "rank", 2),
            width=getattr(args, "width", 2),
            mode=getattr(args, "mode", "base"),
            ceilings=_ceilings(args),
            fmt=args.format,
            seed=getattr(args, "seed", 0),
        )
        try:
            report = dispatch(cfg, args, err)
        except Failure as fail:
            report, code = fail.report, EXIT_FAIL
    except BoundError as exc:
        print(f"error: ceiling exceeded: {exc}", file=err)
        return EXIT_CEILING
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (ResolutionError, InputError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except HeytingLabError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if cfg.fmt == "md":
        out.write(to_markdown(args.command, report))
    else:
        out.write(dump_json(report))
    return code


def dispatch(cfg: RunConfig, args, err):
    c = cfg.command
    if c == "check-topology":
        return cmd_check_topology(cfg)
    if c == "frame":
        return cmd_frame(cfg, boolean=args.booleanize)
    if c == "names":
        return cmd_names(cfg)
    if c == "eval":
        return cmd_eval(cfg)
    if c == "census":
        return cmd_census(cfg, args.max_rank, args.max_size, args.min_size)
    if c == "inductive":
        return cmd_inductive(cfg, args.stages)
    if c == "suite":
        return cmd_suite(cfg, args.filter, stream=err)
    raise InputError(f"unknown command {c!r}")


def main() -> None:
    sys.exit(run())
