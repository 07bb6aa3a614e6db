"""Command line entry point: ``diskshrink <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from diskshrink import compress_acyc, eptas, fileformat, generators, kernel_indep, solvers, treewidth
from diskshrink.model import Instance, Problem, Verdict, validate
from diskshrink.render import render_svg

SOLVERS = ("oracle", "fpt", "treewidth", "eptas")


class UsageError(Exception):
    pass


def run_solver(inst: Instance, solver: str, eps: float = 1.0, cap: int | None = None) -> Verdict:
    p = inst.problem
    if solver == "oracle":
        if p.is_independence:
            return solvers.oracle_independence(inst, **({"cap": cap} if cap else {}))
        if p.is_acyclicity:
            return solvers.oracle_acyclicity(inst, **({"cap": cap} if cap else {}))
        if p is Problem.SHRINK_CONNECTIVITY:
            return solvers.oracle_connectivity(inst, **({"cap": cap} if cap else {}))
    elif solver == "fpt":
        if p is Problem.SHRINK_CONNECTIVITY and cap:
            return solvers.solve_connectivity(inst, node_cap=cap)
        if p is not Problem.EXPAND_CONNECTIVITY:
            return solvers.solve(inst)
    elif solver == "treewidth":
        if p in (Problem.SHRINK_INDEPENDENCE, Problem.SHRINK_ACYCLICITY):
            return treewidth.solve_by_treewidth(inst)
    elif solver == "eptas":
        if p.is_independence:
            return eptas.eptas_independence(inst, eps, **({"cap": cap} if cap else {}))
    else:
        raise UsageError(f"unknown solver {solver!r}")
    raise UsageError(f"solver {solver!r} does not handle {p.value}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    inst = fileformat.load(args.instance)
    v = run_solver(inst, args.solver, args.eps, args.cap)
    _emit(fileformat.verdict_to_text(v, inst.n), args.out)
    return 0


def cmd_kernelize(args) -> int:
    inst = fileformat.load(args.instance)
    if not inst.problem.is_independence:
        raise UsageError("kernelize needs an independence instance")
    ker = kernel_indep.kernelize(inst)
    doc = {"kept": list(ker.kept), "cover": sorted(ker.cover), "dropped": sorted(ker.dropped),
           "short_circuit": ker.short_circuit, "size": ker.size}
    if args.emit_instance and not ker.short_circuit:
        sub, _ = inst.restrict(ker.kept)
        _emit(fileformat.serialize(sub), args.out)
    else:
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def cmd_compress(args) -> int:
    inst = fileformat.load(args.instance)
    if not inst.problem.is_acyclicity:
        raise UsageError("compress needs an acyclicity instance")
    res = compress_acyc.compress(inst)
    g = res.graph
    doc = {
        "short_circuit": res.short_circuit,
        "reason": res.reason,
        "k_remaining": res.k_remaining,
        "fixed_cost": res.fixed_cost,
        "core_vertices": sorted(g.core_vertices),
        "cycle_vertices": [{"members": list(c.members), "count_needed": c.count_needed,
                            "cost_needed": c.cost_needed} for c in g.cycle_vertices],
        "edges": [{"id": e.id, "kind": e.kind, "endpoints": [e.u, e.v], "dist": e.dist,
                   "d_start": e.d_start, "d_end": e.d_end, "d_max": e.d_max, "path": list(e.path)}
                  for e in g.edges],
    }
    _emit(json.dumps(fileformat._jsonable(doc), sort_keys=True, indent=2) + "\n", args.out)
    return 0


def cmd_eptas(args) -> int:
    args.solver = "eptas"
    return cmd_solve(args)


def cmd_oracle(args) -> int:
    args.solver = "oracle"
    return cmd_solve(args)


def cmd_render(args) -> int:
    inst = fileformat.load(args.instance)
    sol = None
    if args.solution:
        sol = fileformat.solution_from_dict(json.loads(Path(args.solution).read_text()))
    elif args.solve:
        v = run_solver(inst, args.solver, args.eps, args.cap)
        sol = v.witness
    _emit(render_svg(inst, sol), args.out)
    return 0


def cmd_generate(args) -> int:
    params = {k: v for k, v in json.loads(args.params).items()}
    if args.seed is not None and args.kind in ("random", "grid-cluster", "planted"):
        params["seed"] = args.seed
    inst = generators.generate(args.kind, **params)
    _emit(fileformat.serialize(inst), args.out)
    return 0


def _bench_files(paths) -> list[Path]:
    files = []
    for p in map(Path, paths):
        files += sorted(p.glob("*.json")) if p.is_dir() else [p]
    return files


def cmd_bench(args) -> int:
    rows = ["instance\tsolver\tanswer\tcost\tvalid\tseconds"]
    for f in _bench_files(args.paths):
        inst = fileformat.load(f)
        t0 = time.perf_counter()
        try:
            v = run_solver(inst, args.solver, args.eps, args.cap)
            answer = "inconclusive" if v.inconclusive else ("yes" if v.answer else "no")
            cost = "" if v.optimum_cost is None else f"{v.optimum_cost:.6g}"
            valid = "" if v.witness is None else str(bool(_bench_validate(inst, v, args)))
        except (UsageError, solvers.OracleSizeError) as exc:
            answer, cost, valid = f"skipped: {exc}", "", ""
        rows.append(f"{f.name}\t{args.solver}\t{answer}\t{cost}\t{valid}\t{time.perf_counter() - t0:.4f}")
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _bench_validate(inst, v, args):
    if args.solver == "eptas":
        mu = None if inst.mu is None else (1 + args.eps) * inst.mu
        return validate(inst, v.witness, relax_k=(1 + args.eps) * inst.k, relax_mu=mu)
    return validate(inst, v.witness)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diskshrink", description="Shrinking disks to reach graph properties.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, solver=True):
        if solver:
            p.add_argument("--solver", choices=SOLVERS, default="fpt")
        p.add_argument("--eps", type=float, default=1.0)
        p.add_argument("--cap", type=int, default=None, help="oracle size cap / node cap / guess cap")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="independence kernel")
    p.add_argument("instance")
    p.add_argument("--emit-instance", action="store_true", help="write the kernelized instance")
    common(p, solver=False)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("compress", help="acyclicity compression")
    p.add_argument("instance")
    common(p, solver=False)
    p.set_defaults(func=cmd_compress)

    for name, func in (("eptas", cmd_eptas), ("oracle", cmd_oracle)):
        p = sub.add_parser(name, help=f"shorthand for solve --solver {name}")
        p.add_argument("instance")
        common(p, solver=False)
        p.set_defaults(func=func)

    p = sub.add_parser("render", help="draw an instance (and a solution) as SVG")
    p.add_argument("instance")
    p.add_argument("--solution", default=None, help="verdict document written by solve")
    p.add_argument("--solve", action="store_true", help="solve first and draw the witness")
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("kind", choices=generators.KINDS)
    p.add_argument("--params", default="{}", help='JSON object of generator parameters, e.g. \'{"n": 8}\'')
    common(p, solver=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="tabulate solver runs over instance files or directories")
    p.add_argument("paths", nargs="+")
    common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, fileformat.InstanceFormatError, solvers.OracleSizeError, ValueError,
            NotImplementedError, OSError) as exc:
        print(f"diskshrink: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
