"""Command line entry point: ``hochwerk verify|cohomology|homology|ext|trace``.

Exit codes: 0 all verdicts match, 1 a mismatch or internal failure,
2 bad input (parse, validation, violated hypothesis), 3 size budget exceeded.
"""

import argparse
import json
import logging
import os
import sys
import time

from . import theorems
from .bimodule import Bimodule, dual
from .derived import ext_dim, ext_via_hochschild
from .errors import BudgetExceeded, HochwerkError, HypothesisViolated, ParseError, ValidationError
from .hochschild import DEFAULT_BUDGET, cohomology_dims, homology_dims
from .instance import Task, bundled_path, parse_instance
from .theorems import VerificationRecord
from .triangular import via_corners

log = logging.getLogger("hochwerk")

SCHEMA = "hochwerk-records/1"
SUITES = ("thm3.1", "cor3.2", "thm3.3", "cor3.4", "cor3.5", "thm3.6", "thm3.8")
DEFAULT_COEFF = {"thm3.1": "T*", "thm3.3": "T", "phi0": "T*"}


# ---------------------------------------------------------------------------
# records


def record_to_dict(rec, seconds=None):
    d = {"theorem": rec.theorem, "instance": rec.instance, "degrees": list(rec.degrees),
         "lhs": list(rec.lhs), "rhs": list(rec.rhs), "verdict": rec.verdict,
         "details": rec.details}
    if seconds is not None:
        d["seconds"] = round(seconds, 6)
    return d


def record_from_dict(d):
    return VerificationRecord(d["theorem"], d["instance"], tuple(d["lhs"]), tuple(d["rhs"]),
                              d["verdict"], tuple(d["degrees"]), d.get("details", {}))


def records_to_json(records, timings=None):
    items = [record_to_dict(r, None if timings is None else timings[i])
             for i, r in enumerate(records)]
    return json.dumps({"schema": SCHEMA, "records": items}, indent=2, ensure_ascii=False) + "\n"


def records_from_json(text):
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ParseError(f"unsupported record schema {data.get('schema')!r}")
    return [record_from_dict(d) for d in data["records"]]


def _fmt_dims(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def format_table(records):
    lines = [f"{'suite':<10} {'degrees':<9} {'lhs':<20} {'rhs':<20} {'verdict':<9} instance"]
    for r in records:
        deg = f"{r.degrees[0]}..{r.degrees[-1]}" if r.degrees else "-"
        lines.append(f"{r.theorem:<10} {deg:<9} {_fmt_dims(r.lhs):<20} {_fmt_dims(r.rhs):<20} "
                     f"{r.verdict:<9} {r.instance}")
        if r.theorem == "thm3.8":
            for k, v in r.details.items():
                lines.append(f"{'':<10}   {k:<22} {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# tasks


def _coefficient(inst, name, alg, td=None):
    """Resolve a coefficient name to a bimodule over ``alg`` on both sides.

    ``NAME*`` is the dual of NAME, an algebra name is the regular bimodule,
    and an (A, B)-bimodule of the triangular ``td`` acts through the corners.
    """
    if not isinstance(name, str) or not name:
        raise ParseError(f"bad coefficient {name!r}", field="coeff")
    if name.endswith("*"):
        return dual(_coefficient(inst, name[:-1], alg, td))
    if name in inst.bimodules:
        x = inst.bimodules[name]
        if td is not None and x.left_alg == td.a and x.right_alg == td.b and alg == td.t:
            x = via_corners(td, x)
    else:
        try:
            base = inst.algebra(name)
        except ParseError:
            raise ParseError(f"unknown coefficient {name!r}", field="coeff") from None
        x = Bimodule.regular(base)
    if x.left_alg != alg or x.right_alg != alg:
        raise ParseError(f"coefficient {name!r} is not a bimodule over the algebra", field="coeff")
    return x


def _degree(task, override, default=3):
    if override is not None:
        return override
    return task.args.get("max_degree", default)


def projected_size(inst, task, max_degree=None):
    """Largest vector space dimension the task will build (for the budget check)."""
    a = task.args
    op = task.op
    n = _degree(task, max_degree, 2 if op == "cor3.5" else 3)
    if op == "thm3.8":
        alg = inst.algebra(a["algebra"])
        m = inst.bimodules[a["module"]]
        deg = a.get("n", 2)
        t = alg.dim + m.dim + 1
        return max(t ** (deg + 2), alg.dim ** (deg + 1) * m.dim ** 2)
    if op == "ext":
        e = inst.algebra(a["algebra"])
        m, y = inst.bimodules[a["module"]], inst.bimodules[a["target"]]
        return (e.dim + 1) * e.dim ** (n + 1) * m.dim * y.dim
    if op == "trace":
        d = inst.algebra(a["algebra"]).dim
        return d * d
    if "triangular" in a:
        td = inst.triangulars[a["triangular"]]
        t = td.t.dim
        if op in ("cor3.2", "thm3.6"):
            return t ** 3
        if op == "cor3.5":
            top = t + a.get("nesting", 1) * (td.a.dim + td.b.dim)
            return t ** (n + 1) * top
        return t ** (n + 2)
    alg = inst.algebra(a["algebra"])
    x = _coefficient(inst, a.get("coeff", a["algebra"]), alg)
    return alg.dim ** (n + 1) * x.dim


def run_task(inst, task, max_degree=None):
    a = task.args
    op = task.op
    if op == "thm3.8":
        return theorems.verify_thm_3_8(inst.algebra(a["algebra"]), inst.bimodules[a["module"]],
                                       a.get("n", 2),
                                       label=f"A={a['algebra']}, M={a['module']}, n={a.get('n', 2)}")
    if op in SUITES or op == "phi0":
        if "triangular" not in a:
            raise ParseError(f"task {task.index} ({op}) needs a triangular algebra",
                             field=f"tasks[{task.index}]")
        name = a["triangular"]
        td = inst.triangulars[name]
        if op in ("thm3.1", "thm3.3", "phi0"):
            cname = a.get("coeff", DEFAULT_COEFF[op])
            x = _coefficient(inst, cname, td.t, td)
            label = f"{name} X={cname}"
            fn = {"thm3.1": theorems.verify_thm_3_1, "thm3.3": theorems.verify_thm_3_3}.get(op)
            if fn is None:
                return theorems.phi0_bound(td, x, label=label)
            return fn(td, x, _degree(task, max_degree), label=label)
        if op == "cor3.2":
            return theorems.verify_cor_3_2(td, label=f"{name} X=T*")
        if op == "cor3.4":
            return theorems.verify_cor_3_4(td, _degree(task, max_degree), label=f"{name} X=T")
        if op == "cor3.5":
            nest = a.get("nesting", 1)
            return theorems.verify_cor_3_5(td, nest, _degree(task, max_degree, 2),
                                           label=f"{name} X=M,T_0..T_{nest}")
        return theorems.verify_thm_3_6(td, label=name)
    alg = inst.algebra(a["algebra"])
    if op == "trace":
        dim = theorems.trace_space(alg).dim
        return VerificationRecord("trace", a["algebra"], (dim,), (), "report", (0,), {})
    n = _degree(task, max_degree)
    if op == "ext":
        m, y = inst.bimodules[a["module"]], inst.bimodules[a["target"]]
        lhs = [ext_dim(alg, m, y, k) for k in range(n + 1)]
        rhs = [ext_via_hochschild(alg, m, y, k) for k in range(n + 1)]
        return theorems.make_record("ext", f"E={a['algebra']} M={a['module']} Y={a['target']}",
                                lhs, rhs, range(n + 1))
    cname = a.get("coeff", a["algebra"])
    x = _coefficient(inst, cname, alg)
    label = f"A={a['algebra']} X={cname}"
    if op == "duality":
        return theorems.make_record("duality", label, cohomology_dims(alg, dual(x), n),
                                homology_dims(alg, x, n), range(n + 1))
    dims = cohomology_dims(alg, x, n) if op == "cohomology" else homology_dims(alg, x, n)
    return VerificationRecord(op, label, tuple(dims), (), "report", tuple(range(n + 1)), {})


def default_tasks(inst, suites):
    """One task per suite and triangular algebra, for instance files without tasks."""
    tasks = []
    for name, td in inst.triangulars.items():
        for s in suites:
            if s == "thm3.8":
                if td.b.dim != 1 or td.m.name not in inst.bimodules or td.a.name not in inst.algebras:
                    continue
                args = {"algebra": td.a.name, "module": td.m.name, "n": 2}
            else:
                args = {"triangular": name}
            tasks.append(Task(s, args, len(tasks)))
    return tasks


def select_tasks(inst, suite):
    wanted = SUITES if suite == "all" else (suite,)
    tasks = [t for t in inst.tasks if t.op in wanted]
    if not tasks:
        tasks = default_tasks(inst, wanted)
    return tasks


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("HOCHWERK_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"HOCHWERK_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def execute(inst, tasks, args):
    budget = _budget(args)
    for t in tasks:
        size = projected_size(inst, t, args.max_degree)
        if size > budget and not args.force:
            raise BudgetExceeded(f"task {t.index} ({t.op}) would build a {size}-dimensional "
                                 f"space; budget is {budget} (use --force or --budget)")
    records, timings = [], []
    for t in tasks:
        start = time.perf_counter()
        records.append(run_task(inst, t, args.max_degree))
        timings.append(time.perf_counter() - start)
        log.info("task %d (%s) done in %.3fs", t.index, t.op, timings[-1])
    return records, timings


def emit(records, timings, args, out=None):
    out = out or sys.stdout
    text = records_to_json(records, timings if args.timings else None)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text if args.format == "records" else format_table(records))


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help="instance file (default: bundled t3 fixture)")
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--budget", type=int, default=None,
                        help="largest space dimension allowed (default 20000, env HOCHWERK_BUDGET)")
    common.add_argument("--force", action="store_true", help="ignore the size budget")
    common.add_argument("--out", help="also write machine records to this path")
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--timings", action="store_true", help="include timings in records")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hochwerk",
                                description="Hochschild (co)homology with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run theorem suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    for name in ("cohomology", "homology", "duality"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--algebra", required=True)
        s.add_argument("--coeff", help="bimodule name, algebra name, or NAME* (default: algebra)")
    e = sub.add_parser("ext", parents=[common])
    e.add_argument("--algebra", required=True)
    e.add_argument("--module", required=True)
    e.add_argument("--target", required=True)
    t = sub.add_parser("trace", parents=[common])
    t.add_argument("--algebra", required=True)
    return p


def _tasks_for(args, inst):
    if args.command == "verify":
        return select_tasks(inst, args.suite)
    keys = {"cohomology": ("algebra", "coeff"), "homology": ("algebra", "coeff"),
            "duality": ("algebra", "coeff"), "ext": ("algebra", "module", "target"),
            "trace": ("algebra",)}[args.command]
    task_args = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
    inst.algebra(task_args["algebra"])
    for k in ("module", "target"):
        if k in task_args and task_args[k] not in inst.bimodules:
            raise ParseError(f"unknown bimodule {task_args[k]!r}", field=k)
    return [Task(args.command, task_args, 0)]


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_degree is not None and args.max_degree < 0:
        print("error: --max-degree must be nonnegative", file=sys.stderr)
        return 2
    try:
        inst = parse_instance(args.instance or bundled_path())
        tasks = _tasks_for(args, inst)
        records, timings = execute(inst, tasks, args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (ParseError, ValidationError, HypothesisViolated) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except HochwerkError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    emit(records, timings, args)
    return 1 if any(r.verdict == "mismatch" for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
