"""Command line: ``cyclochar verify <task>`` and ``cyclochar emit <name>``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.
``CYCLOCHAR_THREADS`` caps the number of worker processes used by ``verify all``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import lab
from .cyclic import TwistedCochain
from .lie import GlData, vey_classes, weil_degree
from .serialize import Emitted, emit
from .tasks import TASKS, TaskOptions, TaskReport, all_task_runs, run_task, tensor_with_unit

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ----------------------------------------------------------------------
# emit catalog
def _twisted(x: TwistedCochain, n: int) -> Emitted:
    return Emitted("twisted", x.degree, n, x.as_vector())


def _generator(n: int, name: str) -> Emitted:
    (g,) = [g for g in lab.hcK_cochains(n) if g.name == name]
    return Emitted("cochain", g.degree, n, g.cochain)


def _chi(n: int, name: str) -> Emitted:
    x = lab.characteristic_images(n)[name]
    return Emitted("elementary", x.degree, n, x.value)


def _vey(n: int, name: str) -> Emitted:
    vec = vey_classes(GlData(n))[name]
    degree = max((weil_degree(k) for k in vec.keys()), default=0)
    return Emitted("weil", degree, n, vec)


_VEY_NAMES = {
    "vey-n1-1": (1, "1"),
    "vey-n1-theta-R": (1, "theta R"),
    "vey-n2-1": (2, "1"),
    "vey-n2-c1sq-u1": (2, "c1^2 u1"),
    "vey-n2-c2-u1": (2, "c2 u1"),
    "vey-n2-c2-u2": (2, "c2 u2"),
    "vey-n2-c1sq-omega": (2, "c1^2 omega"),
    "vey-n2-c2-omega": (2, "c2 omega"),
}

EMITTABLE: dict[str, Callable[[], Emitted]] = {
    "codim1-phi": lambda: _twisted(lab.codim1_phi(), 1),
    "codim2-phi": lambda: _twisted(lab.codim2_cocycle().phi.value, 2),
    "codim2-phi-s-part": lambda: _twisted(lab.codim2_phi_s_part(), 2),
    "codim2-primitive": lambda: _twisted(lab.codim2_primitive(), 2),
    "TF-H1": lambda: tensor_with_unit(lab.transverse_fundamental(1), 1),
    "TF-H2": lambda: tensor_with_unit(lab.transverse_fundamental(2), 2),
    "R-n1": lambda: _generator(1, "R"),
    "Y-n1": lambda: _generator(1, "1(x)Y+1/2R(x)Y^2"),
    "chi-R-n1": lambda: _chi(1, "R"),
    "chi-Y-n1": lambda: _chi(1, "1(x)Y+1/2R(x)Y^2"),
    "TF-K2": lambda: _generator(2, "TF"),
    **{name: (lambda name=name: _generator(2, name)) for name in ("GV", "R1", "R2", "R3", "R4")},
    **{f"chi-{name}": (lambda name=name: _chi(2, name)) for name in ("GV", "R1", "R2", "R3", "R4")},
    **{name: (lambda pair=pair: _vey(*pair)) for name, pair in _VEY_NAMES.items()},
}


def emit_element(name: str, fmt: str) -> str:
    if name not in EMITTABLE:
        raise KeyError(name)
    return emit(EMITTABLE[name](), fmt)


# ----------------------------------------------------------------------
# verify
def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("CYCLOCHAR_THREADS", "1")))
    except ValueError:
        return 1


def _run(item: tuple[str, TaskOptions]) -> TaskReport:
    return run_task(*item)


def verify(task: str, opts: TaskOptions) -> list[TaskReport]:
    if task != "all":
        return [run_task(task, opts)]
    runs = all_task_runs(opts.seed, opts.max_degree)
    workers = _thread_cap()
    if workers == 1:
        return [_run(item) for item in runs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, runs))


def format_reports(reports: list[TaskReport], fmt: str) -> str:
    if fmt == "json":
        obj = {"passed": all(r.passed for r in reports), "tasks": [r.to_obj() for r in reports]}
        return json.dumps(obj, indent=1) + "\n"
    body = "\n".join(r.to_text() for r in reports)
    passed = sum(r.passed for r in reports)
    return f"{body}\nsummary: {passed}/{len(reports)} tasks passed\n"


# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclochar", description="Exact Hopf-cyclic cocycle verification.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification task")
    v.add_argument("task", choices=sorted(TASKS) + ["all"])
    v.add_argument("--codim", type=int, choices=(1, 2), default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-degree", type=int, default=3)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", help="write the report to this file")
    e = sub.add_parser("emit", help="print an element in canonical form")
    e.add_argument("name", choices=sorted(EMITTABLE))
    e.add_argument("--format", choices=("text", "json", "latex"), default="text")
    e.add_argument("--out", help="write the element to this file")
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "verify":
        if args.max_degree < 0:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        reports = verify(args.task, TaskOptions(args.codim, args.seed, args.max_degree))
        _write(format_reports(reports, args.format), args.out)
        return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    try:
        text = emit_element(args.name, args.format)
    except lab.VerificationError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    _write(text if text.endswith("\n") else text + "\n", args.out)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
