"""Verification tasks driven by the command line, each returning a structured report."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import lab
from .cup import ElementaryCochain
from .cyclic import (
    c_delta_complex,
    c_delta_module,
    cocyclic_identity_suite,
    hopf_sayd_check,
    kv_complex,
    mu_antisym_suite,
    v_module,
)
from .hopf import HopfHn, hopf_axiom_suite
from .lie import GlData, lie_sayd_check, weil_cohomology
from .linalg import Solution, rref
from .serialize import Emitted, canonical_terms, format_coeff


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class TaskReport:
    task: str
    codim: int
    checks: list[Check] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def to_obj(self) -> dict:
        return {
            "task": self.task,
            "codim": self.codim,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "info": list(self.info),
        }

    def to_text(self) -> str:
        lines = [f"{self.task} (codim {self.codim}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            tail = f"  {c.detail}" if c.detail else ""
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}{tail}")
        lines.extend(f"  {line}" for line in self.info)
        return "\n".join(lines)


@dataclass
class TaskOptions:
    codim: int = 1
    seed: int = 0
    max_degree: int = 3


def _hopf(n: int) -> HopfHn:
    return lab.codim2_setup().hopf if n == 2 else HopfHn(n)


def _bundle_checks(report: TaskReport, bundle: lab.CocycleBundle) -> None:
    for flag in bundle.flags:
        report.check(f"{bundle.name}: {flag}", True)
    for flag, witness in bundle.failures.items():
        report.check(f"{bundle.name}: {flag}", False, witness)


def _term_lines(e: Emitted) -> list[str]:
    lines = []
    for legs, c in canonical_terms(e):
        lines.append(" | ".join([format_coeff(c)] + [" ".join(leg) if leg else "1" for leg in legs]))
    return lines


def _affine(cr: Fraction, cs: Fraction) -> str:
    parts = []
    for c, name in ((cr, "r"), (cs, "s")):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{format_coeff(mag)} {name}"
        parts.append(("- " if c < 0 else "+ ") + body)
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def express_in_r_s(sol: Solution, unknowns: list[str], r: str, s: str) -> dict[str, tuple[Fraction, Fraction]]:
    """Each unknown as ``(coefficient of r, coefficient of s)`` on a two-parameter solution set."""
    basis = sol.nullspace
    if len(basis) != 2:
        raise ValueError("expected a two-parameter family")
    a, b = basis
    det = a[r] * b[s] - b[r] * a[s]
    if det == 0:
        raise ValueError(f"{r} and {s} do not parametrize the solutions")
    # coordinates of the unit vectors in (r, s) on the basis (a, b)
    out = {}
    for u in unknowns:
        cr = (b[s] * a[u] - a[s] * b[u]) / det
        cs = (a[r] * b[u] - b[r] * a[u]) / det
        out[u] = (cr, cs)
    return out


# ----------------------------------------------------------------------
# tasks
def task_hopf_axioms(opts: TaskOptions) -> TaskReport:
    report = TaskReport("hopf-axioms", opts.codim)
    for res in hopf_axiom_suite(HopfHn(opts.codim), opts.seed):
        report.check(res.name, res.passed, res.witness)
    return report


def task_weil_cohomology(opts: TaskOptions) -> TaskReport:
    report = TaskReport("weil-cohomology", opts.codim)
    w = weil_cohomology(opts.codim)
    report.check("d^2 = 0 on every basis element", w.d_squared_zero)
    for name, closed in w.closed_by_class.items():
        report.check(f"class {name} closed", closed)
    report.check("classes independent in cohomology", w.classes_independent)
    report.check("classes span the cohomology", sum(w.betti.values()) == len(w.closed_by_class),
                 f"total Betti number {sum(w.betti.values())}")
    report.info.append(f"dimension {w.total_dimension}, Betti numbers {dict(sorted(w.betti.items()))}")
    return report


def task_lie_sayd(opts: TaskOptions) -> TaskReport:
    report = TaskReport("lie-sayd", opts.codim)
    res = lie_sayd_check(GlData(opts.codim))
    report.check("coadjoint action and Koszul coaction form a unimodular SAYD module", res.passed, res.witness)
    return report


def task_hopf_sayd(opts: TaskOptions) -> TaskReport:
    report = TaskReport("hopf-sayd", opts.codim)
    n = opts.codim
    gl, hopf = GlData(n), _hopf(n)
    gens = hopf.x_generators() + hopf.y_generators() + hopf.delta_generators(1)
    res = hopf_sayd_check(hopf, c_delta_module(hopf), gens)
    report.check("C_delta over H_n", res.passed, res.witness)
    res = hopf_sayd_check(hopf, v_module(gl, hopf), hopf.y_generators())
    report.check("V over U(gl_n)", res.passed, res.witness)
    return report


def task_identity_suite(opts: TaskOptions) -> TaskReport:
    report = TaskReport("identity-suite", opts.codim)
    n = opts.codim
    gl, hopf = GlData(n), _hopf(n)
    for label, cx, y_only in (("C(H_n, C_delta)", c_delta_complex(hopf), False), ("C(K, V)", kv_complex(gl, hopf), True)):
        results = cocyclic_identity_suite(cx, opts.max_degree, opts.seed, samples=1, y_only=y_only)
        _summarize(report, label, results)
    _summarize(report, "mu", mu_antisym_suite(gl, hopf, opts.max_degree, opts.seed))
    return report


def _summarize(report: TaskReport, label: str, results) -> None:
    groups: dict[str, list] = {}
    for r in results:
        groups.setdefault(r.name, []).append(r)
    for name, rs in groups.items():
        bad = [r for r in rs if not r.passed]
        detail = f"{len(rs)} cases" if not bad else f"degree {bad[0].degree}: {bad[0].witness}"
        report.check(f"{label}: {name}", not bad, detail)


def task_codim1_cocycle(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim1-cocycle", 1)
    try:
        _bundle_checks(report, lab.codim1_cocycle())
    except lab.VerificationError as exc:
        report.check("construction", False, str(exc))
    return report


def task_codim2_alpha(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-alpha", 2)
    solve = lab.codim2_solve()
    report.check("every ansatz piece is equivariant", solve.equivariant)
    report.check("b vanishes on the V_2 component", solve.b_on_v2_vanishes)
    report.check("V_2 cyclicity reduces to alpha1 = alpha2", solve.alpha_ok)
    return report


def task_codim2_hochschild(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-hochschild", 2)
    solve = lab.codim2_solve()
    report.check("extracted V_1 Hochschild system is row-equivalent to the reference", solve.hochschild_ok)
    report.info.append(f"{_rank(solve.hochschild_system)} independent equations")
    return report


def task_codim2_cyclic(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-cyclic", 2)
    solve = lab.codim2_solve()
    report.check("extracted V_1 cyclic system agrees with the reference on the Hochschild solutions",
                 solve.cyclic_ok)
    report.info.append(f"strict row-equivalence without the Hochschild system: {solve.cyclic_strict}")
    return report


def task_codim2_beta(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-beta", 2)
    solve = lab.codim2_solve()
    report.check("joint solution equals the two-parameter beta family", solve.beta_ok)
    if isinstance(solve.beta_solution, Solution) and solve.beta_ok:
        values = express_in_r_s(solve.beta_solution, list(lab.BETAS), "r", "beta3")
        for name in lab.BETAS:
            report.info.append(f"{name} = {_affine(*values[name])}")
    return report


def task_codim2_gamma(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-gamma", 2)
    solve = lab.codim2_solve()
    report.check("V_0 Hochschild system gives the gamma family", solve.gamma_ok)
    if isinstance(solve.gamma_solution, Solution) and solve.gamma_ok:
        values = express_in_r_s(solve.gamma_solution, list(lab.GAMMAS), "r", "s")
        for name in lab.GAMMAS:
            report.info.append(f"{name} = {_affine(*values[name])}")
    return report


def task_codim2_cocycle(opts: TaskOptions) -> TaskReport:
    report = TaskReport("codim2-cocycle", 2)
    try:
        result = lab.codim2_cocycle()
    except lab.VerificationError as exc:
        report.check("construction", False, str(exc))
        return report
    _bundle_checks(report, result.phi)
    _bundle_checks(report, result.primitive)
    report.check("b(primitive) = s-part", result.primitive_sign == 1,
                 "" if result.primitive_sign == 1 else "holds with the opposite sign")
    return report


def task_fundamental_class(opts: TaskOptions) -> TaskReport:
    report = TaskReport("fundamental-class", opts.codim)
    bundle = lab.transverse_fundamental_bundle(opts.codim)
    _bundle_checks(report, bundle)
    tf = bundle.value
    if opts.codim == 1:
        report.check("equals the three-term reference", tf == lab.reference_tf1())
        report.info.extend(_term_lines(tensor_with_unit(tf, 1)))
    else:
        report.info.append(f"{len(tf.value)} terms in degree {tf.degree}")
    return report


def task_hck_generators(opts: TaskOptions) -> TaskReport:
    report = TaskReport("hck-generators", opts.codim)
    for bundle in lab.hcK_generators(opts.codim):
        _bundle_checks(report, bundle)
    return report


def task_characteristic_classes(opts: TaskOptions) -> TaskReport:
    report = TaskReport("characteristic-classes", opts.codim)
    try:
        bundles = lab.characteristic_classes(opts.codim)
    except lab.VerificationError as exc:
        report.check("construction", False, str(exc))
        return report
    for bundle in bundles:
        _bundle_checks(report, bundle)
        report.info.append(f"{bundle.name}: {len(bundle.value.value)} terms in degree {bundle.degree}")
    if opts.codim == 1:
        sign = lab.codim1_tf_correction_sign()
        report.info.append(f"chi(1(x)Y+1/2R(x)Y^2) - TF = {'+' if sign == 1 else '-'}1/2 b(d^1_{{1,1}} Y_1^1 Y_1^1)")
    return report


def _rank(system) -> int:
    return len(rref(system.matrix())[1]) if system.rows else 0


def tensor_with_unit(x: ElementaryCochain, n: int) -> Emitted:
    """``h^1 (x) ... (x) h^m`` written with the leading unit of the ``a_0`` slot."""
    return Emitted("tensor", x.degree, n, x.value.map_keys(lambda legs: ((),) + legs))


TASKS: dict[str, Callable[[TaskOptions], TaskReport]] = {
    "hopf-axioms": task_hopf_axioms,
    "weil-cohomology": task_weil_cohomology,
    "lie-sayd": task_lie_sayd,
    "hopf-sayd": task_hopf_sayd,
    "identity-suite": task_identity_suite,
    "codim1-cocycle": task_codim1_cocycle,
    "codim2-alpha": task_codim2_alpha,
    "codim2-hochschild": task_codim2_hochschild,
    "codim2-cyclic": task_codim2_cyclic,
    "codim2-beta": task_codim2_beta,
    "codim2-gamma": task_codim2_gamma,
    "codim2-cocycle": task_codim2_cocycle,
    "fundamental-class": task_fundamental_class,
    "hck-generators": task_hck_generators,
    "characteristic-classes": task_characteristic_classes,
}

# tasks whose content does not depend on the codimension option
FIXED_CODIM = {"codim1-cocycle": 1, "codim2-alpha": 2, "codim2-hochschild": 2, "codim2-cyclic": 2,
               "codim2-beta": 2, "codim2-gamma": 2, "codim2-cocycle": 2}


def all_task_runs(seed: int, max_degree: int) -> list[tuple[str, TaskOptions]]:
    """The fixed-order task list of ``verify all``."""
    runs = []
    for name in TASKS:
        codims = [FIXED_CODIM[name]] if name in FIXED_CODIM else [1, 2]
        for n in codims:
            runs.append((name, TaskOptions(n, seed, max_degree)))
    return runs


def run_task(name: str, opts: TaskOptions) -> TaskReport:
    if name in FIXED_CODIM:
        opts = TaskOptions(FIXED_CODIM[name], opts.seed, opts.max_degree)
    return TASKS[name](opts)
