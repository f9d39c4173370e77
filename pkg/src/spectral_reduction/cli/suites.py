"""Suite scheduling: run checks for every (N, n) and assemble a report."""

import cmath
import random
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

from spectral_reduction import __version__
from spectral_reduction.algebra.rmatrix import (
    build_Y_Z_K_Rtilde,
    check_ybe,
    classical_limit_check,
    classical_r_antisymmetry,
    coinciding_point_degeneration,
    hecke_identity,
    projector_holds,
    unitarity_holds,
)
from spectral_reduction.classical.brackets import (
    antisymmetry_violations,
    build_bracket_table,
    jacobi_violations,
    replay_identity,
)
from spectral_reduction.classical.bridge import check_classical_limit_bridge
from spectral_reduction.classical.invariants import check_center, check_involution, dimension_report
from spectral_reduction.classical.lax import NumericLax, classical_reduce, sample_lax
from spectral_reduction.config import get_settings, scoped_settings
from spectral_reduction.exceptions import (
    BranchPointError,
    BudgetExceededError,
    SingularSimilarityError,
    SpectralReductionError,
)
from spectral_reduction.geometry.curve import (
    CurveData,
    DivisorPoint,
    curve_from_lax,
    divisor_determinant,
    genus,
    holomorphic_differential,
    index_map,
    rational_divisor,
)
from spectral_reduction.geometry.operators import (
    MAX_KERNEL_GENUS,
    measure_kernel_apply,
    quasiclassical_trend,
    separated_variable_ops,
)
from spectral_reduction.logging import get_logger, log_elapsed
from spectral_reduction.models import CheckRecord, ReportDoc, RunConfig
from spectral_reduction.noncommutative.relations import RelationSet
from spectral_reduction.noncommutative.serialization import certificate_doc, write_certificate
from spectral_reduction.quantum.reduction import (
    LocalizedReduction,
    ReductionData,
    build_reduction,
    check_aux_relations,
    check_char_identity,
    check_closed_relation,
    check_M_structure,
    check_mu_diagonal_commute,
    check_tj_commute_with_M,
    localize,
    select_s_hat_reading,
)
from spectral_reduction.quantum.rtt import (
    QuantumModel,
    build_model,
    check_all_integrals_commute,
    check_classical_degeneration,
    check_qdet_centrality,
    check_regrading_invariance,
    check_xx_relations,
)
from spectral_reduction.quantum.verdicts import CheckReport, Verdict

logger = get_logger(__name__)

SUITE_CHECKS: dict[str, tuple[str, ...]] = {
    "ybe": ("ybe", "hecke", "unitarity", "coinciding", "classical-limit", "projector", "inverse"),
    "classical": (
        "antisymmetry",
        "jacobi",
        "replay",
        "involution",
        "center",
        "dims",
        "reduce",
        "bridge",
    ),
    "quantum-core": (
        "rtt-classical",
        "xx",
        "xx-printed",
        "integrals-commute",
        "qdet-center",
        "rtt-regrading",
    ),
    "reduction": ("char-identity", "aux", "tj-commute", "mu-diagonal", "m-structure"),
    "closed": ("closed",),
    "geometry": ("index-map", "curve", "divisor-det", "differentials", "operators", "kernel"),
}

CHECK_SUITE = {check: suite for suite, checks in SUITE_CHECKS.items() for check in checks}

GAMMA = 0.3
GAMMA_TREND = (0.2, 0.1, 0.05)


class SuiteRunner:
    """Runs the selected suites check by check.

    Errors inside one check become an ``error`` record (budget exhaustion an
    ``inconclusive`` one) and the suite moves on.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.report = ReportDoc(
            tool_version=__version__, config=config.model_dump(mode="json", exclude_none=True)
        )
        self.report.notes["seed"] = str(config.seed)
        self._models: dict[tuple[int, int], QuantumModel] = {}
        self._reductions: dict[tuple[int, int], ReductionData] = {}
        self._localized: dict[tuple[int, int], LocalizedReduction] = {}

    # Scheduling

    def wants(self, check: str) -> bool:
        return not self.config.checks or check in self.config.checks

    def run(self) -> ReportDoc:
        suites = list(SUITE_CHECKS) if self.config.suite == "all" else [self.config.suite]
        for suite in suites:
            if not any(self.wants(c) for c in SUITE_CHECKS[suite]):
                continue
            logger.info(f"Suite {suite}: N={self.config.N} n={self.config.n}")
            if suite == "ybe":
                for N in self.config.N:
                    self.run_ybe(N)
                continue
            for N in self.config.N:
                for n in self.config.n:
                    match suite:
                        case "classical":
                            self.run_classical(N, n)
                        case "quantum-core":
                            self.run_quantum_core(N, n)
                        case "reduction":
                            self.run_reduction(N, n)
                        case "closed":
                            self.run_closed(N, n)
                        case "geometry":
                            self.run_geometry(N, n)
        self.report.sort()
        return self.report

    # Record helpers

    def _time(self, started: float) -> float:
        return round(time.monotonic() - started, 3) if self.config.timings else 0.0

    def add(self, record: CheckRecord) -> None:
        self.report.records.append(record)

    def boolean(
        self, record_id: str, anchor: str, fn: Callable[[], bool | tuple[bool, str]]
    ) -> None:
        """Record a yes/no identity; ``fn`` may add a detail string."""
        started = time.monotonic()
        try:
            with log_elapsed(logger, record_id):
                outcome = fn()
        except SpectralReductionError as e:
            self.add(CheckRecord(id=record_id, anchor=anchor, status="error", detail=str(e)))
            return
        ok, detail = outcome if isinstance(outcome, tuple) else (outcome, "")
        self.add(
            CheckRecord(
                id=record_id,
                anchor=anchor,
                status="pass" if ok else "fail",
                detail=detail,
                wall_time=self._time(started),
            )
        )

    def guarded(self, record_id: str, anchor: str, fn: Callable[[], Any]) -> Any:
        """Run ``fn``; failures become a single record and None is returned."""
        try:
            with log_elapsed(logger, record_id):
                return fn()
        except BudgetExceededError as e:
            self.add(
                CheckRecord(
                    id=record_id,
                    anchor=anchor,
                    status="inconclusive",
                    detail=f"budget exhausted: {e}",
                    statistics=dict(e.statistics),
                )
            )
        except SpectralReductionError as e:
            logger.error(f"{record_id} failed: {e}")
            self.add(CheckRecord(id=record_id, anchor=anchor, status="error", detail=str(e)))
        return None

    def absorb(self, prefix: str, report: CheckReport | None, rels: RelationSet) -> None:
        if report is None:
            return
        for key, value in report.notes.items():
            self.report.notes[f"{prefix}{report.check}:{key}"] = value
        for verdict in report.verdicts:
            self.add(self._record(prefix, verdict, rels))

    def _record(self, prefix: str, verdict: Verdict, rels: RelationSet) -> CheckRecord:
        record_id = f"{prefix}{verdict.id}"
        ref = None
        if verdict.status == "member" and self.config.certificate_dir and verdict.certificates:
            ref = self._write_certificates(record_id, verdict, rels)
        statistics = {k: v for k, v in verdict.statistics.items() if k != "wall_time"}
        return CheckRecord(
            id=record_id,
            anchor=verdict.anchor,
            status=verdict.status,
            detail=verdict.detail,
            certificate_ref=ref,
            wall_time=verdict.wall_time if self.config.timings else 0.0,
            statistics=statistics,
        )

    def _write_certificates(self, record_id: str, verdict: Verdict, rels: RelationSet) -> str:
        assert self.config.certificate_dir is not None
        stem = "".join(ch if ch.isalnum() else "_" for ch in record_id)
        directory = Path(self.config.certificate_dir)
        paths = []
        for k, certificate in enumerate(verdict.certificates):
            doc = certificate_doc(f"{record_id}#{k}", certificate, rels)
            paths.append(str(write_certificate(doc, directory / f"{stem}_{k}.json")))
        return paths[0] if len(paths) == 1 else ";".join(paths)

    # Shared quantum objects

    def model(self, N: int, n: int) -> QuantumModel:
        if (N, n) not in self._models:
            self._models[(N, n)] = build_model(N, n)
        return self._models[(N, n)]

    def reduction(self, N: int, n: int) -> ReductionData:
        if (N, n) not in self._reductions:
            model = self.model(N, n)
            reading = self.config.s_hat_reading or select_s_hat_reading(model)
            self._reductions[(N, n)] = build_reduction(model, reading)
        return self._reductions[(N, n)]

    def localized(self, N: int, n: int) -> LocalizedReduction:
        if (N, n) not in self._localized:
            self._localized[(N, n)] = localize(self.reduction(N, n))
        return self._localized[(N, n)]

    # Suites

    def run_ybe(self, N: int) -> None:
        prefix = f"N{N}/"
        reading = self.config.constant_r_reading or get_settings().constant_r_reading
        if self.wants("ybe"):

            def ybe() -> tuple[bool, str]:
                result = check_ybe(N, reading)
                if result.passed:
                    return True, ""
                return False, f"entry {result.offending_entry}: {result.residual}"

            self.boolean(f"{prefix}ybe", "Yang-Baxter equation for R(z,z')", ybe)
        if self.wants("hecke"):
            self.boolean(
                f"{prefix}hecke", "R12 - R21^{-1} = (q - q^{-1}) P", lambda: hecke_identity(N, reading)
            )
        if self.wants("unitarity"):
            self.boolean(
                f"{prefix}unitarity", "R(z,z') R21(z',z) proportional to I", lambda: unitarity_holds(N, reading)
            )
        if self.wants("coinciding"):
            self.boolean(
                f"{prefix}coinciding",
                "R(z,z) = z (q - q^{-1}) P",
                lambda: coinciding_point_degeneration(N, reading),
            )
        if self.wants("classical-limit"):

            def limit() -> tuple[bool, str]:
                result = classical_limit_check(N)
                self.report.notes[f"{prefix}r-antisymmetric"] = str(classical_r_antisymmetry(N))
                return result.passed, f"c = {result.c_over_i}i, c0 = {result.c0_over_i}i"

            self.boolean(f"{prefix}classical-limit", "R(q) -> classical r-matrix as q -> 1", limit)
        if self.wants("projector"):
            self.boolean(f"{prefix}projector", "C12 (I - P) is a projector", lambda: projector_holds(N))
        if self.wants("inverse"):
            self.boolean(
                f"{prefix}inverse",
                "closed formula for Y12^{-1}",
                lambda: build_Y_Z_K_Rtilde(N) is not None,
            )

    def run_classical(self, N: int, n: int) -> None:
        prefix = f"N{N}n{n}/"
        if self.wants("dims"):
            dims = dimension_report(N, n)
            self.boolean(
                f"{prefix}dims",
                "nN(N-1) = 2g + 2(N-1); integrals = dim M / 2",
                lambda: (
                    dims.identities_hold,
                    f"dim M = {dims.dim_M}, g = {dims.genus}, integrals = {dims.integrals}",
                ),
            )
        table_checks = ("antisymmetry", "jacobi", "replay", "involution", "center")
        if any(self.wants(c) for c in table_checks):
            model = self.guarded(
                f"{prefix}bracket-table", "r-matrix Poisson brackets", lambda: build_bracket_table(N, n)
            )
            if model is not None:
                self._classical_table_checks(prefix, model)
        if self.wants("reduce"):
            self._classical_reduce(prefix, N, n)
        if self.wants("bridge") and N == 2:
            def bridge() -> tuple[bool, str]:
                result = check_classical_limit_bridge(N, n)
                return result.passed, f"kappa = {result.kappa}; failures: {result.failures[:3]}"

            self.boolean(f"{prefix}bridge", "RTT relations at first order in gamma", bridge)

    def _classical_table_checks(self, prefix: str, model: Any) -> None:
        if self.wants("antisymmetry"):
            self.boolean(
                f"{prefix}antisymmetry",
                "{x, y} = -{y, x}",
                lambda: not antisymmetry_violations(model),
            )
        if self.wants("jacobi"):

            def jacobi() -> tuple[bool, str]:
                violations = jacobi_violations(model)
                return not violations, str(violations[:3]) if violations else ""

            self.boolean(f"{prefix}jacobi", "Jacobi identity on generators", jacobi)
        if self.wants("replay"):
            self.boolean(
                f"{prefix}replay", "{l1(z), l2(z')} = [r, l1 + l2]", lambda: replay_identity(model)
            )
        if self.wants("involution"):
            report = check_involution(model)
            self.boolean(
                f"{prefix}involution",
                "coefficients of det(wI + l(z)) in involution",
                lambda: (report.passed, f"{report.pairs_checked} pairs; {report.failures[:3]}"),
            )
        if self.wants("center"):
            report = check_center(model)
            for key, value in report.notes.items():
                self.report.notes[f"{prefix}center:{key}"] = value
            self.boolean(
                f"{prefix}center",
                "t_N and t_k(0) are central",
                lambda: (report.passed, f"{report.pairs_checked} pairs; {report.failures[:3]}"),
            )

    def _classical_reduce(self, prefix: str, N: int, n: int) -> None:
        rng = random.Random(self.config.seed)
        passed, singular, failures = 0, 0, []
        started = time.monotonic()
        for k in range(self.config.samples):
            lax = sample_lax(N, n, rng, self.config.backend)
            try:
                result = classical_reduce(lax)
            except SingularSimilarityError:
                singular += 1
                continue
            if result.passed:
                passed += 1
            else:
                failures.append(f"sample {k}: {[c for c, ok in result.checks.items() if not ok]}")
        status = "fail" if failures else ("pass" if passed else "inconclusive")
        self.add(
            CheckRecord(
                id=f"{prefix}reduce",
                anchor="m(z) = s l(z) s^{-1} block degrees",
                status=status,
                detail="; ".join(failures[:3]),
                wall_time=self._time(started),
                statistics={"samples": self.config.samples, "passed": passed, "singular": singular},
            )
        )

    def run_quantum_core(self, N: int, n: int) -> None:
        prefix = f"N{N}n{n}/"
        anchor = "RTT relations"
        model = self.guarded(f"{prefix}model", anchor, lambda: self.model(N, n))
        if model is None:
            return
        bound = self.config.degree_bound
        shift = self.config.qdet_shift
        runs: list[tuple[str, Callable[[], CheckReport]]] = [
            ("rtt-classical", lambda: check_classical_degeneration(model)),
            ("xx", lambda: check_xx_relations(model, bound)),
            ("xx-printed", lambda: check_xx_relations(model, bound, printed_nu=True)),
            ("integrals-commute", lambda: check_all_integrals_commute(model, bound, shift)),
            ("rtt-regrading", lambda: check_regrading_invariance(model, degree_bound=bound)),
        ]
        # the full centrality sweep is only meant for N = 2
        if N == 2:
            runs.append(("qdet-center", lambda: check_qdet_centrality(model, bound, shift)))
        for check, fn in runs:
            if self.wants(check):
                self.absorb(prefix, self.guarded(f"{prefix}{check}", anchor, fn), model.rels)

    def run_reduction(self, N: int, n: int) -> None:
        prefix = f"N{N}n{n}/"
        anchor = "reduction L(z) -> M(z)"
        red = self.guarded(f"{prefix}reduction", anchor, lambda: self.reduction(N, n))
        if red is None:
            return
        model, bound = red.model, self.config.degree_bound
        runs: list[tuple[str, Callable[[], CheckReport]]] = [
            ("char-identity", lambda: check_char_identity(model, red, bound)),
            ("aux", lambda: check_aux_relations(model, red, bound)),
            ("tj-commute", lambda: check_tj_commute_with_M(model, red, bound)),
            ("mu-diagonal", lambda: check_mu_diagonal_commute(model, bound)),
        ]
        for check, fn in runs:
            if self.wants(check):
                self.absorb(prefix, self.guarded(f"{prefix}{check}", anchor, fn), model.rels)
        if self.wants("m-structure"):
            loc = self.guarded(f"{prefix}localize", anchor, lambda: self.localized(N, n))
            if loc is not None:
                report = self.guarded(
                    f"{prefix}m-structure", anchor, lambda: check_M_structure(model, red, bound, loc)
                )
                self.absorb(prefix, report, loc.rels)

    def run_closed(self, N: int, n: int) -> None:
        prefix = f"N{N}n{n}/"
        anchor = "closed commutation relations for M(z)"
        loc = self.guarded(f"{prefix}localize", anchor, lambda: self.localized(N, n))
        if loc is None:
            return
        red = loc.red
        report = self.guarded(
            f"{prefix}closed",
            anchor,
            lambda: check_closed_relation(red.model, red, self.config.degree_bound, loc),
        )
        self.absorb(prefix, report, loc.rels)

    def run_geometry(self, N: int, n: int) -> None:
        prefix = f"N{N}n{n}/"
        g = genus(N, n)
        if self.wants("index-map"):

            def covers() -> tuple[bool, str]:
                table = index_map(N, n)
                ok = len(table) == g and all(1 <= k <= N - 1 for k, _ in table)
                return ok, str(table)

            self.boolean(f"{prefix}index-map", "i -> (k, l) covers i = 1..g", covers)
        lax = sample_lax(N, n, random.Random(self.config.seed))
        curve = self.guarded(f"{prefix}curve", "r(w, z) = det(wI + l(z))", lambda: curve_from_lax(lax))
        if curve is None:
            return
        if self.wants("curve"):
            self.boolean(
                f"{prefix}curve",
                "r(w, z) = det(wI + l(z)); t_0 = 1",
                lambda: curve.t[0][0] == 1,
            )
        if g == 0:
            return
        if self.wants("divisor-det"):
            self.boolean(
                f"{prefix}divisor-det",
                "det(f_i(z_j, w_j)) alternates exactly on a rational divisor",
                lambda: _alternates(lax, g),
            )
        if self.wants("differentials"):
            self.boolean(
                f"{prefix}differentials",
                "f_i dz / d_w r on non-branch points",
                lambda: _differentials_finite(curve),
            )
        if self.wants("operators"):
            self.boolean(
                f"{prefix}operators",
                "w z = q^2 z w; dual pair commutes",
                lambda: operator_identities(GAMMA, g),
            )
        if self.wants("kernel") and g <= MAX_KERNEL_GENUS:

            def kernel() -> tuple[bool, str]:
                G = exponential(tuple(0.1 * (j + 1) for j in range(g)))
                zeta = tuple(complex(0.2 * j, 0.1) for j in range(g))
                values = measure_kernel_apply(curve, GAMMA, G, [zeta])
                trend = quasiclassical_trend(curve, G, zeta, GAMMA_TREND)
                self.report.notes[f"{prefix}kernel:trend"] = "; ".join(
                    f"{gamma}: {value:.6g}" for gamma, value in trend
                )
                if curve.index_table == ((1, 1),):
                    return abs(values[0] - G(zeta)) <= 1e-9 * max(1.0, abs(G(zeta))), ""
                return all(cmath.isfinite(v) for v in values), f"K G = {values[0]:.6g}"

            self.boolean(f"{prefix}kernel", "det(f_i(z_j,w_j)) det(f_i(Z_j,W_j)) kernel", kernel)


Function = Callable[[tuple[complex, ...]], complex]


def exponential(rates: tuple[float, ...]) -> Function:
    """G(zeta) = exp(sum_j rates_j zeta_j)."""
    return lambda zeta: cmath.exp(sum(a * x for a, x in zip(rates, zeta, strict=True)))


def operator_identities(gamma: float, g: int, tolerance: float = 1e-9) -> bool:
    """The three exchange identities on an exponential test function."""
    ops = separated_variable_ops(gamma, g)
    G = exponential(tuple(0.5 + 0.25 * j for j in range(g)))
    zeta = tuple(complex(0.1 * j, -0.05 * j) for j in range(g))
    for j in range(g):
        differences = [
            ops.w(j) @ ops.z(j) - (ops.z(j) @ ops.w(j)).scale(ops.q**2),
            ops.W(j) @ ops.z(j) - ops.z(j) @ ops.W(j),
            ops.w(j) @ ops.Z(j) - ops.Z(j) @ ops.w(j),
        ]
        scale = max(1.0, abs((ops.z(j) @ ops.Z(j))(G)(zeta)))
        if any(abs(d(G)(zeta)) > tolerance * scale for d in differences):
            return False
    return True


def points_on_curve(curve: CurveData, count: int) -> list[DivisorPoint]:
    """Distinct points over z = j + 2 + i/2 on the first sheet."""
    points = []
    for j in range(count):
        z = complex(j + 2, 0.5)
        w = curve.sheets_over(z)[0]
        points.append(DivisorPoint.on(curve, z, w))
    return points


def _alternates(lax: NumericLax, g: int) -> tuple[bool, str]:
    curve, points = rational_divisor(lax, g)
    if any(curve.r(p.w, p.z) != 0 for p in points):
        return False, "rational divisor is off the curve"
    det = divisor_determinant(curve, points)
    if g < 2:
        return True, f"det = {det}"
    swapped = divisor_determinant(curve, [points[1], points[0], *points[2:]])
    return det == -swapped, f"det = {det}"


def _differentials_finite(curve: CurveData, attempts: int = 8) -> tuple[bool, str]:
    """f_i / d_w r at the first candidate point off the branch locus.

    Raises:
        BranchPointError: If every candidate is a branch point.
    """
    for point in points_on_curve(curve, attempts):
        try:
            values = [
                complex(holomorphic_differential(curve, i, point)) for i in range(1, curve.genus + 1)
            ]
        except BranchPointError:
            logger.debug(f"Branch point at z={point.z}, trying the next candidate")
            continue
        return all(cmath.isfinite(v) for v in values), ", ".join(f"{v:.6g}" for v in values)
    raise BranchPointError(f"All {attempts} candidate points are branch points")


def run_suite(config: RunConfig) -> ReportDoc:
    """Execute the configured suite and return the sorted report.

    Run-level budgets and readings apply to this run only.

    Raises:
        ConfigError: If the configuration exceeds the desk-scale limits.
    """
    config.check_limits()
    with scoped_settings(
        max_monomials=config.max_monomials,
        max_wall_seconds=config.max_wall_seconds,
        constant_r_reading=config.constant_r_reading,
        s_hat_reading=config.s_hat_reading,
        qdet_shift=config.qdet_shift,
        seed=config.seed,
    ):
        return SuiteRunner(config).run()
