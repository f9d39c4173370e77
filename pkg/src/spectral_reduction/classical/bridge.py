"""First-order expansion of the RTT relations around q = 1.

With q = e^{i gamma}, a quadratic relation sum_w c_w(q) x_w y_w = 0 vanishes
at gamma = 0 and its order-gamma part, divided by i, reads

    sum_w c_w'(1) x_w y_w + 1/2 sum_w c_w(1) {x_w, y_w} = 0.

The brackets are taken as kappa times the r-matrix table built on the quantum
shape; one kappa must serve every relation.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.rings import PolyElement

from spectral_reduction.algebra.qscalars import derivative_at_classical_point, specialize_field
from spectral_reduction.classical.brackets import ClassicalModel, build_bracket_table
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.alphabet import GenKind
from spectral_reduction.noncommutative.polynomial import NCPoly
from spectral_reduction.quantum.rtt import QuantumModel, build_model

logger = get_logger(__name__)


@dataclass
class BridgeReport:
    N: int
    n: int
    kappa: Fraction | None = None
    relations_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.kappa is not None and not self.failures


def _gen_index(quantum: QuantumModel, classical: ClassicalModel) -> list[int]:
    index = []
    for gen in quantum.alphabet.gens:
        a = quantum.n if gen.kind == GenKind.MU else gen.a
        index.append(classical.index((a, gen.i, gen.j)))
    return index


def first_order_parts(
    rel: NCPoly, index: list[int], classical: ClassicalModel
) -> tuple[PolyElement, PolyElement]:
    """(sum_w c_w'(1) m_w, 1/2 sum_w c_w(1) {x_w, y_w}) over the classical ring."""
    ring = classical.ring
    symmetric, antisymmetric = ring.zero, ring.zero
    half = QQ(1, 2)
    for word, coeff in rel.terms.items():
        x, y = (ring.gens[index[g]] for g in word)
        derivative = derivative_at_classical_point(coeff)
        if derivative:
            symmetric += x * y * QQ(derivative.numerator, derivative.denominator)
        value = specialize_field(coeff, 1)
        if value:
            bracket = classical.bracket_of(index[word[0]], index[word[1]])
            antisymmetric += bracket * half * QQ(value.numerator, value.denominator)
    return symmetric, antisymmetric


def check_classical_limit_bridge(N: int = 2, n: int = 1) -> BridgeReport:
    """Match the order-gamma RTT relations with the classical bracket table."""
    quantum = build_model(N, n)
    classical = build_bracket_table(N, n, shape="quantum", strict=False)
    index = _gen_index(quantum, classical)
    report = BridgeReport(N, n)
    parts = [
        (origin, *first_order_parts(rel, index, classical))
        for rel, origin in zip(quantum.rels.relations, quantum.rels.provenance, strict=True)
    ]
    for origin, symmetric, antisymmetric in parts:
        if antisymmetric and report.kappa is None:
            monom, coeff = next(iter(antisymmetric.terms()))
            ratio = -dict(symmetric.terms()).get(monom, QQ(0)) / coeff
            report.kappa = Fraction(int(ratio.numerator), int(ratio.denominator))
            logger.debug(f"kappa fixed by {origin}: {report.kappa}")
    if report.kappa is None:
        report.failures.append("no relation carries a bracket term")
        return report
    kappa = QQ(report.kappa.numerator, report.kappa.denominator)
    for origin, symmetric, antisymmetric in parts:
        report.relations_checked += 1
        if symmetric + antisymmetric * kappa:
            report.failures.append(origin)
    logger.info(
        f"Classical-limit bridge N={N} n={n}: kappa={report.kappa}, "
        f"{report.relations_checked} relations, {len(report.failures)} failures"
    )
    return report
