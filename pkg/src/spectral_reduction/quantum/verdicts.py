"""Per-entry verdicts shared by the quantum checks."""

import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

from spectral_reduction.exceptions import SpectralReductionError
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.engines.base import Certificate
from spectral_reduction.noncommutative.membership import MembershipChecker
from spectral_reduction.noncommutative.polynomial import NCPoly

logger = get_logger(__name__)

VerdictStatus = Literal["member", "inconclusive", "pass", "fail"]


@dataclass
class Verdict:
    """Outcome of one entry of an identity check."""

    check: str
    entry: str
    anchor: str
    status: VerdictStatus
    certificates: list[Certificate] = field(default_factory=list)
    statistics: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    detail: str = ""

    @property
    def id(self) -> str:
        return f"{self.check}:{self.entry}"


@dataclass
class CheckReport:
    """All verdicts of one named check, in entry order."""

    check: str
    anchor: str
    verdicts: list[Verdict] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def all_members(self) -> bool:
        return all(v.status in ("member", "pass") for v in self.verdicts)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.verdicts:
            out[v.status] = out.get(v.status, 0) + 1
        return out

    def by_entry(self, entry: str) -> Verdict:
        for v in self.verdicts:
            if v.entry == entry:
                return v
        raise KeyError(entry)


def membership_verdict(
    checker: MembershipChecker, target: NCPoly, check: str, entry: str, anchor: str
) -> Verdict:
    """Run the membership facade on ``target`` and wrap the outcome."""
    started = time.monotonic()
    result = checker.check(target)
    return Verdict(
        check,
        entry,
        anchor,
        "member" if result.is_member else "inconclusive",
        certificates=result.certificates(),
        statistics=result.statistics(),
        wall_time=round(time.monotonic() - started, 3),
        detail="" if result.is_member else "not found at bound",
    )


def classical_verdict(target: NCPoly, check: str, entry: str, anchor: str) -> Verdict:
    """q=1 layer: the target must vanish with commuting generators."""
    started = time.monotonic()
    try:
        value = target.specialize_commutative(1)
    except SpectralReductionError as e:
        return Verdict(check, entry, anchor, "fail", detail=str(e))
    elapsed = round(time.monotonic() - started, 3)
    if value:
        return Verdict(check, entry, anchor, "fail", wall_time=elapsed, detail=f"q=1 residue {value}")
    return Verdict(check, entry, anchor, "pass", wall_time=elapsed)


def verify_targets(
    checker: MembershipChecker,
    targets: dict[str, NCPoly],
    report: CheckReport,
    classical: Callable[[NCPoly], Any] | None = None,
) -> CheckReport:
    """Check every target, q=1 layer first.

    An entry whose commutative specialization leaves a residue is reported
    as ``fail`` and its membership search is skipped.
    """
    for entry, target in targets.items():
        if classical is not None:
            try:
                residue = classical(target)
            except SpectralReductionError as e:
                report.verdicts.append(Verdict(report.check, entry, report.anchor, "fail", detail=str(e)))
                continue
            if residue:
                logger.info(f"{report.check}:{entry} fails at q=1")
                report.verdicts.append(
                    Verdict(
                        report.check,
                        entry,
                        report.anchor,
                        "fail",
                        detail=f"q=1 residue {residue}",
                    )
                )
                continue
        verdict = membership_verdict(checker, target, report.check, entry, report.anchor)
        if classical is not None:
            verdict.statistics["classical"] = "pass"
        report.verdicts.append(verdict)
    logger.info(f"{report.check}: {report.counts()}")
    return report
