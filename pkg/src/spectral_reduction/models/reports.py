"""Run configuration and report models."""

from typing import Any, Literal

from pydantic import BaseModel, Field, computed_field, field_validator

from spectral_reduction.exceptions import ConfigError

RecordStatus = Literal["pass", "member", "inconclusive", "fail", "error"]
Suite = Literal["ybe", "classical", "quantum-core", "reduction", "closed", "geometry", "all"]

MAX_QUANTUM_N = 4
MAX_QUANTUM_n = 3


class RunConfig(BaseModel):
    """Everything that determines a verification run."""

    suite: Suite = Field(description="Suite to execute")
    checks: list[str] = Field(default_factory=list, description="Restrict the suite to these checks")
    N: list[int] = Field(default_factory=lambda: [2], description="Matrix sizes")
    n: list[int] = Field(default_factory=lambda: [1], description="Spectral degrees")
    degree_bound: int | None = Field(default=None, description="Membership degree bound")
    max_monomials: int | None = Field(default=None, description="Span engine monomial budget")
    max_wall_seconds: float | None = Field(default=None, description="Per-check wall budget")
    backend: Literal["exact", "float"] = Field(default="exact", description="Classical sampling backend")
    samples: int = Field(default=100, ge=1, description="Random Lax samples per (N, n)")
    constant_r_reading: Literal["interpreted", "literal"] | None = Field(default=None)
    s_hat_reading: Literal["scalar", "exponent", "inverse"] | None = Field(default=None)
    qdet_shift: Literal["fused", "printed"] | None = Field(default=None)
    seed: int = Field(default=0, description="Seed for every random draw")
    allow_inconclusive: bool = Field(default=False, description="Treat inconclusive as success")
    output: str | None = Field(default=None, description="Report path; stdout when unset")
    certificate_dir: str | None = Field(default=None, description="Directory for member certificates")
    timings: bool = Field(default=True, description="Record wall times; off for byte-stable reports")

    @field_validator("N", "n")
    @classmethod
    def _positive(cls, values: list[int]) -> list[int]:
        if not values or any(v < 1 for v in values):
            raise ValueError("ranges must be non-empty and positive")
        return values

    def check_limits(self) -> None:
        """Desk-scale limits for suites that build the quantum algebra.

        Raises:
            ConfigError: If N or n exceeds the limits.
        """
        if self.suite in ("quantum-core", "reduction", "closed", "all"):
            if max(self.N) > MAX_QUANTUM_N or max(self.n) > MAX_QUANTUM_n:
                raise ConfigError(
                    f"Quantum suites need N <= {MAX_QUANTUM_N} and n <= {MAX_QUANTUM_n}"
                )
        if min(self.N) < 2:
            raise ConfigError("N must be at least 2")


class CheckRecord(BaseModel):
    """One verified (or refuted) identity entry."""

    id: str = Field(description="check:entry identifier")
    anchor: str = Field(description="Identity the record refers to")
    status: RecordStatus
    detail: str = Field(default="")
    certificate_ref: str | None = Field(default=None)
    wall_time: float = Field(default=0.0)
    statistics: dict[str, Any] = Field(default_factory=dict)


class ReportDoc(BaseModel):
    """Report of one run; records are kept sorted by id."""

    tool_version: str
    config: dict[str, Any] = Field(default_factory=dict)
    records: list[CheckRecord] = Field(default_factory=list)
    notes: dict[str, str] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def summary(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for record in self.records:
            counts[record.status] = counts.get(record.status, 0) + 1
        return dict(sorted(counts.items()))

    def sort(self) -> None:
        self.records.sort(key=lambda r: r.id)

    def exit_code(self, allow_inconclusive: bool = False) -> int:
        bad = {"fail", "error"} if allow_inconclusive else {"fail", "error", "inconclusive"}
        return 1 if any(r.status in bad for r in self.records) else 0

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
