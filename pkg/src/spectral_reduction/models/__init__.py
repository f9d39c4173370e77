"""Pydantic models for run configuration, reports and certificates."""

from spectral_reduction.models.certificates import CertificateDoc, TermDoc
from spectral_reduction.models.reports import CheckRecord, ReportDoc, RunConfig

__all__ = [
    "CertificateDoc",
    "CheckRecord",
    "ReportDoc",
    "RunConfig",
    "TermDoc",
]
