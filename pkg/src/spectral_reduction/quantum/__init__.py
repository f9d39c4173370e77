"""The RTT algebra of L(z) and its reduction to M(z)."""

from spectral_reduction.quantum.reduction import ReductionData, build_reduction, localize
from spectral_reduction.quantum.rtt import QuantumModel, build_model, qdet
from spectral_reduction.quantum.verdicts import CheckReport, Verdict

__all__ = [
    "CheckReport",
    "QuantumModel",
    "ReductionData",
    "Verdict",
    "build_model",
    "build_reduction",
    "localize",
    "qdet",
]
