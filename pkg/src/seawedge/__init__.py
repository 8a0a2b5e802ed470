"""Dirac sea quantization on a semi-infinite wedge space, and its Fock space equivalent."""

from seawedge.vectors import OneParticleVector, mode
from seawedge.wedge import (
    BasisLabel,
    WedgeVector,
    generated_vector,
    gram_det,
    inner,
    psi,
    psi_star,
)

__all__ = [
    "BasisLabel",
    "OneParticleVector",
    "WedgeVector",
    "generated_vector",
    "gram_det",
    "inner",
    "mode",
    "psi",
    "psi_star",
]
