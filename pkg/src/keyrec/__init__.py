"""Toolkit for quasi-cyclic LDPC codes over GF(2^m) with certified full-rank
block submatrices, and Monte Carlo simulation of syndrome-based key
reconciliation (full-codeword vs. multiple-subset decoding)."""

from keyrec.gf import FieldSpec, Poly
from keyrec.qcldpc import PowerMatrix, QcCode, ScalingMatrix, SparseParityCheck

__all__ = [
    "FieldSpec",
    "Poly",
    "PowerMatrix",
    "ScalingMatrix",
    "QcCode",
    "SparseParityCheck",
]

__version__ = "0.1.0"
