"""Quasi-cyclic LDPC code representation, expansion to a sparse parity-check
matrix over GF(2^m), girth certification on the power matrix, and syndrome
computation for the coset (syndrome) reconciliation scheme.

A code is a gamma x kappa grid of scaled circulant shift matrices of size
z x z.  Block (i, j) is s_ij * C^p_ij where the circulant shift matrix C^p
has, for each row r in [0, z), its single one at column (r - p) mod z.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np

from keyrec.gf import FieldSpec


@dataclass(eq=False)
class PowerMatrix:
    """Grid of circulant shift exponents, each in [0, z)."""

    entries: np.ndarray
    z: int

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2:
            raise ValueError("power matrix must be 2-D")
        if self.z < 2:
            raise ValueError(f"lifting factor z={self.z} must be >= 2")
        if e.shape[0] > e.shape[1]:
            raise ValueError("power matrix must have at least as many columns as rows")
        if e.size and (e.min() < 0 or e.max() >= self.z):
            raise ValueError(f"shift exponents must lie in [0, {self.z})")
        e.setflags(write=False)
        self.entries = e

    @property
    def gamma(self) -> int:
        return self.entries.shape[0]

    @property
    def kappa(self) -> int:
        return self.entries.shape[1]


@dataclass(eq=False)
class ScalingMatrix:
    """Grid of nonzero field scale factors, one per circulant block."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=np.uint8)
        if e.ndim != 2:
            raise ValueError("scaling matrix must be 2-D")
        if e.size and e.min() == 0:
            raise ValueError("scale factors must be nonzero (a zero block changes weights)")
        e.setflags(write=False)
        self.entries = e

    @property
    def gamma(self) -> int:
        return self.entries.shape[0]

    @property
    def kappa(self) -> int:
        return self.entries.shape[1]


@dataclass(eq=False)
class QcCode:
    """A (gamma, kappa, z) quasi-cyclic LDPC code over GF(2^m)."""

    field: FieldSpec
    P: PowerMatrix
    S: ScalingMatrix

    def __post_init__(self) -> None:
        if self.P.entries.shape != self.S.entries.shape:
            raise ValueError("power and scaling matrices must have identical shape")
        if self.S.entries.size and self.S.entries.max() >= self.field.q:
            raise ValueError("scale factors must lie in [1, q)")

    @property
    def gamma(self) -> int:
        return self.P.gamma

    @property
    def kappa(self) -> int:
        return self.P.kappa

    @property
    def z(self) -> int:
        return self.P.z

    @property
    def n(self) -> int:
        """Code length (number of variable columns), kappa * z."""
        return self.kappa * self.z

    @property
    def m_checks(self) -> int:
        """Number of check rows, gamma * z."""
        return self.gamma * self.z

    @property
    def design_rate(self) -> float:
        return 1.0 - self.gamma / self.kappa

    # ------------------------------------------------------------------
    # Code-definition file format
    # ------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "q": self.field.q,
            "reduction_poly": self.field.reduction_poly,
            "z": self.z,
            "gamma": self.gamma,
            "kappa": self.kappa,
            "P": self.P.entries.tolist(),
            "S": self.S.entries.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QcCode":
        q = int(d["q"])
        m = q.bit_length() - 1
        if 1 << m != q:
            raise ValueError(f"field order q={q} is not a power of two")
        field = FieldSpec(m, int(d.get("reduction_poly", 0)))
        P = PowerMatrix(np.array(d["P"]), int(d["z"]))
        S = ScalingMatrix(np.array(d["S"]))
        code = cls(field, P, S)
        if code.gamma != int(d["gamma"]) or code.kappa != int(d["kappa"]):
            raise ValueError("gamma/kappa fields disagree with matrix dimensions")
        return code


def save_code(code: QcCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code.to_dict(), indent=1) + "\n")


def load_code(path: str | Path) -> QcCode:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed code file {path}: {e}") from e
    return QcCode.from_dict(d)


# ======================================================================
# Sparse parity-check matrix
# ======================================================================


@dataclass(eq=False)
class SparseParityCheck:
    """M x N sparse matrix over GF(2^m) in padded row-major form.

    ``cols[i, s]`` / ``coeffs[i, s]`` give the column index and nonzero
    coefficient of the s-th entry of row i; slots beyond ``row_weights[i]``
    are padded with column 0 and coefficient 0 (harmless in XOR reductions).
    """

    field: FieldSpec
    n_rows: int
    n_cols: int
    cols: np.ndarray
    coeffs: np.ndarray
    row_weights: np.ndarray

    @classmethod
    def from_rows(cls, field: FieldSpec, n_cols: int, rows: list[list[tuple[int, int]]]):
        n_rows = len(rows)
        wmax = max((len(r) for r in rows), default=0)
        cols = np.zeros((n_rows, wmax), dtype=np.int64)
        coeffs = np.zeros((n_rows, wmax), dtype=np.uint8)
        weights = np.zeros(n_rows, dtype=np.int64)
        for i, row in enumerate(rows):
            for s, (c, v) in enumerate(row):
                if not 0 <= c < n_cols:
                    raise ValueError(f"column index {c} outside [0, {n_cols})")
                if not 1 <= v < field.q:
                    raise ValueError(f"coefficient {v} outside [1, q)")
                cols[i, s] = c
                coeffs[i, s] = v
            weights[i] = len(row)
        for a in (cols, coeffs, weights):
            a.setflags(write=False)
        return cls(field, n_rows, n_cols, cols, coeffs, weights)

    def rows(self) -> list[list[tuple[int, int]]]:
        return [
            [(int(self.cols[i, s]), int(self.coeffs[i, s])) for s in range(self.row_weights[i])]
            for i in range(self.n_rows)
        ]

    def syndrome(self, x: np.ndarray) -> np.ndarray:
        """H @ x over the field; padded slots contribute 0."""
        x = np.asarray(x)
        if x.shape != (self.n_cols,):
            raise ValueError(f"symbol vector has length {x.shape}, expected {self.n_cols}")
        if x.size and (x.min() < 0 or x.max() >= self.field.q):
            raise ValueError("symbols must lie in [0, q)")
        terms = self.field.mul_table[self.coeffs, x[self.cols]]
        return np.bitwise_xor.reduce(terms, axis=1).astype(np.uint8)

    def to_dense(self) -> np.ndarray:
        D = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for s in range(self.cols.shape[1]):
            live = s < self.row_weights
            D[np.nonzero(live)[0], self.cols[live, s]] = self.coeffs[live, s]
        return D

    def column_submatrix(self, columns) -> np.ndarray:
        """Dense submatrix of the selected columns, order preserved."""
        columns = np.asarray(columns, dtype=np.int64)
        if columns.size and (columns.min() < 0 or columns.max() >= self.n_cols):
            raise ValueError("column index out of range")
        return self.to_dense()[:, columns]


def expand(code: QcCode) -> SparseParityCheck:
    """Expand the block description into the M x N sparse matrix."""
    g, k, z = code.gamma, code.kappa, code.z
    M = g * z
    r = np.arange(z)
    cols = np.empty((M, k), dtype=np.int64)
    coeffs = np.empty((M, k), dtype=np.uint8)
    for i in range(g):
        for j in range(k):
            cols[i * z : (i + 1) * z, j] = j * z + (r - int(code.P.entries[i, j])) % z
            coeffs[i * z : (i + 1) * z, j] = int(code.S.entries[i, j])
    weights = np.full(M, k, dtype=np.int64)
    for a in (cols, coeffs, weights):
        a.setflags(write=False)
    return SparseParityCheck(code.field, M, k * z, cols, coeffs, weights)


def syndrome(H: SparseParityCheck, x: np.ndarray) -> np.ndarray:
    return H.syndrome(x)


def column_submatrix(H: SparseParityCheck, columns) -> np.ndarray:
    return H.column_submatrix(columns)


# ======================================================================
# Girth conditions on the power matrix
# ======================================================================


@lru_cache(maxsize=None)
def _cyclic_sequences(n_vals: int, length: int) -> np.ndarray:
    """All sequences over [0, n_vals) with cyclically-adjacent entries distinct."""
    seqs = [
        s
        for s in product(range(n_vals), repeat=length)
        if all(s[k] != s[(k + 1) % length] for k in range(length))
    ]
    return np.array(seqs, dtype=np.int64).reshape(len(seqs), length)


def _violating_sums(P: PowerMatrix, m: int) -> int:
    """Number of closed block paths of length 2m whose shift sums vanish mod z."""
    I = _cyclic_sequences(P.gamma, m)
    J = _cyclic_sequences(P.kappa, m)
    if I.size == 0 or J.size == 0:
        return 0
    E = P.entries
    Inext = np.roll(I, -1, axis=1)
    total = np.zeros((I.shape[0], J.shape[0]), dtype=np.int64)
    for k in range(m):
        total += E[I[:, k], :][:, J[:, k]] - E[Inext[:, k], :][:, J[:, k]]
    return int(np.count_nonzero(total % P.z == 0))


def girth_violations(P: PowerMatrix, g: int) -> int:
    """Count of violated cycle conditions for all path lengths 2m, m in [2, g]."""
    if not 2 <= g <= 5:
        raise ValueError(f"g={g} outside [2, 5] (type-I girth tops out at 12)")
    return sum(_violating_sums(P, m) for m in range(2, g + 1))


def girth_at_least(P: PowerMatrix, g: int) -> bool:
    """True iff the expanded Tanner graph has girth at least 2(g + 1).

    Checks that every closed alternating block path of length 2m, m in
    [2, g], has a nonzero shift sum mod z; the enumeration is exhaustive
    over index sequences with cyclically-adjacent entries distinct.
    """
    if not 2 <= g <= 5:
        raise ValueError(f"g={g} outside [2, 5] (type-I girth tops out at 12)")
    return all(_violating_sums(P, m) == 0 for m in range(2, g + 1))


def girth(P: PowerMatrix) -> float:
    """Certified girth of the expanded graph, capped at 12.

    Returns the exact girth when some condition fails (the first failing
    path length is the shortest cycle), 12 when all checks up to the type-I
    cap pass, and math.inf when the base grid cannot close a cycle.
    """
    if P.gamma < 2 or P.kappa < 2:
        return math.inf
    for g in range(2, 6):
        if _violating_sums(P, g) > 0:
            return 2 * g
    return 12
