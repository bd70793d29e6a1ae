"""GF(2^m) arithmetic, polynomial algebra over the field, and the
number-theoretic predicates used by the code-construction certificates.

Field elements are plain integers in [0, q) whose bits are the coefficients
of the polynomial basis representation; addition is XOR.  A ``FieldSpec``
carries the extension degree and reduction polynomial and precomputes
log/antilog and full multiplication tables so that vectorised numpy code
(decoder inner loops, Gaussian elimination) can index into them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

# One irreducible polynomial per extension degree, as a bitmask with the
# degree-m coefficient included (e.g. x^3 + x + 1 -> 0b1011).
DEFAULT_REDUCTION_POLY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}

FieldElem = int


def _clmul_mod(a: int, b: int, mod: int, m: int) -> int:
    """Carry-less multiply of two GF(2)[x] bitmasks, reduced mod *mod*."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
    for bit in range(acc.bit_length() - 1, m - 1, -1):
        if (acc >> bit) & 1:
            acc ^= mod << (bit - m)
    return acc


def _gf2_poly_irreducible(f: int) -> bool:
    """Irreducibility of a GF(2)[x] bitmask polynomial by trial division."""
    deg = f.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            g = (1 << d) | low
            # Remainder of f / g via long division on bitmasks.
            r = f
            while r.bit_length() - 1 >= d and r:
                r ^= g << (r.bit_length() - 1 - d)
            if r == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^m) arithmetic context.

    ``reduction_poly`` is the bitmask of a degree-m irreducible polynomial
    over GF(2); the default for each m is taken from
    ``DEFAULT_REDUCTION_POLY`` (x^3 + x + 1 for q = 8).
    """

    m: int
    reduction_poly: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.m <= 8:
            raise ValueError(f"extension degree m={self.m} outside [1, 8]")
        if self.reduction_poly == 0:
            object.__setattr__(self, "reduction_poly", DEFAULT_REDUCTION_POLY[self.m])
        if self.reduction_poly.bit_length() - 1 != self.m:
            raise ValueError(
                f"reduction polynomial 0b{self.reduction_poly:b} does not have degree {self.m}"
            )
        if not _gf2_poly_irreducible(self.reduction_poly):
            raise ValueError(f"reduction polynomial 0b{self.reduction_poly:b} is reducible")

    @property
    def q(self) -> int:
        return 1 << self.m

    # ------------------------------------------------------------------
    # Precomputed tables
    # ------------------------------------------------------------------

    @cached_property
    def _log_exp(self) -> tuple[np.ndarray, np.ndarray]:
        """(log, exp) tables for a generator of the multiplicative group."""
        q = self.q
        if q == 2:
            return np.array([0, 0], dtype=np.int32), np.array([1], dtype=np.int32)
        for g in range(2, q):
            seen = []
            x = 1
            for _ in range(q - 1):
                seen.append(x)
                x = _clmul_mod(x, g, self.reduction_poly, self.m)
            if x == 1 and len(set(seen)) == q - 1:
                exp = np.array(seen, dtype=np.int32)
                log = np.zeros(q, dtype=np.int32)
                log[exp] = np.arange(q - 1)
                return log, exp
        raise AssertionError("no generator found; reduction polynomial is not irreducible")

    @cached_property
    def mul_table(self) -> np.ndarray:
        """q x q multiplication table (uint8, read-only)."""
        q = self.q
        log, exp = self._log_exp
        table = np.zeros((q, q), dtype=np.uint8)
        nz = np.arange(1, q)
        idx = (log[nz][:, None] + log[nz][None, :]) % (q - 1)
        table[nz[:, None], nz[None, :]] = exp[idx]
        table.setflags(write=False)
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is unused (set to 0)."""
        q = self.q
        log, exp = self._log_exp
        table = np.zeros(q, dtype=np.uint8)
        nz = np.arange(1, q)
        table[nz] = exp[(-log[nz]) % (q - 1)]
        table.setflags(write=False)
        return table

    # ------------------------------------------------------------------
    # Scalar operations
    # ------------------------------------------------------------------

    def _check_range(self, *vals: int) -> None:
        for v in vals:
            if not 0 <= v < self.q:
                raise ValueError(f"field element {v} outside [0, {self.q})")

    def add(self, a: int, b: int) -> int:
        self._check_range(a, b)
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self._check_range(a, b)
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        self._check_range(a)
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e; negative exponents require a != 0."""
        self._check_range(a)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        base = a
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)


def field_op(spec: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch a named field operation: add, mul, inv, or pow."""
    if op == "add":
        return spec.add(a, b)
    if op == "mul":
        return spec.mul(a, b)
    if op == "inv":
        return spec.inv(a)
    if op == "pow":
        return spec.pow(a, b)
    raise ValueError(f"unknown field operation {op!r}")


# ======================================================================
# Polynomials over GF(2^m)
# ======================================================================


@dataclass(frozen=True)
class Poly:
    """Polynomial over a GF(2^m) field, lowest-degree coefficient first.

    The coefficient tuple never has trailing zeros; the zero polynomial is
    the empty tuple and has degree -1.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                spow = "x" if i == 1 else f"x^{i}"
                terms.append(spow if c == 1 else f"{c}*{spow}")
        return " + ".join(terms)


POLY_ZERO = Poly(())
POLY_ONE = Poly((1,))


def poly_x_pow(n: int, coeff: int = 1) -> Poly:
    """The monomial coeff * x^n."""
    return Poly((0,) * n + (coeff,))


def xz_plus_one(z: int) -> Poly:
    """x^z - 1, which in characteristic 2 is x^z + 1."""
    return Poly((1,) + (0,) * (z - 1) + (1,))


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a.coeffs), len(b.coeffs))
    ca = a.coeffs + (0,) * (n - len(a.coeffs))
    cb = b.coeffs + (0,) * (n - len(b.coeffs))
    return Poly(tuple(x ^ y for x, y in zip(ca, cb)))


def poly_scale(spec: FieldSpec, f: Poly, c: int) -> Poly:
    if c == 0:
        return POLY_ZERO
    mt = spec.mul_table
    return Poly(tuple(int(mt[c, x]) for x in f.coeffs))


def poly_mul(spec: FieldSpec, a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return POLY_ZERO
    mt = spec.mul_table
    out = [0] * (a.degree + b.degree + 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        row = mt[ca]
        for j, cb in enumerate(b.coeffs):
            if cb:
                out[i + j] ^= int(row[cb])
    return Poly(tuple(out))


def _divmod_arrays(spec: FieldSpec, num: np.ndarray, den: np.ndarray):
    """Long division on coefficient arrays (lowest degree first)."""
    mt = spec.mul_table
    lead_inv = int(spec.inv_table[den[-1]])
    rem = num.copy()
    dd = len(den) - 1
    quo = np.zeros(max(len(num) - dd, 1), dtype=np.uint8)
    deg = len(rem) - 1
    while deg >= dd:
        if rem[deg]:
            factor = int(mt[lead_inv, rem[deg]])
            quo[deg - dd] = factor
            rem[deg - dd : deg + 1] ^= mt[factor, den]
        deg -= 1
    return quo, rem


def poly_divmod(spec: FieldSpec, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return POLY_ZERO, a
    quo, rem = _divmod_arrays(
        spec,
        np.array(a.coeffs, dtype=np.uint8),
        np.array(b.coeffs, dtype=np.uint8),
    )
    return Poly(tuple(int(x) for x in quo)), Poly(tuple(int(x) for x in rem))


def poly_mod(spec: FieldSpec, a: Poly, b: Poly) -> Poly:
    return poly_divmod(spec, a, b)[1]


def poly_monic(spec: FieldSpec, f: Poly) -> Poly:
    if f.is_zero or f.leading() == 1:
        return f
    return poly_scale(spec, f, spec.inv(f.leading()))


def poly_gcd(spec: FieldSpec, a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    ra = np.array(a.coeffs, dtype=np.uint8)
    rb = np.array(b.coeffs, dtype=np.uint8)
    if ra.size < rb.size:
        ra, rb = rb, ra
    while rb.size:
        _, rem = _divmod_arrays(spec, ra, rb)
        nz = np.nonzero(rem)[0]
        rem = rem[: nz[-1] + 1] if nz.size else rem[:0]
        ra, rb = rb, rem
    return poly_monic(spec, Poly(tuple(int(x) for x in ra)))


def poly_eval(spec: FieldSpec, f: Poly, x: int) -> int:
    acc = 0
    mt = spec.mul_table
    for c in reversed(f.coeffs):
        acc = int(mt[acc, x]) ^ c
    return acc


def poly_pow_mod(spec: FieldSpec, base: Poly, e: int, mod: Poly) -> Poly:
    """base**e reduced mod *mod*, by square and multiply."""
    result = poly_mod(spec, POLY_ONE, mod)
    acc = poly_mod(spec, base, mod)
    while e:
        if e & 1:
            result = poly_mod(spec, poly_mul(spec, result, acc), mod)
        acc = poly_mod(spec, poly_mul(spec, acc, acc), mod)
        e >>= 1
    return result


def is_irreducible(spec: FieldSpec, f: Poly) -> bool:
    """True iff *f* has no factor of degree in [1, deg(f)/2] over the field.

    Uses gcd checks against x^(q^d) - x: an irreducible of degree d divides
    x^(q^d) - x, so any shared factor of degree <= deg(f)/2 is exposed.
    """
    if f.degree < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    x = poly_x_pow(1)
    r = poly_mod(spec, x, f)
    for _ in range(f.degree // 2):
        r = poly_pow_mod(spec, r, spec.q, f)
        g = poly_gcd(spec, poly_add(r, x), f)
        if g.degree >= 1:
            return False
    return True


# ======================================================================
# Integer predicates
# ======================================================================


def is_prime(z: int) -> bool:
    """Primality by trial division (adequate for lifting-factor sizes)."""
    if z < 2:
        return False
    if z < 4:
        return True
    if z % 2 == 0:
        return False
    d = 3
    while d * d <= z:
        if z % d == 0:
            return False
        d += 2
    return True


def mult_order(q: int, z: int) -> int:
    """Smallest t >= 1 with q^t = 1 (mod z)."""
    if z < 2:
        raise ValueError(f"modulus z={z} must be >= 2")
    if math.gcd(q, z) != 1:
        raise ValueError(f"q={q} and z={z} are not coprime")
    t = 1
    acc = q % z
    while acc != 1:
        acc = (acc * q) % z
        t += 1
    return t


# ======================================================================
# Matrix rank over GF(2^m)
# ======================================================================


def rank_fq(spec: FieldSpec, matrix) -> int:
    """Rank over GF(2^m) by Gaussian elimination with table lookups."""
    A = np.array(matrix, dtype=np.uint8)
    if A.ndim != 2:
        raise ValueError("rank_fq expects a 2-D matrix")
    if A.size and A.max() >= spec.q:
        raise ValueError("matrix entries must lie in [0, q)")
    n_rows, n_cols = A.shape
    if n_rows == 0 or n_cols == 0:
        return 0
    mt, it = spec.mul_table, spec.inv_table
    r = 0
    for c in range(n_cols):
        pivots = np.nonzero(A[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + int(pivots[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        if A[r, c] != 1:
            A[r] = mt[it[A[r, c]], A[r]]
        below = np.nonzero(A[r + 1 :, c])[0]
        if below.size:
            factors = A[r + 1 :, c][below]
            A[r + 1 :][below] ^= mt[factors[:, None], A[r][None, :]]
        r += 1
        if r == n_rows:
            break
    return r


def brute_force_factor_exists(spec: FieldSpec, f: Poly, max_deg: int) -> bool:
    """Exhaustively search for a monic factor of degree in [1, max_deg].

    Independent check used to validate the gcd-based irreducibility test on
    small inputs; exponential in max_deg * m.
    """
    for d in range(1, max_deg + 1):
        for tail in product(spec.elements(), repeat=d):
            g = Poly(tuple(tail) + (1,))
            if poly_mod(spec, f, g).is_zero:
                return True
    return False
