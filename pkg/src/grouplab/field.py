"""Exact arithmetic in F_p and in cyclotomic integer rings Z[zeta_m].

A cyclotomic integer is held in canonical form: the coefficient vector of the
remainder modulo the m-th cyclotomic polynomial, i.e. length phi(m) over the
basis {1, zeta, ..., zeta^{phi(m)-1}}.  For prime m = p this is the familiar
reduction zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}) and the canonical vector
has length p-1.  Multiplication lifts to the redundant power basis
{1, ..., zeta^{m-1}} where it is a cyclic convolution of exponents, then
reduces back; equality of canonical forms is semantic equality.

Batched kernels (`cyclo_mul_vecs`, `cyclo_matmul`, ...) operate on numpy
arrays whose last axis is the redundant length-m coefficient vector.  They
stay on int64 while a conservative bound proves no overflow and switch to
Python-int (object dtype) arrays otherwise.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

MAX_SET_PRIME = 1009     # bound for set/energy work
MAX_MATRIX_PRIME = 31    # bound for representation-matrix work

_INT64_HEADROOM = 2**62


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int, limit: int = MAX_SET_PRIME) -> None:
    """Reject moduli outside the supported odd-prime range."""
    if not isinstance(p, (int, np.integer)) or p < 3 or p % 2 == 0 or not is_prime(int(p)):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")
    if p > limit:
        raise ValueError(f"prime {p} exceeds the supported limit {limit}")


@lru_cache(maxsize=None)
def _factor(m: int) -> tuple[int, ...]:
    out, d = [], 2
    while d * d <= m:
        while m % d == 0:
            if not out or out[-1] != d:
                out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*; deterministic across runs."""
    check_odd_prime(p)
    qs = _factor(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root found for {p}")  # unreachable for prime p


@lru_cache(maxsize=None)
def dlog_table(p: int) -> np.ndarray:
    """Table t with t[x] = ind(x) for x in F_p^*; t[0] = -1."""
    w = primitive_root(p)
    t = np.full(p, -1, dtype=np.int64)
    acc = 1
    for k in range(p - 1):
        t[acc] = k
        acc = (acc * w) % p
    t.flags.writeable = False
    return t


def ind(x: int, p: int) -> int:
    """Discrete logarithm of x to the fixed primitive root of F_p^*."""
    check_odd_prime(p)
    x = int(x) % p
    if x == 0:
        raise ValueError("ind(0) is undefined")
    return int(dlog_table(p)[x])


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Table t with t[x] = x^{-1} mod p for x != 0; t[0] = 0 (unused)."""
    t = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        t[x] = pow(x, p - 2, p)
    t.flags.writeable = False
    return t


# ---------------------------------------------------------------------------
# cyclotomic polynomials and canonical reduction
# ---------------------------------------------------------------------------

def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (ascending coefficients), den monic
    num = list(num)
    d = len(den) - 1
    q = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - d] = c
        for j, dj in enumerate(den):
            num[i - d + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Ascending coefficients of the m-th cyclotomic polynomial (monic)."""
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]          # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def reduce_cyclo(vec: np.ndarray, m: int) -> np.ndarray:
    """Canonical form: remainder of the last axis modulo the m-th cyclotomic polynomial."""
    vec = np.asarray(vec)
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    if vec.shape[-1] < d:
        out = np.zeros(vec.shape[:-1] + (d,), dtype=vec.dtype)
        out[..., : vec.shape[-1]] = vec
        return out
    rem = np.array(vec, dtype=object if vec.dtype == object else np.int64)
    for e in range(rem.shape[-1] - 1, d - 1, -1):
        c = rem[..., e].copy()
        if not np.any(c):
            continue
        rem[..., e] = 0
        for j in range(d):
            if phi[j]:
                rem[..., e - d + j] -= c * phi[j]
    return rem[..., :d]


def _is_zero_vec(vec: np.ndarray, m: int) -> bool:
    return not np.any(reduce_cyclo(vec, m))


# ---------------------------------------------------------------------------
# batched kernels on redundant coefficient vectors (last axis = m)
# ---------------------------------------------------------------------------

def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _want_object(a: np.ndarray, b: np.ndarray, terms: int) -> bool:
    if a.dtype == object or b.dtype == object:
        return True
    return _max_abs(a) * _max_abs(b) * max(terms, 1) >= _INT64_HEADROOM


def _as_pair(a: np.ndarray, b: np.ndarray, terms: int) -> tuple[np.ndarray, np.ndarray]:
    # Overflow-checked arithmetic: abort int64 in favour of exact object arrays.
    if _want_object(a, b, terms):
        return a.astype(object), b.astype(object)
    return np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)


def cyclo_mul_vecs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product of cyclotomic numbers: cyclic convolution on the last axis."""
    a = np.asarray(a)
    b = np.asarray(b)
    m = a.shape[-1]
    if b.shape[-1] != m:
        raise ValueError("mismatched cyclotomic orders")
    a, b = _as_pair(a, b, terms=m)
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=a.dtype)
    for t in range(m):
        coeff = a[..., t]
        if not np.any(coeff):
            continue
        out += coeff[..., None] * np.roll(b, t, axis=-1)
    return out


def cyclo_conj_vecs(a: np.ndarray) -> np.ndarray:
    """Complex conjugation zeta -> zeta^{-1} on redundant coefficient vectors."""
    a = np.asarray(a)
    out = np.empty_like(a)
    out[..., 0] = a[..., 0]
    out[..., 1:] = a[..., :0:-1]
    return out


def cyclo_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of cyclotomic matrices shaped (r, s, m) @ (s, t, m)."""
    a = np.asarray(a)
    b = np.asarray(b)
    m = a.shape[-1]
    if b.shape[-1] != m or a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    a, b = _as_pair(a, b, terms=m * a.shape[1])
    out = np.zeros((a.shape[0], b.shape[1], m), dtype=a.dtype)
    for t in range(m):
        at = a[..., t]
        if not np.any(at):
            continue
        out += np.einsum("ik,kjn->ijn", at, np.roll(b, t, axis=-1))
    return out


def cyclo_to_complex_vec(vec: np.ndarray, m: int) -> complex | np.ndarray:
    """Evaluate coefficient vectors at zeta_m = exp(2*pi*i/m)."""
    vec = np.asarray(vec)
    zs = np.exp(2j * np.pi * np.arange(vec.shape[-1]) / m)
    return vec.astype(np.complex128) @ zs


def embed_order(vec: np.ndarray, m: int, target: int) -> np.ndarray:
    """Re-express Z[zeta_m] coefficients in Z[zeta_target]; requires m | target."""
    vec = np.asarray(vec)
    if target % m:
        raise ValueError("target order must be a multiple of the source order")
    step = target // m
    out = np.zeros(vec.shape[:-1] + (target,), dtype=vec.dtype)
    out[..., ::step] = vec
    return out


def integer_values(vec: np.ndarray, m: int) -> np.ndarray:
    """Extract rational-integer values from cyclotomic vectors; raise if any is not one."""
    red = reduce_cyclo(vec, m)
    if np.any(red[..., 1:]):
        raise ValueError("cyclotomic value is not a rational integer")
    return red[..., 0]


# ---------------------------------------------------------------------------
# scalar cyclotomic integers
# ---------------------------------------------------------------------------

class Cyclo:
    """Exact element of Z[zeta_m] in canonical form (Python-int coefficients)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = int(order)
        vec = np.zeros(order, dtype=object)
        coeffs = list(coeffs)
        if len(coeffs) > order:
            for e, c in enumerate(coeffs):
                vec[e % order] += int(c)
        else:
            for e, c in enumerate(coeffs):
                vec[e] = int(c)
        self.coeffs = tuple(int(v) for v in reduce_cyclo(vec, order))

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "Cyclo":
        return cls(order)

    @classmethod
    def integer(cls, order: int, value: int) -> "Cyclo":
        return cls(order, (int(value),))

    @classmethod
    def zeta_pow(cls, order: int, k: int) -> "Cyclo":
        vec = [0] * order
        vec[k % order] = 1
        return cls(order, vec)

    @classmethod
    def _from_canonical(cls, order: int, coeffs: tuple[int, ...]) -> "Cyclo":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    # -- helpers -------------------------------------------------------------
    def _lift(self) -> np.ndarray:
        vec = np.zeros(self.order, dtype=object)
        vec[: len(self.coeffs)] = self.coeffs
        return vec

    def _check(self, other: "Cyclo") -> None:
        if not isinstance(other, Cyclo) or other.order != self.order:
            raise ValueError("mismatched cyclotomic orders")

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = Cyclo.integer(self.order, other)
        self._check(other)
        return Cyclo._from_canonical(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = Cyclo.integer(self.order, other)
        self._check(other)
        return Cyclo._from_canonical(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return Cyclo._from_canonical(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo._from_canonical(self.order, tuple(a * other for a in self.coeffs))
        self._check(other)
        prod = cyclo_mul_vecs(self._lift(), other._lift())
        return Cyclo(self.order, tuple(prod))

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclo.integer(self.order, other)
        return (
            isinstance(other, Cyclo)
            and other.order == self.order
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Cyclo({self.order}, {list(self.coeffs)})"

    # -- queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def conj(self) -> "Cyclo":
        return Cyclo(self.order, tuple(cyclo_conj_vecs(self._lift())))

    def as_integer(self) -> int:
        if any(self.coeffs[1:]):
            raise ValueError("cyclotomic value is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def to_complex(self) -> complex:
        return complex(
            sum(c * cmath.exp(2j * math.pi * e / self.order) for e, c in enumerate(self.coeffs))
        )


def cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo:
    """Canonical-form product in Z[zeta_m]."""
    return a * b


def cyclo_conj_normsq(a: Cyclo) -> Cyclo:
    """a * conj(a); a rational integer whenever the squared modulus is rational."""
    return a * a.conj()


def cyclo_to_complex(a: Cyclo) -> complex:
    """Floating evaluation at zeta_m = exp(2*pi*i/m)."""
    return a.to_complex()
