"""Heisenberg groups H_n(F_p), the affine group Aff(F_p), and additive Z/m.

Elements are plain tuples:

* Heisenberg: ``(x, y, z)`` with ``x``, ``y`` length-n tuples of residues and
  ``z`` a residue.  Product ``[x,y,z][x',y',z'] = [x+x', y+y', z+z'+x.y']``
  with ``x.y'`` the scalar product.
* Affine: ``(a, b)`` with ``a != 0``, product ``(a,b)(c,d) = (ac, ad+b)``.
* Cyclic: a residue mod m, written multiplicatively but added.

Every group carries a canonical bijective integer encoding used by the set
layer (dense addressing): Heisenberg ``z + p*(y_1 + p*y_2 + ...) +
p^{n+1}*(x_1 + ...)``, affine ``b + p*(a-1)``, cyclic the residue itself.
Vectorised ``*_codes`` methods implement the group law directly on int64 code
arrays; ``to_matrix`` gives the unipotent / 2x2 matrix model used as an
independent oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import check_odd_prime, inverse_table

MAX_ENUMERATION_PAIRS = 2 * 10**8


@dataclass(frozen=True)
class HeisenbergGroup:
    p: int
    n: int = 1

    def __post_init__(self):
        check_odd_prime(self.p)
        if not 1 <= self.n <= 4:
            raise ValueError("n must be in 1..4")

    # -- descriptor ----------------------------------------------------------
    @property
    def order(self) -> int:
        return self.p ** (2 * self.n + 1)

    @property
    def name(self) -> str:
        return "H"

    @property
    def identity(self):
        zero = (0,) * self.n
        return (zero, zero, 0)

    def element(self, x, y, z):
        """Validating constructor from raw coordinates."""
        x = tuple(int(v) % self.p for v in (x if isinstance(x, (tuple, list)) else (x,)))
        y = tuple(int(v) % self.p for v in (y if isinstance(y, (tuple, list)) else (y,)))
        if len(x) != self.n or len(y) != self.n:
            raise ValueError(f"coordinate vectors must have length {self.n}")
        return (x, y, int(z) % self.p)

    # -- group law -------------------------------------------------------------
    def mul(self, g, h):
        p = self.p
        x1, y1, z1 = g
        x2, y2, z2 = h
        scal = sum(a * b for a, b in zip(x1, y2))
        return (
            tuple((a + b) % p for a, b in zip(x1, x2)),
            tuple((a + b) % p for a, b in zip(y1, y2)),
            (z1 + z2 + scal) % p,
        )

    def inv(self, g):
        p = self.p
        x, y, z = g
        scal = sum(a * b for a, b in zip(x, y))
        return (tuple(-a % p for a in x), tuple(-a % p for a in y), (-z + scal) % p)

    def commutator(self, g, h):
        """[g;h] = [0,0,x.y' - y.x'], always central."""
        p = self.p
        x1, y1, _ = g
        x2, y2, _ = h
        val = sum(a * b for a, b in zip(x1, y2)) - sum(a * b for a, b in zip(y1, x2))
        zero = (0,) * self.n
        return (zero, zero, val % p)

    # -- canonical coding --------------------------------------------------------
    def encode(self, g) -> int:
        p = self.p
        x, y, z = g
        code = 0
        for v in reversed(x):
            code = code * p + v
        for v in reversed(y):
            code = code * p + v
        return code * p + z

    def decode(self, code: int):
        p, n = self.p, self.n
        code = int(code)
        z = code % p
        code //= p
        y = []
        for _ in range(n):
            y.append(code % p)
            code //= p
        x = []
        for _ in range(n):
            x.append(code % p)
            code //= p
        return (tuple(x), tuple(y), z)

    def decode_arrays(self, codes: np.ndarray):
        p, n = self.p, self.n
        rest = np.asarray(codes, dtype=np.int64)
        z = rest % p
        rest = rest // p
        y = np.empty((rest.shape[0], n), dtype=np.int64)
        for i in range(n):
            y[:, i] = rest % p
            rest = rest // p
        x = np.empty((rest.shape[0], n), dtype=np.int64)
        for i in range(n):
            x[:, i] = rest % p
            rest = rest // p
        return x, y, z

    def encode_arrays(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        p, n = self.p, self.n
        code = np.zeros(len(z), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            code = code * p + x[:, i]
        for i in range(n - 1, -1, -1):
            code = code * p + y[:, i]
        return code * p + z

    def mul_codes(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        xa, ya, za = self.decode_arrays(a)
        xb, yb, zb = self.decode_arrays(b)
        z = (za + zb + np.einsum("ij,ij->i", xa, yb)) % p
        return self.encode_arrays((xa + xb) % p, (ya + yb) % p, z)

    def inv_codes(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        x, y, z = self.decode_arrays(a)
        zz = (-z + np.einsum("ij,ij->i", x, y)) % p
        return self.encode_arrays((-x) % p, (-y) % p, zz)

    def commutator_codes(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        xa, ya, _ = self.decode_arrays(a)
        xb, yb, _ = self.decode_arrays(b)
        val = (np.einsum("ij,ij->i", xa, yb) - np.einsum("ij,ij->i", ya, xb)) % p
        return val.astype(np.int64)  # [0,0,val] encodes as val

    # -- oracles / structure -------------------------------------------------------
    def to_matrix(self, g) -> np.ndarray:
        """(n+2)x(n+2) unipotent matrix model of g."""
        n = self.n
        x, y, z = g
        m = np.eye(n + 2, dtype=np.int64)
        m[0, 1 : n + 1] = x
        m[1 : n + 1, n + 1] = y
        m[0, n + 1] = z
        return m

    def center_codes(self) -> np.ndarray:
        return np.arange(self.p, dtype=np.int64)  # [0,0,z] encodes to z

    def centralizer_predicate(self, g0, g):
        """Closed form: g commutes with g0 iff x.y0 = x0.y."""
        x0, y0, _ = g0
        x, y, _ = g
        return (sum(a * b for a, b in zip(x, y0)) - sum(a * b for a, b in zip(x0, y))) % self.p == 0

    def elements(self):
        for code in range(self.order):
            yield self.decode(code)


@dataclass(frozen=True)
class AffineGroup:
    p: int

    def __post_init__(self):
        check_odd_prime(self.p)

    @property
    def order(self) -> int:
        return self.p * (self.p - 1)

    @property
    def name(self) -> str:
        return "Aff"

    @property
    def identity(self):
        return (1, 0)

    def element(self, a, b):
        a = int(a) % self.p
        if a == 0:
            raise ValueError("affine elements need a != 0")
        return (a, int(b) % self.p)

    def mul(self, g, h):
        p = self.p
        a, b = g
        c, d = h
        return ((a * c) % p, (a * d + b) % p)

    def inv(self, g):
        p = self.p
        a, b = g
        ai = pow(a, p - 2, p)
        return (ai, (-ai * b) % p)

    def commutator(self, g, h):
        """[g;h] = (1, y(1-x') - y'(1-x)), always unipotent."""
        p = self.p
        x, y = g
        x2, y2 = h
        return (1, (y * (1 - x2) - y2 * (1 - x)) % p)

    def encode(self, g) -> int:
        a, b = g
        return b + self.p * (a - 1)

    def decode(self, code: int):
        code = int(code)
        return (code // self.p + 1, code % self.p)

    def decode_arrays(self, codes: np.ndarray):
        codes = np.asarray(codes, dtype=np.int64)
        return codes // self.p + 1, codes % self.p

    def encode_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return b + self.p * (a - 1)

    def mul_codes(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        p = self.p
        a, b = self.decode_arrays(u)
        c, d = self.decode_arrays(v)
        return self.encode_arrays((a * c) % p, (a * d + b) % p)

    def inv_codes(self, u: np.ndarray) -> np.ndarray:
        p = self.p
        a, b = self.decode_arrays(u)
        ai = inverse_table(p)[a]
        return self.encode_arrays(ai, (-ai * b) % p)

    def commutator_codes(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        p = self.p
        x, y = self.decode_arrays(u)
        x2, y2 = self.decode_arrays(v)
        return (y * (1 - x2) - y2 * (1 - x)) % p  # (1, val) encodes to val

    def to_matrix(self, g) -> np.ndarray:
        a, b = g
        return np.array([[a, b], [0, 1]], dtype=np.int64)

    def center_codes(self) -> np.ndarray:
        return np.arange(self.p, dtype=np.int64)  # the unipotent coset (1, b)

    def centralizer_predicate(self, g0, g):
        """Closed form: Aff for I, U for unipotents, Stab(y0/(1-x0)) otherwise."""
        p = self.p
        x0, y0 = g0
        x, y = g
        if (x0, y0) == (1, 0):
            return True
        if x0 == 1:
            return x == 1
        t0 = (y0 * pow((1 - x0) % p, p - 2, p)) % p
        return y == (t0 * (1 - x)) % p

    def elements(self):
        for code in range(self.order):
            yield self.decode(code)


@dataclass(frozen=True)
class CyclicGroup:
    """Additive Z/m in multiplicative garb; used for cross-group map checks."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be positive")

    @property
    def order(self) -> int:
        return self.m

    @property
    def name(self) -> str:
        return "Z"

    @property
    def identity(self):
        return 0

    def element(self, v):
        return int(v) % self.m

    def mul(self, g, h):
        return (g + h) % self.m

    def inv(self, g):
        return (-g) % self.m

    def commutator(self, g, h):
        return 0

    def encode(self, g) -> int:
        return int(g)

    def decode(self, code: int):
        return int(code)

    def mul_codes(self, a, b):
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.m

    def inv_codes(self, a):
        return (-np.asarray(a, dtype=np.int64)) % self.m

    def elements(self):
        return iter(range(self.m))


def conjugate_codes(group, g_code: int, h_codes: np.ndarray) -> np.ndarray:
    """Codes of h g h^{-1} for every h."""
    h_codes = np.asarray(h_codes, dtype=np.int64)
    g = np.full(len(h_codes), int(g_code), dtype=np.int64)
    return group.mul_codes(group.mul_codes(h_codes, g), group.inv_codes(h_codes))


def conjugacy_class_count(group) -> int:
    """Exact number of conjugacy classes by orbit enumeration."""
    order = group.order
    if order * order > MAX_ENUMERATION_PAIRS:
        raise ValueError("group too large to enumerate conjugacy classes")
    all_codes = np.arange(order, dtype=np.int64)
    seen = np.zeros(order, dtype=bool)
    count = 0
    for code in range(order):
        if seen[code]:
            continue
        count += 1
        seen[conjugate_codes(group, code, all_codes)] = True
    return count
