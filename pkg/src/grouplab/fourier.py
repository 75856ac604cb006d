"""Nonabelian Fourier analysis for H_1(F_p) and Aff(F_p), exact in Z[zeta].

Irreducible bundles:

* H_1(F_p): p^2 one-dimensional characters chi_{u,v}([x,y,z]) = zeta^{ux+vy}
  together with p-1 inequivalent p-dimensional representations pi_lam
  (lam in F_p^*, central character zeta^{lam z}); pi_1([x,y,z]) =
  zeta^{z+y} D^y W^x and pi_lam is pi_1 composed with the automorphism
  [x,y,z] -> [x, lam*y, lam*z].  Together they satisfy sum d^2 = |G|.
* Aff(F_p): p-1 multiplicative characters psi_j((a,b)) = zeta_{p-1}^{j*ind a}
  plus the single (p-1)-dimensional pi((a,b)) = D^b W^{ind a}.

Representation values are generalized permutation matrices (one root of unity
per row), so the per-element tables store (column, exponent) pairs.  Every
identity-bearing computation (transform, inversion, Parseval, convolution
theorem, Fourier-side energy) is exact integer/cyclotomic arithmetic; the only
floating result is `op_norm`.  Affine one-dimensional coefficients live in
Z[zeta_{p-1}], so mixed totals are combined in Z[zeta_{p(p-1)}] by exponent
embedding before the rational-integer value is extracted.

The shift-matrix convention is settled once per modulus by `w_convention`,
which probes the printed row pattern and its transpose against the exact
commutation identities and the homomorphism law and keeps the survivor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import (
    MAX_MATRIX_PRIME,
    Cyclo,
    check_odd_prime,
    cyclo_conj_vecs,
    cyclo_matmul,
    cyclo_mul_vecs,
    cyclo_to_complex_vec,
    dlog_table,
    embed_order,
    primitive_root,
    reduce_cyclo,
)
from .groups import AffineGroup, HeisenbergGroup
from .setops import GroupSet

_CONV_TABLE_LIMIT = 4096


def _check_rep_prime(p: int) -> None:
    check_odd_prime(p, limit=MAX_MATRIX_PRIME)


# ---------------------------------------------------------------------------
# matrices over Z[zeta]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepMatrix:
    """Square matrix with exact Z[zeta_order] entries, coeffs shaped (d, d, order)."""

    order: int
    coeffs: np.ndarray

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def identity(cls, dim: int, order: int) -> "RepMatrix":
        c = np.zeros((dim, dim, order), dtype=np.int64)
        c[np.arange(dim), np.arange(dim), 0] = 1
        return cls(order, c)

    @classmethod
    def zero(cls, dim: int, order: int) -> "RepMatrix":
        return cls(order, np.zeros((dim, dim, order), dtype=np.int64))

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.order != other.order:
            raise ValueError("mismatched cyclotomic orders")
        return RepMatrix(self.order, cyclo_matmul(self.coeffs, other.coeffs))

    def __add__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(self.order, self.coeffs + other.coeffs)

    def __sub__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(self.order, self.coeffs - other.coeffs)

    def scale(self, k: int) -> "RepMatrix":
        return RepMatrix(self.order, self.coeffs * int(k))

    def conj_transpose(self) -> "RepMatrix":
        return RepMatrix(self.order, cyclo_conj_vecs(self.coeffs.transpose(1, 0, 2)))

    def canonical(self) -> np.ndarray:
        return reduce_cyclo(self.coeffs, self.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RepMatrix)
            and other.order == self.order
            and other.dim == self.dim
            and np.array_equal(self.canonical(), other.canonical())
        )

    def entry(self, i: int, j: int) -> Cyclo:
        return Cyclo(self.order, tuple(int(v) for v in self.coeffs[i, j]))

    def to_complex(self) -> np.ndarray:
        return cyclo_to_complex_vec(self.coeffs, self.order)


def hs_inner(a: RepMatrix, b: RepMatrix) -> Cyclo:
    """Hilbert-Schmidt product tr(a b*) = sum_ij a_ij conj(b_ij)."""
    if a.order != b.order or a.dim != b.dim:
        raise ValueError("mismatched matrices")
    prod = cyclo_mul_vecs(a.coeffs, cyclo_conj_vecs(b.coeffs))
    return Cyclo(a.order, tuple(int(v) for v in prod.sum(axis=(0, 1))))


def hs_norm_sq(m: RepMatrix) -> int:
    """Exact sum of squared entry moduli; raises if it is not a rational integer."""
    val = hs_inner(m, m)
    return val.as_integer()


def op_norm(m: RepMatrix) -> float:
    """Largest singular value of the complex embedding."""
    if m.dim == 0:
        return 0.0
    return float(np.linalg.svd(m.to_complex(), compute_uv=False)[0])


# ---------------------------------------------------------------------------
# representation tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def w_convention(p: int) -> str:
    """Settle the shift-matrix orientation once per modulus.

    "down" maps e_j -> e_{j-1} (the printed row pattern), "up" is its
    transpose.  The survivor must satisfy, exactly, the commutation identity
    of both groups and the homomorphism law on an exhaustive small sample.
    """
    _check_rep_prime(p)
    for orientation in ("down", "up"):
        if _orientation_ok(p, orientation):
            return orientation
    raise RuntimeError(f"no shift convention satisfies the exact identities at p={p}")


def _shift_cols(d: int, steps: int, orientation: str) -> np.ndarray:
    i = np.arange(d, dtype=np.int64)
    return (i + steps) % d if orientation == "down" else (i - steps) % d


def _heis_monomial(p: int, x: int, y: int, z: int, lam: int, phase: str, orientation: str):
    ly, lz = (lam * y) % p, (lam * z) % p
    cols = _shift_cols(p, x, orientation)
    i = np.arange(p, dtype=np.int64)
    base = (lz + ly) % p if phase == "zy" else lz
    exps = (base + ly * i) % p
    return cols, exps


def _aff_monomial(p: int, a: int, b: int, orientation: str):
    q = p - 1
    cols = _shift_cols(q, int(dlog_table(p)[a % p]), orientation)
    wpow = _wpowers(p)
    exps = (b * wpow) % p
    return cols, exps


@lru_cache(maxsize=None)
def _wpowers(p: int) -> np.ndarray:
    w = primitive_root(p)
    out = np.empty(p - 1, dtype=np.int64)
    acc = 1
    for i in range(p - 1):
        out[i] = acc
        acc = (acc * w) % p
    out.flags.writeable = False
    return out


def _dense_from_monomial(dim: int, order: int, cols: np.ndarray, exps: np.ndarray) -> RepMatrix:
    c = np.zeros((dim, dim, order), dtype=np.int64)
    c[np.arange(dim), cols, exps] = 1
    return RepMatrix(order, c)


def _orientation_ok(p: int, orientation: str) -> bool:
    # commutation identity, Heisenberg: zeta^{xy'} D^{y'} W^x == W^x D^{y'}
    for x in range(p):
        for yp in range(p):
            lhs = _dense_from_monomial(p, p, *_heis_monomial(p, x, yp, 0, 1, "z", orientation))
            d_only = _dense_from_monomial(p, p, *_heis_monomial(p, 0, yp, 0, 1, "z", orientation))
            w_only = _dense_from_monomial(p, p, *_heis_monomial(p, x, 0, 0, 1, "z", orientation))
            shifted = RepMatrix(p, np.roll(lhs.coeffs, (x * yp) % p, axis=2))
            if shifted != w_only @ d_only:
                return False
    # commutation identity, affine: W^{ind a} D^d == D^{ad} W^{ind a}
    q = p - 1
    for a in range(1, p):
        for d in range(p):
            w_mat = _dense_from_monomial(q, p, *_aff_monomial(p, a, 0, orientation))
            d_mat = _dense_from_monomial(q, p, *_aff_monomial(p, 1, d, orientation))
            d_ad = _dense_from_monomial(q, p, *_aff_monomial(p, 1, (a * d) % p, orientation))
            if w_mat @ d_mat != d_ad @ w_mat:
                return False
    # homomorphism law on a deterministic sample of pairs
    heis = HeisenbergGroup(p, 1)
    sample = range(0, heis.order, max(1, heis.order // 23))
    for ca in sample:
        for cb in sample:
            g, h = heis.decode(ca), heis.decode(cb)
            gh = heis.mul(g, h)
            ma = _dense_from_monomial(
                p, p, *_heis_monomial(p, g[0][0], g[1][0], g[2], 1, "zy", orientation)
            )
            mb = _dense_from_monomial(
                p, p, *_heis_monomial(p, h[0][0], h[1][0], h[2], 1, "zy", orientation)
            )
            mab = _dense_from_monomial(
                p, p, *_heis_monomial(p, gh[0][0], gh[1][0], gh[2], 1, "zy", orientation)
            )
            if ma @ mb != mab:
                return False
    aff = AffineGroup(p)
    for ca in range(aff.order):
        for cb in range(0, aff.order, max(1, aff.order // 11)):
            g, h = aff.decode(ca), aff.decode(cb)
            ma = _dense_from_monomial(q, p, *_aff_monomial(p, g[0], g[1], orientation))
            mb = _dense_from_monomial(q, p, *_aff_monomial(p, h[0], h[1], orientation))
            mab = _dense_from_monomial(q, p, *_aff_monomial(p, *aff.mul(g, h), orientation))
            if ma @ mb != mab:
                return False
    return True


def heisenberg_rep(p: int, g, lam: int = 1, phase: str = "zy") -> RepMatrix:
    """pi_lam(g) for H_1(F_p); `phase` "zy" is the default zeta^{lam(z+y)},
    "z" the zeta^{lam z} twist variant."""
    _check_rep_prime(p)
    if phase not in ("zy", "z"):
        raise ValueError("phase must be 'zy' or 'z'")
    if lam % p == 0:
        raise ValueError("lam must be nonzero mod p")
    x, y, z = _as_heis_coords(p, g)
    cols, exps = _heis_monomial(p, x, y, z, lam % p, phase, w_convention(p))
    return _dense_from_monomial(p, p, cols, exps)


def affine_rep(p: int, g) -> RepMatrix:
    """The (p-1)-dimensional representation of Aff(F_p) at g = (a, b)."""
    _check_rep_prime(p)
    a, b = g
    a, b = int(a) % p, int(b) % p
    if a == 0:
        raise ValueError("affine elements need a != 0")
    cols, exps = _aff_monomial(p, a, b, w_convention(p))
    return _dense_from_monomial(p - 1, p, cols, exps)


def _as_heis_coords(p: int, g) -> tuple[int, int, int]:
    x, y, z = g
    if isinstance(x, (tuple, list)):
        if len(x) != 1 or len(y) != 1:
            raise ValueError("explicit matrices exist for n = 1 only")
        x, y = x[0], y[0]
    return int(x) % p, int(y) % p, int(z) % p


class _HeisTables:
    def __init__(self, group: HeisenbergGroup):
        p = group.p
        orientation = w_convention(p)
        codes = np.arange(group.order, dtype=np.int64)
        x, y, z = group.decode_arrays(codes)
        x, y = x[:, 0], y[:, 0]
        i = np.arange(p, dtype=np.int64)
        self.cols = (i[None, :] + x[:, None]) % p if orientation == "down" else (
            i[None, :] - x[:, None]
        ) % p
        self.exps = ((z + y)[:, None] + y[:, None] * i[None, :]) % p
        self.invs = group.inv_codes(codes)
        self.x, self.y = x, y
        twists = np.empty((p - 1, group.order), dtype=np.int64)
        for lam in range(1, p):
            twists[lam - 1] = group.encode_arrays(
                x[:, None], ((lam * y) % p)[:, None], (lam * z) % p
            )
        self.twists = twists


class _AffTables:
    def __init__(self, group: AffineGroup):
        p = group.p
        orientation = w_convention(p)
        codes = np.arange(group.order, dtype=np.int64)
        a, b = group.decode_arrays(codes)
        self.ind = dlog_table(p)[a]
        i = np.arange(p - 1, dtype=np.int64)
        self.cols = (i[None, :] + self.ind[:, None]) % (p - 1) if orientation == "down" else (
            i[None, :] - self.ind[:, None]
        ) % (p - 1)
        self.exps = (b[:, None] * _wpowers(p)[None, :]) % p
        self.invs = group.inv_codes(codes)


@lru_cache(maxsize=None)
def _tables(group):
    if isinstance(group, HeisenbergGroup):
        if group.n != 1:
            raise ValueError("explicit matrices exist for n = 1 only")
        _check_rep_prime(group.p)
        return _HeisTables(group)
    if isinstance(group, AffineGroup):
        _check_rep_prime(group.p)
        return _AffTables(group)
    raise ValueError("Fourier analysis supports H_1(F_p) and Aff(F_p)")


# ---------------------------------------------------------------------------
# the transform and its identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumBundle:
    """All Fourier coefficients of one function: `one_dim` holds the scalar
    coefficients (H: (p,p,p) coeff vectors indexed [u,v]; Aff: (p-1,p-1) over
    zeta_{p-1} indexed [j]), `big` the large-representation matrices
    (H: pi_lam for lam = 1..p-1; Aff: a single pi)."""

    group: object
    one_dim: np.ndarray
    big: tuple[RepMatrix, ...]

    def dimensions(self) -> tuple[int, ...]:
        return irrep_dimensions(self.group)


def irrep_dimensions(group) -> tuple[int, ...]:
    if isinstance(group, HeisenbergGroup):
        p = group.p
        return (1,) * (p * p) + (p,) * (p - 1)
    if isinstance(group, AffineGroup):
        p = group.p
        return (1,) * (p - 1) + (p - 1,)
    raise ValueError("unsupported group")


def as_function(group, f) -> np.ndarray:
    """Coerce dict / GroupSet / dense array to an int64 vector over codes."""
    if isinstance(f, GroupSet):
        if f.group != group:
            raise ValueError("set lives in a different group")
        out = np.zeros(group.order, dtype=np.int64)
        out[f.codes] = 1
        return out
    if isinstance(f, dict):
        out = np.zeros(group.order, dtype=np.int64)
        for g, v in f.items():
            out[group.encode(g)] += int(v)
        return out
    arr = np.asarray(f)
    if arr.shape != (group.order,):
        raise ValueError("function vector has wrong length")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("integer-valued functions only")
    return arr.astype(np.int64)


def _heis_marginal(group: HeisenbergGroup, f: np.ndarray) -> np.ndarray:
    p = group.p
    delta = np.zeros((p, p), dtype=np.int64)  # indexed [x, y]
    tab = _tables(group)
    np.add.at(delta, (tab.x, tab.y), f)
    return delta


def fourier_transform(group, f) -> SpectrumBundle:
    """F f(pi) = sum_g f(g) pi(g), exactly, for every irreducible."""
    f = as_function(group, f)
    tab = _tables(group)
    p = group.p
    if isinstance(group, HeisenbergGroup):
        delta = _heis_marginal(group, f)
        one = np.zeros((p, p, p), dtype=np.int64)
        gx, gy = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
        for u in range(p):
            for v in range(p):
                idx = ((u * gx + v * gy) % p).ravel()
                np.add.at(one[u, v], idx, delta.ravel())
        rows = np.broadcast_to(np.arange(p)[None, :], tab.cols.shape)
        weights = np.broadcast_to(f[:, None], tab.cols.shape)
        big = []
        for lam in range(1, p):
            codes2 = tab.twists[lam - 1]
            coeffs = np.zeros((p, p, p), dtype=np.int64)
            np.add.at(coeffs, (rows, tab.cols[codes2], tab.exps[codes2]), weights)
            big.append(RepMatrix(p, coeffs))
        return SpectrumBundle(group, one, tuple(big))
    if isinstance(group, AffineGroup):
        q = p - 1
        delta = np.zeros(q, dtype=np.int64)  # indexed by ind(a)
        np.add.at(delta, tab.ind, f)
        one = np.zeros((q, q), dtype=np.int64)
        for j in range(q):
            idx = (j * np.arange(q)) % q
            np.add.at(one[j], idx, delta)
        coeffs = np.zeros((q, q, p), dtype=np.int64)
        rows = np.broadcast_to(np.arange(q)[None, :], tab.cols.shape)
        weights = np.broadcast_to(f[:, None], tab.cols.shape)
        np.add.at(coeffs, (rows, tab.cols, tab.exps), weights)
        return SpectrumBundle(group, one, (RepMatrix(p, coeffs),))
    raise ValueError("unsupported group")


def _heis_one_dim_part(group: HeisenbergGroup, one: np.ndarray) -> np.ndarray:
    """sum_{u,v} Ff(chi_uv) chi_uv(g^{-1}) as coeff vectors, for every code."""
    p = group.p
    gx, gy = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    tgrid = np.arange(p)[None, None, :]
    acc = np.zeros((p, p, p), dtype=np.int64)  # [x, y, t]
    for u in range(p):
        for v in range(p):
            shift = ((u * gx + v * gy) % p)[:, :, None]
            acc += one[u, v][(tgrid + shift) % p]
    tab = _tables(group)
    return acc[tab.x, tab.y]  # (|G|, p)


def _big_hs_all_codes(order: int, coeffs: np.ndarray, cols: np.ndarray, exps: np.ndarray):
    """<A, pi(g)> for every g given pi(g)'s monomial tables; returns (|G|, order)."""
    ncodes, dim = cols.shape
    rows = np.arange(dim)
    gathered = coeffs[rows[None, :, None], cols[:, :, None], np.arange(order)[None, None, :]]
    out = np.zeros((ncodes, order), dtype=np.int64)
    tindex = (np.arange(order)[None, None, :] - exps[:, :, None]) % order
    gindex = np.broadcast_to(np.arange(ncodes)[:, None, None], tindex.shape)
    np.add.at(out, (gindex, tindex), gathered)
    return out


def fourier_invert(bundle: SpectrumBundle) -> np.ndarray:
    """f(g) = |G|^{-1} sum_pi d_pi <Ff(pi), pi(g^{-1})>_HS, exactly.

    Raises ValueError when the reconstruction is not integral (corrupted
    bundle).
    """
    group = bundle.group
    tab = _tables(group)
    order = group.order
    p = group.p
    if isinstance(group, HeisenbergGroup):
        total = _heis_one_dim_part(group, bundle.one_dim).astype(np.int64)
        for lam in range(1, p):
            codes2 = tab.twists[lam - 1][tab.invs]
            total += p * _big_hs_all_codes(
                p, bundle.big[lam - 1].coeffs, tab.cols[codes2], tab.exps[codes2]
            )
        red = reduce_cyclo(total, p)
    else:
        q = p - 1
        one = bundle.one_dim
        ind_inv = tab.ind[tab.invs]
        o1 = np.zeros((order, q), dtype=np.int64)
        ugrid = np.arange(q)[None, :]
        for j in range(q):
            o1 += one[j][(ugrid + j * ind_inv[:, None]) % q]
        big = _big_hs_all_codes(
            p, bundle.big[0].coeffs, tab.cols[tab.invs], tab.exps[tab.invs]
        )
        n_mixed = p * q
        total = embed_order(o1, q, n_mixed) + q * embed_order(big, p, n_mixed)
        red = reduce_cyclo(total, n_mixed)
    if np.any(red[:, 1:]):
        raise ValueError("non-integral reconstruction: corrupted bundle")
    vals = red[:, 0]
    if np.any(vals % order):
        raise ValueError("non-integral reconstruction: corrupted bundle")
    return (vals // order).astype(np.int64)


def convolve(group, f, g) -> np.ndarray:
    """(f*g)(x) = sum_y f(y) g(y^{-1} x), exact integers."""
    f = as_function(group, f)
    g = as_function(group, g)
    if group.order > _CONV_TABLE_LIMIT:
        raise ValueError("group too large for dense convolution")
    table = _mul_table(group)
    out = np.zeros(group.order, dtype=np.int64)
    np.add.at(out, table, f[:, None] * g[None, :])
    return out


@lru_cache(maxsize=None)
def _mul_table(group) -> np.ndarray:
    codes = np.arange(group.order, dtype=np.int64)
    rows = [group.mul_codes(np.full(group.order, c, dtype=np.int64), codes) for c in codes]
    table = np.stack(rows)  # table[y, u] = code of y*u
    table.flags.writeable = False
    return table


def _one_dim_energy_vec(one: np.ndarray) -> np.ndarray:
    """sum over scalar coefficients of |c|^2 as a coeff vector."""
    flat = one.reshape(-1, one.shape[-1])
    m = cyclo_mul_vecs(flat, cyclo_conj_vecs(flat))
    return np.asarray(m.sum(axis=0))


def _hs_norm_vec(coeffs: np.ndarray) -> np.ndarray:
    flat = coeffs.reshape(-1, coeffs.shape[-1])
    return np.asarray(cyclo_mul_vecs(flat, cyclo_conj_vecs(flat)).sum(axis=0))


def parseval_residual(group, f, bundle: SpectrumBundle | None = None) -> int:
    """|G| sum f^2 - sum_pi d_pi ||Ff(pi)||_HS^2, exactly; 0 iff the identity holds.

    When a corrupted bundle makes the spectral side irrational, the residual
    still reports nonzero: the irrational part contributes its L1 coefficient
    mass.
    """
    f = as_function(group, f)
    if bundle is None:
        bundle = fourier_transform(group, f)
    p = group.p
    if isinstance(group, HeisenbergGroup):
        vec = _one_dim_energy_vec(bundle.one_dim, p, 1)
        for mat in bundle.big:
            vec = vec + p * _hs_norm_vec(mat.coeffs)
        red = reduce_cyclo(vec, p)
    else:
        q = p - 1
        vec1 = _one_dim_energy_vec(bundle.one_dim, q, 1)
        vecb = q * _hs_norm_vec(bundle.big[0].coeffs)
        n_mixed = p * q
        red = reduce_cyclo(
            embed_order(vec1, q, n_mixed) + embed_order(vecb, p, n_mixed), n_mixed
        )
    lhs = int(group.order) * int(np.dot(f, f))
    spectral = int(red[0])
    residual = lhs - spectral
    tail = int(np.abs(red[1:]).sum())
    return residual if tail == 0 else (residual if residual else tail)


def group_energy_via_fourier(A: GroupSet) -> int:
    """E(A,A) through the spectrum: |G| E = sum_pi d_pi ||Ff(pi) Ff(pi)*||^2."""
    group = A.group
    bundle = fourier_transform(group, A)
    p = group.p
    if isinstance(group, HeisenbergGroup):
        flat = bundle.one_dim.reshape(-1, p)
        m = cyclo_mul_vecs(flat, cyclo_conj_vecs(flat))
        vec = np.asarray(cyclo_mul_vecs(m, m).sum(axis=0))
        for mat in bundle.big:
            prod = cyclo_matmul(mat.coeffs, cyclo_conj_vecs(mat.coeffs.transpose(1, 0, 2)))
            vec = vec + p * _hs_norm_vec(prod)
        red = reduce_cyclo(vec, p)
        n_mixed = p
    else:
        q = p - 1
        flat = bundle.one_dim.reshape(-1, q)
        m = cyclo_mul_vecs(flat, cyclo_conj_vecs(flat))
        vec1 = np.asarray(cyclo_mul_vecs(m, m).sum(axis=0))
        mat = bundle.big[0]
        prod = cyclo_matmul(mat.coeffs, cyclo_conj_vecs(mat.coeffs.transpose(1, 0, 2)))
        vecb = q * _hs_norm_vec(prod)
        n_mixed = p * q
        red = reduce_cyclo(
            embed_order(vec1, q, n_mixed) + embed_order(vecb, p, n_mixed), n_mixed
        )
    if np.any(red[1:]):
        raise ArithmeticError("Fourier-side energy is not a rational integer")
    total = int(red[0])
    if total % group.order:
        raise ArithmeticError("Fourier-side energy not divisible by |G|")
    return total // group.order


def split_reconstruction(group, f, bundle: SpectrumBundle | None = None) -> np.ndarray:
    """Reconstruct f from the centre-quotient marginal plus the large
    representations only: delta/p + sum_lam <Ff(pi_lam), pi_lam(g^{-1})>/p^2
    for H_1 (the lam-sum is required for exactness), and delta/p +
    <Ff(pi), pi(g^{-1})>/p for Aff."""
    f = as_function(group, f)
    if bundle is None:
        bundle = fourier_transform(group, f)
    tab = _tables(group)
    p = group.p
    if isinstance(group, HeisenbergGroup):
        delta = _heis_marginal(group, f)
        marg = delta[tab.x, tab.y].astype(np.int64)  # (|G|,)
        total = np.zeros((group.order, p), dtype=np.int64)
        for lam in range(1, p):
            codes2 = tab.twists[lam - 1][tab.invs]
            total += _big_hs_all_codes(
                p, bundle.big[lam - 1].coeffs, tab.cols[codes2], tab.exps[codes2]
            )
        red = reduce_cyclo(total, p)
        if np.any(red[:, 1:]):
            raise ValueError("split form is not integral")
        scaled = marg * p + red[:, 0]  # common denominator p^2
        if np.any(scaled % (p * p)):
            raise ValueError("split form is not integral")
        return (scaled // (p * p)).astype(np.int64)
    q = p - 1
    delta = np.zeros(q, dtype=np.int64)
    np.add.at(delta, tab.ind, f)
    marg = delta[tab.ind]
    big = _big_hs_all_codes(p, bundle.big[0].coeffs, tab.cols[tab.invs], tab.exps[tab.invs])
    red = reduce_cyclo(big, p)
    if np.any(red[:, 1:]):
        raise ValueError("split form is not integral")
    scaled = marg + red[:, 0]
    if np.any(scaled % p):
        raise ValueError("split form is not integral")
    return (scaled // p).astype(np.int64)
