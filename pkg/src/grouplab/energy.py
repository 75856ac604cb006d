"""Exact energy statistics over F_p subsets and group subsets.

Everything is counted through representation-function histograms in
O(|A||B|), never through quadruple loops (those live in the test suite as
independent oracles).  Counts that can exceed int64 (higher moments, k-fold
convolutions) are accumulated in Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import check_odd_prime, inverse_table
from .groups import AffineGroup, HeisenbergGroup
from .setops import DENSE_LIMIT, _PAIR_BLOCK, GroupSet

FIELD_LAWS = ("add", "sub", "mul", "div")


@dataclass(frozen=True)
class Histogram:
    """Dense value -> count table over F_p (length p) or over group codes."""

    p: int
    domain: str  # "field" or "group"
    counts: np.ndarray

    def total(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[int, int]:
        (idx,) = np.nonzero(self.counts)
        return {int(i): int(self.counts[i]) for i in idx}

    def sum_of_squares(self) -> int:
        return sum(int(c) ** 2 for c in self.counts[self.counts != 0])


def _field_array(A, p: int) -> np.ndarray:
    arr = np.unique(np.asarray(sorted(int(a) % p for a in A), dtype=np.int64))
    return arr


def rep_histogram(A, B, law: str, *, p: int | None = None) -> Histogram:
    """r_{A op B}: how often each value arises as a op b.

    Field laws (`add`, `sub`, `mul`, `div`) take F_p subsets plus the modulus;
    `div` silently drops b = 0 pairs.  `group_right_quotient` takes two
    GroupSets and counts a b^{-1}.
    """
    if law == "group_right_quotient":
        if not isinstance(A, GroupSet) or not isinstance(B, GroupSet):
            raise ValueError("group law needs GroupSet operands")
        if A.group != B.group:
            raise ValueError("sets live in different groups")
        group = A.group
        if group.order > DENSE_LIMIT:
            raise ValueError("group too large for a dense histogram")
        counts = np.zeros(group.order, dtype=np.int64)
        if len(A) and len(B):
            binv = group.inv_codes(B.codes)
            rows = max(1, _PAIR_BLOCK // len(binv))
            for start in range(0, len(A.codes), rows):
                block = A.codes[start : start + rows]
                prod = group.mul_codes(np.repeat(block, len(binv)), np.tile(binv, len(block)))
                counts += np.bincount(prod, minlength=group.order)
        return Histogram(getattr(group, "p", group.order), "group", counts)

    if law not in FIELD_LAWS:
        raise ValueError(f"unknown law {law!r}")
    if p is None:
        raise ValueError("field laws need the modulus p")
    check_odd_prime(p)
    a = _field_array(A, p)
    b = _field_array(B, p)
    counts = np.zeros(p, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return Histogram(p, "field", counts)
    if law == "div":
        b = b[b != 0]
        if len(b) == 0:
            return Histogram(p, "field", counts)
        b = inverse_table(p)[b]
        law = "mul"
    left = a[:, None]
    if law == "add":
        vals = (left + b[None, :]) % p
    elif law == "sub":
        vals = (left - b[None, :]) % p
    else:
        vals = (left * b[None, :]) % p
    np.add.at(counts, vals.ravel(), 1)
    return Histogram(p, "field", counts)


def energy(A, B=None, *, law: str = "add", p: int) -> int:
    """E^+(A,B) or E^x(A,B): quadruples with a_1 b_1 = a_2 b_2 under the law."""
    if law not in ("add", "mul"):
        raise ValueError("energy law must be add or mul")
    if B is None:
        B = A
    return rep_histogram(A, B, law, p=p).sum_of_squares()


def indicator(A, p: int) -> np.ndarray:
    """Dense 0/1 vector of an F_p subset."""
    out = np.zeros(p, dtype=np.int64)
    for v in A:
        out[int(v) % p] = 1
    return out


def _weights_vector(weights, p: int) -> list[int]:
    if isinstance(weights, Histogram):
        if weights.domain != "field" or weights.p != p:
            raise ValueError("weights must live over F_p")
        return [int(c) for c in weights.counts]
    if isinstance(weights, dict):
        out = [0] * p
        for v, c in weights.items():
            out[int(v) % p] += int(c)
        return out
    arr = [int(c) for c in weights]
    if len(arr) != p:
        raise ValueError("dense weight vectors must have length p")
    return arr


def t_k(weights, k: int, *, p: int) -> int:
    """Weighted 2k-tuple count: sum_x (k-fold additive convolution)^2.

    `weights` is a Histogram over F_p, a value->weight dict, or a dense
    length-p vector (see `indicator`).  Exact in Python integers; T_2 of an
    indicator equals energy(A, law="add").
    """
    check_odd_prime(p)
    if k < 2:
        raise ValueError("k must be >= 2")
    w = _weights_vector(weights, p)
    if sum(w) < 1:
        raise ValueError("total mass must be >= 1")
    if any(c < 0 for c in w):
        raise ValueError("weights must be nonnegative")
    conv = list(w)
    support = [i for i, c in enumerate(w) if c]
    for _ in range(k - 1):
        nxt = [0] * p
        for i, c in enumerate(conv):
            if c:
                for j in support:
                    nxt[(i + j) % p] += c * w[j]
        conv = nxt
    return sum(c * c for c in conv)


def group_energy(A: GroupSet, B: GroupSet | None = None) -> int:
    """Nonabelian energy: quadruples with a_1 b_1^{-1} = a_2 b_2^{-1}."""
    if B is None:
        B = A
    return rep_histogram(A, B, "group_right_quotient").sum_of_squares()


def marginal_weights(A: GroupSet) -> np.ndarray:
    """Fiber weights over the centre quotient: delta_A(x,y) for Heisenberg
    (indexed by code//p), delta_A(a) for affine (indexed a-1)."""
    group = A.group
    if isinstance(group, HeisenbergGroup):
        out = np.zeros(group.order // group.p, dtype=np.int64)
        if len(A):
            np.add.at(out, A.codes // group.p, 1)
        return out
    if isinstance(group, AffineGroup):
        out = np.zeros(group.p - 1, dtype=np.int64)
        if len(A):
            np.add.at(out, A.codes // group.p, 1)
        return out
    raise ValueError("marginal weights need a Heisenberg or affine set")


def brick_parameter_K(A: GroupSet) -> Fraction:
    """Spread parameter K = |A| / max fiber weight; K = 1 for a single fiber."""
    if not len(A):
        raise ValueError("empty set has no spread parameter")
    return Fraction(len(A), int(marginal_weights(A).max()))


def sigma2_correlation(X, Y, *, p: int) -> int:
    """sum_w r_{X/Y}(w) * r_{(X-X)/(Y-Y)}(w), all four operands as sets."""
    check_odd_prime(p)
    x = set(int(v) % p for v in X)
    y = set(int(v) % p for v in Y)
    r1 = rep_histogram(x, y, "div", p=p).counts
    dx = {(a - b) % p for a in x for b in x}
    dy = {(a - b) % p for a in y for b in y}
    r2 = rep_histogram(dx, dy, "div", p=p).counts
    return int(np.dot(r1, r2))


def mixed_energy_sums(A, *, p: int, multiplicative_fibers: str = "dilate") -> tuple[int, int]:
    """(sum over lam of E^x(A \\cap (lam - A)), sum over lam != 0 of E^+ of the
    multiplicative fiber).

    The multiplicative fiber is A cap lam*A for ``dilate`` (default) or
    A cap lam*A^{-1} for ``dilate_inverse``; the additive sum runs over all
    lam in F_p, the multiplicative one over lam in F_p^*.
    """
    check_odd_prime(p)
    if multiplicative_fibers not in ("dilate", "dilate_inverse"):
        raise ValueError("multiplicative_fibers must be dilate or dilate_inverse")
    base = set(int(v) % p for v in A)
    sum_add = 0
    for lam in range(p):
        fiber = base & {(lam - a) % p for a in base}
        if fiber:
            sum_add += energy(fiber, law="mul", p=p)
    sum_mul = 0
    if multiplicative_fibers == "dilate":
        target = base
    else:
        target = {int(inverse_table(p)[a]) for a in base if a != 0}
    for lam in range(1, p):
        fiber = base & {(lam * a) % p for a in target}
        if fiber:
            sum_mul += energy(fiber, law="add", p=p)
    return sum_add, sum_mul
