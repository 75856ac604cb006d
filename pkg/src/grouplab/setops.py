"""Finite group subsets: products, commutators, bricks, coverage, witnesses.

A `GroupSet` is an immutable subset stored as a sorted unique int64 array of
canonical element codes.  Below `DENSE_LIMIT` group order a dense boolean
membership table backs O(1) lookups and the coverage counters; larger groups
fall back to binary search on the sorted codes.  Product-style operations
enumerate code pairs in blocks, so peak memory stays bounded regardless of
|A||B|.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .field import check_odd_prime
from .groups import AffineGroup, CyclicGroup, HeisenbergGroup

DENSE_LIMIT = 1 << 26
_PAIR_BLOCK = 1 << 22
MAX_TRIPLE_LOOP = 10**8


class GroupSet:
    """Immutable subset of a finite group, keyed by canonical element codes."""

    __slots__ = ("group", "codes", "_mask")

    def __init__(self, group, codes):
        codes = np.unique(np.asarray(codes, dtype=np.int64))
        if len(codes) and (codes[0] < 0 or codes[-1] >= group.order):
            raise ValueError("element code out of range for the group")
        codes.flags.writeable = False
        self.group = group
        self.codes = codes
        self._mask = None

    # -- constructors ----------------------------------------------------------
    @classmethod
    def from_elements(cls, group, elements) -> "GroupSet":
        return cls(group, [group.encode(g) for g in elements])

    @classmethod
    def empty(cls, group) -> "GroupSet":
        return cls(group, np.empty(0, dtype=np.int64))

    @classmethod
    def full(cls, group) -> "GroupSet":
        return cls(group, np.arange(group.order, dtype=np.int64))

    @classmethod
    def singleton(cls, group, element) -> "GroupSet":
        return cls(group, [group.encode(element)])

    # -- queries ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self):
        return (self.group.decode(c) for c in self.codes)

    def __contains__(self, element) -> bool:
        return bool(self.contains_codes(np.array([self.group.encode(element)]))[0])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSet)
            and other.group == self.group
            and np.array_equal(other.codes, self.codes)
        )

    def __hash__(self):
        return hash((self.group, self.codes.tobytes()))

    def __repr__(self):
        return f"GroupSet({self.group!r}, |A|={len(self)})"

    def mask(self) -> np.ndarray:
        """Dense boolean membership table (only below DENSE_LIMIT)."""
        if self.group.order > DENSE_LIMIT:
            raise ValueError("group too large for dense membership")
        if self._mask is None:
            m = np.zeros(self.group.order, dtype=bool)
            m[self.codes] = True
            m.flags.writeable = False
            self._mask = m
        return self._mask

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.group.order <= DENSE_LIMIT:
            return self.mask()[codes]
        if not len(self.codes):
            return np.zeros(codes.shape, dtype=bool)
        pos = np.clip(np.searchsorted(self.codes, codes), 0, len(self.codes) - 1)
        return self.codes[pos] == codes

    def issubset(self, other: "GroupSet") -> bool:
        _same_group(self, other)
        return bool(np.all(other.contains_codes(self.codes))) if len(self) else True

    def inverse(self) -> "GroupSet":
        """The set of inverses A^{-1}."""
        if not len(self):
            return self
        return GroupSet(self.group, self.group.inv_codes(self.codes))


def _same_group(a: GroupSet, b: GroupSet) -> None:
    if a.group != b.group:
        raise ValueError("sets live in different groups")


def _pairwise_codes(group, a: np.ndarray, b: np.ndarray, op) -> np.ndarray:
    """Unique op(x, y) over the code product a x b, blockwise."""
    if len(a) == 0 or len(b) == 0:
        return np.empty(0, dtype=np.int64)
    chunks = []
    rows = max(1, _PAIR_BLOCK // max(len(b), 1))
    for start in range(0, len(a), rows):
        block = a[start : start + rows]
        left = np.repeat(block, len(b))
        right = np.tile(b, len(block))
        chunks.append(np.unique(op(left, right)))
    return np.unique(np.concatenate(chunks)) if len(chunks) > 1 else chunks[0]


def product_set(A: GroupSet, B: GroupSet) -> GroupSet:
    """AB = {ab : a in A, b in B}."""
    _same_group(A, B)
    return GroupSet(A.group, _pairwise_codes(A.group, A.codes, B.codes, A.group.mul_codes))


def power_set(A: GroupSet, k: int) -> GroupSet:
    """A^k by repeated product; A^1 = A."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = A
    for _ in range(k - 1):
        out = product_set(out, A)
    return out


def signed_product(A: GroupSet, signs) -> GroupSet:
    """All products a_1^{e_1} ... a_m^{e_m} with independent a_i in A."""
    signs = tuple(int(s) for s in signs)
    if not signs or any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be a nonempty +-1 sequence")
    if not len(A):
        return A
    out = None
    for s in signs:
        factor = A if s == 1 else A.inverse()
        out = factor if out is None else product_set(out, factor)
    return out


def commutator_set(A: GroupSet, B: GroupSet) -> GroupSet:
    """[A,B] = {aba^{-1}b^{-1} : a in A, b in B}."""
    _same_group(A, B)
    return GroupSet(
        A.group, _pairwise_codes(A.group, A.codes, B.codes, A.group.commutator_codes)
    )


def centralizer(group, g) -> GroupSet:
    """All elements commuting with g, by exhaustive enumeration."""
    if group.order > DENSE_LIMIT:
        raise ValueError("group too large to enumerate")
    codes = np.arange(group.order, dtype=np.int64)
    gcode = np.full(group.order, group.encode(g), dtype=np.int64)
    comm = group.commutator_codes(codes, gcode)
    identity_code = group.encode(group.identity)
    return GroupSet(group, codes[comm == identity_code])


# ---------------------------------------------------------------------------
# bricks and coverage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BrickSpec:
    """Cartesian brick {[x,y,z] : x_i in X_i, y_i in Y_i, z in Z} in H_n(F_p)."""

    p: int
    xs: tuple[tuple[int, ...], ...]
    ys: tuple[tuple[int, ...], ...]
    z: tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        if len(self.xs) != len(self.ys):
            raise ValueError("x and y factor counts differ")
        for fac in (*self.xs, *self.ys, self.z):
            for v in fac:
                if not 0 <= int(v) < self.p:
                    raise ValueError("brick coordinate out of range")

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def size(self) -> int:
        out = len(self.z)
        for fac in self.xs + self.ys:
            out *= len(fac)
        return out


def brick(spec: BrickSpec) -> GroupSet:
    """Materialise a brick; |result| = prod |X_i| prod |Y_i| |Z|."""
    group = HeisenbergGroup(spec.p, spec.n)
    if spec.size == 0:
        return GroupSet.empty(group)
    grids = np.meshgrid(
        *[np.asarray(sorted(set(f)), dtype=np.int64) for f in spec.xs],
        *[np.asarray(sorted(set(f)), dtype=np.int64) for f in spec.ys],
        np.asarray(sorted(set(spec.z)), dtype=np.int64),
        indexing="ij",
    )
    flat = [g.ravel() for g in grids]
    n = spec.n
    x = np.stack(flat[:n], axis=1)
    y = np.stack(flat[n : 2 * n], axis=1)
    z = flat[2 * n]
    return GroupSet(group, group.encode_arrays(x, y, z))


def center_coverage(S: GroupSet) -> tuple[int, bool]:
    """How much of the centre line [0,0,F_p] (resp. the coset (1,F_p)) S contains."""
    group = S.group
    if not isinstance(group, (HeisenbergGroup, AffineGroup)):
        raise ValueError("centre-line coverage needs a Heisenberg or affine group")
    line = group.center_codes()
    count = int(np.count_nonzero(S.contains_codes(line)))
    return count, count == group.p


def coset_coverage(S: GroupSet) -> int:
    """Number of (x,y) fibers whose full centre coset [x,y,F_p] lies in S."""
    if not isinstance(S.group, HeisenbergGroup):
        raise ValueError("coset coverage is a Heisenberg-group notion")
    p = S.group.p
    if not len(S):
        return 0
    fibers = S.codes // p  # codes with a common (x,y) part differ only in z
    _, counts = np.unique(fibers, return_counts=True)
    return int(np.count_nonzero(counts == p))


# ---------------------------------------------------------------------------
# named constructions
# ---------------------------------------------------------------------------

def freiman_base_set(p: int, alpha) -> GroupSet:
    """Low-doubling base set {[x,y,z] : x in {0..ceil(p^alpha)}, y,z in F_p} in H_1.

    The x-interval is an integer interval: the constructor rejects parameters
    for which x-sums would wrap mod p (2*ceil(p^alpha) >= p), because the exact
    doubling identity |A A| = 2|A| - p^2 needs wrap-free sums.
    """
    check_odd_prime(p)
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    raw = p**alpha
    m = int(math.ceil(raw - 1e-9))
    if 2 * m >= p:
        raise ValueError(
            f"wrap-around: 2*ceil(p^alpha) = {2 * m} >= p = {p}; choose a smaller alpha"
        )
    group = HeisenbergGroup(p, 1)
    xs = np.repeat(np.arange(m + 1, dtype=np.int64), p * p)
    yz = np.tile(np.arange(p * p, dtype=np.int64), m + 1)
    codes = group.encode_arrays(xs[:, None], (yz // p)[:, None], yz % p)
    return GroupSet(group, codes)


def extremal_witness(kind: str, p: int, n: int = 1, k: int | None = None) -> GroupSet:
    """Sets whose k-fold signed products provably miss part of the centre line.

    ``heisenberg_progression``: [0, F_p^n, P] with P = {0..L-1} sized so that
    signed sums of up to max(n, k) progression steps span less than p.
    ``affine_diagonal``: the dilation subgroup {(a, 0)}, closed under products,
    which meets (1, F_p) in (1,0) alone.
    """
    check_odd_prime(p)
    if kind == "affine_diagonal":
        group = AffineGroup(p)
        a = np.arange(1, p, dtype=np.int64)
        return GroupSet(group, group.encode_arrays(a, np.zeros(p - 1, dtype=np.int64)))
    if kind != "heisenberg_progression":
        raise ValueError(f"unknown witness kind {kind!r}")
    reach = max(int(n), int(k) if k else int(n))
    length = -(-p // (2 * reach)) - 1  # ceil(p/(2*reach)) - 1
    if length < 1:
        raise ValueError("p too small for a nonempty progression")
    group = HeisenbergGroup(p, n)
    ycount = p**n
    y_codes = np.arange(ycount, dtype=np.int64)
    z = np.arange(length, dtype=np.int64)
    codes = (np.repeat(y_codes, length) * p + np.tile(z, ycount)).astype(np.int64)
    return GroupSet(group, codes)  # x-digits zero: code = z + p*(y digits)


def triple_commutator_trivial(X: GroupSet) -> bool:
    """True iff [[a;b];c] = e for all a,b,c in X."""
    size = len(X)
    if size**3 > MAX_TRIPLE_LOOP:
        raise ValueError("set too large for the triple-commutator check")
    if size == 0:
        return True
    group = X.group
    inner = commutator_set(X, X)
    outer = commutator_set(inner, X)
    identity_code = group.encode(group.identity)
    return len(outer) == 1 and int(outer.codes[0]) == identity_code


def random_subset(group, size: int, rng: np.random.Generator) -> GroupSet:
    """Uniform random subset of the given cardinality."""
    if not 0 <= size <= group.order:
        raise ValueError(f"size {size} out of range for |G| = {group.order}")
    return GroupSet(group, rng.choice(group.order, size=size, replace=False))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def groupset_to_json(S: GroupSet) -> dict:
    group = S.group
    doc = {"group": group.name, "p": getattr(group, "p", None), "codes": [int(c) for c in S.codes]}
    if isinstance(group, HeisenbergGroup):
        doc["n"] = group.n
    if isinstance(group, CyclicGroup):
        doc["p"] = group.m
    return doc


def groupset_from_json(doc) -> GroupSet:
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc["group"]
    if kind == "H":
        group = HeisenbergGroup(int(doc["p"]), int(doc.get("n", 1)))
    elif kind == "Aff":
        group = AffineGroup(int(doc["p"]))
    elif kind == "Z":
        group = CyclicGroup(int(doc["p"]))
    else:
        raise ValueError(f"unknown group tag {kind!r}")
    return GroupSet(group, doc["codes"])
