"""Permutations, partitions, cycle types and sparse subset vectors.

Points are 1-based, as in {1, ..., n}.  A subset A of {1..n} is stored as an
integer bitmask with bit ``x - 1`` set for every ``x`` in A.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from ._echelon import Echelon

#: Largest ambient degree a bitmask subset may live in.
MAX_DEGREE = 24
#: Largest n for which operations enumerate all of S_n.
GROUP_ENUMERATION_CAP = 8
#: Largest n for character-only operations (dense class tables).
CHARACTER_CAP = 10

Partition = tuple


class DegreeError(ValueError):
    """A degree is outside the documented enumeration caps."""


def check_group_cap(n: int) -> None:
    if n > GROUP_ENUMERATION_CAP:
        raise DegreeError(
            f"n={n} exceeds the brute-force group cap n <= {GROUP_ENUMERATION_CAP}")


def check_character_cap(n: int) -> None:
    if n > CHARACTER_CAP:
        raise DegreeError(
            f"n={n} exceeds the character cap n <= {CHARACTER_CAP}")


# --------------------------------------------------------------------------
# permutations

@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs} is not a permutation of 1..{len(imgs)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(p * q)(x) == p(q(x))``."""
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return _perm(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images, 1):
            inv[y - 1] = x
        return _perm(tuple(inv))

    def cycles(self) -> list[tuple]:
        seen = set()
        out = []
        for x in range(1, self.n + 1):
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = self(x)
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self(y)
            out.append(tuple(cyc))
        return out

    def extend(self, m: int) -> "Permutation":
        """The same permutation viewed in S_m (m >= n), fixing n+1..m."""
        if m < self.n:
            raise ValueError("cannot restrict a permutation")
        return _perm(self.images + tuple(range(self.n + 1, m + 1)))

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def _perm(images: tuple) -> Permutation:
    # trusted constructor, skips validation
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def identity(n: int) -> Permutation:
    return _perm(tuple(range(1, n + 1)))


def from_cycles(n: int, *cycles: Sequence[int]) -> Permutation:
    """Build a permutation of {1..n} from disjoint cycles, e.g. ``(1, 2)``."""
    img = list(range(1, n + 1))
    for cyc in cycles:
        if any(not 1 <= a <= n for a in cyc):
            raise ValueError(f"cycle {tuple(cyc)} leaves 1..{n}")
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            img[a - 1] = b
    return Permutation(tuple(img))


def all_permutations(n: int, fixed: int = 0) -> Iterator[Permutation]:
    """Every permutation of {1..n} fixing the points 1..``fixed``."""
    head = tuple(range(1, fixed + 1))
    for tail in itertools.permutations(range(fixed + 1, n + 1)):
        yield _perm(head + tail)


def generators(n: int) -> list[Permutation]:
    """A generating set of S_n: the transposition (1 2) and the n-cycle."""
    if n < 2:
        return []
    gens = [from_cycles(n, (1, 2))]
    if n > 2:
        gens.append(from_cycles(n, tuple(range(1, n + 1))))
    return gens


# --------------------------------------------------------------------------
# partitions and cycle types

def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        a >= b for a, b in zip(parts, parts[1:]))


@dataclass(frozen=True, order=True)
class CycleType:
    """Cycle counts ``(i_1, ..., i_n)``: ``i_q`` cycles of length q."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise ValueError("negative cycle count")
        if sum(q * c for q, c in enumerate(counts, 1)) != len(counts):
            raise ValueError(f"{counts} does not describe a permutation of "
                             f"{len(counts)} points")

    @property
    def n(self) -> int:
        return len(self.counts)

    def i(self, q: int) -> int:
        """Number of cycles of length q (0 beyond n)."""
        return self.counts[q - 1] if 1 <= q <= self.n else 0

    @classmethod
    def from_partition(cls, parts: Sequence[int]) -> "CycleType":
        n = sum(parts)
        counts = [0] * n
        for p in parts:
            counts[p - 1] += 1
        return cls(tuple(counts))

    def partition(self) -> Partition:
        out = []
        for q in range(self.n, 0, -1):
            out.extend([q] * self.i(q))
        return tuple(out)

    def representative(self) -> Permutation:
        """A permutation of this type with consecutive cycles, longest first."""
        cycles = []
        start = 1
        for q in self.partition():
            cycles.append(tuple(range(start, start + q)))
            start += q
        return from_cycles(self.n, *cycles)

    def centralizer_order(self) -> int:
        out = 1
        for q, c in enumerate(self.counts, 1):
            out *= q ** c * factorial(c)
        return out

    def __str__(self):
        inner = ", ".join(f"i_{q}={c}" for q, c in enumerate(self.counts, 1) if c)
        return f"({inner})"


def cycle_type(p: Permutation) -> CycleType:
    counts = [0] * p.n
    for c in p.cycles():
        counts[len(c) - 1] += 1
    return CycleType(tuple(counts))


def conjugacy_classes(n: int) -> list[tuple[CycleType, int]]:
    """``(cycle type, class size)`` for every class of S_n, in partition order."""
    return list(_classes(n))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple:
    nf = factorial(n)
    out = []
    for lam in partitions(n):
        ct = CycleType.from_partition(lam)
        out.append((ct, nf // ct.centralizer_order()))
    return tuple(out)


# --------------------------------------------------------------------------
# stable labels

@dataclass(frozen=True)
class StableLabel:
    """``V(mu)_n``: the irreducible indexed by ``(n - |mu|, mu_1, ..., mu_s)``."""

    mu: tuple
    n: int

    def __post_init__(self):
        mu = tuple(p for p in self.mu if p)
        object.__setattr__(self, "mu", mu)
        if not is_partition(mu):
            raise ValueError(f"{mu} is not a partition")
        first = self.n - sum(mu)
        if mu and first < mu[0]:
            raise ValueError(f"unstable label: V{mu}_{self.n} needs "
                             f"n - |mu| >= mu_1")
        if first < 0:
            raise ValueError(f"unstable label: |mu| > n for V{mu}_{self.n}")

    @property
    def partition(self) -> Partition:
        return from_stable(self)

    def __str__(self):
        return f"V({','.join(map(str, self.mu)) or '0'})_{self.n}"


def to_stable(lam: Sequence[int], n: int) -> StableLabel:
    lam = tuple(p for p in lam if p)
    if not is_partition(lam) or sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    return StableLabel(lam[1:], n)


def from_stable(sl: StableLabel) -> Partition:
    first = sl.n - sum(sl.mu)
    return ((first,) if first else ()) + sl.mu


# --------------------------------------------------------------------------
# subsets as bitmasks

def mask_of(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        if x < 1:
            raise ValueError(f"point {x} is not positive")
        m |= 1 << (x - 1)
    return m


def points_of(mask: int) -> tuple:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def subsets_of_size(n: int, k: int, within: int | None = None) -> list[int]:
    """k-subsets of {1..n} (or of ``within``) in bitmask numeric order."""
    pts = points_of(full_mask(n) if within is None else within)
    if k < 0 or k > len(pts):
        return []
    return sorted(mask_of(c) for c in itertools.combinations(pts, k))


def act_subset(p: Permutation, a: int) -> int:
    """The image ``p(A)`` of a subset."""
    out = 0
    img = p.images
    x = 0
    while a:
        if a & 1:
            out |= 1 << (img[x] - 1)
        a >>= 1
        x += 1
    return out


def format_subset(mask: int) -> str:
    return "{" + ",".join(map(str, points_of(mask))) + "}"


# --------------------------------------------------------------------------
# sparse vectors

class SparseVector:
    """Immutable finite linear combination with exact rational coefficients.

    Subclasses fix the key type and ambient degree ``n``.  Zero coefficients
    are never stored; ``terms()`` iterates in sorted key order.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for key, c in dict(terms or {}).items():
            self._check_key(key)
            c = Fraction(c)
            if c:
                clean[key] = c
        self._terms = clean

    def _check_key(self, key) -> None:
        pass

    @classmethod
    def _raw(cls, n: int, terms: dict):
        v = object.__new__(cls)
        v.n = n
        v._terms = terms
        return v

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} "
                            f"with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")

    def terms(self) -> list[tuple]:
        return sorted(self._terms.items())

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def support(self) -> list:
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self._terms.items())))

    def __add__(self, other):
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._raw(self.n, out)

    def __neg__(self):
        return self._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, SparseVector):
            return NotImplemented
        s = Fraction(scalar)
        if not s:
            return self._raw(self.n, {})
        return self._raw(self.n, {k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def _fmt_key(self, key) -> str:
        return str(key)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.terms():
            body = self._fmt_key(k)
            if c == 1:
                parts.append(f"+ {body}")
            elif c == -1:
                parts.append(f"- {body}")
            elif c < 0:
                parts.append(f"- {-c}*{body}")
            else:
                parts.append(f"+ {c}*{body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class SubsetVector(SparseVector):
    """An element of the linearized power set of {1..n}."""

    __slots__ = ()

    def _check_key(self, key) -> None:
        if not isinstance(key, int) or key < 0 or key >> self.n:
            raise ValueError(f"key {key!r} is not a subset of 1..{self.n}")

    def __init__(self, n: int, terms=None):
        if n > MAX_DEGREE:
            raise DegreeError(f"n={n} exceeds the bitmask cap {MAX_DEGREE}")
        super().__init__(n, terms)

    @classmethod
    def basis(cls, n: int, mask: int) -> "SubsetVector":
        return cls(n, {mask: 1})

    @classmethod
    def from_sets(cls, n: int, sets: dict | Iterable) -> "SubsetVector":
        """From ``{frozenset-like: coeff}`` or an iterable of point sets."""
        if isinstance(sets, dict):
            return cls(n, {mask_of(s): c for s, c in sets.items()})
        out: dict = {}
        for s in sets:
            m = mask_of(s)
            out[m] = out.get(m, 0) + 1
        return cls(n, out)

    def with_degree(self, m: int) -> "SubsetVector":
        return SubsetVector(m, self._terms)

    def _fmt_key(self, key) -> str:
        return format_subset(key)


def act_vector(p: Permutation, v: SubsetVector) -> SubsetVector:
    """Linear extension of ``A -> p(A)``."""
    if p.n != v.n:
        raise ValueError(f"degree mismatch: permutation of {p.n}, vector of {v.n}")
    return SubsetVector._raw(v.n, {act_subset(p, a): c for a, c in v._terms.items()})


def inner_product(v: SparseVector, w: SparseVector) -> Fraction:
    """Standard form in which the key basis is orthonormal."""
    v._same(w)
    if len(w) < len(v):
        v, w = w, v
    wt = w._terms
    return sum((c * wt[k] for k, c in v._terms.items() if k in wt), Fraction(0))


def rank_and_span(vs: Sequence[SparseVector]) -> tuple[int, list]:
    """Rank of ``vs`` and the reduced echelon basis of its span.

    Rows are normalized to leading coefficient 1; the leading key of a row is
    its smallest key.
    """
    vs = list(vs)
    if not vs:
        return 0, []
    cls, n = type(vs[0]), vs[0].n
    for v in vs[1:]:
        vs[0]._same(v)
    ech = Echelon(v._terms for v in vs)
    basis = [cls._raw(n, row) for row in ech.rows()]
    return len(basis), basis


def echelon_of(vs: Iterable[SparseVector]) -> Echelon:
    return Echelon(v._terms for v in vs)


def in_span(ech: Echelon, v: SparseVector) -> bool:
    return ech.contains(v._terms)
