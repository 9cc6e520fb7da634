"""Exact character arithmetic for the symmetric groups.

Irreducible characters come from the Murnaghan-Nakayama rule, which is the
single source of truth; the closed-form character polynomials in stable
notation are checked against it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .symcore import (
    CycleType,
    Permutation,
    StableLabel,
    all_permutations,
    check_group_cap,
    conjugacy_classes,
    cycle_type,
    from_stable,
    is_partition,
    partitions,
    to_stable,
)


class NotACharacterError(ValueError):
    """Decomposition produced a non-integral or negative multiplicity."""


# --------------------------------------------------------------------------
# class functions

class CharacterFn:
    """A class function on S_n, stored densely over all cycle types."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict):
        self.n = n
        vals = {}
        for ct, _ in conjugacy_classes(n):
            if ct not in values:
                raise ValueError(f"class function undefined on {ct}")
            vals[ct] = Fraction(values[ct])
        self.values = vals

    @classmethod
    def from_function(cls, n: int, f: Callable[[CycleType], object]) -> "CharacterFn":
        return cls(n, {ct: f(ct) for ct, _ in conjugacy_classes(n)})

    def __call__(self, ct: CycleType) -> Fraction:
        return self.values[ct]

    def _check(self, other: "CharacterFn") -> None:
        if not isinstance(other, CharacterFn):
            raise TypeError("expected a CharacterFn")
        if other.n != self.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return CharacterFn(self.n, {c: v + other.values[c] for c, v in self.values.items()})

    def __sub__(self, other):
        self._check(other)
        return CharacterFn(self.n, {c: v - other.values[c] for c, v in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, CharacterFn):
            self._check(other)
            return CharacterFn(self.n, {c: v * other.values[c] for c, v in self.values.items()})
        s = Fraction(other)
        return CharacterFn(self.n, {c: v * s for c, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CharacterFn):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def degree(self) -> Fraction:
        """Value at the identity."""
        return self.values[CycleType((self.n,) + (0,) * (self.n - 1)) if self.n else CycleType(())]

    def __repr__(self):
        body = ", ".join(f"{c.partition()}: {v}" for c, v in self.values.items())
        return f"CharacterFn(n={self.n}, {{{body}}})"


@dataclass
class MultiplicityTable:
    """Irreducible multiplicities of a module, keyed by partition."""

    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {tuple(lam): int(m) for lam, m in self.entries.items() if m}
        # canonical order: lexicographically decreasing partitions
        self.entries = dict(sorted(self.entries.items(), reverse=True))

    def dimension(self) -> int:
        return sum(m * irreducible_dimension(lam) for lam, m in self.entries.items())

    def stable(self) -> dict:
        """The same table in stable notation, ``{mu: multiplicity}``."""
        return {to_stable(lam, self.n).mu: m for lam, m in self.entries.items()}

    @classmethod
    def from_stable(cls, n: int, entries: dict) -> "MultiplicityTable":
        return cls(n, {from_stable(StableLabel(tuple(mu), n)): m for mu, m in entries.items()})

    def __sub__(self, other: "MultiplicityTable") -> "MultiplicityTable":
        if other.n != self.n:
            raise ValueError("degree mismatch")
        keys = set(self.entries) | set(other.entries)
        diff = {k: self.entries.get(k, 0) - other.entries.get(k, 0) for k in keys}
        if any(v < 0 for v in diff.values()):
            raise NotACharacterError(f"negative multiplicity in difference: {diff}")
        return MultiplicityTable(self.n, diff)

    def format(self, stable: bool = False) -> str:
        if not self.entries:
            return "0"
        parts = []
        for lam, m in self.entries.items():
            if stable:
                mu = to_stable(lam, self.n).mu
                label = f"V({','.join(map(str, mu)) or '0'})_{self.n}"
            else:
                label = f"V({','.join(map(str, lam))})"
            parts.append(label if m == 1 else f"{m}{label}")
        return " + ".join(parts)


# --------------------------------------------------------------------------
# irreducible characters

@lru_cache(maxsize=None)
def _mn(lam: tuple, rho: tuple) -> int:
    # beta-set form of the border-strip recursion: removing a rim hook of
    # length r moves one bead from b to b - r; the sign counts jumped beads
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    length = len(lam)
    beta = [lam[i] + length - 1 - i for i in range(length)]
    beads = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beads:
            continue
        height = sum(1 for x in beta if c < x < b)
        new = sorted((beads - {b}) | {c}, reverse=True)
        shape = tuple(x - (length - 1 - i) for i, x in enumerate(new))
        shape = tuple(p for p in shape if p)
        total += (-1) ** height * _mn(shape, rest)
    return total


def mn_character(lam: Sequence[int], ct: CycleType) -> int:
    """The irreducible character chi_lam at the class ``ct``."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    if sum(lam) != ct.n:
        raise ValueError(f"weight mismatch: |{lam}| = {sum(lam)} but class of S_{ct.n}")
    return _mn(lam, ct.partition())


def irreducible_character(lam: Sequence[int]) -> CharacterFn:
    return _irreducible_character(tuple(lam))


@lru_cache(maxsize=None)
def _irreducible_character(lam: tuple) -> CharacterFn:
    return CharacterFn.from_function(sum(lam), lambda ct: mn_character(lam, ct))


def hook_dimension(lam: Sequence[int]) -> int:
    """dim V_lam by the hook length formula."""
    lam = tuple(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(sum(lam)) // hooks


@lru_cache(maxsize=None)
def irreducible_dimension(lam: tuple) -> int:
    return hook_dimension(lam)


def dim_two_row(n: int, k: int) -> int:
    """dim V_(n-k,k) = C(n,k) - C(n,k-1)."""
    if k < 0 or 2 * k > n:
        raise ValueError(f"need 0 <= k <= n/2, got n={n}, k={k}")
    return comb(n, k) - (comb(n, k - 1) if k else 0)


# --------------------------------------------------------------------------
# closed-form character polynomials in stable notation

def _binom(a: int, b: int) -> int:
    # polynomial binomial coefficient, valid for negative a
    num = 1
    for t in range(b):
        num *= a - t
    return num // factorial(b)


def _row_1(i1, i2, i3, i4):
    return i1 - 1


def _row_11(i1, i2, i3, i4):
    return _binom(i1 - 1, 2) - i2


def _row_2(i1, i2, i3, i4):
    return Fraction(i1 * (i1 - 3), 2) + i2


def _row_3(i1, i2, i3, i4):
    return Fraction(i1 * (i1 - 1) * (i1 - 5), 6) + i2 * (i1 - 1) + i3


def _row_21(i1, i2, i3, i4):
    return Fraction(i1 * (i1 - 2) * (i1 - 4), 3) - i3


def _row_111(i1, i2, i3, i4):
    return _binom(i1 - 1, 3) + i2 * (1 - i1) + i3


def _row_31(i1, i2, i3, i4):
    return (Fraction(i1 * (i1 - 1) * (i1 - 3) * (i1 - 6), 8)
            + i2 * _binom(i1 - 1, 2) - _binom(i2, 2) - i4)


CLOSED_FORMS = {
    (1,): _row_1,
    (1, 1): _row_11,
    (2,): _row_2,
    (3,): _row_3,
    (2, 1): _row_21,
    (1, 1, 1): _row_111,
    (3, 1): _row_31,
}


def closed_form_character(label: StableLabel, ct: CycleType) -> Fraction:
    """Character of V(mu)_n as a polynomial in the cycle counts i_1..i_4."""
    try:
        row = CLOSED_FORMS[label.mu]
    except KeyError:
        raise ValueError(f"no closed form for V{label.mu}") from None
    if ct.n != label.n:
        raise ValueError(f"weight mismatch: label of degree {label.n}, class of S_{ct.n}")
    return Fraction(row(ct.i(1), ct.i(2), ct.i(3), ct.i(4)))


# --------------------------------------------------------------------------
# permutation characters and inner products

def perm_rep_character(fixed_point_counter: Callable[[CycleType], int], n: int) -> CharacterFn:
    """Character of a permutation module: fixed basis elements per class."""
    return CharacterFn.from_function(n, fixed_point_counter)


def subset_fixed_counter(k: int | None = None) -> Callable[[CycleType], int]:
    """Counts k-subsets (all subsets if k is None) fixed by a class representative.

    A subset is fixed exactly when it is a union of cycles.
    """
    def counter(ct: CycleType) -> int:
        # number of ways to pick cycles with total length k: coefficient of
        # t^k in prod_q (1 + t^q)^{i_q}
        poly = [1]
        for q in range(1, ct.n + 1):
            for _ in range(ct.i(q)):
                nxt = poly + [0] * q
                for d, c in enumerate(poly):
                    nxt[d + q] += c
                poly = nxt
        if k is None:
            return sum(poly)
        return poly[k] if 0 <= k < len(poly) else 0
    return counter


def powerset_character(n: int, k: int | None = None) -> CharacterFn:
    """Character of LP_k(n), or of LP(n) when k is None."""
    return perm_rep_character(subset_fixed_counter(k), n)


def character_inner_product(f: CharacterFn, g: CharacterFn) -> Fraction:
    f._check(g)
    total = Fraction(0)
    for ct, size in conjugacy_classes(f.n):
        total += size * f.values[ct] * g.values[ct]
    return total / factorial(f.n)


def decompose_character(f: CharacterFn) -> MultiplicityTable:
    """Multiplicities <f, chi_lam>; raises NotACharacterError on bad values."""
    entries = {}
    recon = CharacterFn(f.n, {ct: 0 for ct in f.values})
    for lam in partitions(f.n):
        chi = irreducible_character(lam)
        m = character_inner_product(f, chi)
        if m.denominator != 1 or m < 0:
            raise NotACharacterError(
                f"multiplicity of V{lam} is {m}: input is not a character")
        if m:
            entries[lam] = int(m)
            recon = recon + chi * m
    if recon != f:
        raise NotACharacterError("decomposition does not reconstruct the input")
    return MultiplicityTable(f.n, entries)


# --------------------------------------------------------------------------
# power maps and exterior squares

def power_map(ct: CycleType) -> CycleType:
    """Cycle type of pi^2 for pi in class ``ct``."""
    counts = [0] * ct.n
    for q in range(1, ct.n + 1):
        c = ct.i(q)
        if not c:
            continue
        if q % 2:
            counts[q - 1] += c
        else:
            counts[q // 2 - 1] += 2 * c
    return CycleType(tuple(counts))


def exterior_square_character(f: CharacterFn) -> CharacterFn:
    """chi of the exterior square: (f(g)^2 - f(g^2)) / 2."""
    return CharacterFn(f.n, {ct: (v * v - f.values[power_map(ct)]) / 2
                             for ct, v in f.values.items()})


# --------------------------------------------------------------------------
# isotypic projections

def isotypic_projection(lam: Sequence[int], action: Callable[[Permutation, object], object], v):
    """Central projection (dim lam / n!) * sum_pi chi_lam(pi) pi.v.

    ``action(pi, v)`` must be linear; vectors need ``+`` and scalar ``*``.
    """
    lam = tuple(lam)
    n = sum(lam)
    check_group_cap(n)
    acc = None
    for p in all_permutations(n):
        c = mn_character(lam, cycle_type(p))
        if not c:
            continue
        term = action(p, v) * c
        acc = term if acc is None else acc + term
    if acc is None:
        return v * 0
    return acc * Fraction(irreducible_dimension(lam), factorial(n))


def class_sums(n: int) -> dict:
    """Group the permutations of S_n by conjugacy class."""
    check_group_cap(n)
    out: dict = {ct: [] for ct, _ in conjugacy_classes(n)}
    for p in all_permutations(n):
        out[cycle_type(p)].append(p)
    return out


def central_idempotent_weights(lam: Sequence[int]) -> dict:
    """chi_lam per class; the projection is (dim/n!) sum_C weight_C * (class sum C)."""
    lam = tuple(lam)
    return {ct: mn_character(lam, ct) for ct, _ in conjugacy_classes(sum(lam))}


def module_decomposition(chars: Iterable[CharacterFn]) -> MultiplicityTable:
    """Decompose a direct sum given by its summands' characters."""
    chars = list(chars)
    total = chars[0]
    for c in chars[1:]:
        total = total + c
    return decompose_character(total)
