"""Square-free polynomials Q[x_1..x_n] / (x_1^2, ..., x_n^2).

The monomial x_A is identified with the subset A, so polynomials are
``SubsetVector`` objects and the subset inner product is the monomial one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .symcore import (
    Permutation,
    SubsetVector,
    echelon_of,
    full_mask,
    in_span,
    mask_of,
    points_of,
    rank_and_span,
    subsets_of_size,
)
from .powerset import filtration_basis, sigma


def monomial(n: int, points: Sequence[int] = ()) -> SubsetVector:
    return SubsetVector._raw(n, {mask_of(points): Fraction(1)})


def variable(n: int, x: int) -> SubsetVector:
    return monomial(n, (x,))


def sf_multiply(v: SubsetVector, w: SubsetVector) -> SubsetVector:
    """Product in the square-free algebra: x_A x_B = x_{A+B} if disjoint, else 0."""
    v._same(w)
    out: dict = {}
    for a, c in v.as_dict().items():
        for b, d in w.as_dict().items():
            if a & b:
                continue
            s = out.get(a | b, 0) + c * d
            if s:
                out[a | b] = s
            else:
                out.pop(a | b, None)
    return SubsetVector._raw(v.n, out)


def sf_act(p: Permutation, v: SubsetVector) -> SubsetVector:
    """Variable substitution x_i -> x_{p(i)}, computed multiplicatively."""
    out = SubsetVector(v.n)
    for a, c in v.terms():
        term = monomial(v.n)
        for x in points_of(a):
            term = sf_multiply(term, variable(v.n, p(x)))
        out = out + term * c
    return out


def viete(b: int, k: int, n: int) -> SubsetVector:
    """Elementary symmetric polynomial of degree k in the variables of B."""
    if k < 0 or k > b.bit_count():
        raise ValueError(f"k={k} outside 0..card(B)={b.bit_count()}")
    return SubsetVector._raw(n, {c: Fraction(1) for c in subsets_of_size(n, k, within=b)})


@dataclass(frozen=True)
class DeltaPair:
    """Paired index lists H = (h_1..h_s), J = (j_1..j_s) with h_a < j_a.

    Stands for the product of differences (x_h1 - x_j1) ... (x_hs - x_js);
    all 2s indices are distinct.
    """

    H: tuple = ()
    J: tuple = ()

    def __post_init__(self):
        H, J = tuple(self.H), tuple(self.J)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "J", J)
        if len(H) != len(J):
            raise ValueError("H and J must have the same length")
        if any(h >= j for h, j in zip(H, J)):
            raise ValueError(f"need h < j in every position: {H}, {J}")
        if len(set(H) | set(J)) != 2 * len(H):
            raise ValueError(f"indices of {H}, {J} are not distinct")
        if any(x < 1 for x in H):
            raise ValueError("indices must be positive")

    @property
    def size(self) -> int:
        return len(self.H)

    def points(self) -> int:
        return mask_of(self.H + self.J)

    def pairs(self) -> list[tuple]:
        return list(zip(self.H, self.J))

    def canonical(self) -> "DeltaPair":
        """Positions sorted by h (the product is unchanged)."""
        pr = sorted(self.pairs())
        return DeltaPair(tuple(h for h, _ in pr), tuple(j for _, j in pr))

    def extended(self, h: int, j: int) -> "DeltaPair":
        """Prepend the factor (x_h - x_j)."""
        return DeltaPair((h,) + self.H, (j,) + self.J)

    def __str__(self):
        return "".join(f"(x_{h}-x_{j})" for h, j in self.pairs()) or "1"


def delta_product(dp: DeltaPair, n: int) -> SubsetVector:
    if dp.points() >> n:
        raise ValueError(f"{dp} uses an index above n={n}")
    out = monomial(n)
    for h, j in dp.pairs():
        out = sf_multiply(out, variable(n, h) - variable(n, j))
    return out


def psi_isometry(v: SubsetVector, k: int) -> SubsetVector:
    """Linear extension of x_A -> x_A * sigma_{k-i}(complement of A).

    ``v`` must be homogeneous of some degree i <= k.
    """
    degrees = {a.bit_count() for a in v.support()}
    if len(degrees) > 1:
        raise ValueError(f"input is not homogeneous (degrees {sorted(degrees)})")
    if not degrees:
        return SubsetVector(v.n)
    i = degrees.pop()
    if i > k:
        raise ValueError(f"degree {i} exceeds k={k}")
    full = full_mask(v.n)
    out: dict = {}
    for a, c in v.as_dict().items():
        for b in subsets_of_size(v.n, k - i, within=full & ~a):
            s = out.get(a | b, 0) + c
            if s:
                out[a | b] = s
            else:
                out.pop(a | b, None)
    return SubsetVector._raw(v.n, out)


def canonical_delta_set(n: int, i: int) -> list[DeltaPair]:
    """Independent products of i differences, C(n,i) - C(n,i-1) of them.

    Built inductively: keep the set for (n-1, i), and extend each member of
    the set for (n-1, i-1) by the factor (x_r - x_n), where r is the smallest
    index not already used (and different from n).
    """
    if i < 0 or 2 * i > n:
        raise ValueError(f"need 0 <= 2i <= n, got n={n}, i={i}")
    return list(_delta_set(n, i))


@lru_cache(maxsize=None)
def _delta_set(n: int, i: int) -> tuple:
    if i == 0:
        return (DeltaPair(),)
    if n == 2 and i == 1:
        return (DeltaPair((1,), (2,)),)
    out = list(_delta_set(n - 1, i)) if 2 * i <= n - 1 else []
    for dp in _delta_set(n - 1, i - 1):
        used = dp.points() | (1 << (n - 1))
        r = next(x for x in range(1, n + 1) if not used >> (x - 1) & 1)
        out.append(dp.extended(r, n))
    return tuple(out)


def basis_element(dp: DeltaPair, n: int, k: int) -> SubsetVector:
    """Direct expansion of (product of differences) * sigma_{k-i}(L)."""
    rest = full_mask(n) & ~dp.points()
    return sf_multiply(delta_product(dp, n), viete(rest, k - dp.size, n))


def irreducible_basis(n: int, k: int, i: int) -> list[SubsetVector]:
    """Basis of the V_(n-i,i) component of Sf_k(n), via psi of the delta set."""
    if not (0 <= i <= k and 2 * k <= n):
        raise ValueError(f"need 0 <= i <= k <= n/2, got n={n}, k={k}, i={i}")
    out = []
    for dp in canonical_delta_set(n, i):
        v = psi_isometry(delta_product(dp, n), k)
        if v != basis_element(dp, n, k):
            raise AssertionError(f"psi expansion disagrees with direct product for {dp}")
        out.append(v)
    return out


def factored_form(dp: DeltaPair, n: int, k: int) -> str:
    """Printable factorization, e.g. ``(x_1-x_2)(x_3-x_4)(x_5+x_6+x_7)``."""
    rest = points_of(full_mask(n) & ~dp.points())
    d = k - dp.size
    body = "" if dp.size == 0 else str(dp)
    if d == 0:
        return body or "1"
    if d == 1:
        return body + "(" + "+".join(f"x_{x}" for x in rest) + ")"
    return body + f"e{d}(" + ",".join(f"x_{x}" for x in rest) + ")"


def all_delta_pairs(n: int, s: int) -> Iterator[DeltaPair]:
    """Every set of s disjoint pairs in {1..n}, each as a canonical DeltaPair."""
    def rec(avail: tuple, s: int, acc: tuple):
        if s == 0:
            yield acc
            return
        if len(avail) < 2 * s:
            return
        first = avail[0]
        # pairs whose smaller element is avail[0]
        for idx in range(1, len(avail)):
            j = avail[idx]
            rest = avail[1:idx] + avail[idx + 1:]
            yield from rec(rest, s - 1, acc + ((first, j),))
        # or avail[0] stays unused
        yield from rec(avail[1:], s, acc)

    for prs in rec(tuple(range(1, n + 1)), s, ()):
        yield DeltaPair(tuple(h for h, _ in prs), tuple(j for _, j in prs))


def component_dimension(n: int, i: int) -> int:
    return comb(n, i) - (comb(n, i - 1) if i else 0)


def complement_check(n: int, k: int, i: int) -> dict:
    """Verify the basis spans F_{i-1}-perp inside F_i for Sf_k(n).

    Returns counts and flags; used by the tests and the acceptance suite.
    """
    basis = irreducible_basis(n, k, i)
    rank, _ = rank_and_span(basis) if basis else (0, [])
    lower = filtration_basis(n, k, i - 1) if i else []
    orthogonal = all(not _dot(b, f) for b in basis for f in lower)
    upper = echelon_of(filtration_basis(n, k, i))
    contained = all(in_span(upper, b) for b in basis)
    expected = component_dimension(n, i)
    return {
        "size": len(basis),
        "rank": rank,
        "expected": expected,
        "orthogonal_to_lower": orthogonal,
        "inside_level": contained,
        # rank + dim F_{i-1} = dim F_i, so the orthogonal vectors fill the complement
        "spans_complement": orthogonal and contained and rank == expected
        and rank + (comb(n, i - 1) if i else 0) == comb(n, i),
    }


def _dot(v: SubsetVector, w: SubsetVector) -> Fraction:
    from .symcore import inner_product
    return inner_product(v, w)


_FACTOR = re.compile(r"\(([^()]*)\)")


def parse_factored(text: str, n: int) -> list[SubsetVector]:
    """Parse ``(x_a-x_b)(x_c+x_d+...)`` into its linear factors."""
    factors = []
    for body in _FACTOR.findall(text.replace("−", "-").replace(" ", "")):
        terms: dict = {}
        for sign, idx in re.findall(r"([+-]?)x_?(\d+)", body):
            m = 1 << (int(idx) - 1)
            terms[m] = terms.get(m, 0) + (-1 if sign == "-" else 1)
        factors.append(SubsetVector(n, terms))
    return factors


def is_well_formed(factors: Sequence[SubsetVector], n: int, k: int, i: int) -> bool:
    """i differences and one symmetric factor on disjoint variables covering 1..n."""
    if len(factors) != i + (1 if k > i else 0):
        return False
    seen = 0
    for f in factors[:i]:
        coeffs = sorted(f.as_dict().values())
        if len(f) != 2 or coeffs != [-1, 1]:
            return False
    for f in factors:
        for a in f.support():
            if seen & a:
                return False
            seen |= a
    if k > i:
        last = factors[i]
        if set(last.as_dict().values()) != {1}:
            return False
    return seen == full_mask(n)


def audit_printed_basis(printed: Sequence[str], n: int, k: int, i: int) -> dict:
    """Check externally supplied factored polynomials against the computed span.

    Malformed entries (repeated or overlapping variables) are reported rather
    than tested for membership.
    """
    span = echelon_of(irreducible_basis(n, k, i))
    in_span_ok, outside, malformed = [], [], []
    for text in printed:
        factors = parse_factored(text, n)
        if not is_well_formed(factors, n, k, i):
            malformed.append(text)
            continue
        poly = monomial(n)
        for f in factors:
            poly = sf_multiply(poly, f)
        (in_span_ok if in_span(span, poly) else outside).append(text)
    return {"in_span": in_span_ok, "outside_span": outside, "malformed": malformed}


def sigma_vector(n: int, k: int, a: int) -> SubsetVector:
    """x_A * sigma_{k-|A|}(A') -- the polynomial form of ``powerset.sigma``."""
    return sigma(n, k, a)
