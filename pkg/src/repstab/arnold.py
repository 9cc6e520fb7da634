"""Degrees 1 and 2 of the Arnold algebra (cohomology of the pure braid group).

Degree-one vectors reuse ``SubsetVector`` through w_ij <-> {i, j}; the action
on generators carries no sign, so this is the same permutation module.
Degree two lives in ``ExteriorTwoVector``: monomials w_a ^ w_b with a < b in
lexicographic order, one transposition of factors costing a sign.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .chars import (
    CharacterFn,
    MultiplicityTable,
    decompose_character,
    exterior_square_character,
    irreducible_character,
    powerset_character,
)
from .symcore import (
    Permutation,
    SparseVector,
    StableLabel,
    SubsetVector,
    act_vector,
    check_character_cap,
    echelon_of,
    from_stable,
    generators,
    in_span,
    inner_product,
    mask_of,
    rank_and_span,
)


def gen(i: int, j: int) -> tuple:
    """Normalized generator index: w_ij = w_ji."""
    if i == j:
        raise ValueError("w_ii is not a generator")
    return (i, j) if i < j else (j, i)


def act_degree1(p: Permutation, g: tuple) -> tuple:
    return gen(p(g[0]), p(g[1]))


class ExteriorTwoVector(SparseVector):
    """Combination of wedge monomials w_a ^ w_b with a < b."""

    __slots__ = ()

    def _check_key(self, key) -> None:
        try:
            (a, b), (c, d) = key
        except (TypeError, ValueError):
            raise ValueError(f"bad wedge monomial {key!r}") from None
        if not (1 <= a < b <= self.n and 1 <= c < d <= self.n):
            raise ValueError(f"generators of {key!r} outside 1..{self.n}")
        if not (a, b) < (c, d):
            raise ValueError(f"wedge monomial {key!r} is not in increasing order")

    def _fmt_key(self, key) -> str:
        (a, b), (c, d) = key
        return f"w{a}{b}^w{c}{d}" if self.n < 10 else f"w({a},{b})^w({c},{d})"


def wedge(g1: tuple, g2: tuple, n: int) -> ExteriorTwoVector:
    """w_g1 ^ w_g2 as a normalized vector (zero if g1 == g2)."""
    g1, g2 = gen(*g1), gen(*g2)
    if g1 == g2:
        return ExteriorTwoVector(n)
    if g1 < g2:
        return ExteriorTwoVector._raw(n, {(g1, g2): Fraction(1)})
    return ExteriorTwoVector._raw(n, {(g2, g1): Fraction(-1)})


def act_degree2(p: Permutation, v: ExteriorTwoVector) -> ExteriorTwoVector:
    if p.n != v.n:
        raise ValueError(f"degree mismatch: permutation of {p.n}, vector of {v.n}")
    out: dict = {}
    for (g1, g2), c in v.as_dict().items():
        h1, h2 = act_degree1(p, g1), act_degree1(p, g2)
        if h1 == h2:
            raise ValueError("distinct generators mapped to the same generator")
        if h1 < h2:
            out[(h1, h2)] = out.get((h1, h2), 0) + c
        else:
            out[(h2, h1)] = out.get((h2, h1), 0) - c
    return ExteriorTwoVector._raw(v.n, {k: c for k, c in out.items() if c})


def generators_of(n: int) -> list[tuple]:
    return list(itertools.combinations(range(1, n + 1), 2))


def lambda2_monomials(n: int) -> list[tuple]:
    return list(itertools.combinations(generators_of(n), 2))


def yb_relation(i: int, j: int, k: int, n: int) -> ExteriorTwoVector:
    """w_ij w_ik - w_ij w_jk + w_ik w_jk."""
    if not 1 <= i < j < k <= n:
        raise ValueError(f"need 1 <= i < j < k <= n, got ({i}, {j}, {k}), n={n}")
    return ExteriorTwoVector._raw(n, {
        ((i, j), (i, k)): Fraction(1),
        ((i, j), (j, k)): Fraction(-1),
        ((i, k), (j, k)): Fraction(1),
    })


def yb_relations(n: int) -> list[ExteriorTwoVector]:
    return [yb_relation(i, j, k, n) for i, j, k in itertools.combinations(range(1, n + 1), 3)]


# --------------------------------------------------------------------------
# characters

def a1_character(n: int) -> CharacterFn:
    """Degree one is the permutation module on 2-subsets."""
    return powerset_character(n, 2)


def lambda2_character_bruteforce(n: int) -> CharacterFn:
    """Signed trace of each class representative on the wedge monomials."""
    check_character_cap(n)
    monos = lambda2_monomials(n)

    def trace(ct):
        p = ct.representative()
        t = 0
        for g1, g2 in monos:
            h1, h2 = act_degree1(p, g1), act_degree1(p, g2)
            if (h1, h2) == (g1, g2):
                t += 1
            elif (h2, h1) == (g1, g2):
                t -= 1
        return t

    return CharacterFn.from_function(n, trace)


def lambda2_character(n: int) -> CharacterFn:
    """Exterior square of the degree-one character (power-map formula)."""
    return exterior_square_character(a1_character(n))


def i2_character_closed(n: int) -> CharacterFn:
    """C(i_1, 3) + i_3 - i_1 i_2."""
    return CharacterFn.from_function(
        n, lambda ct: comb(ct.i(1), 3) + ct.i(3) - ct.i(1) * ct.i(2))


def i2_character_bruteforce(n: int) -> CharacterFn:
    """Trace of each class representative on the span of the YB relations."""
    check_character_cap(n)
    ech = echelon_of(yb_relations(n))

    def trace(ct):
        p = ct.representative()
        return ech.trace(lambda row: act_degree2(p, ExteriorTwoVector._raw(n, row)).as_dict())

    return CharacterFn.from_function(n, trace)


def i2_character(n: int, method: str = "closed") -> CharacterFn:
    if method == "closed":
        return i2_character_closed(n)
    if method == "bruteforce":
        return i2_character_bruteforce(n)
    raise ValueError(f"unknown method {method!r}")


def a2_character(n: int) -> CharacterFn:
    return lambda2_character(n) - i2_character_closed(n)


# --------------------------------------------------------------------------
# decompositions

def lambda2_decompose(n: int) -> MultiplicityTable:
    """Decompose the exterior square two ways; they must agree."""
    if n < 2:
        raise ValueError("need n >= 2")
    by_trace = decompose_character(lambda2_character_bruteforce(n))
    by_formula = decompose_character(lambda2_character(n))
    if by_trace != by_formula:
        raise AssertionError(f"exterior square mismatch at n={n}: "
                             f"{by_trace.entries} vs {by_formula.entries}")
    return by_trace


def i2_decompose(n: int) -> MultiplicityTable:
    return decompose_character(i2_character_closed(n))


def arnold_decompose(n: int, degree: int) -> MultiplicityTable:
    if n < 2:
        raise ValueError("need n >= 2")
    if degree == 1:
        return decompose_character(a1_character(n))
    if degree == 2:
        return decompose_character(lambda2_character_bruteforce(n) - i2_character_bruteforce(n))
    raise ValueError("only degrees 1 and 2 are supported")


# Decompositions as published for small n and (stable notation) for n >= 7.
PUBLISHED_LAMBDA2 = {
    2: {},
    3: {(2, 1): 1, (1, 1, 1): 1},
    4: {(3, 1): 2, (2, 2): 1, (2, 1, 1): 2, (1, 1, 1, 1): 1},
    5: {(4, 1): 2, (3, 2): 2, (3, 1, 1): 3, (2, 2, 1): 1, (2, 1, 1, 1): 1},
    6: {(5, 1): 2, (4, 2): 2, (4, 1, 1): 3, (3, 3): 1, (3, 2, 1): 2, (3, 1, 1, 1): 1},
}
PUBLISHED_LAMBDA2_STABLE = {
    (1,): 2, (2,): 2, (1, 1): 3, (3,): 1, (2, 1): 2, (1, 1, 1): 1, (3, 1): 1}

PUBLISHED_A2 = {
    2: {},
    3: {(2, 1): 1},
    4: {(3, 1): 2, (2, 2): 1, (2, 1, 1): 1},
    5: {(4, 1): 2, (3, 2): 2, (3, 1, 1): 2, (2, 2, 1): 1},
    6: {(5, 1): 2, (4, 2): 2, (4, 1, 1): 2, (3, 3): 1, (3, 2, 1): 2},
}
PUBLISHED_A2_STABLE = {
    (1,): 2, (2,): 2, (1, 1): 2, (3,): 1, (2, 1): 2, (3, 1): 1}

PUBLISHED_I2_STABLE = {(1, 1): 1, (1, 1, 1): 1}

# levels where an independently published A^2 table is known to disagree
# with the one reproduced above; the brute-force result is the arbiter
A2_LITERATURE_CONFLICTS = {
    5: "an independent published table for this level disagrees in one entry; "
       "the brute-force decomposition above is authoritative",
}


def published_table(kind: str, n: int) -> MultiplicityTable:
    small, stable = {
        "lambda2": (PUBLISHED_LAMBDA2, PUBLISHED_LAMBDA2_STABLE),
        "arnold2": (PUBLISHED_A2, PUBLISHED_A2_STABLE),
    }[kind]
    if n in small:
        return MultiplicityTable(n, small[n])
    if n >= 7:
        return MultiplicityTable.from_stable(n, stable)
    raise ValueError(f"no published {kind} table for n={n}")


def a2_audit(n: int) -> dict:
    """Brute-force A^2(n) next to the published table, with any known conflict."""
    computed = arnold_decompose(n, 2)
    published = published_table("arnold2", n)
    return {
        "n": n,
        "computed": computed,
        "published": published,
        "agrees": computed == published,
        "literature_note": A2_LITERATURE_CONFLICTS.get(n),
    }


# --------------------------------------------------------------------------
# explicit degree-one bases

def w(i: int, j: int, n: int) -> SubsetVector:
    """The degree-one generator w_ij as a 2-subset vector."""
    return SubsetVector._raw(n, {mask_of(gen(i, j)): Fraction(1)})


def omega(n: int) -> SubsetVector:
    """Sum of all generators."""
    return SubsetVector._raw(n, {mask_of(g): Fraction(1) for g in generators_of(n)})


def omega_pair(i: int, j: int, n: int) -> SubsetVector:
    """sum over k != i, j of (w_ik - w_jk)."""
    out = SubsetVector(n)
    for k in range(1, n + 1):
        if k not in (i, j):
            out = out + w(i, k, n) - w(j, k, n)
    return out


def omega_quad(i: int, j: int, k: int, l: int, n: int) -> SubsetVector:
    """w_il - w_ik + w_jk - w_jl."""
    return w(i, l, n) - w(i, k, n) + w(j, k, n) - w(j, l, n)


def omega_bases(n: int) -> dict:
    """Bases of the three irreducible pieces of degree one, keyed by partition.

    The (n-2, 2) list is read row by row: for m = 4..n the row is
    Omega_{1,2,3,m}, then Omega_{1,h,2,m} for h = 3..m-1.
    """
    if n < 4:
        raise ValueError("the three-piece decomposition needs n >= 4")
    quad = []
    for m in range(4, n + 1):
        quad.append(omega_quad(1, 2, 3, m, n))
        for h in range(3, m):
            quad.append(omega_quad(1, h, 2, m, n))
    return {
        (n,): [omega(n)],
        (n - 1, 1): [omega_pair(1, j, n) for j in range(2, n + 1)],
        (n - 2, 2): quad,
    }


def omega_labels(n: int) -> dict:
    """Printable names matching ``omega_bases``."""
    quad = []
    for m in range(4, n + 1):
        quad.append(f"Omega_{{1,2,3,{m}}}")
        for h in range(3, m):
            quad.append(f"Omega_{{1,{h},2,{m}}}")
    return {
        (n,): [f"Omega^{n}"],
        (n - 1, 1): [f"Omega^{n}_{{1,{j}}}" for j in range(2, n + 1)],
        (n - 2, 2): quad,
    }


def span_character(vectors: list[SubsetVector], n: int) -> CharacterFn:
    """Character of an S_n-invariant span of subset vectors."""
    ech = echelon_of(vectors)

    def trace(ct):
        p = ct.representative()
        return ech.trace(lambda row: act_vector(p, SubsetVector._raw(n, row)).as_dict())

    return CharacterFn.from_function(n, trace)


def omega_checks(n: int) -> dict:
    """Independence, orthogonality, invariance and characters of the Omega bases."""
    bases = omega_bases(n)
    out = {}
    labels = list(bases)
    for lam, vs in bases.items():
        rank, _ = rank_and_span(vs)
        ech = echelon_of(vs)
        invariant = all(in_span(ech, act_vector(g, v)) for g in generators(n) for v in vs)
        char_ok = invariant and span_character(vs, n) == irreducible_character(lam)
        out[lam] = {
            "size": len(vs),
            "independent": rank == len(vs),
            "invariant": invariant,
            "character_matches": char_ok,
        }
    orth = True
    for a, b in itertools.combinations(labels, 2):
        if any(inner_product(v, u) for v in bases[a] for u in bases[b]):
            orth = False
    out["mutually_orthogonal"] = orth
    return out


def stable_label(mu: tuple, n: int) -> tuple:
    return from_stable(StableLabel(mu, n))
