"""The modules LP_k(n): sigma vectors, the canonical filtration and the maps
connecting consecutive degrees.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .symcore import (
    DegreeError,
    GROUP_ENUMERATION_CAP,
    SubsetVector,
    act_vector,
    all_permutations,
    echelon_of,
    from_cycles,
    full_mask,
    generators,
    mask_of,
    subsets_of_size,
)


def sigma(n: int, k: int, a: int) -> SubsetVector:
    """Sum of all k-subsets of {1..n} containing the subset ``a``."""
    i = a.bit_count()
    if a >> n:
        raise ValueError(f"subset {a:b} is not inside 1..{n}")
    if i > k:
        raise ValueError(f"card(A)={i} exceeds k={k}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    rest = full_mask(n) & ~a
    return SubsetVector._raw(
        n, {a | b: Fraction(1) for b in subsets_of_size(n, k - i, within=rest)})


def filtration_basis(n: int, k: int, i: int) -> list[SubsetVector]:
    """``[sigma(n, k, A) for |A| = i]``, subsets in bitmask order.

    Only defined for k <= n/2, where these C(n, i) vectors are independent.
    """
    if 2 * k > n:
        raise ValueError(f"filtration requires k <= n/2 (n={n}, k={k}); "
                         "use complement_map for larger k")
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}, k={k}")
    return [sigma(n, k, a) for a in subsets_of_size(n, i)]


def complement_map(v: SubsetVector) -> SubsetVector:
    full = full_mask(v.n)
    return SubsetVector._raw(v.n, {full ^ a: c for a, c in v.as_dict().items()})


def restriction(v: SubsetVector) -> SubsetVector:
    """Drop every subset containing n; the result lives over n - 1."""
    if v.n < 1:
        raise ValueError("restriction needs n >= 1")
    top = 1 << (v.n - 1)
    return SubsetVector._raw(v.n - 1, {a: c for a, c in v.as_dict().items() if not a & top})


def inclusion(v: SubsetVector) -> SubsetVector:
    """The same combination of subsets, viewed inside {1..n+1}."""
    return SubsetVector._raw(v.n + 1, v.as_dict())


def group_average_lift(n: int, k: int, i: int) -> SubsetVector:
    """Rebuild sigma(n+1, k, {1..i+1}) from sigma(n, k, {1..i}) by averaging.

    Sums pi . sigma(n, k, {1..i}) over the permutations of {1..n+1} fixing
    1..i, scales by 1/((n-i)! (n-k+1)) and subtracts the image of the same
    vector under the transposition (i+1, n+1).
    """
    if not (0 <= i <= k - 1 and k <= n):
        raise ValueError(f"need 0 <= i <= k-1 and k <= n, got n={n}, k={k}, i={i}")
    if n + 1 - i > GROUP_ENUMERATION_CAP:
        raise DegreeError(f"group sum over S_{n + 1 - i} exceeds the cap "
                          f"{GROUP_ENUMERATION_CAP}")
    base = inclusion(sigma(n, k, mask_of(range(1, i + 1))))
    acc: dict = {}
    for p in all_permutations(n + 1, fixed=i):
        for a, c in act_vector(p, base).as_dict().items():
            acc[a] = acc.get(a, 0) + c
    scale = Fraction(1, factorial(n - i) * (n - k + 1))
    avg = SubsetVector(n + 1, {a: c * scale for a, c in acc.items()})
    swap = from_cycles(n + 1, (i + 1, n + 1))
    return avg - act_vector(swap, base)


def sn_span(vs: Sequence[SubsetVector], group_degree: int,
            action: Callable = act_vector) -> list[SubsetVector]:
    """Echelon basis of the span of {pi . v : pi in S_m, v in vs}.

    Computed as the closure of span(vs) under a generating set of S_m, which
    gives the same subspace as summing over the whole group.
    """
    m = group_degree
    if m > GROUP_ENUMERATION_CAP:
        raise DegreeError(f"m={m} exceeds the group cap {GROUP_ENUMERATION_CAP}")
    for v in vs:
        if v.n != m:
            raise ValueError(f"vector of degree {v.n} in an S_{m} span")
    ech = echelon_of(())
    queue = deque()
    for v in vs:
        if ech.add(v.as_dict()):
            queue.append(v)
    gens = generators(m)
    while queue:
        v = queue.popleft()
        for g in gens:
            w = action(g, v)
            if ech.add(w.as_dict()):
                queue.append(w)
    kind = type(vs[0]) if vs else SubsetVector
    return [kind._raw(m, row) for row in ech.rows()]


def level_vectors(n: int, k: int) -> list[SubsetVector]:
    """The subset basis of LP_k(n)."""
    return [SubsetVector._raw(n, {a: Fraction(1)}) for a in subsets_of_size(n, k)]

