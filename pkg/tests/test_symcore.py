from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from repstab.symcore import (
    CycleType,
    DegreeError,
    MAX_DEGREE,
    Permutation,
    StableLabel,
    SubsetVector,
    act_subset,
    act_vector,
    all_permutations,
    check_group_cap,
    conjugacy_classes,
    cycle_type,
    format_subset,
    from_cycles,
    from_stable,
    generators,
    identity,
    inner_product,
    mask_of,
    partitions,
    points_of,
    rank_and_span,
    subsets_of_size,
    to_stable,
)

# p(n), n = 0..12, from the standard tables
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def perms(max_n=7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p))))


def perm_pairs(max_n=7):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(
        st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))).map(
        lambda pq: (Permutation(tuple(pq[0])), Permutation(tuple(pq[1]))))


def test_composition_is_right_to_left():
    p = from_cycles(3, (1, 2))
    q = from_cycles(3, (2, 3))
    assert all((p * q)(x) == p(q(x)) for x in range(1, 4))
    assert (p * q)(2) == 3
    assert (p * q) != (q * p)


@given(perm_pairs())
def test_inverse_and_associativity(pq):
    p, q = pq
    e = identity(p.n)
    assert p * p.inverse() == e == p.inverse() * p
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert (p * q) * p == p * (q * p)


@given(perms())
def test_cycles_rebuild_permutation(p):
    assert from_cycles(p.n, *p.cycles()) == p
    assert cycle_type(p).n == p.n


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))
    with pytest.raises(ValueError):
        from_cycles(3, (1, 4))


def test_extend_fixes_new_points():
    p = from_cycles(3, (1, 2, 3)).extend(5)
    assert p.n == 5 and p(4) == 4 and p(5) == 5 and p(3) == 1


@pytest.mark.parametrize("n", range(0, 13))
def test_partition_counts(n):
    ps = partitions(n)
    assert len(ps) == PARTITION_COUNTS[n]
    assert ps == sorted(ps, reverse=True)
    assert all(sum(p) == n for p in ps)


@pytest.mark.parametrize("n", range(1, 9))
def test_class_sizes_sum_to_group_order(n):
    classes = conjugacy_classes(n)
    assert sum(size for _, size in classes) == factorial(n)
    for ct, size in classes:
        assert size * ct.centralizer_order() == factorial(n)
        assert cycle_type(ct.representative()) == ct


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_by_enumeration(n):
    counts = {}
    for p in all_permutations(n):
        ct = cycle_type(p)
        counts[ct] = counts.get(ct, 0) + 1
    assert counts == dict(conjugacy_classes(n))


def test_cycle_type_accessors():
    ct = CycleType.from_partition((2, 1, 1))
    assert ct.i(1) == 2 and ct.i(2) == 1 and ct.i(3) == 0
    assert ct.partition() == (2, 1, 1)
    assert str(ct) == "(i_1=2, i_2=1)"


def test_generators_generate():
    for n in range(1, 6):
        seen = {identity(n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for p in frontier:
                for g in generators(n):
                    q = g * p
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        assert len(seen) == factorial(n)


def test_all_permutations_fixing_prefix():
    ps = list(all_permutations(5, fixed=2))
    assert len(ps) == 6
    assert all(p(1) == 1 and p(2) == 2 for p in ps)


@pytest.mark.parametrize("mu,n,lam", [
    ((), 4, (4,)),
    ((1,), 4, (3, 1)),
    ((2,), 4, (2, 2)),
    ((1, 1, 1), 4, (1, 1, 1, 1)),
    ((3, 1), 7, (3, 3, 1)),
])
def test_stable_labels(mu, n, lam):
    assert from_stable(StableLabel(mu, n)) == lam
    assert to_stable(lam, n) == StableLabel(mu, n)


@pytest.mark.parametrize("mu,n", [((2,), 3), ((3, 1), 6), ((1,), 0)])
def test_unstable_labels_rejected(mu, n):
    with pytest.raises(ValueError, match="unstable"):
        StableLabel(mu, n)


@given(st.integers(0, 10).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(partitions(n)))))
def test_stable_round_trip(n_lam):
    n, lam = n_lam
    assert from_stable(to_stable(lam, n)) == lam


def test_subset_helpers():
    assert mask_of([1, 3]) == 0b101
    assert points_of(0b101) == (1, 3)
    assert format_subset(0) == "{}"
    assert format_subset(0b110) == "{2,3}"
    assert subsets_of_size(4, 2) == sorted(subsets_of_size(4, 2))
    assert len(subsets_of_size(6, 3)) == 20
    assert subsets_of_size(4, 2, within=0b0111) == [0b011, 0b101, 0b110]
    assert act_subset(from_cycles(3, (1, 2, 3)), mask_of([1, 2])) == mask_of([2, 3])


def test_vector_arithmetic_and_printing():
    v = SubsetVector.from_sets(4, {(1, 2): 1, (3,): Fraction(1, 2)})
    w = SubsetVector.from_sets(4, [(1, 2)])
    assert (v - w).as_dict() == {mask_of([3]): Fraction(1, 2)}
    assert v * 2 == v + v
    assert (v / 2) * 2 == v
    assert not (v - v)
    assert inner_product(v, v) == Fraction(5, 4)
    assert "{1,2}" in repr(v)


def test_vector_degree_checks():
    with pytest.raises(ValueError):
        SubsetVector(3, {mask_of([4]): 1})
    with pytest.raises(ValueError):
        SubsetVector(MAX_DEGREE + 1)
    with pytest.raises(ValueError):
        SubsetVector(3) + SubsetVector(4)
    with pytest.raises(ValueError):
        act_vector(identity(4), SubsetVector(3))


@settings(max_examples=50)
@given(perm_pairs(6), st.data())
def test_action_is_a_homomorphism(pq, data):
    p, q = pq
    n = p.n
    sets = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(sets), max_size=len(sets)))
    v = SubsetVector(n, dict(zip(sets, coeffs)))
    assert act_vector(p * q, v) == act_vector(p, act_vector(q, v))
    assert inner_product(act_vector(p, v), act_vector(p, v)) == inner_product(v, v)


def test_rank_and_span():
    vs = [SubsetVector.from_sets(3, [(1,), (2,)]), SubsetVector.from_sets(3, [(2,), (3,)]),
          SubsetVector.from_sets(3, [(1,), (3,)]) * -1 + SubsetVector.from_sets(3, [(2,)]) * 0]
    rank, span = rank_and_span(vs)
    assert rank == 3
    rank, _ = rank_and_span(vs[:2] + [vs[0] + vs[1]])
    assert rank == 2


def test_group_cap():
    check_group_cap(8)
    with pytest.raises(DegreeError, match="8"):
        check_group_cap(9)
