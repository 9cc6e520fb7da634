"""Acceptance gate: one test per criterion, exact arithmetic, zero tolerance.

A summary line per criterion is printed at the end of the run.
"""
import time
from math import comb

import pytest

from repstab import arnold
from repstab.chars import (
    CLOSED_FORMS,
    closed_form_character,
    decompose_character,
    exterior_square_character,
    irreducible_dimension,
    mn_character,
    powerset_character,
)
from repstab.powerset import (
    filtration_basis,
    group_average_lift,
    inclusion,
    sigma,
    sn_span,
)
from repstab.squarefree import (
    all_delta_pairs,
    audit_printed_basis,
    basis_element,
    complement_check,
    irreducible_basis,
)
from repstab.stability import (
    action_stability_report,
    lp_family,
    lp_k_family,
    powerset_family,
    rep_stability_report,
    subsets_family,
)
from repstab.symcore import (
    StableLabel,
    conjugacy_classes,
    echelon_of,
    from_stable,
    inner_product,
    mask_of,
    rank_and_span,
    subsets_of_size,
)
from test_squarefree import MALFORMED, PRINTED_7_3_2


@pytest.fixture
def criterion(record_property):
    def mark(key, title):
        record_property("criterion", key)
        record_property("title", title)
    return mark


@pytest.fixture
def timer(record_property):
    class Timer:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.seconds = time.perf_counter() - self.t0
            record_property("seconds", self.seconds)
    return Timer()


def same_span(a, b):
    ea = echelon_of(a)
    return len(ea) == len(echelon_of(b)) and all(ea.contains(v.as_dict()) for v in b)


def two_row(n, k):
    return (n - k, k) if k else (n,)


def test_criterion_1(criterion, timer):
    criterion("1", "each k-subset level is multiplicity free, V(n) .. V(n-k,k), n <= 10")
    with timer:
        for n in range(2, 11):
            for k in range(0, n // 2 + 1):
                table = decompose_character(powerset_character(n, k))
                assert table.entries == {two_row(n, j): 1 for j in range(k + 1)}, (n, k)
    assert timer.seconds < 10


def test_criterion_2(criterion):
    criterion("2", "whole power set: multiplicity n-2k+1 of V(n-k,k), total dimension 2^n")
    for n in range(1, 11):
        table = decompose_character(powerset_character(n))
        expected = {two_row(n, k): n - 2 * k + 1 for k in range(n // 2 + 1)}
        assert table.entries == expected
        r = -(-n // 2) - n // 2 + 1
        assert table.entries[two_row(n, n // 2)] == r
        assert sum(m * irreducible_dimension(lam) for lam, m in table.entries.items()) == 2 ** n


def test_criterion_3(criterion):
    criterion("3", "filtration bases have rank C(n,i) and satisfy the step recurrence, n <= 6")
    for n in range(2, 7):
        for k in range(0, n // 2 + 1):
            for i in range(0, k + 1):
                basis = filtration_basis(n, k, i)
                assert rank_and_span(basis)[0] == comb(n, i)
                for a in subsets_of_size(n, i):
                    rhs = sum((sigma(n, k, a | 1 << (p - 1)) for p in range(1, n + 1)
                               if not a >> (p - 1) & 1 and i < k),
                              start=sigma(n, k, a) * 0)
                    assert sigma(n, k, a) * (k - i) == rhs


def test_criterion_4(criterion):
    criterion("4", "extension identity and group-average lift, full group sums, n <= 6")
    for n in range(1, 7):
        for k in range(0, n + 1):
            for i in range(0, k + 1):
                for a in subsets_of_size(n, i):
                    rhs = sigma(n + 1, k, a)
                    if i < k:
                        rhs = rhs - sigma(n + 1, k, a | 1 << n)
                    assert inclusion(sigma(n, k, a)) == rhs
            for i in range(0, k):
                assert group_average_lift(n, k, i) == sigma(n + 1, k, mask_of(range(1, i + 2)))


def test_criterion_5a(criterion, timer):
    criterion("5a", "span equalities n <= 6; k-subset families stable and monotone on [2k, 8]")
    with timer:
        for n in range(2, 7):
            for k in range(0, n // 2 + 1):
                for i in range(0, k + 1):
                    image = [inclusion(v) for v in filtration_basis(n, k, i)]
                    target = filtration_basis(n + 1, k, min(i + 1, k))
                    ech = echelon_of(target)
                    assert all(ech.contains(v.as_dict()) for v in image)
                    assert same_span(sn_span(image, n + 1), target)
        for k in range(0, 4):
            r = rep_stability_report(lp_k_family(k), 2 * k, 8)
            assert r.consistent and r.injective and r.surjective
            assert r.multiplicities_stable_from == 2 * k
            assert r.uniform and r.monotonic
            assert r.stable_multiplicities() == {(j,) if j else (): 1 for j in range(k + 1)}
    assert timer.seconds < 120


def test_criterion_5b(criterion, timer):
    criterion("5b", "whole power set family: stable multiplicity 2 per type, non-uniform onset")
    with timer:
        r = rep_stability_report(lp_family(), 2, 8)
    observed = {mu: (t.stable_value, t.onset) for mu, t in r.types.items()}
    assert not r.uniform
    assert all(t.stable_value == 2 for t in r.types.values()), (
        f"tail multiplicities (value, onset) at n_max=8: {observed}")
    assert timer.seconds < 120


def test_criterion_6a(criterion):
    criterion("6a", "k-subset sets strongly action stable on [2k, 7]")
    for k in range(0, 4):
        r = action_stability_report(subsets_family(k), 2 * k, 7)
        assert r.strongly_action_stable, r.summary()


def test_criterion_6b(criterion):
    criterion("6b", "power set family: (c) fails for every (k), k >= 1, with the exact mismatch")
    r = action_stability_report(powerset_family(), 4, 7)
    types = [mu for mu in r.closure if mu]
    assert types
    for mu in types:
        k = mu[0]
        # (3) only settles at n = 7, so judge every step where the type occurs
        observed = {n: v for n, v in r.closure[mu].items() if 2 * k <= n}
        assert observed, mu
        for n, v in observed.items():
            assert not v["holds"]
            assert sorted(x.bit_count() for x in v["closure"]) == sorted({k, n - k})
            assert sorted(x.bit_count() for x in v["target"]) == sorted({k, n + 1 - k})


def test_criterion_6c(criterion):
    criterion("6c", "power set family over [4, 7] reported action stable")
    r = action_stability_report(powerset_family(), 4, 7)
    missing = {n: s["missing_orbits"] for n, s in r.steps.items()}
    assert r.condition_b
    assert r.action_stable, f"orbits never reached from the previous level: {missing}"


def test_criterion_7(criterion):
    criterion("7", "difference products orthogonal; complement bases n <= 8; 14-element audit")
    for n in range(2, 7):
        for k in range(1, n // 2 + 1):
            for i in range(1, k + 1):
                lower = filtration_basis(n, k, i - 1)
                for dp in all_delta_pairs(n, i):
                    v = basis_element(dp, n, k)
                    assert all(inner_product(v, f) == 0 for f in lower), (n, k, dp)
    for n in range(2, 9):
        for k in range(0, n // 2 + 1):
            for i in range(0, k + 1):
                c = complement_check(n, k, i)
                assert c["rank"] == c["expected"] == comb(n, i) - (comb(n, i - 1) if i else 0)
                assert c["spans_complement"], (n, k, i)
    assert len(irreducible_basis(7, 3, 2)) == 14
    audit = audit_printed_basis(PRINTED_7_3_2, 7, 3, 2)
    assert audit["outside_span"] == []
    assert sorted(audit["malformed"]) == sorted(MALFORMED)
    assert len(audit["in_span"]) == 14 - len(MALFORMED)


def test_criterion_8(criterion):
    criterion("8", "closed-form character rows match Murnaghan-Nakayama; exterior square n <= 7")
    for n in range(4, 11):
        for mu in CLOSED_FORMS:
            try:
                label = StableLabel(mu, n)
            except ValueError:
                continue
            lam = from_stable(label)
            for ct, _ in conjugacy_classes(n):
                assert closed_form_character(label, ct) == mn_character(lam, ct), (n, mu, ct)
    for n in range(2, 8):
        fast = exterior_square_character(arnold.a1_character(n))
        brute = arnold.lambda2_character_bruteforce(n)
        for ct, _ in conjugacy_classes(n):
            assert fast(ct) == brute(ct), (n, ct)


def test_criterion_9(criterion):
    criterion("9", "relation ideal: closed and brute-force characters agree, n <= 8")
    for n in range(2, 9):
        closed = arnold.i2_character(n, "closed")
        brute = arnold.i2_character(n, "bruteforce")
        for ct, _ in conjugacy_classes(n):
            assert closed(ct) == brute(ct), (n, ct)
        table = decompose_character(brute)
        if n >= 4:
            expected = {from_stable(StableLabel((1, 1), n)): 1,
                        from_stable(StableLabel((1, 1, 1), n)): 1}
        elif n == 3:
            expected = {(1, 1, 1): 1}
        else:
            expected = {}
        assert table.entries == expected, n


def test_criterion_10(criterion, timer):
    criterion("10", "degree-two tables n = 2..9, published tables, three-block bases")
    with timer:
        for n in range(2, 10):
            assert arnold.lambda2_decompose(n) == arnold.published_table("lambda2", n), n
            assert arnold.arnold_decompose(n, 2) == arnold.published_table("arnold2", n), n
        for n in range(4, 9):
            checks = arnold.omega_checks(n)
            sizes = {lam: checks[lam]["size"] for lam in arnold.omega_bases(n)}
            assert sizes == {(n,): 1, (n - 1, 1): n - 1, (n - 2, 2): n * (n - 3) // 2}
            for lam in sizes:
                c = checks[lam]
                assert c["independent"] and c["invariant"] and c["character_matches"]
            assert checks["mutually_orthogonal"]
        audit = arnold.a2_audit(5)
        assert audit["agrees"] and audit["literature_note"]
    assert timer.seconds < 60
