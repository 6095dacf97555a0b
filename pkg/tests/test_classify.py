from __future__ import annotations

import time

import numpy as np
import pytest

from starclean.algebra import projections, units
from starclean.classify import (
    IMPLICATION_DIAGRAM,
    WITNESS_MODES,
    Witness,
    available_predicates,
    classify_ring,
    condition_clean_with_trivial_intersection,
    condition_norm_sum,
    condition_principal_by_projection,
    condition_rickart,
    condition_right_p_injective,
    condition_stable_range_one,
    decomposition_witness,
    factorization_witness,
    is_predicate,
    oracle_witness,
    verdict,
    verify_witness,
)
from starclean.corpus import build_corpus
from starclean.errors import InvalidParameter
from starclean.rings import (
    attach_involution,
    frobenius_involution,
    identity_involution,
    make_gf,
    make_matrix_star_ring,
    make_product,
    make_zmod,
    swap_involution,
)


def _identity_star(ring):
    return attach_involution(ring, identity_involution(ring))


def _z(n: int):
    return _identity_star(make_zmod(n))


def _swap_z2xz2():
    return attach_involution(make_product(make_zmod(2), make_zmod(2)), swap_involution(2), label="Z2xZ2^swap")


def _m2(base):
    return make_matrix_star_ring(base, 2)


def _gf4_frob():
    return attach_involution(make_gf(4), frobenius_involution(4), label="GF(4)^frob")


def test_strongly_star_clean_witness_in_z4():
    w = decomposition_witness(_z(4), 2, "strongly-star-clean")
    assert w.parts == (1, 1)
    assert not w.exhausted
    assert verify_witness(_z(4), w)


def test_pu_witness_in_z3():
    s = _z(3)
    w = factorization_witness(s, 2, "pu")
    assert w.parts == (1, 2)
    assert verify_witness(s, w)


def test_pu_on_improper_matrix_is_exhausted():
    s = _m2(_z(2))
    w = factorization_witness(s, 5, "pu")
    assert w.parts is None
    assert w.exhausted
    assert verify_witness(s, w)


def test_star_clean_decomposition_in_m2z2():
    s = _m2(_z(2))
    for a in range(s.order):
        w = decomposition_witness(s, a, "star-clean")
        assert w.found
        assert verify_witness(s, w)


def test_witness_modes_are_validated():
    with pytest.raises(InvalidParameter):
        decomposition_witness(_z(4), 1, "pu")
    with pytest.raises(InvalidParameter):
        factorization_witness(_z(4), 1, "clean")
    with pytest.raises(InvalidParameter):
        decomposition_witness(_z(4), 4, "clean")


def test_verify_witness_rejects_forged_parts():
    s = _z(4)
    assert not verify_witness(s, Witness(mode="clean", element=2, parts=(0, 2)))
    assert not verify_witness(s, Witness(mode="clean", element=2, parts=(1, 3)))
    assert not verify_witness(s, Witness(mode="clean", element=2, parts=(9, 1)))


def test_swap_ring_reproduces_the_boolean_counterexample():
    report = classify_ring(_swap_z2xz2())
    assert report.verdict("clean")
    assert report.verdict("strongly-clean")
    assert report.verdict("boolean")
    assert not report.verdict("star-clean")
    assert not report.verdict("strongly-star-clean")
    assert report.sizes["projections"] == 2
    assert report.sizes["idempotents"] == 4


def test_z4_is_not_regular_with_counterwitness_two():
    result = is_predicate(_z(4), "regular")
    assert not result.verdict
    assert result.counterwitness == (2,)
    assert "a=2" in result.note


def test_m2z2_involution_is_improper():
    s = _m2(_z(2))
    result = is_predicate(s, "proper-involution")
    assert not result.verdict
    assert result.counterwitness == (5,)
    assert int(s.ring.mul[s.star[5], 5]) == s.ring.zero
    assert not verdict(s, "star-unit-regular")
    assert verdict(s, "star-clean")
    assert not verdict(s, "strongly-star-clean")


@pytest.mark.parametrize("base", [_z(2), _z(3), _z(4)], ids=["Z2", "Z3", "Z4"])
def test_two_by_two_matrices_are_not_strongly_star_clean(base):
    assert not verdict(_m2(base), "strongly-star-clean")


def test_matrices_over_swap_ring_are_not_strongly_star_clean():
    assert not verdict(_m2(_swap_z2xz2()), "strongly-star-clean")


def test_gf4_with_frobenius_satisfies_everything_regular():
    s = _gf4_frob()
    for name in ("regular", "unit-regular", "strongly-regular", "star-regular", "star-unit-regular", "local"):
        assert verdict(s, name), name


def test_norm_sum_condition():
    # 1*1 + 1*1 = 0 in GF(4) with Frobenius
    holds, counter = condition_norm_sum(_gf4_frob(), 2)
    assert not holds
    assert counter == (1, 1)
    assert condition_norm_sum(_z(3), 2) == (True, None)
    assert not condition_norm_sum(_z(2), 2)[0]


def test_stable_range_one_holds_on_finite_rings():
    for s in (_z(4), _z(6), _m2(_z(2)), _swap_z2xz2()):
        assert condition_stable_range_one(s) == (True, None)


def test_every_finite_ring_is_strongly_clean():
    for s in (_z(8), _z(12), _m2(_z(2)), _m2(_z(3))):
        assert verdict(s, "clean")


@pytest.mark.parametrize("s", [_z(4), _z(6), _swap_z2xz2(), _m2(_z(2)), _gf4_frob()], ids=lambda s: s.label)
def test_pruned_search_agrees_with_oracle(s):
    for mode in WITNESS_MODES:
        for a in range(s.order):
            found = (
                decomposition_witness(s, a, mode)
                if mode in ("clean", "strongly-clean", "star-clean", "strongly-star-clean")
                else factorization_witness(s, a, mode)
            )
            assert found.parts == oracle_witness(s, a, mode).parts


def test_uncached_evaluation_matches_cached():
    s = _m2(_z(2))
    for name in available_predicates():
        assert is_predicate(s, name).verdict == is_predicate(s, name, use_cache=False).verdict


def test_classification_respects_the_implication_diagram():
    for s in (_z(1), _z(2), _z(4), _z(6), _swap_z2xz2(), _m2(_z(2)), _m2(_z(3)), _gf4_frob()):
        report = classify_ring(s)
        for stronger, weaker in IMPLICATION_DIAGRAM:
            assert not report.verdict(stronger) or report.verdict(weaker)


def test_zero_ring_satisfies_every_predicate():
    report = classify_ring(_z(1))
    assert all(r.verdict for r in report.results)


def test_unknown_predicate_is_rejected():
    with pytest.raises(InvalidParameter):
        is_predicate(_z(2), "noetherian")


def test_report_lists_every_predicate_once():
    report = classify_ring(_z(2))
    assert [r.name for r in report.results] == available_predicates()
    assert all(r.verdict for r in report.results)


_QUICK = [entry.star_ring for entry in build_corpus("quick") if entry.star_ring is not None]


def _first_failure(holds_for, items):
    for item in items:
        if not holds_for(item):
            return False, item
    return True, None


def _brute_outcomes(s):
    r = s.ring
    n = r.order
    ar = np.arange(n)
    unit_set = set(units(r))
    proj = projections(s)
    right_ideal = [set(r.mul[x, :].tolist()) for x in ar]
    right_ann = [set(np.flatnonzero(r.mul[x, :] == r.zero).tolist()) for x in ar]

    def lr_is_ra(a):
        lr = {y for y in ar.tolist() if all(int(r.mul[y, z]) == r.zero for z in right_ann[a])}
        return lr == set(r.mul[:, a].tolist())

    def trivially_meets(a):
        return any(
            r.sub(a, p) in unit_set and right_ideal[a] & right_ideal[p] == {r.zero}
            for p in proj
        )

    sums = r.add[r.mul[:, None, :, None], r.mul[None, :, None, :]]
    covers = (sums == r.one).any(axis=(2, 3))
    reaches = np.isin(r.add[ar[:, None, None], r.mul[None, :, :]], list(unit_set)).any(axis=2)
    bad = np.argwhere(covers & ~reaches)

    def wrap(outcome):
        holds, item = outcome
        return (True, None) if holds else (False, item if isinstance(item, tuple) else (item,))

    return {
        "principal": wrap(_first_failure(lambda x: any(right_ideal[x] == right_ideal[p] for p in proj), range(n))),
        "rickart": wrap(_first_failure(lambda x: any(right_ann[x] == right_ideal[p] for p in proj), range(n))),
        "p-injective": wrap(_first_failure(lr_is_ra, range(n))),
        "trivial-meet": wrap(_first_failure(trivially_meets, range(n))),
        "stable-range": (True, None) if not len(bad) else (False, (int(bad[0][0]), int(bad[0][1]))),
    }


@pytest.mark.parametrize("s", _QUICK, ids=lambda s: s.label)
def test_ideal_conditions_match_brute_force(s):
    expected = _brute_outcomes(s)
    assert condition_principal_by_projection(s) == expected["principal"]
    assert condition_rickart(s) == expected["rickart"]
    assert condition_right_p_injective(s) == expected["p-injective"]
    assert condition_clean_with_trivial_intersection(s) == expected["trivial-meet"]
    assert condition_stable_range_one(s) == expected["stable-range"]


def test_order_256_ring_classifies_within_budget():
    s = _m2(_z(4))
    assert s.order == 256
    start = time.perf_counter()
    report = classify_ring(s)
    assert time.perf_counter() - start < 60
    assert not report.verdict("strongly-star-clean")
    assert report.verdict("stable-range-one")
    assert not report.verdict("regular")
