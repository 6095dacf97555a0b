from __future__ import annotations

import pytest

from starclean.classify import decomposition_witness, verify_witness, Witness
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
from starclean.theorems import (
    ClaimVerdict,
    CorpusEntry,
    SearchResult,
    SuiteReport,
    available_claim_ids,
    check_claim,
    corner_of,
    lift_corner_witness,
    restrict_corner_witness,
    run_claim_suite,
    separation_pairs,
    separation_search,
)


def _z(n: int):
    ring = make_zmod(n)
    return attach_involution(ring, identity_involution(ring))


def _swap_z2xz2():
    return attach_involution(make_product(make_zmod(2), make_zmod(2)), swap_involution(2), label="Z2xZ2^swap")


def _gf4_frob():
    return attach_involution(make_gf(4), frobenius_involution(4), label="GF(4)^frob")


def _entries(*rings):
    return [CorpusEntry(label=s.label, star_ring=s, provenance="test") for s in rings]


def test_claim_registry_order():
    ids = available_claim_ids()
    assert ids[:4] == ["thm-corner", "cor-corner", "thm-char", "cor-matrix"]
    assert "search-oracle" in ids and "sanity-finite" in ids
    assert len(ids) == len(set(ids)) == 19


def test_unknown_claim_is_rejected():
    with pytest.raises(InvalidParameter):
        check_claim(_z(2), "thm-nope")


def test_swap_example_is_verified_and_explains_itself():
    verdict = check_claim(_swap_z2xz2(), "ex-swap")
    assert verdict.status == "verified"
    assert "not *-clean" in verdict.detail
    assert not verdict.vacuous


def test_characterization_holds_on_both_sides_false_and_true():
    for s in (_z(4), _swap_z2xz2(), _gf4_frob(), make_matrix_star_ring(_z(2), 2)):
        assert check_claim(s, "thm-char").status == "verified"


@pytest.mark.parametrize("base", [_z(2), _z(3), _z(4), _swap_z2xz2()], ids=lambda s: s.label)
def test_matrix_corollary_at_size_two(base):
    verdict = check_claim(base, "cor-matrix")
    assert verdict.status == "verified"
    assert "E11+E12" in verdict.detail


def test_matrix_corollary_is_vacuous_on_the_zero_ring_and_n_one():
    assert check_claim(_z(1), "cor-matrix").vacuous
    assert check_claim(_z(2), "cor-matrix", n=1).vacuous


def test_matrix_claim_beyond_cap_is_skipped():
    verdict = check_claim(_z(4), "cor-matrix", n=3)
    assert verdict.status == "skipped"
    assert "size cap" in verdict.detail


@pytest.mark.parametrize("n", [120, 30000])
def test_huge_matrix_size_is_skipped_with_a_symbolic_order(n):
    verdict = check_claim(_z(2), "cor-matrix", n=n)
    assert verdict.status == "skipped"
    assert f"order 2^{n * n}, above the size cap 4096" in verdict.detail
    for claim in ("prop-matrix-sur", "note-matrix-star-clean"):
        assert check_claim(_z(3), claim, n=n).status == "skipped"


def test_improper_matrix_example_over_z2():
    verdict = check_claim(_z(2), "ex-m2z2")
    assert verdict.status == "verified"
    assert verdict.witness is None
    assert "id 5" in verdict.detail


def test_improper_matrix_example_is_vacuous_over_z3():
    assert check_claim(_z(3), "ex-m2z2").vacuous


@pytest.mark.parametrize(
    ("base", "expected"),
    [(_z(3), "True"), (_z(2), "False"), (_gf4_frob(), "False")],
    ids=["Z3", "Z2", "GF4frob"],
)
def test_matrix_star_unit_regularity_criterion(base, expected):
    verdict = check_claim(base, "prop-matrix-sur")
    assert verdict.status == "verified"
    assert f"*-unit regular={expected}" in verdict.detail
    assert f"base criterion={expected}" in verdict.detail


def test_equivalence_claims_hold_on_edge_rings():
    for claim in ("prop-pinj", "prop-sreg", "thm-sur", "note-star-regular"):
        for s in (_z(4), _gf4_frob(), _swap_z2xz2(), _z(1)):
            assert check_claim(s, claim).status == "verified", (claim, s.label)


def test_corner_transfer_on_m2z2():
    s = make_matrix_star_ring(_z(2), 2)
    verdict = check_claim(s, "thm-corner")
    assert verdict.status == "verified"
    assert check_claim(s, "thm-corner", projection=1).status == "verified"


def test_corner_witness_round_trip():
    s = make_matrix_star_ring(_z(2), 2)
    corner = corner_of(s, 1)
    a = corner.lift(1)
    w = decomposition_witness(corner.star_ring, 1, "strongly-star-clean")
    lifted = lift_corner_witness(corner, w.parts)
    assert verify_witness(s, Witness(mode="strongly-star-clean", element=a, parts=lifted))
    restricted = restrict_corner_witness(corner, lifted)
    assert restricted is not None
    assert verify_witness(corner.star_ring, Witness(mode="strongly-star-clean", element=1, parts=restricted))


def test_corner_of_is_cached():
    s = make_matrix_star_ring(_z(2), 2)
    assert corner_of(s, 8) is corner_of(s, 8)


def test_oracle_claim_skips_large_rings():
    s = make_matrix_star_ring(_z(3), 2)
    verdict = check_claim(s, "search-oracle")
    assert verdict.status == "skipped"
    assert check_claim(_swap_z2xz2(), "search-oracle").status == "verified"


def test_sanity_battery():
    for s in (_z(6), _z(8), make_matrix_star_ring(_z(2), 2)):
        assert check_claim(s, "sanity-finite").status == "verified"


def test_suite_on_small_corpus_has_no_violations():
    report = run_claim_suite(_entries(_z(2), _z(4), _swap_z2xz2(), _gf4_frob()), corpus_name="mini")
    summary = report.summary()
    assert summary["violated"] == 0
    assert report.exit_code() == 0
    assert len(report.cells) == 4 * len(available_claim_ids())


def test_suite_cells_are_ordered_by_claim_then_label():
    report = run_claim_suite(_entries(_z(3), _z(2)), claims=["thm-char", "ex-swap"])
    assert [(c.claim, c.ring) for c in report.cells] == [
        ("thm-char", "Z2"),
        ("thm-char", "Z3"),
        ("ex-swap", "Z2"),
        ("ex-swap", "Z3"),
    ]


def test_suite_skips_entries_that_failed_to_build():
    broken = CorpusEntry(label="M2(GF(9))", star_ring=None, provenance="test", error="too big")
    report = run_claim_suite([broken], claims=["thm-char"])
    assert report.cells[0].status == "skipped"
    assert report.cells[0].detail == "too big"


def test_suite_is_identical_across_thread_counts():
    corpus = build_corpus("quick")
    one = run_claim_suite(corpus, corpus_name="quick", workers=1)
    four = run_claim_suite(corpus, corpus_name="quick", workers=4)
    assert one.to_dict() == four.to_dict()
    assert one.summary()["violated"] == 0


def test_suite_rejects_bad_arguments():
    with pytest.raises(InvalidParameter):
        run_claim_suite([], claims=["nope"])
    with pytest.raises(InvalidParameter):
        run_claim_suite([], workers=0)


def test_timing_is_opt_in():
    entries = _entries(_z(2))
    plain = run_claim_suite(entries, claims=["thm-char"])
    timed = run_claim_suite(entries, claims=["thm-char"], timing=True)
    assert "seconds" not in plain.cells[0].to_dict()
    assert timed.cells[0].seconds is not None


def test_separation_search_finds_swap_ring():
    corpus = _entries(_z(2), _z(4), _swap_z2xz2())
    result = separation_search(corpus, "star-clean", "clean")
    assert result.found == "Z2xZ2^swap"
    assert result.searched == 3


def test_separation_search_reports_nothing_found():
    result = separation_search(_entries(_z(2), _z(3)), "strongly-clean", "clean")
    assert result.found is None
    assert result.counterwitness is None
    assert result.searched == 2


def test_star_unit_regular_without_strong_star_cleanness():
    corpus = _entries(_z(2), make_matrix_star_ring(_z(3), 2))
    result = separation_search(corpus, "strongly-star-clean", "star-unit-regular")
    assert result.found == "M2(Z3)"


def test_separation_pairs_cover_diagram_and_questions():
    pairs = separation_pairs()
    assert ("star-clean", "clean") in pairs
    assert ("strongly-star-clean", "star-unit-regular") in pairs
    assert len(pairs) == len(set(pairs))


def test_verdict_and_report_dict_forms():
    verdict = ClaimVerdict(claim="thm-char", ring="Z2", status="verified", detail="ok")
    assert ClaimVerdict.from_dict(verdict.to_dict()) == verdict
    with pytest.raises(ValueError):
        ClaimVerdict.from_dict({**verdict.to_dict(), "status": "maybe"})
    report = SuiteReport(corpus="mini", cells=[verdict])
    assert report.to_dict()["summary"] == {"verified": 1, "violated": 0, "skipped": 0, "vacuous": 0}
    result = SearchResult("star-clean", "clean", "Z2xZ2^swap", (1,), 3, 0)
    assert SearchResult.from_dict(result.to_dict()) == result


@pytest.mark.slow
def test_default_corpus_has_no_violations():
    report = run_claim_suite(build_corpus("default"), corpus_name="default")
    assert report.summary()["violated"] == 0
