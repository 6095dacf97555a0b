from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from .algebra import projections
from .classify import (
    IMPLICATION_DIAGRAM,
    WITNESS_MODES,
    Outcome,
    Witness,
    all_have_witness,
    condition_boolean,
    condition_clean_with_trivial_intersection,
    condition_left_ideal_absorbs_norm,
    condition_local,
    condition_norm_sum,
    condition_principal_by_projection,
    condition_projections_are_idempotents,
    condition_proper,
    condition_regular,
    condition_rickart,
    condition_right_p_injective,
    condition_stable_range_one,
    condition_star_abelian,
    condition_unit_regular,
    is_predicate,
    oracle_witness,
    verify_witness,
    witness_table,
)
from .errors import InvalidParameter, SizeCapExceeded
from .rings import (
    DEFAULT_MAX_ORDER,
    CornerRing,
    StarRing,
    check_matrix_cap,
    encode_matrix,
    make_corner_ring,
    make_matrix_star_ring,
)

logger = logging.getLogger(__name__)

VALID_STATUSES = {"verified", "violated", "skipped"}
DEFAULT_MATRIX_SIZE = 2
ORACLE_ORDER_LIMIT = 16

# Remark-style questions the implication diagram leaves open, as (stronger, weaker) pairs.
QUESTION_PAIRS = (
    ("star-clean", "clean"),
    ("strongly-star-clean", "star-unit-regular"),
)
DIAGRAM_EDGES = IMPLICATION_DIAGRAM


@dataclass(frozen=True)
class ClaimParams:
    n: int = DEFAULT_MATRIX_SIZE
    projection: int | None = None
    max_order: int = DEFAULT_MAX_ORDER


@dataclass
class ClaimVerdict:
    claim: str
    ring: str
    status: str  # verified | violated | skipped
    detail: str
    vacuous: bool = False
    witness: tuple[int, ...] | None = None
    seconds: float | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = list(self.witness) if self.witness is not None else None
        if self.seconds is None:
            out.pop("seconds")
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ClaimVerdict:
        witness = data.get("witness")
        if data["status"] not in VALID_STATUSES:
            raise ValueError(f"unknown claim status {data['status']!r}")
        return cls(
            claim=data["claim"],
            ring=data["ring"],
            status=data["status"],
            detail=data["detail"],
            vacuous=bool(data.get("vacuous", False)),
            witness=tuple(int(v) for v in witness) if witness is not None else None,
            seconds=data.get("seconds"),
        )


@dataclass
class CorpusEntry:
    label: str
    star_ring: StarRing | None
    provenance: str
    spec: Any = None
    error: str | None = None


def _verified(claim: str, s: StarRing, detail: str, *, vacuous: bool = False) -> ClaimVerdict:
    return ClaimVerdict(claim=claim, ring=s.label, status="verified", detail=detail, vacuous=vacuous)


def _violated(claim: str, s: StarRing, detail: str, witness: tuple[int, ...] | None) -> ClaimVerdict:
    return ClaimVerdict(claim=claim, ring=s.label, status="violated", detail=detail, witness=witness)


def _skipped(claim: str, label: str, reason: str) -> ClaimVerdict:
    return ClaimVerdict(claim=claim, ring=label, status="skipped", detail=reason)


def _equivalence(claim: str, s: StarRing, sides: dict[str, Outcome]) -> ClaimVerdict:
    """All named conditions must hold together or fail together."""
    values = {name: outcome[0] for name, outcome in sides.items()}
    shown = ", ".join(f"{name}={'T' if v else 'F'}" for name, v in values.items())
    if len(set(values.values())) == 1:
        return _verified(claim, s, f"all sides agree: {shown}")
    counter = next(outcome[1] for outcome in sides.values() if not outcome[0])
    return _violated(claim, s, f"sides disagree: {shown}", counter)


def _implication(claim: str, s: StarRing, hypothesis: Outcome, conclusion: Outcome, text: str) -> ClaimVerdict:
    if not hypothesis[0]:
        return _verified(claim, s, f"hypothesis fails; {text} holds vacuously", vacuous=True)
    if conclusion[0]:
        return _verified(claim, s, text)
    return _violated(claim, s, f"hypothesis holds but conclusion fails: {text}", conclusion[1])


def _both(first: Outcome, second: Outcome) -> Outcome:
    if not first[0]:
        return first
    return second


# --- shared constructions -------------------------------------------------------


def corner_of(s: StarRing, p: int) -> CornerRing:
    return s.cached(("corner", p), lambda: make_corner_ring(s, p))


def matrix_over(s: StarRing, n: int, *, max_order: int) -> StarRing:
    if n < 1:
        raise InvalidParameter(f"matrix size n must be a positive integer, got {n}")
    check_matrix_cap(f"M{n}({s.label})", s.order, n, max_order)
    return s.cached(("matrix", n), lambda: make_matrix_star_ring(s, n, max_order=max_order))


def _selected_projections(s: StarRing, params: ClaimParams) -> tuple[int, ...]:
    if params.projection is None:
        return projections(s)
    corner_of(s, params.projection)
    return (params.projection,)


def lift_corner_witness(corner: CornerRing, parts: tuple[int, int]) -> tuple[int, int]:
    """(e, u) in pRp becomes (e + (1-p), u - (1-p)) in R."""
    r = corner.parent.ring
    complement = r.sub(r.one, corner.projection)
    e, u = corner.lift(parts[0]), corner.lift(parts[1])
    return int(r.add[e, complement]), r.sub(u, complement)


def restrict_corner_witness(corner: CornerRing, parts: tuple[int, int]) -> tuple[int, int] | None:
    """(e, u) in R becomes (pep, pup) in pRp; None if either lands outside the corner."""
    r = corner.parent.ring
    p = corner.projection
    e, u = parts
    pep = corner.index_of(int(r.mul[r.mul[p, e], p]))
    pup = corner.index_of(int(r.mul[r.mul[p, u], p]))
    if pep is None or pup is None:
        return None
    return pep, pup


# --- claim checkers -------------------------------------------------------------


def check_thm_corner(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    """Strong *-cleanness of a in pRp agrees between R and pRp, with both witness transfers re-verified."""
    claim = "thm-corner"
    mode = "strongly-star-clean"
    in_ring = witness_table(s, mode)
    checked = 0
    for p in _selected_projections(s, params):
        corner = corner_of(s, p)
        in_corner = witness_table(corner.star_ring, mode)
        for i in range(corner.star_ring.order):
            a = corner.lift(i)
            checked += 1
            ring_parts = tuple(int(v) for v in in_ring[a])
            corner_parts = tuple(int(v) for v in in_corner[i])
            if (ring_parts[0] >= 0) != (corner_parts[0] >= 0):
                return _violated(
                    claim,
                    s,
                    f"a={a} at p={p}: strongly *-clean in R is {ring_parts[0] >= 0}, in pRp is {corner_parts[0] >= 0}",
                    (p, a),
                )
            if corner_parts[0] < 0:
                continue
            lifted = lift_corner_witness(corner, corner_parts)
            if not verify_witness(s, Witness(mode=mode, element=a, parts=lifted)):
                return _violated(claim, s, f"lifted corner witness {lifted} fails for a={a} at p={p}", (p, a, *lifted))
            restricted = restrict_corner_witness(corner, ring_parts)
            if restricted is None or not verify_witness(
                corner.star_ring, Witness(mode=mode, element=i, parts=restricted)
            ):
                return _violated(
                    claim, s, f"restricted witness of {ring_parts} fails for a={a} at p={p}", (p, a, *ring_parts)
                )
    return _verified(claim, s, f"{checked} corner elements agree and both witness transfers re-verify")


def check_cor_corner(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "cor-corner"
    if not is_predicate(s, "strongly-star-clean").verdict:
        return _verified(claim, s, "ring is not strongly *-clean; holds vacuously", vacuous=True)
    for p in _selected_projections(s, params):
        corner = corner_of(s, p)
        holds, counter = all_have_witness(corner.star_ring, "strongly-star-clean")
        if not holds:
            a = corner.lift(counter[0])
            return _violated(claim, s, f"corner at p={p} fails strong *-cleanness at a={a}", (p, a))
    return _verified(claim, s, "every corner pRp is strongly *-clean")


def check_thm_char(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    return _equivalence(
        "thm-char",
        s,
        {
            "strongly-star-clean": all_have_witness(s, "strongly-star-clean"),
            "strongly-clean+P=Id": _both(
                all_have_witness(s, "strongly-clean"), condition_projections_are_idempotents(s)
            ),
        },
    )


def _e11_plus_e12(s: StarRing, n: int) -> int:
    r = s.ring
    entries = [[r.zero] * n for _ in range(n)]
    entries[0][0] = r.one
    entries[0][1] = r.one
    return encode_matrix(entries, s.order)


def check_cor_matrix(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "cor-matrix"
    n = params.n
    if n < 2 or s.order == 1:
        return _verified(claim, s, f"needs a nonzero base and n >= 2 (n={n}); holds vacuously", vacuous=True)
    m = matrix_over(s, n, max_order=params.max_order)
    x = _e11_plus_e12(s, n)
    mr = m.ring
    if int(mr.mul[x, x]) != x or int(m.star[x]) == x:
        return _violated(claim, s, f"E11+E12 (id {x}) is not an idempotent non-projection in {m.label}", (x,))
    holds, _ = all_have_witness(m, "strongly-star-clean")
    if holds:
        return _violated(claim, s, f"{m.label} is strongly *-clean", (x,))
    return _verified(claim, s, f"{m.label}: E11+E12 (id {x}) is idempotent but not a projection; not strongly *-clean")


def check_ex_swap(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "ex-swap"
    if not s.ring.is_commutative():
        return _verified(claim, s, "ring is not commutative; holds vacuously", vacuous=True)
    star_clean = all_have_witness(s, "star-clean")
    strongly = all_have_witness(s, "strongly-star-clean")
    if star_clean[0] != strongly[0]:
        return _violated(claim, s, "commutative ring where *-clean and strongly *-clean differ", star_clean[1] or strongly[1])
    boolean = condition_boolean(s)[0]
    p_is_id = condition_projections_are_idempotents(s)
    if boolean and not p_is_id[0]:
        if star_clean[0]:
            return _violated(claim, s, "boolean ring with P != Id is *-clean", p_is_id[1])
        return _verified(claim, s, f"boolean, P != Id (idempotent {p_is_id[1][0]} is not a projection); not *-clean")
    return _verified(claim, s, f"commutative: *-clean = strongly *-clean = {star_clean[0]}")


def check_prop_pinj(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    proper = condition_proper(s)
    return _equivalence(
        "prop-pinj",
        s,
        {
            "regular+proper": _both(condition_regular(s), proper),
            "p-injective+proper": _both(condition_right_p_injective(s), proper),
            "Ra=Ra*a": condition_left_ideal_absorbs_norm(s),
        },
    )


def check_prop_sreg(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    strongly_regular = all_have_witness(s, "eu-two-sided")
    return _equivalence(
        "prop-sreg",
        s,
        {
            "strongly-regular+proper": _both(strongly_regular, condition_proper(s)),
            "strongly-regular+P=Id": _both(strongly_regular, condition_projections_are_idempotents(s)),
            "star-abelian+p+u": _both(condition_star_abelian(s), condition_clean_with_trivial_intersection(s)),
            "a=pu=up": all_have_witness(s, "pu-two-sided"),
        },
    )


def check_thm_sur(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    unit_regular = condition_unit_regular(s)
    star_regular = _both(condition_regular(s), condition_proper(s))
    return _equivalence(
        "thm-sur",
        s,
        {
            "unit-regular+proper": _both(unit_regular, condition_proper(s)),
            "unit-regular+star-regular": _both(unit_regular, star_regular),
            "a=pu": all_have_witness(s, "pu"),
            "a=vq": all_have_witness(s, "up"),
        },
    )


def check_prop_matrix_sur(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "prop-matrix-sur"
    m = matrix_over(s, params.n, max_order=params.max_order)
    direct = all_have_witness(m, "pu")
    criterion = _both(condition_unit_regular(s), condition_norm_sum(s, params.n))
    shown = f"{m.label} *-unit regular={direct[0]}, base criterion={criterion[0]}"
    if direct[0] == criterion[0]:
        return _verified(claim, s, shown)
    counter = direct[1] if not direct[0] else criterion[1]
    return _violated(claim, s, f"disagreement: {shown}", counter)


def check_ex_m2z2(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    """Any a != 0 with a*a + a*a = 0 makes [[a,0],[a,0]] a nonzero matrix with A*A = 0."""
    claim = "ex-m2z2"
    r = s.ring
    ar = np.arange(r.order)
    norms = r.mul[s.star, ar]
    hits = np.flatnonzero((r.add[norms, norms] == r.zero) & (ar != r.zero))
    if not len(hits):
        return _verified(claim, s, "no a != 0 with a*a + a*a = 0; holds vacuously", vacuous=True)
    a = int(hits[0])
    m = matrix_over(s, 2, max_order=params.max_order)
    x = encode_matrix([[a, r.zero], [a, r.zero]], s.order)
    mr = m.ring
    if int(mr.mul[m.star[x], x]) != mr.zero:
        return _violated(claim, s, f"A=[[{a},0],[{a},0]] (id {x}) has A*A != 0", (x,))
    if all_have_witness(m, "pu")[0]:
        return _violated(claim, s, f"{m.label} is *-unit regular despite improper A (id {x})", (x,))
    return _verified(claim, s, f"{m.label}: A=[[{a},0],[{a},0]] (id {x}) is nonzero with A*A = 0; not *-unit regular")


def check_prop_corner_sur(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "prop-corner-sur"
    if not all_have_witness(s, "pu")[0]:
        return _verified(claim, s, "ring is not *-unit regular; holds vacuously", vacuous=True)
    for p in _selected_projections(s, params):
        corner = corner_of(s, p)
        holds, counter = all_have_witness(corner.star_ring, "pu")
        if not holds:
            return _violated(claim, s, f"corner at p={p} is not *-unit regular", (p, corner.lift(counter[0])))
    return _verified(claim, s, "every corner pRp is *-unit regular")


def check_note_local(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    return _implication(
        "note-local", s, condition_local(s), all_have_witness(s, "strongly-star-clean"), "local => strongly *-clean"
    )


def check_note_star_abelian(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    hypothesis = _both(condition_star_abelian(s), _both(condition_regular(s), condition_proper(s)))
    return _implication(
        "note-star-abelian",
        s,
        hypothesis,
        all_have_witness(s, "strongly-star-clean"),
        "*-abelian and *-regular => strongly *-clean",
    )


def check_note_star_regular(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    regular = condition_regular(s)
    return _equivalence(
        "note-star-regular",
        s,
        {
            "regular+rickart": _both(regular, condition_rickart(s)),
            "regular+proper": _both(regular, condition_proper(s)),
            "xR=pR": condition_principal_by_projection(s),
        },
    )


def check_note_unit_regular_clean(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    return _implication(
        "note-unit-regular-clean", s, condition_unit_regular(s), all_have_witness(s, "clean"), "unit regular => clean"
    )


def check_note_stable_range(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    return _implication(
        "note-stable-range",
        s,
        condition_unit_regular(s),
        condition_stable_range_one(s),
        "unit regular => stable range 1",
    )


def check_note_matrix_star_clean(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "note-matrix-star-clean"
    if not all_have_witness(s, "star-clean")[0]:
        return _verified(claim, s, "ring is not *-clean; holds vacuously", vacuous=True)
    m = matrix_over(s, params.n, max_order=params.max_order)
    holds, counter = all_have_witness(m, "star-clean")
    if not holds:
        return _violated(claim, s, f"{m.label} is not *-clean", counter)
    return _verified(claim, s, f"{m.label} is *-clean")


def check_search_oracle(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "search-oracle"
    if s.order > ORACLE_ORDER_LIMIT:
        return _skipped(claim, s.label, f"order {s.order} is above the oracle limit {ORACLE_ORDER_LIMIT}")
    for mode in WITNESS_MODES:
        table = witness_table(s, mode)
        for a in s.ring.elements():
            expected = oracle_witness(s, a, mode)
            e, u = (int(v) for v in table[a])
            got = (e, u) if e >= 0 else None
            if got != expected.parts:
                return _violated(
                    claim, s, f"mode {mode}, a={a}: search gave {got}, oracle gave {expected.parts}", (a,)
                )
            if got is not None and not verify_witness(s, Witness(mode=mode, element=a, parts=got)):
                return _violated(claim, s, f"mode {mode}, a={a}: witness {got} does not re-verify", (a, *got))
    return _verified(claim, s, f"search and oracle agree on {s.order} elements in {len(WITNESS_MODES)} modes")


def check_sanity_finite(s: StarRing, params: ClaimParams) -> ClaimVerdict:
    claim = "sanity-finite"
    holds, counter = condition_stable_range_one(s)
    if not holds:
        return _violated(claim, s, f"stable range 1 fails at a={counter[0]}, b={counter[1]}", counter)
    inner = check_note_unit_regular_clean(s, params)
    if inner.status == "violated":
        return _violated(claim, s, inner.detail, inner.witness)
    return _verified(claim, s, "stable range 1 holds; unit regular => clean holds")


CLAIM_REGISTRY: dict[str, Callable[[StarRing, ClaimParams], ClaimVerdict]] = {
    "thm-corner": check_thm_corner,
    "cor-corner": check_cor_corner,
    "thm-char": check_thm_char,
    "cor-matrix": check_cor_matrix,
    "ex-swap": check_ex_swap,
    "prop-pinj": check_prop_pinj,
    "prop-sreg": check_prop_sreg,
    "thm-sur": check_thm_sur,
    "prop-matrix-sur": check_prop_matrix_sur,
    "ex-m2z2": check_ex_m2z2,
    "prop-corner-sur": check_prop_corner_sur,
    "note-local": check_note_local,
    "note-star-abelian": check_note_star_abelian,
    "note-star-regular": check_note_star_regular,
    "note-unit-regular-clean": check_note_unit_regular_clean,
    "note-stable-range": check_note_stable_range,
    "note-matrix-star-clean": check_note_matrix_star_clean,
    "search-oracle": check_search_oracle,
    "sanity-finite": check_sanity_finite,
}


def available_claim_ids() -> list[str]:
    return list(CLAIM_REGISTRY.keys())


def validate_claim_ids(claim_ids: list[str]) -> list[str]:
    return [claim_id for claim_id in claim_ids if claim_id not in CLAIM_REGISTRY]


def check_claim(
    s: StarRing,
    claim_id: str,
    *,
    n: int = DEFAULT_MATRIX_SIZE,
    projection: int | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> ClaimVerdict:
    if claim_id not in CLAIM_REGISTRY:
        raise InvalidParameter(f"unknown claim {claim_id!r}; expected one of: {', '.join(CLAIM_REGISTRY)}")
    params = ClaimParams(n=n, projection=projection, max_order=max_order)
    try:
        return CLAIM_REGISTRY[claim_id](s, params)
    except SizeCapExceeded as err:
        return _skipped(claim_id, s.label, str(err))


# --- suite ----------------------------------------------------------------------


@dataclass
class SuiteReport:
    corpus: str
    cells: list[ClaimVerdict] = field(default_factory=list)

    def summary(self) -> dict[str, int]:
        counts = {"verified": 0, "violated": 0, "skipped": 0, "vacuous": 0}
        for cell in self.cells:
            counts[cell.status] += 1
            if cell.vacuous:
                counts["vacuous"] += 1
        return counts

    def exit_code(self) -> int:
        return 1 if self.summary()["violated"] else 0

    def to_dict(self) -> dict:
        return {
            "corpus": self.corpus,
            "summary": self.summary(),
            "cells": [cell.to_dict() for cell in self.cells],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SuiteReport:
        return cls(corpus=data["corpus"], cells=[ClaimVerdict.from_dict(c) for c in data["cells"]])


def _run_cell(entry: CorpusEntry, claim_id: str, params: ClaimParams, timing: bool) -> ClaimVerdict:
    if entry.star_ring is None:
        return _skipped(claim_id, entry.label, entry.error or "entry could not be built")
    logger.debug("suite cell start %s / %s", claim_id, entry.label)
    start = time.perf_counter()
    verdict = check_claim(
        entry.star_ring, claim_id, n=params.n, projection=params.projection, max_order=params.max_order
    )
    if timing:
        verdict.seconds = round(time.perf_counter() - start, 6)
    logger.debug("suite cell done %s / %s: %s", claim_id, entry.label, verdict.status)
    return verdict


def run_claim_suite(
    corpus: list[CorpusEntry],
    *,
    corpus_name: str = "custom",
    claims: list[str] | None = None,
    workers: int = 1,
    max_order: int = DEFAULT_MAX_ORDER,
    timing: bool = False,
) -> SuiteReport:
    claim_ids = list(claims) if claims is not None else available_claim_ids()
    unknown = validate_claim_ids(claim_ids)
    if unknown:
        raise InvalidParameter(f"Unknown claim ids: {', '.join(unknown)}")
    if workers < 1:
        raise InvalidParameter(f"workers must be a positive integer, got {workers}")

    params = ClaimParams(max_order=max_order)
    rank = {claim_id: i for i, claim_id in enumerate(available_claim_ids())}
    jobs = sorted(
        ((claim_id, index, entry) for claim_id in claim_ids for index, entry in enumerate(corpus)),
        key=lambda job: (rank[job[0]], job[2].label, job[1]),
    )
    if workers == 1:
        cells = [_run_cell(entry, claim_id, params, timing) for claim_id, _, entry in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, entry, claim_id, params, timing) for claim_id, _, entry in jobs]
            cells = [future.result() for future in futures]

    report = SuiteReport(corpus=corpus_name, cells=cells)
    logger.info("suite %s: %s", corpus_name, report.summary())
    return report


# --- separation search ----------------------------------------------------------


@dataclass
class SearchResult:
    stronger: str
    weaker: str
    found: str | None
    counterwitness: tuple[int, ...] | None
    searched: int
    skipped: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["counterwitness"] = list(self.counterwitness) if self.counterwitness is not None else None
        return out

    @classmethod
    def from_dict(cls, data: dict) -> SearchResult:
        counter = data.get("counterwitness")
        return cls(
            stronger=data["stronger"],
            weaker=data["weaker"],
            found=data.get("found"),
            counterwitness=tuple(int(v) for v in counter) if counter is not None else None,
            searched=int(data["searched"]),
            skipped=int(data["skipped"]),
        )


def separation_search(corpus: list[CorpusEntry], stronger: str, weaker: str) -> SearchResult:
    """First corpus ring where ``weaker`` holds and ``stronger`` fails, in corpus order."""
    searched = skipped = 0
    for entry in corpus:
        if entry.star_ring is None:
            skipped += 1
            continue
        searched += 1
        s = entry.star_ring
        if not is_predicate(s, weaker).verdict:
            continue
        failing = is_predicate(s, stronger)
        if not failing.verdict:
            logger.debug("separation %s / %s found at %s", weaker, stronger, entry.label)
            return SearchResult(stronger, weaker, entry.label, failing.counterwitness, searched, skipped)
    return SearchResult(stronger, weaker, None, None, searched, skipped)


def separation_pairs() -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    for pair in DIAGRAM_EDGES + QUESTION_PAIRS:
        if pair not in out:
            out.append(pair)
    return out
