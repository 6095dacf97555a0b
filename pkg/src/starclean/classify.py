from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .algebra import (
    central_idempotents,
    idempotents,
    principal_ideal_masks,
    projections,
    unit_mask,
    units,
)
from .errors import ConsistencyError, InvalidParameter
from .rings import FiniteRing, StarRing

logger = logging.getLogger(__name__)

DECOMPOSITION_MODES = ("clean", "strongly-clean", "star-clean", "strongly-star-clean")
FACTORIZATION_MODES = ("pu", "up", "pu-two-sided", "eu-two-sided")
WITNESS_MODES = DECOMPOSITION_MODES + FACTORIZATION_MODES

# (stronger, weaker): a ring with the first property always has the second.
IMPLICATION_DIAGRAM = (
    ("strongly-star-clean", "star-clean"),
    ("strongly-star-clean", "strongly-clean"),
    ("star-clean", "clean"),
    ("strongly-clean", "clean"),
)


@dataclass(frozen=True)
class Witness:
    # parts = (e, u): e the idempotent or projection, u the unit, whatever the product order of the mode
    mode: str
    element: int
    parts: tuple[int, int] | None = None
    exhausted: bool = False

    @property
    def found(self) -> bool:
        return self.parts is not None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "element": self.element,
            "parts": list(self.parts) if self.parts is not None else None,
            "exhausted": self.exhausted,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Witness:
        parts = data.get("parts")
        return cls(
            mode=data["mode"],
            element=int(data["element"]),
            parts=(int(parts[0]), int(parts[1])) if parts is not None else None,
            exhausted=bool(data["exhausted"]),
        )


@dataclass(frozen=True)
class PredicateResult:
    name: str
    verdict: bool
    witness: Witness | None = None
    counterwitness: tuple[int, ...] | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = self.witness.to_dict() if self.witness is not None else None
        out["counterwitness"] = list(self.counterwitness) if self.counterwitness is not None else None
        return out

    @classmethod
    def from_dict(cls, data: dict) -> PredicateResult:
        witness = data.get("witness")
        counter = data.get("counterwitness")
        return cls(
            name=data["name"],
            verdict=bool(data["verdict"]),
            witness=Witness.from_dict(witness) if witness is not None else None,
            counterwitness=tuple(int(v) for v in counter) if counter is not None else None,
            note=data.get("note", ""),
        )


@dataclass(frozen=True)
class ClassificationReport:
    label: str
    order: int
    sizes: dict[str, int]
    results: tuple[PredicateResult, ...]

    def verdict(self, name: str) -> bool:
        for result in self.results:
            if result.name == name:
                return result.verdict
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "order": self.order,
            "sizes": dict(self.sizes),
            "results": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ClassificationReport:
        return cls(
            label=data["label"],
            order=int(data["order"]),
            sizes={k: int(v) for k, v in data["sizes"].items()},
            results=tuple(PredicateResult.from_dict(r) for r in data["results"]),
        )


def _check_mode(mode: str, allowed: tuple[str, ...]) -> None:
    if mode not in allowed:
        raise InvalidParameter(f"mode must be one of: {', '.join(allowed)}; got {mode!r}")


def _check_element(s: StarRing, a: int) -> None:
    if not 0 <= a < s.order:
        raise InvalidParameter(f"element {a} is not an id of {s.label} (order {s.order})")


# --- witness search -------------------------------------------------------------


def _first_pair_per_value(values: np.ndarray, valid: np.ndarray, order: int) -> np.ndarray:
    """For every element, the row-major first (row, col) of ``values`` equal to it, or -1."""
    flat = np.where(valid, values, -1).ravel()
    found, first = np.unique(flat, return_index=True)
    keep = found >= 0
    out = np.full((order, 2), -1, dtype=np.int64)
    rows, cols = np.divmod(first[keep], values.shape[1])
    out[found[keep], 0] = rows
    out[found[keep], 1] = cols
    return out


def _compute_witness_table(s: StarRing, mode: str) -> np.ndarray:
    r = s.ring
    uses_projections = mode in ("star-clean", "strongly-star-clean", "pu", "up", "pu-two-sided")
    left = np.asarray(projections(s) if uses_projections else idempotents(r), dtype=np.int64)
    right = np.asarray(units(r), dtype=np.int64)
    e, u = left[:, None], right[None, :]

    if mode in DECOMPOSITION_MODES:
        values = r.add[e, u]
        valid = np.ones(values.shape, dtype=bool)
        if mode.startswith("strongly"):
            valid = r.mul[e, u] == r.mul[u, e]
    elif mode == "up":
        values = r.mul[u, e]
        valid = np.ones(values.shape, dtype=bool)
    else:
        values = r.mul[e, u]
        valid = np.ones(values.shape, dtype=bool)
        if mode.endswith("two-sided"):
            valid = values == r.mul[u, e]

    idx = _first_pair_per_value(values, valid, r.order)
    table = np.full((r.order, 2), -1, dtype=np.int64)
    hit = idx[:, 0] >= 0
    table[hit, 0] = left[idx[hit, 0]]
    table[hit, 1] = right[idx[hit, 1]]
    table.setflags(write=False)
    return table


def witness_table(s: StarRing, mode: str) -> np.ndarray:
    """Smallest witness pair (e, u) for every element in one mode; -1 rows mean none."""
    _check_mode(mode, WITNESS_MODES)
    return s.cached(("witness-table", mode), lambda: _compute_witness_table(s, mode))


def _witness_from_table(s: StarRing, a: int, mode: str) -> Witness:
    _check_element(s, a)
    e, u = (int(v) for v in witness_table(s, mode)[a])
    if e < 0:
        return Witness(mode=mode, element=a, parts=None, exhausted=True)
    return Witness(mode=mode, element=a, parts=(e, u))


def decomposition_witness(s: StarRing, a: int, mode: str) -> Witness:
    """Smallest (e, u) with a = e + u, e idempotent or projection, u a unit (commuting in strong modes)."""
    _check_mode(mode, DECOMPOSITION_MODES)
    return _witness_from_table(s, a, mode)


def factorization_witness(s: StarRing, a: int, mode: str) -> Witness:
    _check_mode(mode, FACTORIZATION_MODES)
    return _witness_from_table(s, a, mode)


def verify_witness(s: StarRing, w: Witness) -> bool:
    if w.parts is None:
        return w.exhausted
    r = s.ring
    e, u = w.parts
    if not all(0 <= v < r.order for v in (e, u, w.element)):
        return False
    is_unit = _inverse_by_scan(r, u) >= 0
    is_idem = int(r.mul[e, e]) == e
    needs_projection = w.mode in ("star-clean", "strongly-star-clean", "pu", "up", "pu-two-sided")
    if not (is_unit and is_idem) or (needs_projection and int(s.star[e]) != e):
        return False
    eu, ue = int(r.mul[e, u]), int(r.mul[u, e])
    a = w.element
    if w.mode in DECOMPOSITION_MODES:
        return int(r.add[e, u]) == a and (not w.mode.startswith("strongly") or eu == ue)
    if w.mode == "up":
        return ue == a
    if w.mode == "pu":
        return eu == a
    return eu == a and ue == a


def _inverse_by_scan(r: FiniteRing, x: int) -> int:
    for y in range(r.order):
        if int(r.mul[x, y]) == r.one and int(r.mul[y, x]) == r.one:
            return y
    return -1


def oracle_witness(s: StarRing, a: int, mode: str) -> Witness:
    """Unpruned search over the full product R x R; no cached sets are consulted."""
    _check_mode(mode, WITNESS_MODES)
    r = s.ring
    n = r.order
    for e in range(n):
        for u in range(n):
            if mode in DECOMPOSITION_MODES:
                if int(r.add[e, u]) != a:
                    continue
            elif mode == "up":
                if int(r.mul[u, e]) != a:
                    continue
            elif int(r.mul[e, u]) != a:
                continue
            if mode.endswith("two-sided") and int(r.mul[u, e]) != a:
                continue
            if mode.startswith("strongly") and int(r.mul[e, u]) != int(r.mul[u, e]):
                continue
            if int(r.mul[e, e]) != e:
                continue
            if mode not in ("clean", "strongly-clean", "eu-two-sided") and int(s.star[e]) != e:
                continue
            if _inverse_by_scan(r, u) < 0:
                continue
            return Witness(mode=mode, element=a, parts=(e, u))
    return Witness(mode=mode, element=a, parts=None, exhausted=True)


# --- ring-level conditions ----------------------------------------------------------
# Each returns (holds, counterwitness) where the counterwitness is the smallest failure.

Outcome = tuple[bool, tuple[int, ...] | None]


def _first_false(mask: np.ndarray) -> Outcome:
    bad = np.flatnonzero(~mask)
    if len(bad):
        return False, (int(bad[0]),)
    return True, None


def all_have_witness(s: StarRing, mode: str) -> Outcome:
    return _first_false(witness_table(s, mode)[:, 0] >= 0)


def condition_regular(s: StarRing) -> Outcome:
    r = s.ring
    ar = np.arange(r.order)
    return _first_false((r.mul[r.mul, ar[:, None]] == ar[:, None]).any(axis=1))


def condition_unit_regular(s: StarRing) -> Outcome:
    r = s.ring
    ar = np.arange(r.order)[:, None]
    u = np.asarray(units(r), dtype=np.int64)[None, :]
    return _first_false((r.mul[r.mul[ar, u], ar] == ar).any(axis=1))


def condition_proper(s: StarRing) -> Outcome:
    r = s.ring
    ar = np.arange(r.order)
    norms = r.mul[s.star, ar]
    return _first_false((norms != r.zero) | (ar == r.zero))


def _packed_rows(mask: np.ndarray) -> np.ndarray:
    return np.packbits(mask, axis=1)


def _generated_by_projection(s: StarRing, rows: np.ndarray) -> Outcome:
    masks = principal_ideal_masks(s.ring, "right")
    targets = {row.tobytes() for row in _packed_rows(masks[list(projections(s))])}
    for x, row in enumerate(_packed_rows(rows)):
        if row.tobytes() not in targets:
            return False, (x,)
    return True, None


def condition_principal_by_projection(s: StarRing) -> Outcome:
    """For every x some projection p has xR = pR."""
    return _generated_by_projection(s, principal_ideal_masks(s.ring, "right"))


def condition_rickart(s: StarRing) -> Outcome:
    """For every x the right annihilator r(x) equals pR for a projection p."""
    return _generated_by_projection(s, s.ring.mul == s.ring.zero)


def condition_right_p_injective(s: StarRing) -> Outcome:
    """lr(a) = Ra for every a."""
    r = s.ring
    left = principal_ideal_masks(r, "left")
    um = unit_mask(r)
    # row y marks r(y); y is in l(r(a)) exactly when r(a) is contained in r(y)
    right_ann = _packed_rows(r.mul == r.zero)
    seen: dict[bytes, np.ndarray] = {}
    for a in np.flatnonzero(~um):
        key = right_ann[a].tobytes()
        if key not in seen:
            seen[key] = ~(right_ann[a][None, :] & ~right_ann).any(axis=1)
        if not (seen[key] == left[a]).all():
            return False, (int(a),)
    return True, None


def condition_left_ideal_absorbs_norm(s: StarRing) -> Outcome:
    r = s.ring
    left = principal_ideal_masks(r, "left")
    ar = np.arange(r.order)
    norms = r.mul[s.star, ar]
    return _first_false((left == left[norms]).all(axis=1))


def condition_stable_range_one(s: StarRing) -> Outcome:
    """aR + bR = R implies a + bt is a unit for some t; counterwitness (a, b)."""
    r = s.ring
    masks = principal_ideal_masks(r, "right")
    um = unit_mask(r)
    # both sides of the implication see b only through bR
    ideals, first_b = np.unique(_packed_rows(masks), axis=0, return_index=True)
    by_first = np.argsort(first_b)
    ideals, first_b = ideals[by_first], first_b[by_first]
    for a in np.flatnonzero(~um):
        complements = np.zeros(r.order, dtype=bool)
        complements[r.add[r.one, r.neg[np.flatnonzero(masks[a])]]] = True
        covers = (ideals & np.packbits(complements)).any(axis=1)
        reaches_unit = (ideals & np.packbits(um[r.add[a]])).any(axis=1)
        bad = np.flatnonzero(covers & ~reaches_unit)
        if len(bad):
            return False, (int(a), int(first_b[bad[0]]))
    return True, None


def _all_central(r: FiniteRing, candidates: tuple[int, ...]) -> Outcome:
    for e in candidates:
        differs = np.flatnonzero(r.mul[e, :] != r.mul[:, e])
        if len(differs):
            return False, (e, int(differs[0]))
    return True, None


def condition_abelian(s: StarRing) -> Outcome:
    return _all_central(s.ring, idempotents(s.ring))


def condition_star_abelian(s: StarRing) -> Outcome:
    return _all_central(s.ring, projections(s))


def condition_boolean(s: StarRing) -> Outcome:
    r = s.ring
    ar = np.arange(r.order)
    return _first_false(r.mul[ar, ar] == ar)


def condition_local(s: StarRing) -> Outcome:
    """The non-units form a two-sided ideal; counterwitness (x, y) with x, y non-units."""
    r = s.ring
    um = unit_mask(r)
    nu = np.flatnonzero(~um)
    if not len(nu):
        return True, None
    ar = np.arange(r.order)
    checks = (
        (nu, nu, um[r.add[np.ix_(nu, nu)]]),
        (nu, ar, um[r.mul[np.ix_(nu, ar)]]),
        (ar, nu, um[r.mul[np.ix_(ar, nu)]]),
    )
    for rows, cols, bad in checks:
        hit = np.argwhere(bad)
        if len(hit):
            return False, (int(rows[hit[0][0]]), int(cols[hit[0][1]]))
    return True, None


def condition_projections_are_idempotents(s: StarRing) -> Outcome:
    for e in idempotents(s.ring):
        if int(s.star[e]) != e:
            return False, (e,)
    return True, None


def condition_clean_with_trivial_intersection(s: StarRing) -> Outcome:
    """Every a is p + u (p projection, u unit) with aR and pR meeting only in 0."""
    r = s.ring
    masks = principal_ideal_masks(r, "right")
    um = unit_mask(r)
    p = np.asarray(projections(s), dtype=np.int64)
    nonzero = masks[p].copy()
    nonzero[:, r.zero] = False
    packed_p = _packed_rows(nonzero)
    packed = _packed_rows(masks)
    for a in range(r.order):
        differs_by_unit = um[r.add[a, r.neg[p]]]
        meets_only_zero = ~(packed[a][None, :] & packed_p).any(axis=1)
        if not (differs_by_unit & meets_only_zero).any():
            return False, (a,)
    return True, None


def condition_norm_sum(s: StarRing, n: int) -> Outcome:
    """a_1* a_1 + ... + a_n* a_n = 0 forces every a_i = 0; counterwitness is the first bad tuple."""
    r = s.ring
    ar = np.arange(r.order)
    norms = r.mul[s.star, ar]
    sums = norms.copy()
    tuples = ar[:, None]
    for _ in range(n - 1):
        sums = r.add[sums[:, None], norms[None, :]].ravel()
        tuples = np.concatenate(
            [np.repeat(tuples, r.order, axis=0), np.tile(ar, len(tuples))[:, None]], axis=1
        )
    nonzero = (tuples != r.zero).any(axis=1)
    bad = np.flatnonzero((sums == r.zero) & nonzero)
    if len(bad):
        return False, tuple(int(v) for v in tuples[bad[0]])
    return True, None


# --- predicates -----------------------------------------------------------------


def _from_outcome(name: str, outcome: Outcome, describe: Callable[[tuple[int, ...]], str]) -> PredicateResult:
    holds, counter = outcome
    if holds:
        return PredicateResult(name=name, verdict=True)
    return PredicateResult(name=name, verdict=False, counterwitness=counter, note=describe(counter))


def _clean_family(mode: str) -> Callable[[StarRing], PredicateResult]:
    def procedure(s: StarRing) -> PredicateResult:
        holds, counter = all_have_witness(s, mode)
        if holds:
            return PredicateResult(name=mode, verdict=True)
        a = counter[0]
        return PredicateResult(
            name=mode,
            verdict=False,
            witness=Witness(mode=mode, element=a, parts=None, exhausted=True),
            counterwitness=counter,
            note=f"element {a} has no {mode} decomposition",
        )

    return procedure


def _predicate_regular(s: StarRing) -> PredicateResult:
    return _from_outcome("regular", condition_regular(s), lambda c: f"no x with a x a = a for a={c[0]}")


def _predicate_unit_regular(s: StarRing) -> PredicateResult:
    return _from_outcome("unit-regular", condition_unit_regular(s), lambda c: f"no unit u with a u a = a for a={c[0]}")


def _predicate_strongly_regular(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "strongly-regular",
        all_have_witness(s, "eu-two-sided"),
        lambda c: f"no idempotent e and unit u with a = eu = ue for a={c[0]}",
    )


def _predicate_proper(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "proper-involution", condition_proper(s), lambda c: f"x={c[0]} is nonzero with x* x = 0"
    )


def _predicate_rickart(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "rickart", condition_rickart(s), lambda c: f"r(x) is not generated by a projection for x={c[0]}"
    )


def _predicate_star_regular(s: StarRing) -> PredicateResult:
    regular = condition_regular(s)
    proper = condition_proper(s)
    via_proper = regular[0] and proper[0]
    via_rickart = regular[0] and condition_rickart(s)[0]
    via_projection = condition_principal_by_projection(s)[0]
    if not via_proper == via_rickart == via_projection:
        raise ConsistencyError(
            f"*-regular conditions disagree on {s.label}: regular+proper={via_proper}, "
            f"regular+rickart={via_rickart}, xR=pR={via_projection}"
        )
    if via_proper:
        return PredicateResult(name="star-regular", verdict=True)
    if not regular[0]:
        counter = regular[1]
        note = f"not regular: no x with a x a = a for a={counter[0]}"
    else:
        counter = proper[1]
        note = f"involution not proper: x={counter[0]} is nonzero with x* x = 0"
    return PredicateResult(name="star-regular", verdict=False, counterwitness=counter, note=note)


def _predicate_star_unit_regular(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "star-unit-regular",
        all_have_witness(s, "pu"),
        lambda c: f"no projection p and unit u with a = pu for a={c[0]}",
    )


def _predicate_right_p_injective(s: StarRing) -> PredicateResult:
    return _from_outcome("right-p-injective", condition_right_p_injective(s), lambda c: f"lr(a) != Ra for a={c[0]}")


def _predicate_stable_range_one(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "stable-range-one",
        condition_stable_range_one(s),
        lambda c: f"aR + bR = R but no t makes a + bt a unit for a={c[0]}, b={c[1]}",
    )


def _predicate_abelian(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "abelian", condition_abelian(s), lambda c: f"idempotent e={c[0]} does not commute with x={c[1]}"
    )


def _predicate_star_abelian(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "star-abelian", condition_star_abelian(s), lambda c: f"projection p={c[0]} does not commute with x={c[1]}"
    )


def _predicate_boolean(s: StarRing) -> PredicateResult:
    return _from_outcome("boolean", condition_boolean(s), lambda c: f"x={c[0]} is not idempotent")


def _predicate_local(s: StarRing) -> PredicateResult:
    return _from_outcome(
        "local", condition_local(s), lambda c: f"non-units x={c[0]}, y={c[1]} combine to a unit"
    )


PREDICATE_REGISTRY: dict[str, Callable[[StarRing], PredicateResult]] = {
    "clean": _clean_family("clean"),
    "strongly-clean": _clean_family("strongly-clean"),
    "star-clean": _clean_family("star-clean"),
    "strongly-star-clean": _clean_family("strongly-star-clean"),
    "regular": _predicate_regular,
    "unit-regular": _predicate_unit_regular,
    "strongly-regular": _predicate_strongly_regular,
    "proper-involution": _predicate_proper,
    "rickart": _predicate_rickart,
    "star-regular": _predicate_star_regular,
    "star-unit-regular": _predicate_star_unit_regular,
    "right-p-injective": _predicate_right_p_injective,
    "stable-range-one": _predicate_stable_range_one,
    "abelian": _predicate_abelian,
    "star-abelian": _predicate_star_abelian,
    "boolean": _predicate_boolean,
    "local": _predicate_local,
}


def available_predicates() -> list[str]:
    return list(PREDICATE_REGISTRY.keys())


def uncached_view(s: StarRing) -> StarRing:
    r = s.ring
    ring = FiniteRing(order=r.order, add=r.add, mul=r.mul, neg=r.neg, zero=r.zero, one=r.one, label=r.label)
    return StarRing(ring=ring, star=s.star, label=s.label)


def is_predicate(s: StarRing, name: str, *, use_cache: bool = True) -> PredicateResult:
    if name not in PREDICATE_REGISTRY:
        raise InvalidParameter(f"unknown predicate {name!r}; expected one of: {', '.join(PREDICATE_REGISTRY)}")
    procedure = PREDICATE_REGISTRY[name]
    if not use_cache:
        return procedure(uncached_view(s))
    return s.cached(("predicate", name), lambda: procedure(s))


def verdict(s: StarRing, name: str) -> bool:
    return is_predicate(s, name).verdict


def classify_ring(s: StarRing) -> ClassificationReport:
    results = tuple(is_predicate(s, name) for name in PREDICATE_REGISTRY)
    by_name = {r.name: r.verdict for r in results}
    for stronger, weaker in IMPLICATION_DIAGRAM:
        if by_name[stronger] and not by_name[weaker]:
            raise ConsistencyError(f"{s.label}: {stronger} holds but {weaker} fails")
    logger.debug("classified %s", s.label)
    return ClassificationReport(
        label=s.label,
        order=s.order,
        sizes={
            "idempotents": len(idempotents(s.ring)),
            "projections": len(projections(s)),
            "units": len(units(s.ring)),
            "central-idempotents": len(central_idempotents(s.ring)),
        },
        results=results,
    )
