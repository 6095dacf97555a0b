from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import InvalidParameter, NotAUnit
from .rings import FiniteRing, StarRing

Side = Literal["left", "right"]

SET_KINDS = ("idempotents", "projections", "units", "central-idempotents")
SIDES = ("left", "right")


@dataclass(frozen=True)
class StructureSets:
    idempotents: tuple[int, ...]
    projections: tuple[int, ...]
    units: tuple[int, ...]
    inverse: dict[int, int]
    central_idempotents: tuple[int, ...]


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise InvalidParameter(f"side must be one of: {', '.join(SIDES)}; got {side!r}")


def idempotents(r: FiniteRing) -> tuple[int, ...]:
    def compute() -> tuple[int, ...]:
        ar = np.arange(r.order)
        return tuple(int(x) for x in np.flatnonzero(r.mul[ar, ar] == ar))

    return r.cached("idempotents", compute)


def unit_inverses(r: FiniteRing) -> dict[int, int]:
    def compute() -> dict[int, int]:
        both = (r.mul == r.one) & (r.mul.T == r.one)
        return {int(x): int(y) for x, y in np.argwhere(both)}

    return r.cached("unit-inverses", compute)


def units(r: FiniteRing) -> tuple[int, ...]:
    return r.cached("units", lambda: tuple(sorted(unit_inverses(r))))


def unit_mask(r: FiniteRing) -> np.ndarray:
    def compute() -> np.ndarray:
        mask = np.zeros(r.order, dtype=bool)
        mask[list(units(r))] = True
        mask.setflags(write=False)
        return mask

    return r.cached("unit-mask", compute)


def central_idempotents(r: FiniteRing) -> tuple[int, ...]:
    def compute() -> tuple[int, ...]:
        return tuple(e for e in idempotents(r) if (r.mul[e, :] == r.mul[:, e]).all())

    return r.cached("central-idempotents", compute)


def projections(s: StarRing) -> tuple[int, ...]:
    return s.cached("projections", lambda: tuple(e for e in idempotents(s.ring) if int(s.star[e]) == e))


def structure_sets(s: StarRing) -> StructureSets:
    r = s.ring
    return s.cached(
        "structure-sets",
        lambda: StructureSets(
            idempotents=idempotents(r),
            projections=projections(s),
            units=units(r),
            inverse=dict(unit_inverses(r)),
            central_idempotents=central_idempotents(r),
        ),
    )


def enumerate_set(s: StarRing, kind: str) -> list[int]:
    """Exhaustive, id-sorted listing of one structural subset; cached per ring."""
    if kind == "idempotents":
        return list(idempotents(s.ring))
    if kind == "projections":
        return list(projections(s))
    if kind == "units":
        return list(units(s.ring))
    if kind == "central-idempotents":
        return list(central_idempotents(s.ring))
    raise InvalidParameter(f"set kind must be one of: {', '.join(SET_KINDS)}; got {kind!r}")


def annihilator(r: FiniteRing, subset: Iterable[int], side: Side) -> list[int]:
    """r(X) = {y : ay = 0 for all a in X}; l(X) = {y : ya = 0 for all a in X}."""
    _check_side(side)
    xs = np.asarray(sorted(set(int(x) for x in subset)), dtype=np.int64)
    if side == "right":
        mask = (r.mul[xs, :] == r.zero).all(axis=0)
    else:
        mask = (r.mul[:, xs] == r.zero).all(axis=1)
    return [int(y) for y in np.flatnonzero(mask)]


def principal_ideal(r: FiniteRing, a: int, side: Side) -> list[int]:
    _check_side(side)
    values = r.mul[:, a] if side == "left" else r.mul[a, :]
    return [int(y) for y in np.unique(values)]


def principal_ideal_masks(r: FiniteRing, side: Side) -> np.ndarray:
    _check_side(side)

    def compute() -> np.ndarray:
        n = r.order
        mask = np.zeros((n, n), dtype=bool)
        if side == "right":
            mask[np.repeat(np.arange(n), n), r.mul.ravel()] = True
        else:
            mask[np.tile(np.arange(n), n), r.mul.ravel()] = True
        mask.setflags(write=False)
        return mask

    return r.cached(("ideal-masks", side), compute)


def inverse(r: FiniteRing, u: int) -> int:
    inverses = unit_inverses(r)
    if u not in inverses:
        raise NotAUnit(u)
    return inverses[u]


def commute(r: FiniteRing, x: int, y: int) -> bool:
    return int(r.mul[x, y]) == int(r.mul[y, x])


def is_central(r: FiniteRing, x: int) -> bool:
    return bool((r.mul[x, :] == r.mul[:, x]).all())
