"""Finite rings and rings with involution, stored as explicit Cayley tables.

Element ids are contiguous integers ``0..order-1``. Encodings are fixed so ids
are stable across runs:

* ``Zn``: id ``i`` is the residue ``i``.
* ``GF(q)``: id is the integer representation of the field element over the
  lexicographically smallest monic irreducible of the required degree
  (``a1*x + a0`` has id ``a1*p + a0``).
* ``A x B``: the pair ``(a, b)`` has id ``a * |B| + b``.
* ``Mn(B)``: entries are read row-major and used as little-endian radix-|B|
  digits, so entry ``(i, j)`` carries weight ``|B| ** (i*n + j)``.
* ``pRp``: the elements ``pxp`` sorted by their id in ``R``.
"""

from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

import galois
import numpy as np

from .errors import (
    AxiomViolation,
    InvalidParameter,
    InvalidProjection,
    InvolutionViolation,
    SizeCapExceeded,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 4096
EXHAUSTIVE_VALIDATION_LIMIT = 512
SPOT_CHECK_TRIPLES = 1_000_000
SPOT_CHECK_SEED = 0
GF_MAX_PRIME = 13
INVOLUTION_ENUMERATION_LIMIT = 9

T = TypeVar("T")


class _SingleInit:
    _cache: dict
    _lock: threading.RLock

    def cached(self, key: object, compute: Callable[[], T]) -> T:
        cache = self._cache
        if key in cache:
            return cache[key]
        with self._lock:
            if key not in cache:
                logger.debug("cache fill %s for %s", key, getattr(self, "label", "?"))
                cache[key] = compute()
            return cache[key]

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()


@dataclass(frozen=True, eq=False)
class FiniteRing(_SingleInit):
    order: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    zero: int
    one: int
    label: str
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def elements(self) -> range:
        return range(self.order)

    def sub(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    def is_commutative(self) -> bool:
        return self.cached("commutative", lambda: bool((self.mul == self.mul.T).all()))


@dataclass(frozen=True, eq=False)
class StarRing(_SingleInit):
    ring: FiniteRing
    star: np.ndarray
    label: str
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def order(self) -> int:
        return self.ring.order


@dataclass(frozen=True, eq=False)
class CornerRing:
    star_ring: StarRing
    parent: StarRing
    projection: int
    embedding: np.ndarray

    def index_of(self, element: int) -> int | None:
        pos = int(np.searchsorted(self.embedding, element))
        if pos < len(self.embedding) and int(self.embedding[pos]) == element:
            return pos
        return None

    def lift(self, element: int) -> int:
        return int(self.embedding[element])


def _id_dtype(order: int) -> type:
    return np.int16 if order < 2**15 else np.int32


def _frozen(table: np.ndarray, order: int) -> np.ndarray:
    out = np.ascontiguousarray(table, dtype=_id_dtype(order))
    out.setflags(write=False)
    return out


def check_order_cap(what: str, order: int, max_order: int) -> None:
    if order > max_order:
        raise SizeCapExceeded(what, order, max_order)


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


# --- validation ----------------------------------------------------------------


def _associativity_failure(table: np.ndarray) -> tuple[int, ...] | None:
    for x in range(len(table)):
        left = table[table[x]]
        right = table[x][table]
        bad = _first_true(left != right)
        if bad is not None:
            return (x, *bad)
    return None


def _distributivity_failure(add: np.ndarray, mul: np.ndarray) -> tuple[str, tuple[int, ...]] | None:
    for x in range(len(mul)):
        row = mul[x]
        bad = _first_true(row[add] != add[row[:, None], row[None, :]])
        if bad is not None:
            return "left-distributivity", (x, *bad)
        col = mul[:, x]
        bad = _first_true(col[add] != add[col[:, None], col[None, :]])
        if bad is not None:
            return "right-distributivity", (x, *bad)
    return None


def _spot_check_failure(ring: FiniteRing) -> tuple[str, tuple[int, ...]] | None:
    rng = np.random.default_rng(SPOT_CHECK_SEED)
    x, y, z = rng.integers(0, ring.order, size=(3, SPOT_CHECK_TRIPLES))
    add, mul = ring.add, ring.mul
    laws = [
        ("additive-associativity", add[add[x, y], z] != add[x, add[y, z]]),
        ("multiplicative-associativity", mul[mul[x, y], z] != mul[x, mul[y, z]]),
        ("left-distributivity", mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]),
        ("right-distributivity", mul[add[y, z], x] != add[mul[y, x], mul[z, x]]),
    ]
    for law, bad in laws:
        hits = np.flatnonzero(bad)
        if len(hits):
            i = int(hits[0])
            return law, (int(x[i]), int(y[i]), int(z[i]))
    return None


def _identity_failure(table: np.ndarray, e: int) -> int | None:
    ar = np.arange(len(table))
    bad = np.flatnonzero((table[e] != ar) | (table[:, e] != ar))
    return int(bad[0]) if len(bad) else None


def validate_ring(ring: FiniteRing, *, exhaustive: bool | None = None) -> None:
    n = ring.order
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_VALIDATION_LIMIT

    for name, table in (("add", ring.add), ("mul", ring.mul)):
        if table.shape != (n, n):
            raise InvalidParameter(f"{name} table has shape {table.shape}, expected ({n}, {n})")
        bad = _first_true((table < 0) | (table >= n))
        if bad is not None:
            raise AxiomViolation(f"{name}-closure", bad, f"entry {int(table[bad])} is not an element id")
    if ring.neg.shape != (n,):
        raise InvalidParameter(f"neg table has shape {ring.neg.shape}, expected ({n},)")

    x = _identity_failure(ring.add, ring.zero)
    if x is not None:
        raise AxiomViolation("additive-identity", (ring.zero, x))
    bad = _first_true(ring.add != ring.add.T)
    if bad is not None:
        raise AxiomViolation("additive-commutativity", bad)
    bad = _first_true(ring.add[np.arange(n), ring.neg] != ring.zero)
    if bad is not None:
        raise AxiomViolation("additive-inverse", bad)
    x = _identity_failure(ring.mul, ring.one)
    if x is not None:
        raise AxiomViolation("multiplicative-identity", (ring.one, x))

    if not exhaustive:
        logger.debug("spot-checking %s (order %d) on %d triples", ring.label, n, SPOT_CHECK_TRIPLES)
        failure = _spot_check_failure(ring)
        if failure is not None:
            raise AxiomViolation(*failure)
        return

    bad = _associativity_failure(ring.add)
    if bad is not None:
        raise AxiomViolation("additive-associativity", bad)
    bad = _associativity_failure(ring.mul)
    if bad is not None:
        raise AxiomViolation("multiplicative-associativity", bad)
    failure = _distributivity_failure(ring.add, ring.mul)
    if failure is not None:
        raise AxiomViolation(*failure)


def validate_involution(ring: FiniteRing, star: np.ndarray) -> None:
    n = ring.order
    if star.shape != (n,):
        raise InvalidParameter(f"involution table has length {len(star)}, expected {n}")
    out_of_range = np.flatnonzero((star < 0) | (star >= n))
    if len(out_of_range):
        x = int(out_of_range[0])
        raise InvolutionViolation("permutation", (x,), f"image {int(star[x])} is not an element id")
    seen = np.full(n, -1)
    for x in range(n):
        image = int(star[x])
        if seen[image] >= 0:
            raise InvolutionViolation("permutation", (int(seen[image]), x), f"both map to {image}")
        seen[image] = x

    bad = np.flatnonzero(star[star] != np.arange(n))
    if len(bad):
        x = int(bad[0])
        raise InvolutionViolation("self-inverse", (x,), f"(x*)* = {int(star[star[x]])}")
    bad = _first_true(star[ring.add] != ring.add[star[:, None], star[None, :]])
    if bad is not None:
        raise InvolutionViolation("additivity", bad, "(x+y)* != x* + y*")
    bad = _first_true(star[ring.mul] != ring.mul[np.ix_(star, star)].T)
    if bad is not None:
        raise InvolutionViolation("anti-multiplicativity", bad, "(xy)* != y* x*")
    if int(star[ring.zero]) != ring.zero:
        raise InvolutionViolation("fixes-zero", (ring.zero,))
    if int(star[ring.one]) != ring.one:
        raise InvolutionViolation("fixes-one", (ring.one,))


def _finish(
    order: int,
    add: np.ndarray,
    mul: np.ndarray,
    neg: np.ndarray,
    *,
    zero: int,
    one: int,
    label: str,
    exhaustive: bool | None = None,
) -> FiniteRing:
    ring = FiniteRing(
        order=order,
        add=_frozen(add, order),
        mul=_frozen(mul, order),
        neg=_frozen(neg, order),
        zero=int(zero),
        one=int(one),
        label=label,
    )
    validate_ring(ring, exhaustive=exhaustive)
    logger.debug("built %s (order %d)", label, order)
    return ring


# --- ring families -------------------------------------------------------------


def _as_count(value: object, *, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidParameter(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def make_zmod(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    n = _as_count(n, name="zmod modulus n")
    check_order_cap(f"Z{n}", n, max_order)
    r = np.arange(n, dtype=np.int64)
    return _finish(
        n,
        (r[:, None] + r[None, :]) % n,
        (r[:, None] * r[None, :]) % n,
        (-r) % n,
        zero=0,
        one=1 % n,
        label=f"Z{n}",
    )


def _gf_shape(q: object) -> tuple[int, int]:
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 2 or not galois.is_prime_power(int(q)):
        raise InvalidParameter(f"gf order q must be a prime power, got {q!r}")
    primes, exponents = galois.factors(int(q))
    p, k = int(primes[0]), int(exponents[0])
    if k > 2 or p > GF_MAX_PRIME:
        raise InvalidParameter(f"gf order q must be p or p^2 with p <= {GF_MAX_PRIME}, got {q}")
    return p, k


@lru_cache(maxsize=None)
def _gf_field(p: int, k: int) -> type[galois.FieldArray]:
    if k == 1:
        return galois.GF(p)
    return galois.GF(p**k, irreducible_poly=galois.irreducible_poly(p, k, method="min"))


def _plain(values: galois.FieldArray) -> np.ndarray:
    return values.view(np.ndarray).astype(np.int64)


def make_gf(q: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    p, k = _gf_shape(q)
    check_order_cap(f"GF({q})", int(q), max_order)
    field_cls = _gf_field(p, k)
    els = field_cls.elements
    return _finish(
        int(q),
        _plain(els[:, None] + els[None, :]),
        _plain(els[:, None] * els[None, :]),
        _plain(-els),
        zero=0,
        one=1,
        label=f"GF({q})",
    )


def product_label(label: str) -> str:
    depth = 0
    for ch in label:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if ch == "x" and depth == 0:
            return f"({label})"
    return label


def make_product(a: FiniteRing, b: FiniteRing, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    order = a.order * b.order
    label = f"{product_label(a.label)}x{product_label(b.label)}"
    check_order_cap(label, order, max_order)
    nb = b.order
    ia, ib = np.divmod(np.arange(order, dtype=np.int64), nb)

    def combine(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
        left = ta[ia[:, None], ia[None, :]].astype(np.int64)
        return left * nb + tb[ib[:, None], ib[None, :]]

    return _finish(
        order,
        combine(a.add, b.add),
        combine(a.mul, b.mul),
        a.neg[ia].astype(np.int64) * nb + b.neg[ib],
        zero=a.zero * nb + b.zero,
        one=a.one * nb + b.one,
        label=label,
    )


def _matrix_digits(base_order: int, n: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    weights = base_order ** np.arange(n * n, dtype=np.int64)
    ids = np.arange(order, dtype=np.int64)
    return (ids[:, None] // weights[None, :]) % base_order, weights


def encode_matrix(entries: Sequence[Sequence[int]], base_order: int) -> int:
    flat = [int(v) for row in entries for v in row]
    return sum(v * base_order**k for k, v in enumerate(flat))


def decode_matrix(element: int, base_order: int, n: int) -> list[list[int]]:
    flat = [(element // base_order**k) % base_order for k in range(n * n)]
    return [flat[i * n : (i + 1) * n] for i in range(n)]


def matrix_order(base_order: int, n: int, *, stop_above: int | None = None) -> int:
    """|base|^(n*n); with ``stop_above`` the first partial power past it is returned instead."""
    if base_order == 1 or stop_above is None:
        return base_order ** (n * n)
    order = 1
    for _ in range(n * n):
        order *= base_order
        if order > stop_above:
            break
    return order


def check_matrix_cap(label: str, base_order: int, n: int, max_order: int) -> None:
    if matrix_order(base_order, n, stop_above=max_order) <= max_order:
        return
    exponent = n * n
    exact = base_order ** exponent if exponent * base_order.bit_length() <= 64 else None
    raise SizeCapExceeded(label, exact, max_order, order_text=f"{base_order}^{exponent}")


def make_matrix_ring(base: FiniteRing, n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    n = _as_count(n, name="matrix size n")
    label = f"M{n}({base.label})"
    check_matrix_cap(label, base.order, n, max_order)
    order = matrix_order(base.order, n)

    b, m = base.order, n * n
    digits, weights = _matrix_digits(b, n, order)
    square = digits.reshape(order, n, n)
    add = np.empty((order, order), dtype=np.int64)
    mul = np.empty((order, order), dtype=np.int64)
    chunk = max(1, (1 << 20) // max(order * m, 1))
    for start in range(0, order, chunk):
        stop = min(order, start + chunk)
        rows = digits[start:stop]
        add[start:stop] = base.add[rows[:, None, :], digits[None, :, :]].astype(np.int64) @ weights

        left = square[start:stop]
        total = np.zeros((stop - start, order), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                acc = np.full((stop - start, order), base.zero, dtype=np.int64)
                for k in range(n):
                    acc = base.add[acc, base.mul[left[:, None, i, k], square[None, :, k, j]]]
                total += acc.astype(np.int64) * weights[i * n + j]
        mul[start:stop] = total

    identity = [[base.one if i == j else base.zero for j in range(n)] for i in range(n)]
    return _finish(
        order,
        add,
        mul,
        base.neg[digits].astype(np.int64) @ weights,
        zero=encode_matrix([[base.zero] * n] * n, b),
        one=encode_matrix(identity, b),
        label=label,
    )


def make_table_ring(
    order: int,
    add: Sequence[Sequence[int]] | np.ndarray,
    mul: Sequence[Sequence[int]] | np.ndarray,
    *,
    label: str = "table",
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteRing:
    """Validate raw tables exhaustively and discover zero, one and negation."""
    order = _as_count(order, name="table order")
    check_order_cap(label, order, max_order)
    add_t = np.asarray(add, dtype=np.int64)
    mul_t = np.asarray(mul, dtype=np.int64)
    for name, table in (("add", add_t), ("mul", mul_t)):
        if table.shape != (order, order):
            raise InvalidParameter(f"{name} table has shape {table.shape}, expected ({order}, {order})")
        bad = _first_true((table < 0) | (table >= order))
        if bad is not None:
            raise AxiomViolation(f"{name}-closure", bad, f"entry {int(table[bad])} is not an element id")

    zero = _discover_identity(add_t, "additive-identity")
    neg = np.empty(order, dtype=np.int64)
    for x in range(order):
        hits = np.flatnonzero(add_t[x] == zero)
        if not len(hits):
            raise AxiomViolation("additive-inverse", (x,), f"no y with x + y = {zero}")
        neg[x] = hits[0]
    one = _discover_identity(mul_t, "multiplicative-identity", check_associativity=True)
    return _finish(order, add_t, mul_t, neg, zero=zero, one=one, label=label, exhaustive=True)


def _discover_identity(table: np.ndarray, law: str, *, check_associativity: bool = False) -> int:
    if check_associativity:
        bad = _associativity_failure(table)
        if bad is not None:
            raise AxiomViolation("multiplicative-associativity", bad)
    for e in range(len(table)):
        if _identity_failure(table, e) is None:
            return e
    x = _identity_failure(table, 0)
    raise AxiomViolation(law, (0, x if x is not None else 0), "no element is a two-sided identity")


# --- involutions ---------------------------------------------------------------


def attach_involution(ring: FiniteRing, star: Sequence[int] | np.ndarray, *, label: str | None = None) -> StarRing:
    table = np.asarray(star, dtype=np.int64)
    validate_involution(ring, table)
    return StarRing(ring=ring, star=_frozen(table, ring.order), label=label or ring.label)


def identity_involution(ring: FiniteRing) -> np.ndarray:
    return np.arange(ring.order, dtype=np.int64)


def swap_involution(factor_order: int) -> np.ndarray:
    a, b = np.divmod(np.arange(factor_order * factor_order, dtype=np.int64), factor_order)
    return b * factor_order + a


def componentwise_involution(left: StarRing, right: StarRing) -> np.ndarray:
    a, b = np.divmod(np.arange(left.order * right.order, dtype=np.int64), right.order)
    return left.star[a].astype(np.int64) * right.order + right.star[b]


def frobenius_involution(q: int) -> np.ndarray:
    p, k = _gf_shape(q)
    if k != 2:
        raise InvalidParameter(f"the Frobenius involution needs q = p^2, got q = {q}")
    return _plain(_gf_field(p, k).elements ** p)


def conjugate_transpose_involution(base: StarRing, n: int) -> np.ndarray:
    """A* is the transpose of (a_ij*)."""
    order = matrix_order(base.order, n)
    digits, weights = _matrix_digits(base.order, n, order)
    conj = base.star[digits].reshape(order, n, n).transpose(0, 2, 1).reshape(order, n * n)
    return conj.astype(np.int64) @ weights


def make_matrix_star_ring(base: StarRing, n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> StarRing:
    ring = make_matrix_ring(base.ring, n, max_order=max_order)
    return attach_involution(ring, conjugate_transpose_involution(base, n), label=f"M{n}({base.label})")


def make_corner_ring(s: StarRing, p: int) -> CornerRing:
    r = s.ring
    if not 0 <= p < r.order:
        raise InvalidProjection(p, "not an element id")
    if int(r.mul[p, p]) != p:
        raise InvalidProjection(p, f"p*p = {int(r.mul[p, p])}")
    if int(s.star[p]) != p:
        raise InvalidProjection(p, f"p* = {int(s.star[p])}")

    carrier = np.unique(r.mul[r.mul[p, :], p]).astype(np.int64)
    index = np.full(r.order, -1, dtype=np.int64)
    index[carrier] = np.arange(len(carrier))
    sub = np.ix_(carrier, carrier)
    ring = _finish(
        len(carrier),
        index[r.add[sub]],
        index[r.mul[sub]],
        index[r.neg[carrier]],
        zero=int(index[r.zero]),
        one=int(index[p]),
        label=f"corner({s.label}, p={p})",
    )
    star_ring = attach_involution(ring, index[s.star[carrier]], label=ring.label)
    embedding = carrier.copy()
    embedding.setflags(write=False)
    return CornerRing(star_ring=star_ring, parent=s, projection=p, embedding=embedding)


def enumerate_involutions(ring: FiniteRing) -> list[tuple[int, ...]]:
    if ring.order > INVOLUTION_ENUMERATION_LIMIT:
        raise InvalidParameter(
            f"involution enumeration is limited to order <= {INVOLUTION_ENUMERATION_LIMIT}, got {ring.order}"
        )
    fixed = {ring.zero, ring.one}
    rest = [x for x in ring.elements() if x not in fixed]
    found: list[tuple[int, ...]] = []
    for images in itertools.permutations(rest):
        star = np.arange(ring.order, dtype=np.int64)
        star[rest] = images
        if (star[star] != np.arange(ring.order)).any():
            continue
        try:
            validate_involution(ring, star)
        except InvolutionViolation:
            continue
        found.append(tuple(int(v) for v in star))
    return found
