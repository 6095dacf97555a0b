from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .algebra import projections
from .errors import InvalidParameter, WorkbenchError
from .rings import DEFAULT_MAX_ORDER, enumerate_involutions
from .specfile import (
    RingSpecNode,
    build_star_ring,
    corner_node,
    gf_node,
    matrix_node,
    node_order,
    product_node,
    spec_label,
    zmod_node,
)
from .theorems import CorpusEntry, corner_of

logger = logging.getLogger(__name__)

SAMPLE_ATTEMPTS_PER_ENTRY = 50
SAMPLE_ZMOD_MAX = 12
SAMPLE_GF_ORDERS = (2, 3, 4, 5, 7, 9, 11, 13, 25)
SAMPLE_MATRIX_BASE_MAX = 4


@dataclass(frozen=True)
class CorpusPreset:
    name: str
    description: str
    families: bool = True
    involutions: bool = False
    corners: bool = True
    max_entry_order: int | None = None


CORPUS_PRESETS: dict[str, CorpusPreset] = {
    "default": CorpusPreset(
        name="default",
        description="Zn, small fields, products and 2x2 matrix rings over bases of order <= 4, plus their corners.",
    ),
    "quick": CorpusPreset(
        name="quick",
        description="The default corpus restricted to rings of order <= 16.",
        max_entry_order=16,
    ),
    "involutions": CorpusPreset(
        name="involutions",
        description="Every involution of each small family ring of order <= 9.",
        families=False,
        involutions=True,
        corners=False,
    ),
    "full": CorpusPreset(
        name="full",
        description="The default corpus followed by the involution census.",
        involutions=True,
    ),
}


def available_corpora() -> list[str]:
    return list(CORPUS_PRESETS.keys())


def get_corpus_preset(name: str) -> CorpusPreset:
    if name not in CORPUS_PRESETS:
        raise ValueError(f"Unknown corpus: {name}")
    return CORPUS_PRESETS[name]


def default_family_nodes() -> list[RingSpecNode]:
    nodes = [zmod_node(n) for n in range(1, 9)]
    for q in (2, 3, 4, 5, 7, 9):
        nodes.append(gf_node(q))
        if q in (4, 9):
            nodes.append(gf_node(q, "frobenius"))
    z2, z3 = zmod_node(2), zmod_node(3)
    nodes += [
        product_node(z2, z2, "identity"),
        product_node(z2, z2, "swap"),
        product_node(z2, z3, "identity"),
        product_node(z3, z3, "identity"),
        product_node(z3, z3, "swap"),
        product_node(gf_node(4, "frobenius"), z2),
    ]
    for base in (
        zmod_node(1),
        z2,
        z3,
        zmod_node(4),
        gf_node(4),
        gf_node(4, "frobenius"),
        product_node(z2, z2, "identity"),
        product_node(z2, z2, "swap"),
    ):
        nodes.append(matrix_node(base, 2))
    return nodes


def involution_census_nodes() -> list[RingSpecNode]:
    z2 = zmod_node(2)
    return [zmod_node(n) for n in range(1, 10)] + [
        gf_node(4),
        gf_node(9),
        product_node(z2, z2, "identity"),
        product_node(z2, zmod_node(3), "identity"),
        product_node(z2, zmod_node(4), "identity"),
        product_node(z2, product_node(z2, z2, "identity"), "identity"),
        product_node(zmod_node(3), zmod_node(3), "identity"),
        product_node(z2, gf_node(4), "identity"),
    ]


def _entry(node: RingSpecNode, provenance: str, *, max_order: int) -> CorpusEntry:
    label = spec_label(node)
    try:
        star_ring = build_star_ring(node, max_order=max_order)
    except WorkbenchError as err:
        logger.debug("corpus entry %s not built: %s", label, err)
        return CorpusEntry(label=label, star_ring=None, provenance=provenance, spec=node, error=str(err))
    return CorpusEntry(label=label, star_ring=star_ring, provenance=provenance, spec=node)


def corner_entries(parent: CorpusEntry) -> list[CorpusEntry]:
    s = parent.star_ring
    if s is None:
        return []
    out = []
    for p in projections(s):
        if p in (s.ring.zero, s.ring.one):
            continue
        node = corner_node(parent.spec, p)
        star_ring = corner_of(s, p).star_ring
        out.append(CorpusEntry(label=star_ring.label, star_ring=star_ring, provenance=f"corner of {parent.label}", spec=node))
    return out


def involution_entries(base: RingSpecNode, *, max_order: int) -> list[CorpusEntry]:
    try:
        built = build_star_ring(base, max_order=max_order)
    except WorkbenchError as err:
        return [CorpusEntry(label=spec_label(base), star_ring=None, provenance="involution census", spec=base, error=str(err))]
    out = []
    for star in enumerate_involutions(built.ring):
        node = replace(base, involution="table", star=star)
        out.append(_entry(node, f"involution census of {spec_label(base)}", max_order=max_order))
    return out


def _random_leaf(rng: np.random.Generator, *, max_leaf: int) -> RingSpecNode:
    if rng.random() < 0.5:
        return zmod_node(int(rng.integers(1, max_leaf + 1)))
    choices = [q for q in SAMPLE_GF_ORDERS if q <= max_leaf]
    q = int(choices[int(rng.integers(0, len(choices)))])
    if q in (4, 9, 25) and rng.random() < 0.5:
        return gf_node(q, "frobenius")
    return gf_node(q)


def _random_node(rng: np.random.Generator) -> RingSpecNode:
    kind = ("zmod-or-gf", "product", "matrix")[int(rng.integers(0, 3))]
    if kind == "matrix":
        return matrix_node(_random_leaf(rng, max_leaf=SAMPLE_MATRIX_BASE_MAX), 2)
    if kind == "product":
        left = _random_leaf(rng, max_leaf=SAMPLE_ZMOD_MAX)
        if rng.random() < 0.25:
            return product_node(left, left, "swap")
        right = _random_leaf(rng, max_leaf=SAMPLE_ZMOD_MAX)
        return product_node(left, right, ("componentwise", "identity")[int(rng.integers(0, 2))])
    return _random_leaf(rng, max_leaf=SAMPLE_ZMOD_MAX)


def sample_nodes(count: int, *, seed: int, max_order: int, exclude: set[str] | None = None) -> list[RingSpecNode]:
    """``count`` distinct random family trees within the size cap; the same seed gives the same list."""
    if count < 0:
        raise InvalidParameter(f"sample count must be >= 0, got {count}")
    rng = np.random.default_rng(seed)
    seen = set(exclude or ())
    out: list[RingSpecNode] = []
    for _ in range(count * SAMPLE_ATTEMPTS_PER_ENTRY):
        if len(out) == count:
            break
        node = _random_node(rng)
        label = spec_label(node)
        if label in seen or node_order(node, stop_above=max_order) > max_order:
            continue
        seen.add(label)
        out.append(node)
        logger.debug("sampled %s", label)
    return out


def build_corpus(
    name: str = "default",
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    sample: int = 0,
    seed: int | None = None,
) -> list[CorpusEntry]:
    preset = get_corpus_preset(name)
    limit = min(max_order, preset.max_entry_order or max_order)
    entries: list[CorpusEntry] = []

    if preset.families:
        families = [node for node in default_family_nodes() if node_order(node, stop_above=limit) <= limit]
        built = [_entry(node, "default family", max_order=max_order) for node in families]
        entries.extend(built)
        if preset.corners:
            for entry in built:
                entries.extend(c for c in corner_entries(entry) if c.star_ring.order <= limit)

    if preset.involutions:
        for base in (node for node in involution_census_nodes() if node_order(node, stop_above=limit) <= limit):
            entries.extend(involution_entries(base, max_order=max_order))

    if sample:
        labels = {entry.label for entry in entries}
        for node in sample_nodes(sample, seed=0 if seed is None else seed, max_order=max_order, exclude=labels):
            entries.append(_entry(node, f"sample (seed {0 if seed is None else seed})", max_order=max_order))

    logger.debug("corpus %s: %d entries", name, len(entries))
    return entries
