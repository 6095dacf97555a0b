from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace

import galois

from .errors import InvolutionInadmissible, SpecFormatError, SpecSyntaxError, UnknownKind
from .rings import (
    DEFAULT_MAX_ORDER,
    StarRing,
    attach_involution,
    componentwise_involution,
    frobenius_involution,
    identity_involution,
    make_corner_ring,
    make_gf,
    make_matrix_ring,
    make_matrix_star_ring,
    make_product,
    make_table_ring,
    make_zmod,
    matrix_order,
    product_label,
    swap_involution,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
RING_KINDS = ("zmod", "gf", "product", "matrix", "corner", "table")
INVOLUTION_KINDS = ("identity", "frobenius", "swap", "componentwise", "conjugate-transpose", "inherited", "table")
DEFAULT_INVOLUTION = {
    "zmod": "identity",
    "gf": "identity",
    "product": "componentwise",
    "matrix": "conjugate-transpose",
    "corner": "inherited",
    "table": "identity",
}
ADMISSIBLE_INVOLUTIONS = {
    "zmod": {"identity", "table"},
    "gf": {"identity", "frobenius", "table"},
    "product": {"identity", "swap", "componentwise", "table"},
    "matrix": {"identity", "conjugate-transpose", "table"},
    "corner": {"inherited", "table"},
    "table": {"identity", "table"},
}
_NODE_KEYS = {
    "zmod": {"n"},
    "gf": {"q"},
    "product": {"left", "right"},
    "matrix": {"base", "n"},
    "corner": {"parent", "projection"},
    "table": {"order", "add", "mul", "label"},
}
_SUFFIX = {"frobenius": "^frob", "swap": "^swap"}


@dataclass(frozen=True)
class RingSpecNode:
    kind: str
    involution: str
    n: int | None = None
    q: int | None = None
    left: RingSpecNode | None = None
    right: RingSpecNode | None = None
    base: RingSpecNode | None = None
    parent: RingSpecNode | None = None
    projection: int | None = None
    order: int | None = None
    add: tuple[tuple[int, ...], ...] | None = None
    mul: tuple[tuple[int, ...], ...] | None = None
    star: tuple[int, ...] | None = None
    label: str | None = None


@dataclass(frozen=True)
class SpecSettings:
    max_order: int | None = None
    output: str | None = None


@dataclass(frozen=True)
class SpecDocument:
    ring: RingSpecNode
    settings: SpecSettings = field(default_factory=SpecSettings)


# --- node helpers ---------------------------------------------------------------


def zmod_node(n: int, involution: str = "identity") -> RingSpecNode:
    return RingSpecNode(kind="zmod", n=n, involution=involution)


def gf_node(q: int, involution: str = "identity") -> RingSpecNode:
    return RingSpecNode(kind="gf", q=q, involution=involution)


def product_node(left: RingSpecNode, right: RingSpecNode, involution: str = "componentwise") -> RingSpecNode:
    return RingSpecNode(kind="product", left=left, right=right, involution=involution)


def matrix_node(base: RingSpecNode, n: int = 2, involution: str = "conjugate-transpose") -> RingSpecNode:
    return RingSpecNode(kind="matrix", base=base, n=n, involution=involution)


def corner_node(parent: RingSpecNode, projection: int) -> RingSpecNode:
    return RingSpecNode(kind="corner", parent=parent, projection=projection, involution="inherited")


def _ring_shape(node: RingSpecNode | None) -> RingSpecNode | None:
    if node is None:
        return None
    return replace(
        node,
        involution="",
        star=None,
        left=_ring_shape(node.left),
        right=_ring_shape(node.right),
        base=_ring_shape(node.base),
        parent=_ring_shape(node.parent),
    )


def spec_label(node: RingSpecNode) -> str:
    """Readable name of the *-ring a node builds, e.g. ``Z2xZ2^swap`` or ``M2(GF(4)^frob)``."""
    suffix = _SUFFIX.get(node.involution, "")
    if node.star is not None:
        suffix = "^*[" + ",".join(str(v) for v in node.star) + "]"
    if node.kind == "zmod":
        return f"Z{node.n}{suffix}"
    if node.kind == "gf":
        return f"GF({node.q}){suffix}"
    if node.kind == "table":
        return f"{node.label or f'table{node.order}'}{suffix}"
    if node.kind == "product":
        if node.involution == "componentwise":
            return f"{_factor(spec_label(node.left))}x{_factor(spec_label(node.right))}{suffix}"
        return f"{_plain_label(node)}{suffix}"
    if node.kind == "matrix":
        if node.involution == "conjugate-transpose":
            return f"M{node.n}({spec_label(node.base)})"
        return f"M{node.n}({_plain_label(node.base)})" + ("^id" if node.involution == "identity" else suffix)
    return f"corner({spec_label(node.parent)}, p={node.projection}){suffix}"


def _factor(label: str) -> str:
    return f"({label})" if "^" in label and not label.startswith("(") else product_label(label)


def _plain_label(node: RingSpecNode) -> str:
    if node.kind == "zmod":
        return f"Z{node.n}"
    if node.kind == "gf":
        return f"GF({node.q})"
    if node.kind == "table":
        return node.label or f"table{node.order}"
    if node.kind == "product":
        return f"{product_label(_plain_label(node.left))}x{product_label(_plain_label(node.right))}"
    if node.kind == "matrix":
        return f"M{node.n}({_plain_label(node.base)})"
    return f"corner({spec_label(node.parent)}, p={node.projection})"


def node_order(node: RingSpecNode, *, stop_above: int | None = None) -> int:
    # corners report the parent's order as a bound; stop_above makes matrix powers exact only up to it
    if node.kind == "zmod":
        return node.n
    if node.kind == "gf":
        return node.q
    if node.kind == "table":
        return node.order
    if node.kind == "product":
        return node_order(node.left, stop_above=stop_above) * node_order(node.right, stop_above=stop_above)
    if node.kind == "matrix":
        return matrix_order(node_order(node.base, stop_above=stop_above), node.n, stop_above=stop_above)
    return node_order(node.parent, stop_above=stop_above)


def node_to_dict(node: RingSpecNode) -> dict:
    out: dict = {"kind": node.kind}
    for key in sorted(_NODE_KEYS[node.kind]):
        value = getattr(node, key)
        if value is None:
            continue
        if isinstance(value, RingSpecNode):
            out[key] = node_to_dict(value)
        elif key in ("add", "mul"):
            out[key] = [list(row) for row in value]
        else:
            out[key] = value
    involution: dict = {"kind": node.involution}
    if node.star is not None:
        involution["star"] = list(node.star)
    out["involution"] = involution
    return out


# --- parsing --------------------------------------------------------------------


def _int(value: object, *, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise SpecFormatError(path, f"must be an integer >= {minimum}, got {value!r}")
    return value


def _table(value: object, *, path: str, rows: int | None) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list) or (rows is not None and len(value) != rows):
        raise SpecFormatError(path, f"must be a list of {rows} rows")
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise SpecFormatError(f"{path}[{i}]", "must be a list of element ids")
        if rows is not None and len(row) != rows:
            raise SpecFormatError(f"{path}[{i}]", f"must have {rows} entries, got {len(row)}")
        out.append(tuple(_int(v, path=f"{path}[{i}][{j}]") for j, v in enumerate(row)))
    return tuple(out)


def _parse_involution(data: object, *, path: str) -> tuple[str, tuple[int, ...] | None]:
    if not isinstance(data, dict):
        raise SpecFormatError(path, "must be an object with a 'kind' key")
    kind = data.get("kind")
    if kind not in INVOLUTION_KINDS:
        raise UnknownKind(f"{path}.kind", f"unknown involution kind {kind!r}; expected one of: {', '.join(INVOLUTION_KINDS)}")
    extra = set(data) - {"kind", "star"}
    if extra:
        raise SpecFormatError(path, f"unexpected keys: {', '.join(sorted(extra))}")
    star = None
    if kind == "table":
        if "star" not in data or not isinstance(data["star"], list):
            raise SpecFormatError(f"{path}.star", "a table involution needs a 'star' list")
        star = tuple(_int(v, path=f"{path}.star[{i}]") for i, v in enumerate(data["star"]))
    elif "star" in data:
        raise SpecFormatError(f"{path}.star", f"only table involutions take a 'star' list, not {kind!r}")
    return kind, star


def _parse_node(data: object, *, path: str, involution: object = None) -> RingSpecNode:
    if not isinstance(data, dict):
        raise SpecFormatError(path, "must be an object with a 'kind' key")
    kind = data.get("kind")
    if kind not in RING_KINDS:
        raise UnknownKind(f"{path}.kind", f"unknown ring kind {kind!r}; expected one of: {', '.join(RING_KINDS)}")
    extra = set(data) - _NODE_KEYS[kind] - {"kind", "involution"}
    if extra:
        raise SpecFormatError(path, f"unexpected keys for {kind}: {', '.join(sorted(extra))}")
    missing = _NODE_KEYS[kind] - {"label"} - set(data)
    if missing:
        raise SpecFormatError(path, f"{kind} needs: {', '.join(sorted(missing))}")

    if involution is not None and "involution" in data:
        raise SpecFormatError(f"{path}.involution", "root involution given both inside the ring and at top level")
    inv_data = involution if involution is not None else data.get("involution")
    if inv_data is None:
        inv_kind, star = DEFAULT_INVOLUTION[kind], None
    else:
        inv_kind, star = _parse_involution(inv_data, path=f"{path}.involution")

    node = RingSpecNode(kind=kind, involution=inv_kind, star=star)
    if kind == "zmod":
        node = replace(node, n=_int(data["n"], path=f"{path}.n", minimum=1))
    elif kind == "gf":
        node = replace(node, q=_int(data["q"], path=f"{path}.q", minimum=2))
    elif kind == "product":
        node = replace(
            node,
            left=_parse_node(data["left"], path=f"{path}.left"),
            right=_parse_node(data["right"], path=f"{path}.right"),
        )
    elif kind == "matrix":
        node = replace(
            node,
            base=_parse_node(data["base"], path=f"{path}.base"),
            n=_int(data["n"], path=f"{path}.n", minimum=1),
        )
    elif kind == "corner":
        node = replace(
            node,
            parent=_parse_node(data["parent"], path=f"{path}.parent"),
            projection=_int(data["projection"], path=f"{path}.projection"),
        )
    else:
        order = _int(data["order"], path=f"{path}.order", minimum=1)
        label = data.get("label")
        if label is not None and not isinstance(label, str):
            raise SpecFormatError(f"{path}.label", "must be a string")
        node = replace(
            node,
            order=order,
            add=_table(data["add"], path=f"{path}.add", rows=order),
            mul=_table(data["mul"], path=f"{path}.mul", rows=order),
            label=label,
        )
    check_admissible(node, path=path)
    return node


def check_admissible(node: RingSpecNode, *, path: str = "ring") -> None:
    allowed = ADMISSIBLE_INVOLUTIONS[node.kind]
    if node.involution not in allowed:
        raise InvolutionInadmissible(
            f"{path}.involution",
            f"{node.involution!r} is not admissible on a {node.kind} ring; allowed: {', '.join(sorted(allowed))}",
        )
    if node.involution == "frobenius" and (node.q is None or galois.is_prime(node.q)):
        raise InvolutionInadmissible(f"{path}.involution", f"frobenius needs gf(p^2), got gf({node.q})")
    if node.involution == "swap" and _ring_shape(node.left) != _ring_shape(node.right):
        raise InvolutionInadmissible(
            f"{path}.involution",
            f"swap needs identical factors, got {_plain_label(node.left)} and {_plain_label(node.right)}",
        )


def _parse_settings(data: object) -> SpecSettings:
    if data is None:
        return SpecSettings()
    if not isinstance(data, dict):
        raise SpecFormatError("settings", "must be an object")
    extra = set(data) - {"max_order", "output"}
    if extra:
        raise SpecFormatError("settings", f"unexpected keys: {', '.join(sorted(extra))}")
    max_order = None
    if "max_order" in data:
        max_order = _int(data["max_order"], path="settings.max_order", minimum=1)
    output = data.get("output")
    if output is not None and output not in ("human", "machine"):
        raise SpecFormatError("settings.output", f"must be 'human' or 'machine', got {output!r}")
    return SpecSettings(max_order=max_order, output=output)


def parse_spec_document(text: str) -> SpecDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecSyntaxError(err.msg, err.lineno, err.colno) from err
    if not isinstance(data, dict):
        raise SpecFormatError("$", "a ring-spec document must be a JSON object")
    extra = set(data) - {"schema", "ring", "involution", "settings"}
    if extra:
        raise SpecFormatError("$", f"unexpected keys: {', '.join(sorted(extra))}")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise SpecFormatError("schema", f"unsupported schema {schema!r}; this version reads schema {SCHEMA_VERSION}")
    if "ring" not in data:
        raise SpecFormatError("ring", "missing")
    ring = _parse_node(data["ring"], path="ring", involution=data.get("involution"))
    return SpecDocument(ring=ring, settings=_parse_settings(data.get("settings")))


# --- building -------------------------------------------------------------------


def build_star_ring(node: RingSpecNode, *, max_order: int = DEFAULT_MAX_ORDER) -> StarRing:
    check_admissible(node)
    label = spec_label(node)
    kind, inv = node.kind, node.involution

    if kind == "corner":
        parent = build_star_ring(node.parent, max_order=max_order)
        corner = make_corner_ring(parent, node.projection).star_ring
        if inv == "table":
            return attach_involution(corner.ring, node.star, label=label)
        return StarRing(ring=corner.ring, star=corner.star, label=label)

    if kind == "matrix" and inv == "conjugate-transpose":
        base = build_star_ring(node.base, max_order=max_order)
        s = make_matrix_star_ring(base, node.n, max_order=max_order)
        return StarRing(ring=s.ring, star=s.star, label=label)

    if kind == "zmod":
        ring = make_zmod(node.n, max_order=max_order)
    elif kind == "gf":
        ring = make_gf(node.q, max_order=max_order)
    elif kind == "table":
        ring = make_table_ring(node.order, node.add, node.mul, label=node.label or label, max_order=max_order)
    elif kind == "matrix":
        ring = build_star_ring(node.base, max_order=max_order).ring
        ring = make_matrix_ring(ring, node.n, max_order=max_order)
    else:
        left = build_star_ring(node.left, max_order=max_order)
        right = build_star_ring(node.right, max_order=max_order)
        ring = make_product(left.ring, right.ring, max_order=max_order)
        if inv == "componentwise":
            return attach_involution(ring, componentwise_involution(left, right), label=label)
        if inv == "swap":
            return attach_involution(ring, swap_involution(left.order), label=label)

    if inv == "frobenius":
        star = frobenius_involution(node.q)
    elif inv == "table":
        star = node.star
    else:
        star = identity_involution(ring)
    logger.debug("attaching %s involution to %s", inv, ring.label)
    return attach_involution(ring, star, label=label)


def parse_ring_spec(
    text: str,
    *,
    max_order: int | None = None,
    default_max_order: int = DEFAULT_MAX_ORDER,
) -> StarRing:
    document = parse_spec_document(text)
    cap = max_order
    if cap is None:
        cap = document.settings.max_order if document.settings.max_order is not None else default_max_order
    return build_star_ring(document.ring, max_order=cap)
