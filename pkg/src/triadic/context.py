"""Finite triadic contexts, their on-disk formats and derivation operators.

A triadic context is a set of objects ``G``, attributes ``M`` and conditions
``C`` together with a ternary incidence relation ``I`` on ``G x M x C``.
Every derivation operator used elsewhere in the package is defined here.
Axes are numbered as usual: 1 for objects, 2 for attributes, 3 for
conditions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from itertools import product as cartesian
from pathlib import Path
from typing import Iterable

from .errors import ContextParseError, UnknownNameError


class Axis(IntEnum):
    OBJECT = 1
    ATTRIBUTE = 2
    CONDITION = 3


_AXIS_KEYS = {"G": Axis.OBJECT, "M": Axis.ATTRIBUTE, "C": Axis.CONDITION}
_FORBIDDEN = set(",;:|#")


@dataclass(frozen=True)
class TriadicContext:
    """Immutable triadic context ``(G, M, C, I)``.

    Universes are kept in first-appearance order; that order is the canonical
    order for every set the package prints.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    conditions: tuple[str, ...]
    incidence: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for name in ("objects", "attributes", "conditions"):
            values = tuple(getattr(self, name))
            if len(set(values)) != len(values):
                raise ValueError(f"duplicate names in {name}")
            object.__setattr__(self, name, values)
        incidence = frozenset(tuple(t) for t in self.incidence)
        objs, attrs, conds = set(self.objects), set(self.attributes), set(self.conditions)
        for g, m, c in incidence:
            if g not in objs or m not in attrs or c not in conds:
                raise UnknownNameError(f"incidence triple {(g, m, c)} uses an undeclared name")
        object.__setattr__(self, "incidence", incidence)

    def universe(self, axis) -> tuple[str, ...]:
        return (self.objects, self.attributes, self.conditions)[Axis(axis) - 1]

    @cached_property
    def _index(self):
        return {axis: {n: i for i, n in enumerate(self.universe(axis))} for axis in Axis}

    def sort(self, axis, names: Iterable[str]) -> tuple[str, ...]:
        """Return ``names`` as a tuple in canonical universe order."""
        index = self._index[Axis(axis)]
        return tuple(sorted(names, key=index.__getitem__))

    def sort_key(self, axis, names: Iterable[str]) -> tuple[int, ...]:
        index = self._index[Axis(axis)]
        return tuple(sorted(index[n] for n in names))

    def check(self, axis, names: Iterable[str]) -> frozenset[str]:
        """Validate ``names`` against the universe of ``axis``."""
        names = frozenset(names)
        unknown = names - self._index[Axis(axis)].keys()
        if unknown:
            label = Axis(axis).name.lower()
            raise UnknownNameError(f"unknown {label} name(s): {sorted(unknown)}")
        return names

    @cached_property
    def rows(self) -> dict[str, frozenset[tuple[str, str]]]:
        """Map each object to the attribute-condition pairs it is incident to."""
        rows: dict[str, set] = {g: set() for g in self.objects}
        for g, m, c in self.incidence:
            rows[g].add((m, c))
        return {g: frozenset(p) for g, p in rows.items()}

    def __len__(self):
        return len(self.incidence)


@dataclass(frozen=True)
class Product:
    """A rectangle ``attrs x conds`` of attribute-condition pairs.

    Two products are equal when both components are equal, so ``{} x {P}``
    and ``{} x {N}`` stay distinct even though both describe no pairs.
    """

    attrs: frozenset[str] = frozenset()
    conds: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "attrs", frozenset(self.attrs))
        object.__setattr__(self, "conds", frozenset(self.conds))

    @classmethod
    def of(cls, attrs: Iterable[str] = (), conds: Iterable[str] = ()) -> "Product":
        return cls(frozenset(attrs), frozenset(conds))

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(cartesian(self.attrs, self.conds))

    def label(self, ctx: TriadicContext | None = None) -> str:
        """Compact label in the ``ad x PN`` style, ``∅`` for an empty side."""
        if ctx is None:
            a, c = sorted(self.attrs), sorted(self.conds)
        else:
            a, c = ctx.sort(Axis.ATTRIBUTE, self.attrs), ctx.sort(Axis.CONDITION, self.conds)
        join = lambda xs: ("".join(xs) if all(len(x) == 1 for x in xs) else ",".join(xs)) or "∅"
        return f"{join(a)}×{join(c)}"

    def sort_key(self, ctx: TriadicContext):
        a = ctx.sort_key(Axis.ATTRIBUTE, self.attrs)
        c = ctx.sort_key(Axis.CONDITION, self.conds)
        return (len(a), a, len(c), c)


# --------------------------------------------------------------------------
# derivation operators


def extent(ctx: TriadicContext, attrs, conds) -> frozenset[str]:
    """Objects incident to every pair of ``attrs x conds``: ``(A x C)^(1)``."""
    need = set(cartesian(attrs, conds))
    return frozenset(g for g in ctx.objects if need <= ctx.rows[g])


def intent(ctx: TriadicContext, objs, conds) -> frozenset[str]:
    """Attributes shared by every object under every condition: ``(O x C)^(2)``."""
    objs, conds = list(objs), list(conds)
    inc = ctx.incidence
    return frozenset(
        m for m in ctx.attributes if all((g, m, c) in inc for g in objs for c in conds)
    )


def modus(ctx: TriadicContext, objs, attrs) -> frozenset[str]:
    """Conditions under which every object has every attribute: ``(O x A)^(3)``."""
    objs, attrs = list(objs), list(attrs)
    inc = ctx.incidence
    return frozenset(
        c for c in ctx.conditions if all((g, m, c) in inc for g in objs for m in attrs)
    )


def _triple(axis_values: dict) -> tuple:
    return (axis_values[Axis.OBJECT], axis_values[Axis.ATTRIBUTE], axis_values[Axis.CONDITION])


def derive_outer(ctx: TriadicContext, axis, members) -> frozenset[tuple[str, str]]:
    """The ``i``-derivation of a set on ``axis``.

    Returns the pairs over the two remaining axes (kept in axis order) that
    are related to every member.  An empty input yields the full product.
    """
    axis = Axis(axis)
    members = ctx.check(axis, members)
    if axis is Axis.OBJECT:
        common = frozenset(cartesian(ctx.attributes, ctx.conditions))
        for g in members:
            common &= ctx.rows[g]
        return common
    first, second = (a for a in Axis if a != axis)
    out = set()
    for y, z in cartesian(ctx.universe(first), ctx.universe(second)):
        if all(_triple({axis: x, first: y, second: z}) in ctx.incidence for x in members):
            out.add((y, z))
    return frozenset(out)


def derive_product(ctx: TriadicContext, axis, first: Iterable[str], second: Iterable[str]):
    """Derivation of a rectangle on the two axes other than ``axis``.

    This is ``(X1 x X2)^(i)``: the members of ``axis`` related to every pair.
    """
    axis = Axis(axis)
    a1, a2 = (a for a in Axis if a != axis)
    return derive_conditional(ctx, a1, first, a2, second)


def derive_conditional(ctx: TriadicContext, fixed_axis, fixed_set, input_axis, members) -> frozenset[str]:
    """The ``(i, j, S)``-derivation with ``S`` held fixed on ``fixed_axis``.

    Returns every element of the third axis related to each member of
    ``members`` under each element of ``fixed_set``; empty sets quantify
    vacuously.
    """
    fixed_axis, input_axis = Axis(fixed_axis), Axis(input_axis)
    if fixed_axis == input_axis:
        raise ValueError("fixed and input axes must differ")
    fixed_set = ctx.check(fixed_axis, fixed_set)
    members = ctx.check(input_axis, members)
    target = next(a for a in Axis if a not in (fixed_axis, input_axis))
    given = {fixed_axis: fixed_set, input_axis: members}
    if target is Axis.OBJECT:
        return extent(ctx, given[Axis.ATTRIBUTE], given[Axis.CONDITION])
    if target is Axis.ATTRIBUTE:
        return intent(ctx, given[Axis.OBJECT], given[Axis.CONDITION])
    return modus(ctx, given[Axis.OBJECT], given[Axis.ATTRIBUTE])


def closure_12C(ctx: TriadicContext, attrs, conds) -> frozenset[str]:
    """``A^{(1,2,C)(1,2,C)}``: the attributes every object having ``attrs`` under
    ``conds`` also has under ``conds``."""
    attrs = ctx.check(Axis.ATTRIBUTE, attrs)
    conds = ctx.check(Axis.CONDITION, conds)
    return intent(ctx, extent(ctx, attrs, conds), conds)


def closure_13A(ctx: TriadicContext, conds, attrs) -> frozenset[str]:
    """``C^{(1,3,A)(1,3,A)}``, the mirror of :func:`closure_12C`."""
    attrs = ctx.check(Axis.ATTRIBUTE, attrs)
    conds = ctx.check(Axis.CONDITION, conds)
    return modus(ctx, extent(ctx, attrs, conds), attrs)


# --------------------------------------------------------------------------
# parsing and serialisation

_DECL = re.compile(r"^\s*([GMC])\s*:(.*)$")


def _split_names(raw: str, lineno: int) -> list[str]:
    raw = raw.strip()
    if not raw:
        return []
    names = [n.strip() for n in raw.split(",")]
    if any(not n for n in names):
        raise ContextParseError("empty name in list", lineno)
    return names


def _declarations(line: str, lineno: int) -> dict | None:
    """Parse ``G: ...; M: ...`` declarations, or return None for a body line."""
    segments = [s for s in line.split(";")]
    parsed = {}
    for seg in segments:
        match = _DECL.match(seg)
        if not match:
            if len(segments) > 1 or ":" in line:
                raise ContextParseError(f"malformed universe declaration: {line!r}", lineno)
            return None
        key, rest = match.groups()
        if key in parsed:
            raise ContextParseError(f"universe {key} declared twice", lineno)
        names = _split_names(rest, lineno)
        if len(set(names)) != len(names):
            raise ContextParseError(f"duplicate names in universe {key}", lineno)
        parsed[key] = names
    return parsed


class _Universe:
    def __init__(self):
        self.declared = False
        self.names: list[str] = []
        self.seen: set[str] = set()

    def declare(self, names, lineno):
        if self.declared:
            raise ContextParseError("universe declared twice", lineno)
        self.declared = True
        for n in names:
            self.add(n)

    def add(self, name):
        if name not in self.seen:
            self.seen.add(name)
            self.names.append(name)

    def use(self, name, lineno, label):
        if name not in self.seen:
            if self.declared:
                raise UnknownNameError(f"line {lineno}: undeclared {label} {name!r}")
            self.add(name)


def _parse_triples(lines) -> TriadicContext:
    unis = {key: _Universe() for key in "GMC"}
    triples = set()
    for lineno, raw in lines:
        decl = _declarations(raw, lineno)
        if decl is not None:
            for key, names in decl.items():
                unis[key].declare(names, lineno)
            continue
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 3 or not all(parts):
            raise ContextParseError(f"expected 'object,attribute,condition', got {raw.strip()!r}", lineno)
        for key, name, label in zip("GMC", parts, ("object", "attribute", "condition")):
            unis[key].use(name, lineno, label)
        triples.add(tuple(parts))
    return TriadicContext(tuple(unis["G"].names), tuple(unis["M"].names), tuple(unis["C"].names), frozenset(triples))


def _parse_slices(lines) -> TriadicContext:
    objects = _Universe()
    attrs = _Universe()
    conds: list[str] | None = None
    triples = set()
    for lineno, raw in lines:
        decl = _declarations(raw, lineno) if "|" not in raw else None
        if decl is not None:
            for key, names in decl.items():
                if key == "C":
                    if conds is not None:
                        raise ContextParseError("universe C declared twice", lineno)
                    conds = names
                elif key == "M":
                    attrs.declare(names, lineno)
                else:
                    objects.declare(names, lineno)
            continue
        if conds is None:
            raise ContextParseError("slice row before the 'C:' declaration", lineno)
        obj, *cells = [p.strip() for p in raw.split("|")]
        if not obj:
            raise ContextParseError("missing object name", lineno)
        if len(cells) != len(conds):
            raise ContextParseError(f"expected {len(conds)} cells, got {len(cells)}", lineno)
        objects.use(obj, lineno, "object")
        for cond, cell in zip(conds, cells):
            for m in _split_names(cell, lineno):
                attrs.use(m, lineno, "attribute")
                triples.add((obj, m, cond))
    return TriadicContext(tuple(objects.names), tuple(attrs.names), tuple(conds or ()), frozenset(triples))


def detect_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        return "slices" if line.startswith("#triadic-slices") else "triples"
    return "triples"


def parse_context(text: str, format: str = "triples") -> TriadicContext:
    """Parse a context from text in the ``triples`` or ``slices`` format."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if any(ch in _FORBIDDEN - set(",;:|") for ch in stripped):
            raise ContextParseError("'#' is only allowed at the start of a comment line", lineno)
        lines.append((lineno, stripped))
    if format == "triples":
        return _parse_triples(lines)
    if format == "slices":
        return _parse_slices(lines)
    raise ValueError(f"unknown context format {format!r}")


def load_context(path, format: str | None = None) -> TriadicContext:
    text = Path(path).read_text(encoding="utf-8")
    return parse_context(text, format or detect_format(text))


def dumps_triples(ctx: TriadicContext) -> str:
    out = ["#triadic v1"]
    for key, axis in _AXIS_KEYS.items():
        out.append(f"{key}: " + ",".join(ctx.universe(axis)))
    gi, mi, ci = (ctx._index[a] for a in Axis)
    for g, m, c in sorted(ctx.incidence, key=lambda t: (gi[t[0]], mi[t[1]], ci[t[2]])):
        out.append(f"{g},{m},{c}")
    return "\n".join(out) + "\n"


def dumps_slices(ctx: TriadicContext) -> str:
    out = ["#triadic-slices v1", "M: " + ",".join(ctx.attributes), "C: " + ",".join(ctx.conditions)]
    for g in ctx.objects:
        cells = []
        for c in ctx.conditions:
            cells.append(",".join(m for m in ctx.attributes if (g, m, c) in ctx.incidence))
        out.append(" | ".join([g, *cells]))
    return "\n".join(out) + "\n"


def from_slices(table: dict[str, dict[str, Iterable[str]]]) -> TriadicContext:
    """Build a context from ``{object: {condition: attributes}}``.

    Attribute and condition universes follow first appearance; this is the
    in-memory counterpart of the slices file format.
    """
    attrs, conds, triples = {}, {}, set()
    for g, row in table.items():
        for c, ms in row.items():
            conds.setdefault(c, None)
            for m in ms:
                attrs.setdefault(m, None)
                triples.add((g, m, c))
    return TriadicContext(tuple(table), tuple(attrs), tuple(conds), frozenset(triples))
