"""Conditional implications between attributes and between conditions.

Four kinds are modelled.  ``BCAI`` and ``CAI`` relate attribute sets under a
condition constraint; ``BACI`` and ``ACI`` relate condition sets under an
attribute constraint.  The Biedermann kinds (``BCAI``/``BACI``) constrain by
the whole set at once, the others by each of its elements separately.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from .context import Axis, TriadicContext, extent
from .errors import ImplicationSyntaxError, KindError


class Kind(str, Enum):
    BCAI = "bcai"
    BACI = "baci"
    CAI = "cai"
    ACI = "aci"

    @property
    def premise_axis(self) -> Axis:
        return Axis.ATTRIBUTE if self in (Kind.BCAI, Kind.CAI) else Axis.CONDITION

    @property
    def constraint_axis(self) -> Axis:
        return Axis.CONDITION if self.premise_axis is Axis.ATTRIBUTE else Axis.ATTRIBUTE

    @property
    def unary(self) -> bool:
        """True for the kinds whose constraint is read element by element."""
        return self in (Kind.CAI, Kind.ACI)

    @property
    def biedermann(self) -> "Kind":
        return {Kind.CAI: Kind.BCAI, Kind.ACI: Kind.BACI}.get(self, self)


@dataclass(frozen=True)
class Implication:
    kind: Kind
    premise: frozenset[str]
    conclusion: frozenset[str]
    constraint: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("premise", "conclusion", "constraint"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @classmethod
    def of(cls, kind, premise: Iterable[str], conclusion: Iterable[str], constraint: Iterable[str]):
        return cls(Kind(kind), frozenset(premise), frozenset(conclusion), frozenset(constraint))

    @property
    def size(self) -> int:
        return len(self.premise) + len(self.conclusion) + len(self.constraint)

    def is_trivial(self) -> bool:
        return self.conclusion <= self.premise

    def replace(self, **changes) -> "Implication":
        values = dict(kind=self.kind, premise=self.premise, conclusion=self.conclusion,
                      constraint=self.constraint)
        values.update(changes)
        return Implication(**values)

    def format(self, order: "Ordering | None" = None) -> str:
        return format_implication(self, order)

    def __str__(self):
        return format_implication(self)


@dataclass(frozen=True)
class Ordering:
    """Universe orders used to print and sort names deterministically."""

    attributes: tuple[str, ...] = ()
    conditions: tuple[str, ...] = ()

    def sort(self, axis: Axis, names) -> list[str]:
        universe = self.attributes if axis is Axis.ATTRIBUTE else self.conditions
        index = {n: i for i, n in enumerate(universe)}
        return sorted(names, key=lambda n: (index.get(n, len(index)), n))

    def key(self, axis: Axis, names) -> tuple:
        universe = self.attributes if axis is Axis.ATTRIBUTE else self.conditions
        index = {n: i for i, n in enumerate(universe)}
        return tuple(sorted((index.get(n, len(index)), n) for n in names))

    @classmethod
    def of(cls, ctx: TriadicContext) -> "Ordering":
        return cls(ctx.attributes, ctx.conditions)


def implication_key(imp: Implication, order: Ordering):
    """Canonical sort key: premise, then constraint, then conclusion."""
    p = order.key(imp.kind.premise_axis, imp.premise)
    c = order.key(imp.kind.constraint_axis, imp.constraint)
    q = order.key(imp.kind.premise_axis, imp.conclusion)
    return (len(p), p, len(c), c, len(q), q)


@dataclass(frozen=True)
class ImplicationBase:
    """An ordered, duplicate-free list of implications of one kind.

    ``attributes`` and ``conditions`` record the universes the items range
    over; the closure operator needs the premise-side universe for the
    empty-constraint case.
    """

    kind: Kind
    items: tuple[Implication, ...] = ()
    attributes: tuple[str, ...] = ()
    conditions: tuple[str, ...] = ()
    order: Ordering = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        items = tuple(dict.fromkeys(self.items))
        for imp in items:
            if imp.kind is not kind:
                raise KindError(f"{imp.kind.name} item in a {kind.name} base")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "conditions", tuple(self.conditions))
        object.__setattr__(self, "order", Ordering(self.attributes, self.conditions))

    @classmethod
    def for_context(cls, ctx: TriadicContext, kind, items: Iterable[Implication] = ()):
        return cls(Kind(kind), tuple(items), ctx.attributes, ctx.conditions)

    def with_items(self, items: Iterable[Implication], kind=None) -> "ImplicationBase":
        return ImplicationBase(Kind(kind or self.kind), tuple(items), self.attributes, self.conditions)

    @property
    def premise_universe(self) -> tuple[str, ...]:
        return self.attributes if self.kind.premise_axis is Axis.ATTRIBUTE else self.conditions

    @property
    def cardinality(self) -> int:
        return len(self.items)

    @property
    def size(self) -> int:
        return sum(imp.size for imp in self.items)

    def sorted(self) -> "ImplicationBase":
        return self.with_items(sorted(self.items, key=lambda i: implication_key(i, self.order)))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, imp):
        return imp in self.items


# --------------------------------------------------------------------------
# validity


def _check(ctx: TriadicContext, imp: Implication):
    ctx.check(imp.kind.premise_axis, imp.premise)
    ctx.check(imp.kind.premise_axis, imp.conclusion)
    ctx.check(imp.kind.constraint_axis, imp.constraint)


def support(ctx: TriadicContext, kind: Kind, side, constraint) -> frozenset[str]:
    """Objects carrying all of ``side`` under all of ``constraint``."""
    if Kind(kind).premise_axis is Axis.ATTRIBUTE:
        return extent(ctx, side, constraint)
    return extent(ctx, constraint, side)


def _holds(ctx, kind, premise, conclusion, constraint) -> bool:
    return support(ctx, kind, premise, constraint) <= support(ctx, kind, conclusion, constraint)


def is_valid(ctx: TriadicContext, imp: Implication) -> bool:
    _check(ctx, imp)
    if imp.kind.unary:
        return all(_holds(ctx, imp.kind, imp.premise, imp.conclusion, {c}) for c in imp.constraint)
    return _holds(ctx, imp.kind, imp.premise, imp.conclusion, imp.constraint)


def decompose_cai(imp: Implication) -> list[Implication]:
    """Split a CAI/ACI into one Biedermann implication per constraint element."""
    if not imp.kind.unary:
        raise KindError(f"expected a CAI or ACI implication, got {imp.kind.name}")
    kind = imp.kind.biedermann
    return [Implication(kind, imp.premise, imp.conclusion, frozenset({c}))
            for c in sorted(imp.constraint)]


def _nonempty_subsets(items):
    items = sorted(items)
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def null_support_closure(ctx: TriadicContext, imp: Implication) -> list[Implication]:
    """Extra valid BCAI obtained from empty supports.

    Three facts are applied, reading ``X^(2,1,C)`` as the support of ``X``
    under ``C``:

    1. a set ``Z`` with empty support under ``C`` implies ``M \\ Z`` there;
       this is tried for every non-empty ``Z`` drawn from the input's
       premise and conclusion;
    2. if ``(X -> Y)_C`` holds and ``Y \\ X`` has empty support under ``C``,
       then ``(Y -> X)_C`` holds;
    3. if ``(X -> Y)_C`` holds, ``(X -> Y)_{C1}`` holds for every ``C1`` within
       ``C`` on which ``X`` already has empty support (only the minimal such
       ``C1`` are emitted).

    Facts 2 and 3 are iterated; trivial results and the input are dropped.
    """
    if imp.kind is not Kind.BCAI:
        raise KindError("null_support_closure works on BCAI implications")
    _check(ctx, imp)
    M = frozenset(ctx.attributes)
    supp = lambda xs, cs: extent(ctx, xs, cs)
    out: dict[Implication, None] = {}

    C = imp.constraint
    for Z in _nonempty_subsets(imp.premise | imp.conclusion):
        if Z != M and not supp(Z, C):
            out[imp.replace(premise=Z, conclusion=M - Z)] = None

    frontier = [imp]
    seen = {imp}
    while frontier:
        current = frontier.pop(0)
        X, Y, C = current.premise, current.conclusion, current.constraint
        produced = []
        if not supp(Y - X, C):
            produced.append(current.replace(premise=Y, conclusion=X))
        empties = [C1 for C1 in _nonempty_subsets(C) if C1 != C and not supp(X, C1)]
        for C1 in empties:
            if not any(other < C1 for other in empties):
                produced.append(current.replace(constraint=C1))
        for new in produced:
            if new not in seen:
                seen.add(new)
                frontier.append(new)
                out[new] = None

    order = Ordering.of(ctx)
    results = [i for i in out if i != imp and not i.is_trivial()]
    return sorted(results, key=lambda i: implication_key(i, order))


# --------------------------------------------------------------------------
# text and JSON forms

_NAME = r"[A-Za-z0-9_]+"
_SET = rf"\{{\s*(?:{_NAME}\s*(?:,\s*{_NAME}\s*)*)?\}}"
_BIEDERMANN = re.compile(rf"^\(\s*({_SET})\s*->\s*({_SET})\s*\)\s*_\s*({_SET})$")
_UNARY = re.compile(rf"^({_SET})\s*-\[\s*({_SET})\s*\]->\s*({_SET})$")


def _parse_set(text: str) -> frozenset[str]:
    inner = text.strip()[1:-1].strip()
    return frozenset(n.strip() for n in inner.split(",")) if inner else frozenset()


def parse_implication(text: str, kind=None) -> Implication:
    """Parse ``({a} -> {b})_{P}`` or ``{d} -[{P}]-> {a}``.

    The first form is BCAI unless ``kind`` says BACI, the second is CAI
    unless ``kind`` says ACI.
    """
    text = text.strip()
    kind = Kind(kind.lower() if isinstance(kind, str) else kind) if kind else None
    if m := _BIEDERMANN.match(text):
        premise, conclusion, constraint = m.groups()
        parsed = kind or Kind.BCAI
        if parsed.unary:
            raise ImplicationSyntaxError(f"{parsed.name} implications use the '-[C]->' form")
    elif m := _UNARY.match(text):
        premise, constraint, conclusion = m.groups()
        parsed = kind or Kind.CAI
        if not parsed.unary:
            raise ImplicationSyntaxError(f"{parsed.name} implications use the '(X -> Y)_C' form")
    else:
        raise ImplicationSyntaxError(f"cannot parse implication {text!r}")
    return Implication(parsed, _parse_set(premise), _parse_set(conclusion), _parse_set(constraint))


def format_implication(imp: Implication, order: Ordering | None = None) -> str:
    order = order or Ordering()
    fmt = lambda axis, names: "{" + ",".join(order.sort(axis, names)) + "}"
    p = fmt(imp.kind.premise_axis, imp.premise)
    q = fmt(imp.kind.premise_axis, imp.conclusion)
    c = fmt(imp.kind.constraint_axis, imp.constraint)
    if imp.kind.unary:
        return f"{p} -[{c}]-> {q}"
    return f"({p} -> {q})_{c}"


def base_to_dict(base: ImplicationBase) -> dict:
    return {
        "kind": base.kind.value,
        "attributes": list(base.attributes),
        "conditions": list(base.conditions),
        "items": [
            {"premise": sorted(i.premise), "conclusion": sorted(i.conclusion),
             "constraint": sorted(i.constraint)}
            for i in base.items
        ],
        "metrics": {"cardinality": base.cardinality, "size": base.size},
    }


def base_from_dict(data: dict) -> ImplicationBase:
    try:
        kind = Kind(str(data["kind"]).lower())
        items = [Implication(kind, frozenset(i["premise"]), frozenset(i["conclusion"]),
                             frozenset(i["constraint"])) for i in data["items"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ImplicationSyntaxError(f"malformed base document: {exc}") from exc
    return ImplicationBase(kind, tuple(items), tuple(data.get("attributes", ())),
                           tuple(data.get("conditions", ())))


def dumps_base(base: ImplicationBase) -> str:
    return json.dumps(base_to_dict(base), indent=2)


def loads_base(text: str) -> ImplicationBase:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ImplicationSyntaxError(f"invalid JSON: {exc}") from exc
    return base_from_dict(data)
