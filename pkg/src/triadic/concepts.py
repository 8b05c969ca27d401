"""Triadic concepts and features.

The enumerator works through the dyadic context ``K^(1)`` that pairs objects
with attribute-condition pairs.  Every triadic concept ``(O, A, C)`` has
``A x C`` as a maximal rectangle inside the closed pair set ``O^(1)``, so it
is enough to close the object rows under intersection and, for each closed
set, list the maximal rectangles whose extent is exactly ``O``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Iterator

from .context import Axis, Product, TriadicContext, extent, intent, modus
from .errors import SizeGuardError

SIZE_GUARD = 24


@dataclass(frozen=True)
class TriadicConcept:
    extent: frozenset[str]
    intent: frozenset[str]
    modus: frozenset[str]

    @property
    def feature(self) -> Product:
        return Product(self.intent, self.modus)

    def label(self, ctx: TriadicContext) -> str:
        parts = (ctx.sort(Axis.OBJECT, self.extent), ctx.sort(Axis.ATTRIBUTE, self.intent),
                 ctx.sort(Axis.CONDITION, self.modus))
        return "(" + ", ".join("{" + ",".join(p) + "}" for p in parts) + ")"


class ConceptSet:
    """An ordered, duplicate-free collection of concepts of one context."""

    def __init__(self, ctx: TriadicContext, concepts: Iterable[TriadicConcept]):
        self.context = ctx
        key = lambda t: (ctx.sort_key(Axis.ATTRIBUTE, t.intent), ctx.sort_key(Axis.CONDITION, t.modus))
        self.concepts = tuple(sorted(set(concepts), key=key))

    @property
    def features(self) -> frozenset[Product]:
        return frozenset(t.feature for t in self.concepts)

    def __len__(self):
        return len(self.concepts)

    def __iter__(self) -> Iterator[TriadicConcept]:
        return iter(self.concepts)

    def __contains__(self, item):
        return item in set(self.concepts)

    def __eq__(self, other):
        if not isinstance(other, ConceptSet):
            return NotImplemented
        return set(self.concepts) == set(other.concepts)

    __hash__ = None


def subsets(items: Iterable) -> list[frozenset]:
    """All subsets of ``items`` ordered by size, then by position."""
    items = tuple(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def intersection_closure(sets: Iterable[frozenset], top: frozenset) -> set[frozenset]:
    """Every intersection of a subfamily of ``sets``, with ``top`` for the empty family."""
    closed = {frozenset(top)}
    for s in sets:
        closed |= {x & s for x in closed}
    return closed


def is_concept(ctx: TriadicContext, O, A, C) -> bool:
    O = ctx.check(Axis.OBJECT, O)
    A = ctx.check(Axis.ATTRIBUTE, A)
    C = ctx.check(Axis.CONDITION, C)
    return extent(ctx, A, C) == O and intent(ctx, O, C) == A and modus(ctx, O, A) == C


def generated_concept(ctx: TriadicContext, A, C) -> TriadicConcept | None:
    """Return the concept with feature ``A x C`` if there is one."""
    O = extent(ctx, A, C)
    if intent(ctx, O, C) == A and modus(ctx, O, A) == C:
        return TriadicConcept(O, frozenset(A), frozenset(C))
    return None


def rectangles(ctx: TriadicContext, pairs: frozenset) -> Iterator[tuple[frozenset, frozenset]]:
    """Maximal rectangles ``A x C`` inside the pair relation ``pairs``.

    These are the dyadic concepts of ``(M, C, pairs)``; a condition set is
    closed iff it is an intersection of attribute rows of ``pairs``.
    """
    row = {m: frozenset(c for (a, c) in pairs if a == m) for m in ctx.attributes}
    for conds in intersection_closure(row.values(), frozenset(ctx.conditions)):
        attrs = frozenset(m for m in ctx.attributes if conds <= row[m])
        yield attrs, conds


def object_intents(ctx: TriadicContext) -> set[frozenset]:
    """Closed sets of the dyadic context ``K^(1)``, including ``M x C``."""
    top = frozenset((m, c) for m in ctx.attributes for c in ctx.conditions)
    return intersection_closure(ctx.rows.values(), top)


def enumerate_concepts(ctx: TriadicContext) -> ConceptSet:
    found = []
    for closed in object_intents(ctx):
        for attrs, conds in rectangles(ctx, closed):
            concept = generated_concept(ctx, attrs, conds)
            if concept is not None:
                found.append(concept)
    return ConceptSet(ctx, found)


def brute_force_concepts(ctx: TriadicContext) -> ConceptSet:
    """Reference enumerator that tries every ``A x C``; used as a test oracle."""
    if len(ctx.attributes) + len(ctx.conditions) > SIZE_GUARD:
        raise SizeGuardError(f"|M|+|C| exceeds {SIZE_GUARD}")
    found = set()
    for A in subsets(ctx.attributes):
        for C in subsets(ctx.conditions):
            O = extent(ctx, A, C)
            A2 = intent(ctx, O, C)
            C2 = modus(ctx, O, A2)
            if is_concept(ctx, O, A2, C2):
                found.add(TriadicConcept(O, A2, C2))
    return ConceptSet(ctx, found)


def features(ctx: TriadicContext) -> frozenset[Product]:
    return enumerate_concepts(ctx).features
