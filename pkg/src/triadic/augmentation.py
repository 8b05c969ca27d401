"""Context augmentation and quasi-feature detection.

Augmenting a context by a set ``Z`` of attribute-condition pairs adds one
fresh object ``o_Z`` incident to exactly ``Z``.  A rectangle that is not a
feature is a quasi-feature when augmenting by it creates exactly one new
feature.  Relevance then asks whether the induced implication says
something beyond its premise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable

from .concepts import (SIZE_GUARD, features, generated_concept,
                       object_intents, rectangles, subsets)
from .context import Axis, Product, TriadicContext, closure_12C, closure_13A, derive_outer
from .errors import SizeGuardError


@dataclass(frozen=True)
class AugmentedContext(TriadicContext):
    """The context ``K[Z]``: the base plus one object incident to ``pairs``."""

    base: TriadicContext | None = None
    new_object: str = ""
    pairs: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class QuasiFeatureReport:
    candidate: Product
    is_quasi: bool
    is_relevant_M: bool
    is_relevant_C: bool
    new_feature_count: int
    # True for the empty-component forms, which are admitted by convention
    # rather than by counting new features.
    special_form: bool = False


@dataclass(frozen=True)
class TransferCheck:
    outer_objects: bool
    outer_pairs: bool
    closure_without_new: bool
    closure_with_new: bool

    def all(self) -> bool:
        return self.outer_objects and self.outer_pairs and self.closure_without_new and self.closure_with_new


def _as_pairs(ctx: TriadicContext, pairs) -> frozenset:
    if isinstance(pairs, Product):
        ctx.check(Axis.ATTRIBUTE, pairs.attrs)
        ctx.check(Axis.CONDITION, pairs.conds)
        return pairs.pairs()
    pairs = frozenset(tuple(p) for p in pairs)
    ctx.check(Axis.ATTRIBUTE, (m for m, _ in pairs))
    ctx.check(Axis.CONDITION, (c for _, c in pairs))
    return pairs


def fresh_object_name(taken: Iterable[str]) -> str:
    """Lexically smallest ``aug#k`` (``k`` a decimal integer) not in ``taken``."""
    taken = set(taken)
    if "aug#0" not in taken:
        return "aug#0"

    # decimal strings in lexical order form a preorder walk of the digit trie
    def walk(digits):
        if "aug#" + digits not in taken:
            return "aug#" + digits
        return walk(digits + "0")

    return min(walk(d) for d in "123456789")


def augment(ctx: TriadicContext, pairs) -> AugmentedContext:
    pairs = _as_pairs(ctx, pairs)
    o_z = fresh_object_name(ctx.objects)
    incidence = ctx.incidence | {(o_z, m, c) for m, c in pairs}
    return AugmentedContext(ctx.objects + (o_z,), ctx.attributes, ctx.conditions, incidence,
                            base=ctx, new_object=o_z, pairs=pairs)


def pair_extent(ctx: TriadicContext, pairs) -> frozenset[str]:
    """``P^(1)`` for an arbitrary pair set ``P``."""
    pairs = frozenset(pairs)
    return frozenset(g for g in ctx.objects if pairs <= ctx.rows[g])


def derivation_transfer_check(ctx: TriadicContext, pairs, P, O: Iterable[str] = ()) -> TransferCheck:
    """Evaluate the four identities linking derivations in ``K`` and ``K[Z]``."""
    aug = augment(ctx, pairs)
    z, o_z = aug.pairs, aug.new_object
    P = _as_pairs(ctx, P)
    O = ctx.check(Axis.OBJECT, O)

    outer_objects = derive_outer(aug, Axis.OBJECT, O) == derive_outer(ctx, Axis.OBJECT, O)
    ext_z = pair_extent(aug, P)
    outer_pairs = pair_extent(ctx, P) == ext_z - {o_z}
    closed_z = derive_outer(aug, Axis.OBJECT, ext_z)
    closed = derive_outer(ctx, Axis.OBJECT, pair_extent(ctx, P))
    without_new = o_z in ext_z or closed_z == closed
    with_new = o_z not in ext_z or (
        closed_z == derive_outer(aug, Axis.OBJECT, {o_z}) & closed and closed_z == z & closed
    )
    return TransferCheck(outer_objects, outer_pairs, without_new, with_new)


def _new_features(ctx: TriadicContext, intents, pairs: frozenset) -> set[Product]:
    """Features of ``K[pairs]`` whose extent contains the new object."""
    aug = augment(ctx, pairs)
    candidates = {closed & pairs for closed in intents} | {pairs}
    found = set()
    for closed in candidates:
        for attrs, conds in rectangles(aug, closed):
            concept = generated_concept(aug, attrs, conds)
            if concept is not None:
                found.add(concept.feature)
    return found


def merged_features(ctx: TriadicContext, known_features, pairs) -> frozenset[Product]:
    """Features of ``K[pairs]`` from the known features of ``K``.

    Concepts of ``K[Z]`` that avoid the new object are concepts of ``K``, and
    no feature of ``K`` is lost, so only the concepts through ``o_Z`` have to
    be computed.  Their pair sets are ``Z`` intersected with closed sets of
    ``K^(1)``.
    """
    pairs = _as_pairs(ctx, pairs)
    return frozenset(known_features) | _new_features(ctx, object_intents(ctx), pairs)


def _special_quasi(ctx: TriadicContext, candidate: Product) -> bool:
    # Empty-component rectangles add no incidences, so they are named by
    # convention: the empty-premise form is admitted when some attribute
    # (resp. condition) holds across the whole extent.
    if candidate.conds:
        return bool(closure_12C(ctx, (), candidate.conds))
    if candidate.attrs:
        return bool(closure_13A(ctx, (), candidate.attrs))
    return False


def is_special_form(candidate: Product) -> bool:
    return not candidate.attrs or not candidate.conds


def is_quasi_feature(ctx: TriadicContext, candidate: Product, known=None) -> bool:
    ctx.check(Axis.ATTRIBUTE, candidate.attrs)
    ctx.check(Axis.CONDITION, candidate.conds)
    known = features(ctx) if known is None else known
    if candidate in known:
        return False
    if is_special_form(candidate):
        return _special_quasi(ctx, candidate)
    return len(merged_features(ctx, known, candidate) - known) == 1


def is_relevant(ctx: TriadicContext, candidate: Product, axis) -> bool:
    axis = _axis(axis)
    A, C = candidate.attrs, candidate.conds
    if axis is Axis.ATTRIBUTE:
        return bool(C) and bool(closure_12C(ctx, A, C) - A)
    return bool(A) and bool(closure_13A(ctx, C, A) - C)


def quasi_report(ctx: TriadicContext, candidate: Product, known=None) -> QuasiFeatureReport:
    known = features(ctx) if known is None else known
    new = len(merged_features(ctx, known, candidate) - known)
    return QuasiFeatureReport(
        candidate,
        is_quasi_feature(ctx, candidate, known),
        is_relevant(ctx, candidate, Axis.ATTRIBUTE),
        is_relevant(ctx, candidate, Axis.CONDITION),
        new,
        is_special_form(candidate),
    )


def _axis(axis) -> Axis:
    if isinstance(axis, str):
        try:
            return {"m": Axis.ATTRIBUTE, "c": Axis.CONDITION}[axis.lower()]
        except KeyError:
            raise ValueError(f"axis must be 'm' or 'c', got {axis!r}") from None
    axis = Axis(axis)
    if axis is Axis.OBJECT:
        raise ValueError("relevance is defined on the attribute or condition axis")
    return axis


def canonical(ctx: TriadicContext, products: Iterable[Product]) -> tuple[Product, ...]:
    return tuple(sorted(set(products), key=lambda p: p.sort_key(ctx)))


def relevant_quasi_features(ctx: TriadicContext, axis, unit_only: bool = False) -> tuple[Product, ...]:
    """All relevant quasi-features for ``axis``, in canonical order.

    With ``unit_only`` the constraint side (conditions for the attribute
    axis, attributes for the condition axis) is restricted to singletons.
    """
    axis = _axis(axis)
    if len(ctx.attributes) + len(ctx.conditions) > SIZE_GUARD:
        raise SizeGuardError(f"|M|+|C| exceeds {SIZE_GUARD}")
    known = features(ctx)
    intents = object_intents(ctx)
    if unit_only and axis is Axis.ATTRIBUTE:
        space = cartesian(subsets(ctx.attributes), [frozenset({c}) for c in ctx.conditions])
    elif unit_only:
        space = cartesian([frozenset({m}) for m in ctx.attributes], subsets(ctx.conditions))
    else:
        space = cartesian(subsets(ctx.attributes), subsets(ctx.conditions))
    found = []
    for attrs, conds in space:
        candidate = Product(attrs, conds)
        if candidate in known or not is_relevant(ctx, candidate, axis):
            continue
        if is_special_form(candidate):
            quasi = _special_quasi(ctx, candidate)
        else:
            quasi = len(_new_features(ctx, intents, candidate.pairs()) - known) == 1
        if quasi:
            found.append(candidate)
    return canonical(ctx, found)
