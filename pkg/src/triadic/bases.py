"""Construction of complete, minimal and optimal implication bases.

Every base is induced by a set of quasi-features: a product ``X x Y`` on the
attribute axis yields ``(X -> X'')_Y`` and on the condition axis yields
``(Y -> Y'')_X``, where ``''`` is the matching double derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .augmentation import _axis, canonical, relevant_quasi_features
from .context import Axis, Product, TriadicContext, closure_12C, closure_13A
from .errors import KindError
from .implications import Implication, ImplicationBase, Kind
from .logic import (eliminate_redundant, entails, fuse_constraints, left_reduce,
                    merge_constraints, right_reduce)


@dataclass(frozen=True)
class CoverageResult:
    kept: tuple[Product, ...]
    # (product, (rule, generators)) for every product left out
    dropped: tuple[tuple[Product, tuple[str, tuple[Product, ...]]], ...]


@dataclass(frozen=True)
class Metrics:
    cardinality: int
    size: int
    cardinality_reduction: int | None = None
    size_reduction: int | None = None
    cardinality_ratio: float | None = None
    size_ratio: float | None = None

    def as_dict(self) -> dict:
        out = {"cardinality": self.cardinality, "size": self.size}
        if self.cardinality_reduction is not None:
            out["cardinality_reduction"] = self.cardinality_reduction
            out["size_reduction"] = self.size_reduction
        return out


def _premise_side(p: Product, axis: Axis) -> frozenset:
    return p.attrs if axis is Axis.ATTRIBUTE else p.conds


def _constraint_side(p: Product, axis: Axis) -> frozenset:
    return p.conds if axis is Axis.ATTRIBUTE else p.attrs


def double_derivation(ctx: TriadicContext, p: Product, axis: Axis) -> frozenset:
    if axis is Axis.ATTRIBUTE:
        return closure_12C(ctx, p.attrs, p.conds)
    return closure_13A(ctx, p.conds, p.attrs)


def induced(ctx: TriadicContext, p: Product, axis, kind: Kind | None = None,
            strip_premise: bool = False) -> Implication:
    """The implication carried by the quasi-feature ``p``."""
    axis = _axis(axis)
    if kind is None:
        kind = Kind.BCAI if axis is Axis.ATTRIBUTE else Kind.BACI
    premise = _premise_side(p, axis)
    conclusion = double_derivation(ctx, p, axis)
    if strip_premise:
        conclusion = conclusion - premise
    return Implication(kind, premise, conclusion, _constraint_side(p, axis))


def _kind_axis(kind) -> Axis:
    return Kind(kind).premise_axis


def complete_base(ctx: TriadicContext, kind) -> ImplicationBase:
    kind = Kind(kind)
    if kind.unary:
        raise KindError("complete_base builds BCAI or BACI bases")
    axis = _kind_axis(kind)
    quasi = relevant_quasi_features(ctx, axis)
    return ImplicationBase.for_context(ctx, kind, (induced(ctx, p, axis) for p in quasi))


def _minimal_generators(ctx, axis, kept: list[Product], target: Implication) -> tuple[Product, ...]:
    kind = target.kind
    gens = list(kept)
    for g in list(gens):
        rest = [x for x in gens if x != g]
        if entails(ImplicationBase.for_context(ctx, kind, (induced(ctx, x, axis) for x in rest)), target):
            gens = rest
    return tuple(gens)


def min_cover(ctx: TriadicContext, quasi: Iterable[Product], axis) -> CoverageResult:
    """Pseudo-features: a non-redundant subset of ``quasi`` entailing the rest.

    The three elimination phases run first (empty-premise forms into a
    store, items saying the same as a store member, items whose premise
    extends a kept one with the same closure); a final pass then removes
    anything still entailed by the others.
    """
    axis = _axis(axis)
    quasi = canonical(ctx, quasi)
    imp = {p: induced(ctx, p, axis) for p in quasi}
    rule: dict[Product, str] = {}

    store = [p for p in quasi if not _premise_side(p, axis)]
    wide = {p for p in quasi if len(_premise_side(p, axis)) > 1}
    X = [p for p in quasi if p not in store]

    for s in store:
        for p in list(X):
            if imp[p].constraint == imp[s].constraint and imp[p].conclusion == imp[s].conclusion:
                X.remove(p)
                rule.setdefault(p, "same information as an empty-premise form")

    X1 = [p for p in X if p in wide]
    X = [p for p in X if p not in wide]
    for p1 in list(X1):
        for p in X:
            if (imp[p].constraint == imp[p1].constraint and imp[p].premise <= imp[p1].premise
                    and imp[p].conclusion == imp[p1].conclusion):
                X1.remove(p1)
                rule.setdefault(p1, "augmentation of a smaller premise")
                break

    kept = list(canonical(ctx, X + store + X1))
    kind = imp[quasi[0]].kind if quasi else Kind.BCAI
    as_base = lambda ps: ImplicationBase.for_context(ctx, kind, (imp[x] for x in ps))
    changed = True
    while changed:
        changed = False
        for p in list(kept):
            rest = [x for x in kept if x != p]
            if entails(as_base(rest), imp[p]):
                kept = rest
                rule.setdefault(p, "entailed by the remaining pseudo-features")
                changed = True

    final = as_base(kept)
    assert all(entails(final, imp[p]) for p in quasi)
    dropped = tuple(
        (p, (rule[p], _minimal_generators(ctx, axis, kept, imp[p])))
        for p in quasi if p not in kept
    )
    return CoverageResult(tuple(kept), dropped)


def pseudo_features(ctx: TriadicContext, axis, unit_only: bool = False) -> tuple[Product, ...]:
    return min_cover(ctx, relevant_quasi_features(ctx, axis, unit_only), axis).kept


def minimal_base(ctx: TriadicContext, kind) -> ImplicationBase:
    kind = Kind(kind)
    if kind.unary:
        raise KindError("minimal_base builds BCAI or BACI bases")
    axis = _kind_axis(kind)
    return ImplicationBase.for_context(ctx, kind, (induced(ctx, p, axis) for p in pseudo_features(ctx, axis)))


def cai_base(ctx: TriadicContext, kind, optimal: bool = False) -> ImplicationBase:
    """CAI/ACI base from the unit quasi-features, optionally optimised.

    The optimised base starts from the unit pseudo-features with
    conclusions stripped of their premises, then shrinks conclusions,
    shrinks premises, merges constraints (first for identical items, then
    for same-premise items whose union is already entailed), shrinks
    conclusions again and finally removes any item that became redundant.
    """
    kind = Kind(kind)
    if not kind.unary:
        raise KindError("cai_base builds CAI or ACI bases")
    axis = _kind_axis(kind)
    if not optimal:
        quasi = relevant_quasi_features(ctx, axis, unit_only=True)
        return ImplicationBase.for_context(ctx, kind, (induced(ctx, p, axis, kind) for p in quasi))
    units = pseudo_features(ctx, axis, unit_only=True)
    base = ImplicationBase.for_context(ctx, kind, (induced(ctx, p, axis, kind, strip_premise=True) for p in units))
    base = right_reduce(base)
    base = left_reduce(base)
    base = merge_constraints(base)
    base = fuse_constraints(base)
    base = right_reduce(base)
    return eliminate_redundant(base)


def build_base(ctx: TriadicContext, kind, variant: str = "complete") -> ImplicationBase:
    """Dispatch used by the command line: ``complete``, ``minimal`` or ``optimal``."""
    kind = Kind(kind)
    if kind.unary:
        if variant == "minimal":
            # unit pseudo-features, unreduced
            axis = _kind_axis(kind)
            units = pseudo_features(ctx, axis, unit_only=True)
            return ImplicationBase.for_context(ctx, kind, (induced(ctx, p, axis, kind) for p in units))
        return cai_base(ctx, kind, optimal=variant == "optimal")
    if variant == "complete":
        return complete_base(ctx, kind)
    if variant == "minimal":
        return minimal_base(ctx, kind)
    if variant == "optimal":
        base = ImplicationBase.for_context(ctx, kind, (
            induced(ctx, p, _kind_axis(kind), strip_premise=True) for p in pseudo_features(ctx, _kind_axis(kind))))
        return eliminate_redundant(right_reduce(left_reduce(right_reduce(base))))
    raise ValueError(f"unknown variant {variant!r}")


def _rate(new: int, old: int) -> tuple[int, float]:
    if old == 0:
        return 0, 0.0
    exact = 100.0 * (old - new) / old
    # truncate: 1 - 34/160 = 78.75% is reported as 78%
    return (100 * (old - new)) // old, exact


def metrics(base: ImplicationBase, reference: ImplicationBase | None = None) -> Metrics:
    if reference is None:
        return Metrics(base.cardinality, base.size)
    card, card_exact = _rate(base.cardinality, reference.cardinality)
    size, size_exact = _rate(base.size, reference.size)
    return Metrics(base.cardinality, base.size, card, size, card_exact, size_exact)


def lemma_minbase_check(ctx: TriadicContext, sigma: ImplicationBase, kind=None) -> bool:
    """Check that ``sigma`` carries every pseudo-feature's closure.

    For each pseudo-feature ``X x Y`` the base must hold an implication
    constrained by exactly ``Y`` whose premise has the same closure as ``X``
    under ``Y``.
    """
    kind = Kind(kind or sigma.kind)
    axis = _kind_axis(kind)
    for p in pseudo_features(ctx, axis):
        want = double_derivation(ctx, p, axis)
        constraint = _constraint_side(p, axis)
        found = False
        for imp in sigma.items:
            if imp.constraint != constraint:
                continue
            q = Product(imp.premise, constraint) if axis is Axis.ATTRIBUTE else Product(constraint, imp.premise)
            if double_derivation(ctx, q, axis) == want:
                found = True
                break
        if not found:
            return False
    return True
