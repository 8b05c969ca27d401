"""Syntactic inference over conditional implications.

The closure ``(A)_{Sigma,C}`` collects every attribute ``b`` such that
``Sigma |- (A -> b)_C``.  An attribute can be added to a derived set ``S``
when, for each condition ``c`` of ``C``, some implication available at a
constraint ``C' ⊆ C`` containing ``c`` has premise inside ``S`` and ``b`` in
its conclusion.  The available implications are the members of ``Sigma``
and, recursively, the closures of ``S`` at proper sub-constraints, which is
what lets transitivity run below ``C`` before conditional composition
lifts the result back up.

The unary kinds (CAI, ACI) are handled by splitting every item into
singleton constraints first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import KindError, NotEntailedError
from .implications import Implication, ImplicationBase, Kind, implication_key

Item = tuple[frozenset, frozenset, frozenset]


def _unions(constraints: Iterable[frozenset]) -> set[frozenset]:
    out: set[frozenset] = set()
    for k in constraints:
        out |= {u | k for u in out}
        out.add(k)
    return out


class _Engine:
    """Memoised closure over a fixed list of Biedermann-style items."""

    def __init__(self, items: tuple[Item, ...], universe: frozenset):
        self.items = items
        self.universe = universe
        self._memo: dict[tuple[frozenset, frozenset], frozenset] = {}

    def usable(self, C: frozenset) -> list[Item]:
        return [it for it in self.items if it[2] and it[2] <= C]

    def sub_constraints(self, C: frozenset) -> list[frozenset]:
        subs = _unions(it[2] for it in self.usable(C))
        return sorted((s for s in subs if s != C), key=lambda s: (len(s), sorted(s)))

    def closure(self, S: frozenset, C: frozenset) -> frozenset:
        if not C:
            return self.universe
        key = (S, C)
        if key in self._memo:
            return self._memo[key]
        usable = self.usable(C)
        if frozenset().union(*(it[2] for it in usable)) != C:
            # some condition is not covered by anything: nothing beyond S
            self._memo[key] = S
            return S
        subs = self.sub_constraints(C)
        derived = set(S)
        while True:
            frozen = frozenset(derived)
            sub_closures = [(Cs, self.closure(frozen, Cs)) for Cs in subs]
            added = set()
            for b in self.universe - derived:
                if all(
                    any(X <= derived and c in Cp and b in Y for X, Y, Cp in usable)
                    or any(c in Cs and b in T for Cs, T in sub_closures)
                    for c in C
                ):
                    added.add(b)
            if not added:
                break
            derived |= added
        result = frozenset(derived)
        self._memo[key] = result
        return result


def _items(base: ImplicationBase) -> tuple[Item, ...]:
    out = []
    for imp in base.items:
        if base.kind.unary:
            out.extend((imp.premise, imp.conclusion, frozenset({c})) for c in imp.constraint)
        else:
            out.append((imp.premise, imp.conclusion, imp.constraint))
    return tuple(dict.fromkeys(out))


@lru_cache(maxsize=256)
def _engine(items: tuple[Item, ...], universe: frozenset) -> _Engine:
    return _Engine(items, universe)


def _universe(base: ImplicationBase) -> frozenset:
    universe = frozenset(base.premise_universe)
    for imp in base.items:
        universe |= imp.premise | imp.conclusion
    return universe


def engine_for(base: ImplicationBase) -> _Engine:
    return _engine(_items(base), _universe(base))


def closure(sigma: ImplicationBase, A: Iterable[str], C: Iterable[str]) -> frozenset[str]:
    """``(A)_{Sigma,C}``; an empty ``C`` yields the whole premise-side universe."""
    return engine_for(sigma).closure(frozenset(A), frozenset(C))


def _compatible(sigma: ImplicationBase, goal: Implication):
    if sigma.kind.premise_axis is not goal.kind.premise_axis:
        raise KindError(f"cannot use a {sigma.kind.name} base for a {goal.kind.name} goal")


def entails(sigma: ImplicationBase, goal: Implication) -> bool:
    _compatible(sigma, goal)
    engine = engine_for(sigma)
    if goal.kind.unary:
        return all(goal.conclusion <= engine.closure(goal.premise, frozenset({c}))
                   for c in goal.constraint)
    return goal.conclusion <= engine.closure(goal.premise, goal.constraint)


def entails_all(sigma: ImplicationBase, goals: Iterable[Implication]) -> bool:
    return all(entails(sigma, g) for g in goals)


def equivalent(a: ImplicationBase, b: ImplicationBase) -> bool:
    return entails_all(a, b.items) and entails_all(b, a.items)


# --------------------------------------------------------------------------
# base simplification


def eliminate_redundant(sigma: ImplicationBase) -> ImplicationBase:
    """Drop, in canonical order, every item entailed by the remaining ones."""
    kept = list(sigma.items)
    for imp in sorted(sigma.items, key=lambda i: implication_key(i, sigma.order)):
        rest = [i for i in kept if i != imp]
        if entails(sigma.with_items(rest), imp):
            kept = rest
    return sigma.with_items(kept)


def _replace(items: list, index: int, new: Implication | None) -> list:
    out = items[:index] + ([new] if new is not None else []) + items[index + 1:]
    return list(dict.fromkeys(out))


def right_reduce(sigma: ImplicationBase) -> ImplicationBase:
    """Shrink conclusions as long as the base stays equivalent.

    Premise attributes are removed from conclusions first; the remaining
    attributes are tried in universe order.  An item whose conclusion
    becomes empty is dropped.
    """
    items = list(sigma.items)
    i = 0
    while i < len(items):
        original = items[i]
        current = original.replace(conclusion=original.conclusion - original.premise)
        for b in sigma.order.sort(original.kind.premise_axis, current.conclusion):
            trial = current.replace(conclusion=current.conclusion - {b})
            candidate = _replace(items, i, trial if trial.conclusion else None)
            if entails(sigma.with_items(candidate), original):
                current = trial
        if current.conclusion and current not in items[:i] + items[i + 1:]:
            items[i] = current
            i += 1
        else:
            del items[i]
    return sigma.with_items(items)


def left_reduce(sigma: ImplicationBase) -> ImplicationBase:
    """Remove premise attributes that the rest of the base makes extraneous."""
    items = list(sigma.items)
    for i in range(len(items)):
        current = items[i]
        for a in sigma.order.sort(current.kind.premise_axis, current.premise):
            trial = current.replace(premise=current.premise - {a})
            if entails(sigma.with_items(items), trial):
                current = trial
        items[i] = current
    return sigma.with_items(items)


def merge_constraints(sigma: ImplicationBase) -> ImplicationBase:
    """Fuse items sharing premise and conclusion by uniting their constraints."""
    if not sigma.kind.unary:
        raise KindError("constraint merging is only sound for CAI and ACI bases")
    merged: dict[tuple, set] = {}
    for imp in sigma.items:
        merged.setdefault((imp.premise, imp.conclusion), set()).update(imp.constraint)
    return sigma.with_items(
        Implication(sigma.kind, p, q, frozenset(c)) for (p, q), c in merged.items()
    )


def fuse_constraints(sigma: ImplicationBase) -> ImplicationBase:
    """Merge same-premise items whose conclusions differ.

    Two items ``X -[C1]-> Y1`` and ``X -[C2]-> Y2`` are replaced by
    ``X -[C1 ∪ C2]-> Y1 ∪ Y2`` when the base already entails the merged item.
    The merged item gives back both originals by decomposition, so the base
    stays equivalent, and the size drops by ``|X| + |Y1 ∩ Y2|``.
    """
    if not sigma.kind.unary:
        raise KindError("constraint merging is only sound for CAI and ACI bases")
    items = list(sigma.items)
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(items):
            for j in range(i + 1, len(items)):
                b = items[j]
                if a.premise != b.premise:
                    continue
                fused = a.replace(conclusion=a.conclusion | b.conclusion,
                                  constraint=a.constraint | b.constraint)
                if entails(sigma.with_items(items), fused):
                    items = [fused if k == i else x for k, x in enumerate(items) if k != j]
                    changed = True
                    break
            if changed:
                break
    return sigma.with_items(items)


# --------------------------------------------------------------------------
# derivation traces

RULES = (
    "Assumption", "Non-constraint", "Reflexivity", "Augmentation", "Transitivity",
    "Conditional composition", "Decomposition", "Pseudotransitivity", "Additivity",
    "Accumulation", "Simplification", "Conditional decomposition",
)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    uses: tuple[int, ...]
    implication: Implication
    # index into the base for assumption steps
    source: int | None = None


@dataclass
class DerivationTrace:
    goal: Implication
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> str:
        return json.dumps([
            {"rule": s.rule, "uses": list(s.uses), "source": s.source,
             "premise": sorted(s.implication.premise), "conclusion": sorted(s.implication.conclusion),
             "constraint": sorted(s.implication.constraint)}
            for s in self.steps
        ], indent=2)


class _Prover:
    def __init__(self, sigma: ImplicationBase, kind: Kind):
        self.sigma = sigma
        self.kind = kind
        self.engine = engine_for(sigma)
        self.steps: list[TraceStep] = []
        self._cache: dict = {}

    def emit(self, rule, uses, imp, source=None) -> int:
        key = (rule, uses, imp, source)
        if key in self._cache:
            return self._cache[key]
        self.steps.append(TraceStep(rule, tuple(uses), imp, source))
        self._cache[key] = len(self.steps) - 1
        return self._cache[key]

    def imp(self, X, Y, C) -> Implication:
        return Implication(self.kind, frozenset(X), frozenset(Y), frozenset(C))

    def at(self, i) -> Implication:
        return self.steps[i].implication

    def assumption(self, item: Item, c) -> int:
        """Step for a base item usable at constraint ``item[2]`` (or ``{c}``)."""
        X, Y, C = item
        for idx, imp in enumerate(self.sigma.items):
            if imp.premise == X and imp.conclusion == Y and imp.constraint == C:
                return self.emit("Assumption", (), imp, idx)
        # unary base item whose constraint was split into singletons
        for idx, imp in enumerate(self.sigma.items):
            if imp.premise == X and imp.conclusion == Y and c in imp.constraint:
                whole = self.emit("Assumption", (), imp, idx)
                return self.emit("Conditional decomposition", (whole,), self.imp(X, Y, {c}))
        raise AssertionError("item not found in base")

    def prove(self, S: frozenset, C: frozenset, need: frozenset) -> int:
        """Step index of some ``(S -> W)_C`` with ``need ⊆ W``."""
        universe = self.engine.universe
        if not C:
            axiom = self.emit("Non-constraint", (), self.imp((), universe, ()))
            if not S:
                return axiom
            return self.emit("Augmentation", (axiom,), self.imp(S, universe, ()))
        if need <= S:
            return self.emit("Reflexivity", (), self.imp(S, S, C))
        usable = self.engine.usable(C)
        subs = self.engine.sub_constraints(C)
        current = None
        have: frozenset = frozenset()
        while not need <= have | S:
            known = S | have
            sub_closures = [(Cs, self.engine.closure(known, Cs)) for Cs in subs]
            families = {b: self._family(b, known, C, usable, sub_closures)
                        for b in sorted(universe - known)}
            addable = [b for b, fam in families.items() if fam is not None]
            if not addable:
                raise NotEntailedError("goal is not derivable")
            # go straight for the goal when possible, otherwise grow the set
            for b in [b for b in addable if b in need] or addable:
                if b in have:
                    continue
                step = self._compose(families[b], known, C)
                current = self._accumulate(current, step, S, C)
                have = self.at(current).conclusion
        if not need <= have:
            current = self.emit("Augmentation", (current,), self.imp(S, have | S, C))
        return current

    def _accumulate(self, current, step, S, C) -> int:
        Z, W = self.at(step).premise, self.at(step).conclusion
        if current is None:
            if Z == S:
                return step
            return self.emit("Augmentation", (step,), self.imp(S, W | S, C))
        cur = self.at(current)
        if not Z <= cur.conclusion:
            current = self.emit("Augmentation", (current,), self.imp(S, cur.conclusion | S, C))
            cur = self.at(current)
        return self.emit("Accumulation", (current, step), self.imp(S, cur.conclusion | W, C))

    def _family(self, b, S, C, usable, sub_closures):
        """Pick, for each condition, a source containing ``b``; prefer base items."""
        chosen: list = []
        covered: set = set()
        for c in sorted(C):
            if c in covered:
                continue
            options = [it for it in usable if it[0] <= S and c in it[2] and b in it[1]]
            # an exact premise needs no augmentation; wide constraints need fewer parts
            options.sort(key=lambda it: (it[0] != S, -len(it[2])))
            item = options[0] if options else None
            if item is not None:
                chosen.append(("item", item, c))
                covered |= item[2]
                continue
            sub = next((Cs for Cs, T in sub_closures if c in Cs and b in T), None)
            if sub is None:
                return None
            chosen.append(("sub", sub, c))
            covered |= sub
        return chosen

    def _compose(self, family, S, C) -> int:
        parts = []
        for tag, value, c in family:
            if tag == "item":
                parts.append(self.assumption(value, c))
            else:
                target = self.engine.closure(S, value)
                parts.append(self.prove(S, value, target - S))
        parts = list(dict.fromkeys(parts))
        if len(parts) == 1:
            return parts[0]
        imps = [self.at(p) for p in parts]
        X = frozenset().union(*(i.premise for i in imps))
        Y = frozenset.intersection(*(i.conclusion for i in imps))
        Cs = frozenset().union(*(i.constraint for i in imps))
        return self.emit("Conditional composition", tuple(parts), self.imp(X, Y, Cs))


def trace(sigma: ImplicationBase, goal: Implication) -> DerivationTrace:
    """A replayable derivation of ``goal`` from ``sigma``."""
    if sigma.kind is not goal.kind:
        raise KindError(f"trace needs a {goal.kind.name} base, got {sigma.kind.name}")
    if not entails(sigma, goal):
        raise NotEntailedError(f"{goal} does not follow from the base")
    prover = _Prover(sigma, goal.kind)
    X, Y, C = goal.premise, goal.conclusion, goal.constraint
    if goal.kind.unary and len(C) > 1:
        parts = [prover.prove(X, frozenset({c}), Y) for c in sorted(C)]
        imps = [prover.at(p) for p in parts]
        last = prover.emit("Conditional composition", tuple(dict.fromkeys(parts)), prover.imp(
            frozenset().union(*(i.premise for i in imps)),
            frozenset.intersection(*(i.conclusion for i in imps)), C))
    elif goal.kind.unary and not C:
        # vacuous: any reflexive implication with empty constraint
        last = prover.emit("Reflexivity", (), prover.imp(X, X, ()))
        if Y - X:
            axiom = prover.emit("Non-constraint", (), prover.imp((), prover.engine.universe, ()))
            last = prover.emit("Augmentation", (axiom,), prover.imp(X, prover.engine.universe | X, ()))
    else:
        last = prover.prove(X, C, Y)
    if prover.at(last) != goal:
        prover.emit("Decomposition", (last,), goal)
    return _compact(DerivationTrace(goal, prover.steps))


def _compact(tr: DerivationTrace) -> DerivationTrace:
    """Drop steps that the final step does not depend on and renumber."""
    needed = set()
    stack = [len(tr.steps) - 1]
    while stack:
        i = stack.pop()
        if i in needed:
            continue
        needed.add(i)
        stack.extend(tr.steps[i].uses)
    order = sorted(needed)
    renumber = {old: new for new, old in enumerate(order)}
    steps = [TraceStep(tr.steps[i].rule, tuple(renumber[u] for u in tr.steps[i].uses),
                       tr.steps[i].implication, tr.steps[i].source) for i in order]
    return DerivationTrace(tr.goal, steps)


def _check_step(sigma: ImplicationBase, step: TraceStep, prior: list[Implication], universe) -> bool:
    imp = step.implication
    used = [prior[u] for u in step.uses]
    X, Y, C = imp.premise, imp.conclusion, imp.constraint
    rule = step.rule
    if rule == "Assumption":
        return step.source is not None and 0 <= step.source < len(sigma.items) and sigma.items[step.source] == imp
    if rule == "Non-constraint":
        return not used and not X and not C and Y == universe
    if rule == "Reflexivity":
        return not used and X == Y
    if rule == "Conditional decomposition":
        (a,) = used
        return imp.kind.unary and a.premise == X and a.conclusion == Y and C <= a.constraint
    if rule == "Augmentation":
        (a,) = used
        return (a.constraint == C and a.premise <= X and a.conclusion <= Y
                and (X - Y) <= a.premise and (Y - X) <= a.conclusion)
    if rule == "Decomposition":
        (a,) = used
        return a.premise == X and a.constraint == C and Y <= a.conclusion
    if rule == "Conditional composition":
        return (len(used) >= 2 and X == frozenset().union(*(u.premise for u in used))
                and Y == frozenset.intersection(*(u.conclusion for u in used))
                and C == frozenset().union(*(u.constraint for u in used)))
    if len(used) != 2:
        return False
    a, b = used
    if a.constraint != C or b.constraint != C:
        return False
    if rule == "Transitivity":
        return a.premise == X and a.conclusion == b.premise and b.conclusion == Y
    if rule == "Accumulation":
        return a.premise == X and b.premise <= a.conclusion and Y == a.conclusion | b.conclusion
    if rule == "Additivity":
        return a.premise == X == b.premise and Y == a.conclusion | b.conclusion
    if rule == "Pseudotransitivity":
        return a.conclusion <= b.premise and X == a.premise | (b.premise - a.conclusion) and Y == b.conclusion
    if rule == "Simplification":
        return a.premise <= b.premise and X == a.premise | (b.premise - a.conclusion) and Y == b.conclusion - a.conclusion
    return False


def replay(sigma: ImplicationBase, tr: DerivationTrace) -> bool:
    """Check every step of ``tr`` and that it ends with its goal."""
    universe = _universe(sigma)
    prior: list[Implication] = []
    for i, step in enumerate(tr.steps):
        if step.rule not in RULES or any(u >= i or u < 0 for u in step.uses):
            return False
        if step.implication.kind is not sigma.kind:
            return False
        try:
            if not _check_step(sigma, step, prior, universe):
                return False
        except ValueError:
            return False
        prior.append(step.implication)
    return bool(prior) and prior[-1] == tr.goal
