import json
import random

import pytest

from conftest import binary, unary
from listings import ACI_BASE, BCAI_COMPLETE, CAI_BASE, CAI_OPTIMAL
from triadic import (Implication, ImplicationBase, Kind, cai_base, closure, closure_12C,
                     complete_base, eliminate_redundant, entails, equivalent, is_valid,
                     left_reduce, merge_constraints, parse_implication, replay, right_reduce, trace)
from triadic.concepts import subsets
from triadic.errors import KindError, NotEntailedError
from triadic.logic import RULES, TraceStep, entails_all, fuse_constraints
from triadic.implications import support


def _base(kind, *texts):
    return ImplicationBase(Kind(kind), tuple(parse_implication(t, kind) for t in texts))


def test_closure_examples(ctx):
    sigma = binary(ctx, "bcai", BCAI_COMPLETE)
    assert closure(sigma, (), {"P"}) == {"a", "d"}
    assert closure(sigma, {"c"}, {"P"}) == {"a", "b", "c", "d"}
    assert closure(sigma, {"b"}, ()) == frozenset(ctx.attributes)
    pair = ImplicationBase.for_context(ctx, "bcai", [parse_implication("({} -> {a,d})_{P}"),
                                                     parse_implication("({} -> {d})_{N}")])
    assert closure(pair, (), {"P", "N"}) == {"d"}


def test_composition_after_transitivity():
    # per-condition covering alone misses this: x under P needs y first
    sigma = _base("bcai", "({} -> {y})_{P}", "({y} -> {x})_{P}", "({} -> {x})_{N}")
    assert entails(sigma, parse_implication("({} -> {x})_{P,N}"))
    assert not entails(sigma, parse_implication("({} -> {y})_{P,N}"))


def test_closure_is_a_closure_operator(ctx):
    sigma = complete_base(ctx, "bcai")
    rng = random.Random(7)
    for _ in range(60):
        A = frozenset(x for x in ctx.attributes if rng.random() < 0.4)
        B = A | {rng.choice(ctx.attributes)}
        C = frozenset(c for c in ctx.conditions if rng.random() < 0.5)
        cl = closure(sigma, A, C)
        assert A <= cl
        assert closure(sigma, cl, C) == cl
        assert cl <= closure(sigma, B, C)


def test_soundness_on_running_context(ctx):
    for kind in ("bcai", "baci"):
        sigma = complete_base(ctx, kind)
        axis, other = Kind(kind).premise_axis, Kind(kind).constraint_axis
        for A in subsets(ctx.universe(axis)):
            for C in subsets(ctx.universe(other)):
                if not C:
                    continue
                imp = Implication(Kind(kind), A, closure(sigma, A, C), C)
                assert is_valid(ctx, imp)


def test_closure_matches_context_where_supported(ctx):
    sigma = complete_base(ctx, "bcai")
    for A in subsets(ctx.attributes):
        for C in subsets(ctx.conditions):
            if support(ctx, Kind.BCAI, A, C):
                assert closure(sigma, A, C) == closure_12C(ctx, A, C)


def test_zero_support_gap(ctx):
    # b never occurs under S, so semantically anything follows; the rules cannot reach c
    sigma = complete_base(ctx, "bcai")
    assert closure_12C(ctx, {"b"}, {"P", "S"}) == frozenset(ctx.attributes)
    assert closure(sigma, {"b"}, {"P", "S"}) == {"a", "b", "d"}


@pytest.mark.parametrize("text", ["({N} -> {P,K})_{a,b}", "({N,K} -> {P})_{b}", "({N} -> {P})_{a,b,d}"])
def test_baci_supported_counterexamples(ctx, text):
    imp = parse_implication(text, "baci")
    assert support(ctx, Kind.BACI, imp.premise, imp.constraint)
    assert is_valid(ctx, imp)
    assert not entails(complete_base(ctx, "baci"), imp)


def test_entails_examples(ctx):
    aci = cai_base(ctx, "aci")
    assert entails(aci, parse_implication("{P} -[{a,b,c}]-> {K}", "aci"))
    optimal = unary(ctx, "cai", CAI_OPTIMAL)
    assert entails_all(optimal, unary(ctx, "cai", CAI_BASE).items)
    assert entails(_base("bcai"), parse_implication("({x} -> {x})_{P}"))


def test_entails_kind_mismatch(ctx):
    with pytest.raises(KindError):
        entails(complete_base(ctx, "bcai"), parse_implication("({P} -> {K})_{b}", "baci"))


def test_unary_entailment_checks_each_condition():
    sigma = _base("cai", "{} -[{P}]-> {a}")
    assert not entails(sigma, parse_implication("{} -[{P,N}]-> {a}"))
    assert entails(sigma.with_items(sigma.items + (parse_implication("{} -[{N}]-> {a}"),)),
                   parse_implication("{} -[{P,N}]-> {a}"))


def test_eliminate_redundant(ctx):
    reduced = eliminate_redundant(unary(ctx, "cai", CAI_BASE))
    assert reduced.cardinality == 10
    assert parse_implication("{b} -[{S}]-> {a,b,c,d}") in reduced.items
    assert parse_implication("{b,c} -[{S}]-> {a,b,c,d}") not in reduced.items
    small = _base("bcai", "({} -> {a})_{P}", "({b} -> {a})_{P}")
    assert eliminate_redundant(small).items == (parse_implication("({} -> {a})_{P}"),)
    assert eliminate_redundant(reduced) == reduced


def test_right_reduce(ctx):
    out = right_reduce(unary(ctx, "cai", "∅ P ad; c P abd"))
    assert out.items == unary(ctx, "cai", "∅ P ad; c P b").items
    single = _base("cai", "{c} -[{P}]-> {b}")
    assert right_reduce(single) == single


def test_left_reduce(ctx):
    out = left_reduce(unary(ctx, "aci", "∅ d PN; PNRS d K"))
    assert out.items == unary(ctx, "aci", "∅ d PN; RS d K").items


def test_merge_constraints(ctx):
    out = merge_constraints(unary(ctx, "cai", "c K b; c P b; c N b"))
    assert out.items == unary(ctx, "cai", "c KPN b").items
    assert merge_constraints(unary(ctx, "cai", "∅ R a; ∅ K a")).items == unary(ctx, "cai", "∅ KR a").items
    with pytest.raises(KindError):
        merge_constraints(complete_base(ctx, "bcai"))


def test_fuse_constraints(ctx):
    sigma = unary(ctx, "aci", "S b KPNR; S c KPNR; S b c")
    fused = fuse_constraints(sigma)
    assert equivalent(fused, sigma)
    assert fused.cardinality < sigma.cardinality


@pytest.mark.parametrize("step", [right_reduce, left_reduce, eliminate_redundant, merge_constraints])
def test_reductions_preserve_entailment(ctx, step):
    for text, kind in ((CAI_BASE, "cai"), (ACI_BASE, "aci")):
        sigma = unary(ctx, kind, text)
        assert equivalent(step(sigma), sigma)


def test_trace_paper_sequence(ctx):
    sigma = cai_base(ctx, "aci")
    goal = parse_implication("{P} -[{a,b,c}]-> {K}", "aci")
    tr = trace(sigma, goal)
    assert [s.rule for s in tr.steps] == ["Assumption"] * 3 + ["Conditional composition", "Decomposition"]
    assert tr.steps[3].uses == (0, 1, 2)
    assert replay(sigma, tr)


@pytest.mark.parametrize("text,rules", [
    ("({} -> {a,b,c,d})_{}", ["Non-constraint"]),
    ("({a,c} -> {a,c})_{P,N}", ["Reflexivity"]),
    ("({a,c} -> {a})_{P,N}", ["Reflexivity", "Decomposition"]),
])
def test_axiom_traces(ctx, text, rules):
    sigma = complete_base(ctx, "bcai")
    tr = trace(sigma, parse_implication(text))
    assert [s.rule for s in tr.steps] == rules
    assert replay(sigma, tr)


@pytest.mark.parametrize("text", ["({} -> {d})_{P,N}", "({c,d} -> {b})_{N,R}", "({c} -> {a,b,d})_{P,S}",
                                  "({a,b} -> {c,d})_{R,P,K,S}", "({d} -> {a})_{P}"])
def test_traces_replay(ctx, text):
    sigma = complete_base(ctx, "bcai")
    goal = parse_implication(text)
    tr = trace(sigma, goal)
    assert tr.steps[-1].implication == goal
    assert all(s.rule in RULES for s in tr.steps)
    assert replay(sigma, tr)


def test_trace_json(ctx):
    tr = trace(cai_base(ctx, "aci"), parse_implication("{P} -[{a,b,c}]-> {K}", "aci"))
    steps = json.loads(tr.to_json())
    assert [s["rule"] for s in steps][-2:] == ["Conditional composition", "Decomposition"]
    assert steps[-1]["conclusion"] == ["K"] and steps[-1]["uses"] == [3]


def test_trace_not_entailed(ctx):
    with pytest.raises(NotEntailedError):
        trace(complete_base(ctx, "bcai"), parse_implication("({a} -> {c})_{S}"))


def test_replay_rejects_forged_step(ctx):
    sigma = complete_base(ctx, "bcai")
    tr = trace(sigma, parse_implication("({} -> {d})_{P,N}"))
    forged = parse_implication("({} -> {c})_{P,N}")
    tr.steps[-1] = TraceStep(tr.steps[-1].rule, tr.steps[-1].uses, forged)
    tr.goal = forged
    assert not replay(sigma, tr)
