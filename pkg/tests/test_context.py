import pytest

from conftest import RUNNING, RUNNING_SLICES
from triadic import (Axis, Product, TriadicContext, closure_12C, closure_13A, derive_conditional,
                     derive_outer, derive_product, extent, intent, load_context, modus,
                     parse_context)
from triadic.context import detect_format, dumps_slices, dumps_triples, from_slices
from triadic.errors import ContextParseError, UnknownNameError


def test_running_context_shape(ctx):
    assert ctx.objects == ("1", "2", "3", "4", "5")
    assert ctx.attributes == ("a", "b", "c", "d")
    assert ctx.conditions == ("P", "N", "R", "K", "S")
    # the object/condition table has 52 filled attribute entries
    assert len(ctx.incidence) == 52


def test_slices_and_triples_agree(ctx):
    assert load_context(RUNNING_SLICES) == ctx
    assert detect_format(RUNNING_SLICES.read_text()) == "slices"
    assert detect_format(RUNNING.read_text()) == "triples"


@pytest.mark.parametrize("dump,fmt", [(dumps_triples, "triples"), (dumps_slices, "slices")])
def test_round_trip(ctx, dump, fmt):
    assert parse_context(dump(ctx), fmt) == ctx


def test_empty_context():
    ctx = parse_context("#triadic v1\nG:;M:;C:\n")
    assert ctx.objects == ctx.attributes == ctx.conditions == ()


def test_universe_inferred_from_body():
    ctx = parse_context("#triadic v1\no,m,c\np,m,d\n")
    assert ctx.objects == ("o", "p") and ctx.conditions == ("c", "d")


def test_arity_error_reports_line():
    with pytest.raises(ContextParseError) as info:
        parse_context("#triadic v1\nG: 1\nM: a\nC: P\n1,a\n")
    assert info.value.lineno == 5


def test_undeclared_name_rejected():
    with pytest.raises(UnknownNameError):
        parse_context("#triadic v1\nG: 1\nM: a\nC: P\n1,b,P\n")


def test_slice_row_needs_condition_header():
    with pytest.raises(ContextParseError):
        parse_context("#triadic-slices v1\n1 | a\n", "slices")


def test_slice_row_cell_count():
    with pytest.raises(ContextParseError):
        parse_context("#triadic-slices v1\nC: P,N\n1 | a\n", "slices")


def test_comments_and_blank_lines_ignored():
    ctx = parse_context("#triadic v1\n# a comment\n\n1,a,P\n")
    assert ctx.incidence == frozenset({("1", "a", "P")})


def test_from_slices():
    ctx = from_slices({"1": {"P": "ab", "N": ""}, "2": {"P": "b", "N": "a"}})
    assert ctx.attributes == ("a", "b") and ctx.conditions == ("P", "N")
    assert ("2", "a", "N") in ctx.incidence


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        TriadicContext(("1", "1"), ("a",), ("P",), frozenset())


def test_outer_derivations(ctx):
    assert derive_outer(ctx, Axis.ATTRIBUTE, {"c"}) == {("1", "R"), ("2", "N"), ("5", "K")}
    assert len(derive_outer(ctx, Axis.OBJECT, ())) == 20
    every = derive_outer(ctx, Axis.OBJECT, ctx.objects)
    assert ("d", "P") in every and ("d", "N") in every


def test_product_derivations(ctx):
    assert extent(ctx, {"d"}, {"P", "N"}) == frozenset(ctx.objects)
    assert intent(ctx, ctx.objects, {"P"}) == {"a", "d"}
    assert modus(ctx, {"2"}, {"d"}) == {"P", "N", "R", "K", "S"}
    assert derive_product(ctx, Axis.OBJECT, {"d"}, {"P", "N"}) == frozenset(ctx.objects)


def test_conditional_derivations(ctx):
    assert derive_conditional(ctx, Axis.CONDITION, {"P"}, Axis.ATTRIBUTE, {"d"}) == frozenset(ctx.objects)
    assert derive_conditional(ctx, Axis.CONDITION, {"P"}, Axis.OBJECT, ctx.objects) == {"a", "d"}
    assert derive_conditional(ctx, Axis.CONDITION, (), Axis.ATTRIBUTE, {"b"}) == frozenset(ctx.objects)


def test_closures(ctx):
    assert closure_12C(ctx, {"d"}, {"P"}) == {"a", "d"}
    assert closure_12C(ctx, (), {"P"}) == {"a", "d"}
    assert closure_12C(ctx, ctx.attributes, {"S"}) == frozenset(ctx.attributes)
    assert closure_13A(ctx, {"P"}, {"b"}) == {"K", "P"}
    assert closure_13A(ctx, (), {"a"}) == {"R", "P", "K"}
    assert closure_13A(ctx, ctx.conditions, {"c"}) == frozenset(ctx.conditions)


def test_unknown_name_in_derivation(ctx):
    with pytest.raises(UnknownNameError):
        closure_12C(ctx, {"z"}, {"P"})


def test_product_label(ctx):
    assert Product.of("da", "NP").label(ctx) == "ad×PN"
    assert Product.of("", "P").label(ctx) == "∅×P"
