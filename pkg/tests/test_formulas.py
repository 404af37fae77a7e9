import pytest
from hypothesis import given, settings
from pytest import raises

from strategies import minc_formulas, nab_formulas, nedisj_formulas
from teamlib.errors import FormulaError, ParseError
from teamlib.formulas import (
    And,
    Bot,
    Box,
    Dia,
    Dialect,
    Incl,
    Nab,
    NeDisj,
    NegProp,
    Or,
    Prop,
    Top,
    conjoin,
    dialect_of,
    disjoin,
    format_position,
    modal_depth,
    nabla_to_nedis,
    nedis_to_nabla,
    node_count,
    occ_nabla,
    parse,
    parse_position,
    positions,
    props_of,
    subformula_at,
    to_text,
)

p, q, r = Prop("p"), Prop("q"), Prop("r")


# ── Parsing ────────────────────────────────────────────────────────────


class TestParse:
    def test_literals(self):
        assert parse("p & ~q") == And(p, NegProp("q"))
        assert parse("top") == Top()
        assert parse("bot") == Bot()

    def test_inclusion_atom(self):
        assert parse("[p1,p2 <= q1,q2]") == Incl(
            (Prop("p1"), Prop("p2")), (Prop("q1"), Prop("q2"))
        )
        assert parse("[p <= ~p]") == Incl((p,), (NegProp("p"),))

    def test_precedence(self):
        assert parse("p | q & r") == Or(p, And(q, r))
        assert parse("nab p & q") == And(Nab(p), q)
        assert parse("dia box p") == Dia(Box(p))
        assert parse("(p | q) & r") == And(Or(p, q), r)

    def test_disjunctions_share_a_level(self):
        assert parse("p |! q | r") == Or(NeDisj(p, q), r)
        assert parse("p | q |! r") == NeDisj(Or(p, q), r)

    def test_keyword_prefix_is_an_identifier(self):
        assert parse("diamond & boxer") == And(Prop("diamond"), Prop("boxer"))

    def test_nested_inclusion_rejected(self):
        with raises(ParseError, match="nested inclusion"):
            parse("[[p <= q] <= r]")

    def test_arity_mismatch_rejected(self):
        with raises(ParseError, match="arity mismatch"):
            parse("[p, q <= r]")

    def test_nab_inside_inclusion_rejected(self):
        with raises(ParseError, match="must not use nab"):
            parse("[nab p <= q]")

    def test_negation_only_on_atoms(self):
        with raises(ParseError, match="negation normal form"):
            parse("~dia p")

    @pytest.mark.parametrize("text", ["", "   ", "p &", "dia", "(p | q", "[p <= ]", "p q"])
    def test_syntax_errors(self, text):
        with raises(ParseError):
            parse(text)

    def test_error_position(self):
        with raises(ParseError) as info:
            parse("p $ q")
        assert info.value.line == 1
        assert info.value.column == 3


# ── Printing ───────────────────────────────────────────────────────────


class TestPrint:
    def test_unary(self):
        assert to_text(Nab(p)) == "nab p"
        assert to_text(Dia(Box(NegProp("p")))) == "dia box ~p"

    def test_precedence(self):
        assert to_text(Or(p, And(q, r))) == "p | (q & r)"
        assert to_text(And(Or(p, q), r)) == "(p | q) & r"
        assert to_text(Dia(And(p, q))) == "dia (p & q)"

    def test_left_association_needs_no_parentheses(self):
        assert to_text(And(And(p, q), r)) == "p & q & r"
        assert to_text(And(p, And(q, r))) == "p & (q & r)"

    def test_inclusion_atom(self):
        assert to_text(Incl((p, q), (q, p))) == "[p, q <= q, p]"

    def test_str_uses_concrete_syntax(self):
        assert str(NeDisj(p, Top())) == "p |! top"

    @settings(max_examples=300, deadline=None)
    @given(nab_formulas(("p", "q")))
    def test_reparses_nab_formulas(self, formula):
        assert parse(to_text(formula)) == formula

    @settings(max_examples=200, deadline=None)
    @given(minc_formulas(("p", "q")))
    def test_reparses_minc_formulas(self, formula):
        assert parse(to_text(formula)) == formula

    @settings(max_examples=200, deadline=None)
    @given(nedisj_formulas(("p", "q")))
    def test_reparses_nedisj_formulas(self, formula):
        assert parse(to_text(formula)) == formula

    def test_canonical_text_is_stable(self):
        text = "(p | q) & nab (dia r |! top) & [p, box q <= q, p]"
        assert to_text(parse(text)) == text


# ── Metrics ────────────────────────────────────────────────────────────


class TestMetrics:
    def test_modal_depth(self):
        assert modal_depth(Box(Dia(p))) == 2
        assert modal_depth(parse("[p1,p2 <= q1,q2]")) == 0
        assert modal_depth(Nab(Dia(p))) == 1
        assert modal_depth(parse("[dia p <= q] & box top")) == 1
        assert modal_depth(NeDisj(Dia(Dia(p)), q)) == 2

    def test_occ_nabla_counts_occurrences(self):
        assert occ_nabla(Nab(Or(p, Nab(q)))) == 2
        assert occ_nabla(And(p, q)) == 0
        assert occ_nabla(nedis_to_nabla(NeDisj(p, q))) == 2
        assert occ_nabla(And(Nab(p), Nab(p))) == 2

    def test_dialect_of(self):
        assert dialect_of(And(p, q)) is Dialect.ML
        assert dialect_of(Incl((p,), (q,))) is Dialect.MINC
        assert dialect_of(Nab(p)) is Dialect.MLNab
        assert dialect_of(NeDisj(p, q)) is Dialect.MLNeDisj
        assert dialect_of(NeDisj(Nab(p), q)) is Dialect.MLNeDisj
        assert dialect_of(And(Incl((p,), (q,)), Nab(p))) is Dialect.Mixed

    def test_mixed_is_the_only_dialect_without_union_closure(self):
        assert [d for d in Dialect if not d.union_closed] == [Dialect.Mixed]

    def test_node_count_and_props(self):
        assert node_count(parse("p & ~q")) == 3
        assert node_count(parse("[p, q <= r, s]")) == 5
        assert props_of(parse("[p <= ~q] | dia r")) == {"p", "q", "r"}


# ── Positions ──────────────────────────────────────────────────────────


class TestPositions:
    def test_single_node(self):
        assert positions(p) == [()]

    def test_occurrences_are_distinct(self):
        formula = And(p, p)
        assert positions(formula) == [(), (0,), (1,)]
        assert subformula_at(formula, (0,)) == subformula_at(formula, (1,))

    def test_preorder(self):
        formula = parse("nab (p | ~p) & dia q")
        assert positions(formula) == [(), (0,), (0, 0), (0, 0, 0), (0, 0, 1), (1,), (1, 0)]
        assert subformula_at(formula, (0, 0, 1)) == NegProp("p")

    def test_length_is_node_count(self):
        formula = parse("[p, dia q <= q, p] & box (p | q)")
        assert len(positions(formula)) == node_count(formula)

    def test_bad_position(self):
        with raises(FormulaError):
            subformula_at(p, (0,))

    def test_paths(self):
        assert format_position(()) == ""
        assert format_position((0, 1)) == "0.1"
        assert parse_position("") == ()
        assert parse_position("2.0.1") == (2, 0, 1)
        with raises(FormulaError):
            parse_position("0.x")


# ── Construction ───────────────────────────────────────────────────────


class TestConstruction:
    def test_inclusion_sides_must_match(self):
        with raises(FormulaError):
            Incl((), ())
        with raises(FormulaError):
            Incl((p, q), (q,))

    def test_inclusion_arguments_are_pure(self):
        with raises(FormulaError):
            Incl((p,), (Nab(q),))

    def test_big_operators(self):
        assert conjoin([]) == Top()
        assert disjoin([]) == Bot()
        assert conjoin([p, q, p]) == And(p, q)
        assert disjoin([p, q, r]) == Or(Or(p, q), r)
        assert disjoin([], bot=And(p, NegProp("p"))) == And(p, NegProp("p"))

    def test_formulas_are_values(self):
        assert parse("p & q") == parse("p  &  q")
        assert len({parse("nab p"), Nab(Prop("p"))}) == 1


# ── Rewrites ───────────────────────────────────────────────────────────


class TestRewrites:
    def test_nabla_to_nedis(self):
        assert nabla_to_nedis(Nab(p)) == NeDisj(p, Top())
        assert nabla_to_nedis(p) == p
        assert nabla_to_nedis(Nab(Nab(p))) == NeDisj(NeDisj(p, Top()), Top())

    def test_nedis_to_nabla(self):
        assert nedis_to_nabla(NeDisj(p, q)) == And(Or(p, q), And(Nab(p), Nab(q)))
        assert nedis_to_nabla(p) == p

    def test_inclusion_atoms_rejected(self):
        with raises(FormulaError):
            nabla_to_nedis(Incl((p,), (q,)))
        with raises(FormulaError):
            nedis_to_nabla(And(Incl((p,), (q,)), p))

    @settings(max_examples=200, deadline=None)
    @given(nab_formulas(("p", "q")))
    def test_rewrites_preserve_modal_depth(self, formula):
        there = nabla_to_nedis(formula)
        assert modal_depth(there) == modal_depth(formula)
        assert modal_depth(nedis_to_nabla(there)) == modal_depth(formula)
