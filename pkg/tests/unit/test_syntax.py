"""Unit tests for formula syntax, classification and elaboration."""

import random
from collections import Counter

import pytest

from lolli.exc import ClassificationError, FormulaError, ParseError
from lolli.syntax import (
    Atom, Bang, Builtin, BuiltinRel, ClauseTriple, Forall, FormulaClass, Imp, Lolli, MetaSupply,
    Oplus, Tensor, Top, With,
    classify, contains, elaborate, format_formula, formula_to_term, parse_formula, parse_term,
    require_goal, term_to_formula,
)
from lolli.terms import IOTA, NAT, O, Bound, Const, Meta, Nat, arrow, spine


def atom(name):
    return Atom(Const(name))


class TestParse:
    def test_quantified_clause(self):
        f = parse_formula("all x : i. p x -o q x")
        assert isinstance(f, Forall)
        assert f.type == IOTA
        assert isinstance(f.body, Lolli)
        h, args = spine(f.body.ante.term)
        assert h == Const("p")
        assert args == [Bound(0)]

    def test_tensor_binds_tighter_than_lolli(self):
        assert parse_formula("a * b -o c") == Lolli(Tensor(atom("a"), atom("b")), atom("c"))

    def test_lolli_is_right_associative(self):
        assert parse_formula("a -o b -o c") == Lolli(atom("a"), Lolli(atom("b"), atom("c")))

    def test_with_binds_tighter_than_oplus(self):
        assert parse_formula("a & b + c") == Oplus(With(atom("a"), atom("b")), atom("c"))

    def test_bang_and_imp(self):
        assert parse_formula("!a => b") == Imp(Bang(atom("a")), atom("b"))

    def test_top(self):
        assert parse_formula("top") == Top()

    def test_builtins(self):
        assert parse_formula("add3 1 2 ?X") == Builtin(BuiltinRel.ADD3, (Nat(1), Nat(2), Meta("X")))
        assert parse_formula("N > 2") == Builtin(BuiltinRel.GT, (Const("N"), Nat(2)))
        assert parse_formula("1 <> 0") == Builtin(BuiltinRel.NEQ, (Nat(1), Nat(0)))

    def test_successor_numerals_fold(self):
        assert parse_term("s (s z)") == Nat(2)

    def test_signature_types_constants(self):
        f = parse_formula("m 0 5", {"m": arrow(NAT, NAT, O)})
        h, _ = spine(f.term)
        assert h.type == arrow(NAT, NAT, O)

    def test_comments_ignored(self):
        assert parse_formula("a # trailing comment\n -o b") == Lolli(atom("a"), atom("b"))

    def test_incomplete_input(self):
        with pytest.raises(ParseError, match="unexpected end of input"):
            parse_formula("a -o")

    def test_bad_character_reports_position(self):
        with pytest.raises(ParseError) as err:
            parse_formula("a @ b")
        assert err.value.line == 1
        assert "'@'" in str(err.value)

    def test_builtin_arity_checked(self):
        with pytest.raises(FormulaError, match="takes 2 arguments"):
            Builtin(BuiltinRel.GT, (Nat(1),))


class TestFormat:
    @pytest.mark.parametrize("text", [
        "all x : i. p x -o q x",
        "a * b -o c",
        "(a -o b) -o c",
        "a & b + c",
        "!a => b",
    ])
    def test_prints_what_it_parses(self, text):
        assert format_formula(parse_formula(text)) == text

    def test_term_form_reads_back(self):
        f = parse_formula("all x : i. p x -o q x * top")
        assert term_to_formula(formula_to_term(f)) == f


class TestClassify:
    @pytest.mark.parametrize("text, expected", [
        ("a", FormulaClass.BOTH),
        ("a -o b", FormulaClass.BOTH),
        ("a * b", FormulaClass.GOAL),
        ("top", FormulaClass.GOAL),
        ("a * b -o c", FormulaClass.CLAUSE),
        ("!a -o b", FormulaClass.CLAUSE),
        ("!a * b -o c", FormulaClass.CLAUSE),
        ("!a & (b * c -o d)", FormulaClass.NEITHER),
    ])
    def test_classes(self, text, expected):
        assert classify(parse_formula(text)) is expected

    def test_flexible_atom_is_no_clause_head(self):
        assert classify(parse_formula("?X")) is FormulaClass.GOAL

    def test_error_names_the_position(self):
        with pytest.raises(ClassificationError, match=r"Bang cannot occur in a clause \(at 0\)"):
            require_goal(parse_formula("!a -o b"))


class TestElaborate:
    def test_with_lolli_imp(self):
        clause = parse_formula("a & (b -o c => d)")
        triples = list(elaborate(clause))
        assert triples == [
            ClauseTriple((), (), atom("a")),
            ClauseTriple((atom("c"),), (atom("b"),), atom("d")),
        ]

    def test_forall_introduces_metavariable(self):
        clause = parse_formula("all x : i. p x -o q x")
        (triple,) = elaborate(clause, fresh=MetaSupply())
        _, args = spine(triple.head.term)
        assert args == [Meta("x_1")]
        _, ante_args = spine(triple.bounded[0].term)
        assert ante_args == [Meta("x_1")]

    def test_head_filter_applies_unifier(self):
        clause = parse_formula("all x : i. p x -o q x")
        (triple,) = elaborate(clause, head_filter=parse_formula("q a"))
        assert triple.bounded == (parse_formula("p a"),)

    def test_head_filter_drops_mismatches(self):
        clause = parse_formula("a & b")
        assert list(elaborate(clause, head_filter=atom("b"))) == [ClauseTriple((), (), atom("b"))]

    def test_contains(self):
        clause = parse_formula("all x : i. p x -o q x")
        assert contains(clause, ClauseTriple((), (parse_formula("p a"),), parse_formula("q a")))
        assert not contains(clause, ClauseTriple((), (parse_formula("p b"),), parse_formula("q a")))


HEADS = ["a", "b", "c"]
OBLIGATIONS = ["a", "b", "c", "a * b", "top", "b + c", "a -o b"]


def random_clause(rng, depth):
    """Quantifier-free clause at most ``depth`` connectives deep."""
    if depth <= 1 or rng.random() < 0.25:
        return parse_formula(rng.choice(HEADS))
    kind = rng.choice(("with", "lolli", "imp"))
    if kind == "with":
        return With(random_clause(rng, depth - 1), random_clause(rng, depth - 1))
    goal = parse_formula(rng.choice(OBLIGATIONS))
    body = random_clause(rng, depth - 1)
    return Lolli(goal, body) if kind == "lolli" else Imp(goal, body)


def triple_key(unbounded, bounded, head):
    return frozenset(unbounded), frozenset(Counter(bounded).items()), head


def closure(clause):
    """Least set of (unbounded, bounded, formula) closed under the decomposition rules."""
    members = {triple_key((), (), clause)}
    while True:
        derived = set(members)
        for unb, bnd, f in members:
            bounded = Counter(dict(bnd))
            if isinstance(f, With):
                derived.add((unb, bnd, f.left))
                derived.add((unb, bnd, f.right))
            elif isinstance(f, Imp):
                derived.add((unb | {f.ante}, bnd, f.cons))
            elif isinstance(f, Lolli):
                derived.add((unb, frozenset((bounded + Counter([f.ante])).items()), f.cons))
        if derived == members:
            return {m for m in members if isinstance(m[2], Atom)}
        members = derived


def elaborated(clause):
    return {triple_key(t.unbounded, t.bounded, t.head) for t in elaborate(clause)}


class TestElaborationProperties:
    def test_matches_closure(self):
        rng = random.Random(3)
        for _ in range(300):
            clause = random_clause(rng, 4)
            assert elaborated(clause) == closure(clause), format_formula(clause)

    def test_with_is_union(self):
        rng = random.Random(4)
        for _ in range(200):
            left, right = random_clause(rng, 4), random_clause(rng, 4)
            assert elaborated(With(left, right)) == elaborated(left) | elaborated(right)

    def test_every_triple_is_contained(self):
        rng = random.Random(5)
        for _ in range(100):
            clause = random_clause(rng, 4)
            assert all(contains(clause, t) for t in elaborate(clause)), format_formula(clause)


class TestExports:
    def test_public_names_resolve(self):
        import lolli.syntax

        missing = [name for name in lolli.syntax.__all__ if not hasattr(lolli.syntax, name)]
        assert missing == []
        assert len(set(lolli.syntax.__all__)) == len(lolli.syntax.__all__)
