"""Unit tests for the typed lambda-term substrate."""

import itertools
import random

import pytest

from lolli.exc import TermTypeError, UnboundNameError
from lolli.terms import (
    IOTA, NAT, O, SUCC,
    App, Arrow, Bound, Const, Lam, Meta, Nat, Var,
    alpha_equal, app, arrow, beta_normalize, free_names, infer_type, metas, spine, substitute,
)

f = Const("f", arrow(IOTA, IOTA))
m = Const("m", arrow(NAT, NAT, O))


class TestTypes:
    def test_arrow_is_right_nested(self):
        assert arrow(NAT, NAT, O) == Arrow(NAT, Arrow(NAT, O))

    def test_arrow_str(self):
        assert str(arrow(arrow(IOTA, O), O)) == "(i -> o) -> o"


class TestConstruction:
    def test_successor_folds_into_numeral(self):
        assert app(SUCC, Nat(2)) == Nat(3)

    def test_app_contracts_head_redex(self):
        identity = Lam("x", NAT, Bound(0))
        assert app(identity, Nat(4)) == Nat(4)

    def test_spine(self):
        t = app(m, Nat(0), Nat(5))
        h, args = spine(t)
        assert h == m
        assert args == [Nat(0), Nat(5)]

    def test_negative_numeral_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            Nat(-1)

    def test_binder_names_do_not_matter(self):
        assert Lam("x", IOTA, Bound(0)) == Lam("y", IOTA, Bound(0))
        assert alpha_equal(Lam("x", IOTA, app(f, Bound(0))), Lam("z", IOTA, app(f, Bound(0))))

    def test_type_annotations_do_not_affect_equality(self):
        assert Const("c", IOTA) == Const("c")
        assert Meta("X", NAT) == Meta("X")


class TestSubstitution:
    def test_replaces_free_variable(self):
        t = app(f, Var("x", IOTA))
        assert substitute(t, Var("x", IOTA), Const("a", IOTA)) == App(f, Const("a", IOTA))

    def test_no_capture_under_binder(self):
        t = Lam("y", IOTA, App(App(Const("g"), Var("x")), Bound(0)))
        result = substitute(t, Var("x"), Var("y"))
        assert result == Lam("y", IOTA, App(App(Const("g"), Var("y")), Bound(0)))

    def test_result_is_beta_normal(self):
        t = App(Var("h"), Nat(1))
        result = substitute(t, Var("h"), Lam("n", NAT, App(SUCC, Bound(0))))
        assert result == Nat(2)

    def test_type_mismatch_raises(self):
        with pytest.raises(TermTypeError, match="cannot substitute"):
            substitute(Var("x", NAT), Var("x", NAT), Const("a", IOTA))

    def test_beta_normalize_nested(self):
        t = App(Lam("x", NAT, App(Lam("y", NAT, Bound(1)), Nat(7))), Nat(3))
        assert beta_normalize(t) == Nat(3)


class TestInspection:
    def test_free_names_skip_bound_variables(self):
        t = Lam("x", IOTA, App(App(Const("g"), Bound(0)), Var("y")))
        assert free_names(t) == {"g", "y"}

    def test_metas(self):
        assert metas(app(m, Meta("A"), Meta("B"))) == {"A", "B"}


class TestTyping:
    def test_application(self):
        assert infer_type(app(m, Nat(0), Nat(5))) == O

    def test_lambda(self):
        assert infer_type(Lam("x", IOTA, app(f, Bound(0)))) == arrow(IOTA, IOTA)

    def test_environment_overrides_leaf_type(self):
        assert infer_type(Const("c"), {"c": NAT}) == NAT

    def test_ill_typed_application(self):
        with pytest.raises(TermTypeError, match="expected argument of type nat"):
            infer_type(app(m, Const("c", IOTA), Nat(0)))

    def test_unbound_name(self):
        with pytest.raises(UnboundNameError, match="no type for 'q'"):
            infer_type(Const("q"))

    def test_loose_bound_variable(self):
        with pytest.raises(TermTypeError, match="loose bound"):
            infer_type(Bound(0))


FUN = arrow(IOTA, IOTA)
x, y = Var("x", IOTA), Var("y", IOTA)
LEAVES = (
    Const("a", IOTA), Const("b", IOTA), x, y,
    f, Const("g", FUN), Var("h", FUN),
)


def random_term(rng, ty, size, ctx=()):
    """Well-typed term of type ``ty`` with at most ``size`` nodes; may contain redexes."""
    leaves = [t for t in LEAVES if t.type == ty] + [Bound(k) for k, c in enumerate(ctx) if c == ty]
    if size <= 1 or rng.random() < 0.3:
        return rng.choice(leaves)
    if ty == FUN:
        return Lam("u", IOTA, random_term(rng, IOTA, size - 1, (IOTA,) + ctx))
    if size < 3:
        return rng.choice(leaves)
    fun_size = rng.randint(1, size - 2)
    return App(random_term(rng, FUN, fun_size, ctx), random_term(rng, IOTA, size - 1 - fun_size, ctx))


def node_count(t):
    if isinstance(t, App):
        return 1 + node_count(t.fun) + node_count(t.arg)
    if isinstance(t, Lam):
        return 1 + node_count(t.body)
    return 1


def rename_binders(t, hint):
    if isinstance(t, App):
        return App(rename_binders(t.fun, hint), rename_binders(t.arg, hint))
    if isinstance(t, Lam):
        return Lam(hint, t.arg_type, rename_binders(t.body, hint))
    return t


def sample(seed, n, ty=IOTA, size=6):
    rng = random.Random(seed)
    return [random_term(rng, ty, size) for _ in range(n)]


class TestProperties:
    def test_generated_terms_are_small_and_typed(self):
        for ty in (IOTA, FUN):
            for t in sample(1, 200, ty):
                assert node_count(t) <= 6
                assert infer_type(t) == ty
                assert infer_type(beta_normalize(t)) == ty

    def test_beta_normalize_is_idempotent(self):
        for t in sample(2, 300) + sample(3, 300, FUN):
            once = beta_normalize(t)
            assert beta_normalize(once) == once

    def test_normalizing_first_does_not_change_substitution(self):
        for t, s in zip(sample(4, 300), sample(5, 300)):
            assert substitute(t, x, s) == substitute(beta_normalize(t), x, s)

    def test_substitution_lemma(self):
        rng = random.Random(6)
        checked = 0
        while checked < 300:
            t, s, r = (random_term(rng, IOTA, 6) for _ in range(3))
            if "x" in free_names(r):
                continue
            left = substitute(substitute(t, x, s), y, r)
            right = substitute(substitute(t, y, r), x, substitute(s, y, r))
            assert alpha_equal(left, right)
            checked += 1

    def test_alpha_equal_is_an_equivalence(self):
        pool = sample(7, 10) + sample(8, 10, FUN)
        pool += [rename_binders(t, "w") for t in pool]
        for t in pool:
            assert alpha_equal(t, t)
            assert alpha_equal(t, rename_binders(t, "v"))
        for s, t in itertools.product(pool, repeat=2):
            assert alpha_equal(s, t) == alpha_equal(t, s)
        for r, s, t in itertools.product(pool, repeat=3):
            if alpha_equal(r, s) and alpha_equal(s, t):
                assert alpha_equal(r, t)

    def test_projections_differ(self):
        first = Lam("x", IOTA, Lam("y", IOTA, Bound(1)))
        second = Lam("x", IOTA, Lam("y", IOTA, Bound(0)))
        assert not alpha_equal(first, second)
        assert alpha_equal(first, Lam("a", IOTA, Lam("b", IOTA, Bound(1))))
