import pytest
from hypothesis import given
from hypothesis import strategies as st

from heytinglab import corpus
from heytinglab import formulas as fl
from heytinglab.errors import ParseError, ScopeError
from heytinglab.hfsets import from_code


def test_parse_basic_shapes():
    phi = fl.parse("all x in a. x in b", ["a", "b"])
    assert phi == fl.Forall("x", fl.Var("a"), fl.Mem(fl.Var("x"), fl.Var("b")))
    assert fl.parse("~(a = b)", ["a", "b"]) == fl.Imp(fl.Eq(fl.Var("a"), fl.Var("b")), fl.BOT)


def test_precedence():
    p = fl.parse("a in b & b in a | bot -> bot", ["a", "b"])
    assert isinstance(p, fl.Imp) and isinstance(p.left, fl.Or) and isinstance(p.left.left, fl.And)
    # implication associates to the right
    q = fl.parse("bot -> bot -> bot")
    assert isinstance(q.right, fl.Imp)


def test_quantifier_scope_extends_right():
    phi = fl.parse("exists x. x in a & x = a", ["a"])
    assert isinstance(phi, fl.Exists) and isinstance(phi.body, fl.And)


def test_unicode_aliases():
    assert fl.parse("∀x∈a. x ∈ a ∧ ¬⊥", ["a"]) == fl.parse("all x in a. x in a & ~bot", ["a"])
    assert fl.parse("a = a ↔ a = a", ["a"]) == fl.parse("a = a <-> a = a", ["a"])


def test_iff_is_sugar():
    a = fl.parse("a = a", ["a"])
    assert fl.parse("a = a <-> a = a", ["a"]) == fl.And(fl.Imp(a, a), fl.Imp(a, a))


def test_term_literals():
    t = fl.parse_term("name{ check({{}}): [0], up(empty, op(empty, empty)): [0,1] }")
    assert isinstance(t, fl.NameLit) and len(t.entries) == 2
    assert fl.parse_term("check(2)") == fl.CheckLit(from_code(3))


def test_unbound_identifier_has_position():
    with pytest.raises(ScopeError) as exc:
        fl.parse("all x in a.\n  y in x", ["a"])
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_rebinding_rejected():
    with pytest.raises(ScopeError):
        fl.parse("all x. exists x. x = x")


def test_syntax_errors():
    for src in ["a in", "(a = a", "all . a = a", "a = a a", "a ? b", "let"]:
        with pytest.raises(ParseError):
            fl.parse(src, ["a"])


def test_comments_ignored():
    assert fl.parse("# leading\nbot # trailing") == fl.BOT


def test_program_bindings():
    prog = fl.parse_program("let a = empty\nlet b = up(a, a)\nb in b")
    assert [v for v, _ in prog.bindings] == ["a", "b"]
    assert prog.formula == fl.Mem(fl.Var("b"), fl.Var("b"))
    with pytest.raises(ScopeError):
        fl.parse_program("let a = empty\nlet a = empty\nbot")
    with pytest.raises(ScopeError):
        fl.parse_program("let a = b\nbot")


def test_printer_examples():
    assert fl.show(fl.parse("~(a in b)", ["a", "b"])) == "~(a in b)"
    assert fl.show(fl.parse("(all x. x = x) & bot")) == "(all x. x = x) & bot"
    ab = ["a", "b"]
    assert fl.show(fl.parse("a in b -> (b in a -> a = b)", ab)) == "a in b -> b in a -> a = b"
    assert fl.show(fl.parse("(a in b -> b in a) -> a = b", ab)) == "(a in b -> b in a) -> a = b"
    assert fl.show(fl.parse("bot -> bot")) == "~bot"


def test_free_vars_and_boundedness():
    phi = fl.parse("all x in a. exists y. x in y", ["a"])
    assert fl.free_vars(phi) == {"a"}
    assert not fl.is_bounded(phi)
    assert fl.is_bounded(fl.parse("all x in a. exists y in x. y = a", ["a"]))


def test_relativize():
    phi = fl.parse("all x. exists y in x. y in b", ["b"])
    r = fl.relativize(phi, "A")
    assert r == fl.parse("all x in A. exists y in x. y in b", ["A", "b"])
    assert fl.is_bounded(r)
    with pytest.raises(ScopeError):
        fl.relativize(fl.parse("all A. A = A"), "A")


def test_fragments():
    assert fl.conditionals_bounded(fl.parse("(a in a -> exists y. y = a)", ["a"]))
    assert not fl.conditionals_bounded(fl.parse("(exists y. y = a) -> bot", ["a"]))
    assert fl.forall_and_fragment(fl.parse("all y. y = a & all z in y. z = z", ["a"]))
    assert not fl.forall_and_fragment(fl.parse("exists y. y = a", ["a"]))


def test_dn_translate_shapes():
    a = fl.parse("a in b", ["a", "b"])
    assert fl.dn_translate(a) == fl.Not(fl.Not(a))
    assert fl.dn_translate(fl.BOT) == fl.BOT
    ex = fl.dn_translate(fl.parse("exists x in a. x in b", ["a", "b"]))
    assert isinstance(ex, fl.Imp) and isinstance(ex.left.left, fl.Exists)


def test_corpora_sizes_and_shapes():
    assert len(corpus.bounded_corpus()) >= 50
    assert all(fl.is_bounded(p) for p in corpus.bounded_corpus())
    assert len(corpus.IPC_TAUTOLOGIES) == 25
    assert all(fl.conditionals_bounded(p) for p in corpus.conditional_bounded_corpus())
    assert all(fl.forall_and_fragment(p) for p in corpus.forall_and_corpus())


@pytest.mark.parametrize("schema", corpus.IPC_TAUTOLOGIES + corpus.CLASSICAL_ONLY)
def test_text_normalization(schema):
    phi = corpus.prop(schema)
    text = fl.show(phi)
    assert fl.show(fl.parse(text, corpus.PROP_PARAMS)) == text


# generated ASTs

VARS = ["a", "b"]


def terms(scope):
    base = st.sampled_from([fl.Var(v) for v in scope] + [fl.EmptyLit()])
    lit = st.integers(0, 20).map(lambda c: fl.CheckLit(from_code(c)))
    return st.recursive(
        st.one_of(base, lit),
        lambda inner: st.one_of(
            st.builds(fl.UpLit, inner, inner),
            st.builds(fl.OpLit, inner, inner),
            st.lists(st.tuples(inner, st.sampled_from([("0",), ("0", "1"), ()])), max_size=2).map(
                lambda es: fl.NameLit(tuple(es))
            ),
        ),
        max_leaves=3,
    )


@st.composite
def formulas(draw, scope=tuple(VARS), depth=3):
    kind = draw(st.sampled_from(["atom", "bot", "bin", "quant", "not"] if depth else ["atom", "bot"]))
    if kind == "bot":
        return fl.BOT
    if kind == "atom":
        op = draw(st.sampled_from([fl.Eq, fl.Mem]))
        return op(draw(terms(scope)), draw(terms(scope)))
    if kind == "not":
        return fl.Not(draw(formulas(scope, depth - 1)))
    if kind == "bin":
        op = draw(st.sampled_from([fl.And, fl.Or, fl.Imp]))
        return op(draw(formulas(scope, depth - 1)), draw(formulas(scope, depth - 1)))
    var = f"x{len(scope)}"
    q = draw(st.sampled_from([fl.Forall, fl.Exists]))
    bound = draw(st.one_of(st.none(), terms(scope)))
    return q(var, bound, draw(formulas(scope + (var,), depth - 1)))


@given(formulas())
def test_parse_show_round_trip(phi):
    assert fl.parse(fl.show(phi), VARS) == phi


@given(formulas())
def test_relativize_always_bounded(phi):
    r = fl.relativize(phi, "A")
    assert fl.is_bounded(r)
    if fl.is_bounded(phi):
        assert r == phi


@given(formulas())
def test_dn_translate_keeps_free_vars(phi):
    assert fl.free_vars(fl.dn_translate(phi)) == fl.free_vars(phi)
