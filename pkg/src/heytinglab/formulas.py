"""The forcing language: AST, parser, pretty-printer and syntactic transformations.

Surface syntax (ASCII, with unicode aliases)::

    formula := quant | iff
    quant   := ("all" | "exists") IDENT ["in" term] "." formula
    iff     := impl ["<->" impl]                  # sugar for a conjunction of implications
    impl    := disj ["->" impl]
    disj    := conj {"|" conj}
    conj    := atom {"&" atom}
    atom    := "bot" | term ("=" | "in") term | "~" atom | "(" formula ")" | quant
    term    := IDENT | "empty" | "check(" hf ")" | "up(" term "," term ")"
             | "op(" term "," term ")" | "name{" [term ":" elem {"," term ":" elem}] "}"
    elem    := "[" [ATOM {"," ATOM}] "]"

Negation is derived: ``~φ`` is ``φ -> bot``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import ParseError, ScopeError
from .hfsets import HFSet, ordinal

Pos = tuple[int, int]


# terms

@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class EmptyLit:
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CheckLit:
    hf: HFSet
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class UpLit:
    left: "Term"
    right: "Term"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class OpLit:
    left: "Term"
    right: "Term"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class NameLit:
    entries: tuple[tuple["Term", tuple[str, ...]], ...]
    pos: Pos | None = field(default=None, compare=False, repr=False)


Term = Union[Var, EmptyLit, CheckLit, UpLit, OpLit, NameLit]


# formulas

@dataclass(frozen=True)
class Bot:
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Mem:
    left: Term
    right: Term
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Forall:
    var: str
    bound: Term | None
    body: "Formula"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Exists:
    var: str
    bound: Term | None
    body: "Formula"
    pos: Pos | None = field(default=None, compare=False, repr=False)


Formula = Union[Bot, Eq, Mem, And, Or, Imp, Forall, Exists]

BOT = Bot()


def Not(phi: Formula) -> Formula:
    return Imp(phi, BOT)


def Iff(phi: Formula, psi: Formula) -> Formula:
    return And(Imp(phi, psi), Imp(psi, phi))


def conj(*phis: Formula) -> Formula:
    out = phis[0]
    for p in phis[1:]:
        out = And(out, p)
    return out


# tokenizer

KEYWORDS = {"all", "exists", "in", "bot", "empty", "check", "up", "op", "name", "let"}
ALIASES = {
    "∀": "all", "∃": "exists", "∈": "in", "⊥": "bot", "∧": "&", "∨": "|",
    "¬": "~", "→": "->", "↔": "<->", "⇒": "->",
}
_TOKEN = re.compile(
    r"\s*(?:(?P<sym><->|->|[&|~().=,{}\[\]:]|[∀∃∈⊥∧∨¬→↔⇒])|(?P<word>[A-Za-z_][A-Za-z0-9_']*|[0-9]+))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "word", "eof"
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    line_starts = [0] + [i + 1 for i, ch in enumerate(src) if ch == "\n"]

    def where(i: int) -> Pos:
        ln = max(k for k, s in enumerate(line_starts) if s <= i)
        return ln + 1, i - line_starts[ln] + 1

    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos < len(src) and src[pos] == "#":
            while pos < len(src) and src[pos] != "\n":
                pos += 1
            continue
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            ln, col = where(pos)
            raise ParseError(f"unexpected character {src[pos]!r}", ln, col)
        start = m.start("sym") if m.group("sym") else m.start("word")
        ln, col = where(start)
        text = m.group("sym") or m.group("word")
        text = ALIASES.get(text, text)
        kind = "sym" if text in {"&", "|", "~", "->", "<->"} or m.group("sym") else "word"
        toks.append(Token(kind, text, ln, col))
        pos = m.end()
    ln, col = where(len(src)) if src else (1, 1)
    toks.append(Token("eof", "", ln, col))
    return toks


# parser

class _Parser:
    def __init__(self, src: str, params: Iterable[str]):
        self.toks = tokenize(src)
        self.i = 0
        self.scope: list[str] = list(params)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "word" or t.text in KEYWORDS or t.text[0].isdigit():
            self.fail(f"expected an identifier, found {t.text or 'end of input'!r}")
        return self.advance()

    # formulas
    def formula(self) -> Formula:
        if self.at("all") or self.at("exists"):
            return self.quant()
        return self.iff()

    def quant(self) -> Formula:
        kw = self.advance()
        v = self.ident()
        bound = None
        if self.at("in"):
            self.advance()
            bound = self.term()
        self.expect(".")
        if v.text in self.scope:
            raise ScopeError(f"variable {v.text!r} is already bound", v.line, v.col)
        self.scope.append(v.text)
        body = self.formula()
        self.scope.pop()
        cls = Forall if kw.text == "all" else Exists
        return cls(v.text, bound, body, pos=(kw.line, kw.col))

    def iff(self) -> Formula:
        left = self.impl()
        if self.at("<->"):
            self.advance()
            right = self.impl()
            return Iff(left, right)
        return left

    def impl(self) -> Formula:
        t = self.tok
        left = self.disj()
        if self.at("->"):
            self.advance()
            return Imp(left, self.impl(), pos=(t.line, t.col))
        return left

    def disj(self) -> Formula:
        t = self.tok
        out = self.conj()
        while self.at("|"):
            self.advance()
            out = Or(out, self.conj(), pos=(t.line, t.col))
        return out

    def conj(self) -> Formula:
        t = self.tok
        out = self.atom()
        while self.at("&"):
            self.advance()
            out = And(out, self.atom(), pos=(t.line, t.col))
        return out

    def atom(self) -> Formula:
        t = self.tok
        if self.at("bot"):
            self.advance()
            return Bot(pos=(t.line, t.col))
        if self.at("~"):
            self.advance()
            return Imp(self.atom(), BOT, pos=(t.line, t.col))
        if self.at("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if self.at("all") or self.at("exists"):
            return self.quant()
        left = self.term()
        if self.at("="):
            self.advance()
            return Eq(left, self.term(), pos=(t.line, t.col))
        if self.at("in"):
            self.advance()
            return Mem(left, self.term(), pos=(t.line, t.col))
        self.fail(f"expected '=' or 'in', found {self.tok.text or 'end of input'!r}")

    # terms
    def term(self) -> Term:
        t = self.tok
        p = (t.line, t.col)
        if self.at("empty"):
            self.advance()
            return EmptyLit(pos=p)
        if self.at("check"):
            self.advance()
            self.expect("(")
            hf = self.hf()
            self.expect(")")
            return CheckLit(hf, pos=p)
        if self.at("up") or self.at("op"):
            kw = self.advance()
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return (UpLit if kw.text == "up" else OpLit)(a, b, pos=p)
        if self.at("name"):
            self.advance()
            self.expect("{")
            entries = []
            while not self.at("}"):
                key = self.term()
                self.expect(":")
                entries.append((key, self.element()))
                if not self.at(","):
                    break
                self.advance()
            self.expect("}")
            return NameLit(tuple(entries), pos=p)
        v = self.ident()
        if v.text not in self.scope:
            raise ScopeError(f"unbound identifier {v.text!r}", v.line, v.col)
        return Var(v.text, pos=p)

    def element(self) -> tuple[str, ...]:
        self.expect("[")
        atoms = []
        while not self.at("]"):
            t = self.tok
            if t.kind != "word":
                self.fail("expected an atom")
            atoms.append(self.advance().text)
            if not self.at(","):
                break
            self.advance()
        self.expect("]")
        return tuple(atoms)

    def hf(self) -> HFSet:
        t = self.tok
        if t.kind == "word" and t.text.isdigit():
            self.advance()
            return ordinal(int(t.text))
        self.expect("{")
        items = []
        while not self.at("}"):
            items.append(self.hf())
            if not self.at(","):
                break
            self.advance()
        self.expect("}")
        return HFSet(items)

    def end(self):
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r} after end of formula")


def parse(src: str, params: Iterable[str] = ()) -> Formula:
    """Parse a formula.  Identifiers must be quantifier-bound or listed in ``params``."""
    p = _Parser(src, params)
    out = p.formula()
    p.end()
    return out


def parse_term(src: str, params: Iterable[str] = ()) -> Term:
    p = _Parser(src, params)
    out = p.term()
    p.end()
    return out


@dataclass(frozen=True)
class Program:
    bindings: tuple[tuple[str, Term], ...]
    formula: Formula


def parse_program(src: str, params: Iterable[str] = ()) -> Program:
    """``let x = term`` lines followed by a single formula."""
    p = _Parser(src, params)
    bindings = []
    while p.at("let"):
        p.advance()
        v = p.ident()
        p.expect("=")
        if v.text in p.scope:
            raise ScopeError(f"{v.text!r} is already defined", v.line, v.col)
        bindings.append((v.text, p.term()))
        p.scope.append(v.text)
    out = p.formula()
    p.end()
    return Program(tuple(bindings), out)


# pretty-printer

def show_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, EmptyLit):
        return "empty"
    if isinstance(t, CheckLit):
        return f"check({t.hf})"
    if isinstance(t, UpLit):
        return f"up({show_term(t.left)}, {show_term(t.right)})"
    if isinstance(t, OpLit):
        return f"op({show_term(t.left)}, {show_term(t.right)})"
    if isinstance(t, NameLit):
        inner = ", ".join(f"{show_term(k)}: [{','.join(v)}]" for k, v in t.entries)
        return "name{ " + inner + " }" if inner else "name{ }"
    raise TypeError(t)


def show(phi: Formula) -> str:
    return _show(phi, 0)


def _paren(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s


def _show(phi: Formula, ctx: int) -> str:
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Eq):
        return f"{show_term(phi.left)} = {show_term(phi.right)}"
    if isinstance(phi, Mem):
        return f"{show_term(phi.left)} in {show_term(phi.right)}"
    if isinstance(phi, Imp) and isinstance(phi.right, Bot):
        inner = _show(phi.left, 4)
        return f"~({inner})" if isinstance(phi.left, (Eq, Mem)) else "~" + inner
    if isinstance(phi, Imp):
        return _paren(f"{_show(phi.left, 2)} -> {_show(phi.right, 1)}", 1, ctx)
    if isinstance(phi, Or):
        return _paren(f"{_show(phi.left, 2)} | {_show(phi.right, 3)}", 2, ctx)
    if isinstance(phi, And):
        return _paren(f"{_show(phi.left, 3)} & {_show(phi.right, 4)}", 3, ctx)
    if isinstance(phi, (Forall, Exists)):
        kw = "all" if isinstance(phi, Forall) else "exists"
        b = f" in {show_term(phi.bound)}" if phi.bound is not None else ""
        return _paren(f"{kw} {phi.var}{b}. {_show(phi.body, 0)}", 0, ctx)
    raise TypeError(phi)


# syntactic operations

def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, (And, Or, Imp)):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)
    elif isinstance(phi, (Forall, Exists)):
        yield from subformulas(phi.body)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (UpLit, OpLit)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, NameLit):
        return set().union(*(term_vars(k) for k, _ in t.entries)) if t.entries else set()
    return set()


def free_vars(phi: Formula) -> set[str]:
    if isinstance(phi, Bot):
        return set()
    if isinstance(phi, (Eq, Mem)):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Forall, Exists)):
        outer = term_vars(phi.bound) if phi.bound is not None else set()
        return outer | (free_vars(phi.body) - {phi.var})
    raise TypeError(phi)


def is_bounded(phi: Formula) -> bool:
    return not any(isinstance(s, (Forall, Exists)) and s.bound is None for s in subformulas(phi))


def is_propositional(phi: Formula) -> bool:
    return not any(isinstance(s, (Forall, Exists)) for s in subformulas(phi))


def relativize(phi: Formula, A: str) -> Formula:
    """Bound every unbounded quantifier to the symbol ``A``; bounded ones are untouched."""
    if isinstance(phi, (Bot, Eq, Mem)):
        return phi
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(relativize(phi.left, A), relativize(phi.right, A), pos=phi.pos)
    if isinstance(phi, (Forall, Exists)):
        if phi.var == A:
            raise ScopeError(f"relativization symbol {A!r} clashes with a bound variable")
        bound = phi.bound if phi.bound is not None else Var(A)
        return type(phi)(phi.var, bound, relativize(phi.body, A), pos=phi.pos)
    raise TypeError(phi)


def conditionals_bounded(phi: Formula) -> bool:
    """Every antecedent of ``->`` is bounded (negations included)."""
    return all(is_bounded(s.left) for s in subformulas(phi) if isinstance(s, Imp))


def forall_and_fragment(phi: Formula) -> bool:
    """Unbounded quantifiers are all universal, and reached only through ``&`` and quantifiers."""
    if is_bounded(phi):
        return True
    if isinstance(phi, And):
        return forall_and_fragment(phi.left) and forall_and_fragment(phi.right)
    if isinstance(phi, Forall) or (isinstance(phi, Exists) and phi.bound is not None):
        return forall_and_fragment(phi.body)
    return False


def dn_translate(phi: Formula) -> Formula:
    """Gödel–Gentzen negative translation."""
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, (Eq, Mem)):
        return Not(Not(phi))
    if isinstance(phi, And):
        return And(dn_translate(phi.left), dn_translate(phi.right))
    if isinstance(phi, Imp):
        return Imp(dn_translate(phi.left), dn_translate(phi.right))
    if isinstance(phi, Or):
        return Not(Not(Or(dn_translate(phi.left), dn_translate(phi.right))))
    if isinstance(phi, Forall):
        return Forall(phi.var, phi.bound, dn_translate(phi.body))
    if isinstance(phi, Exists):
        return Not(Not(Exists(phi.var, phi.bound, dn_translate(phi.body))))
    raise TypeError(phi)
