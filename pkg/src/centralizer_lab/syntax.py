"""Concrete syntax for formulas: a recursive-descent parser and a renderer.

Grammar (EBNF)::

    formula     = implication ;
    implication = disjunction [ "->" implication ] ;
    disjunction = conjunction { "|" conjunction } ;
    conjunction = unary { "&" unary } ;
    unary       = "!" unary | quantified | "(" formula ")" | atom ;
    quantified  = ( "forall" | "exists" ) ident { "," ident } unary ;
    atom        = "[" term "," term "]" ( "=" | "!=" ) "1"
                | term ( "=" | "!=" ) term
                | term ( "in" | "notin" ) ( "Z" | "C" "(" term { "," term } ")" ) ;
    term        = "1" | factor { "*" factor } ;
    factor      = ident [ "^" ( "-1" | ident ) ] ;

``x^y`` is conjugation and expands to ``y^-1*x*y``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .errors import FormulaSyntaxError
from .formulas import (
    ONE,
    And,
    Atom,
    Commutes,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    InC,
    InZ,
    Not,
    Or,
    Term,
    fresh_name,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<op>->|!=|[()\[\],*^=&|!])|(?P<num>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "num", "ident", "end"
    text: str
    pos: int


class AlphaRenameWarning(UserWarning):
    """A quantifier shadowed an outer binding and was renamed."""


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(pos, "a token", text)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.scope: list[tuple[str, str]] = []  # (written name, bound name)
        self.used = {t.text for t in self.tokens if t.kind == "ident"}

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident", "num") and t.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected: str):
        raise FormulaSyntaxError(self.tok.pos, expected, self.text)

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in ("forall", "exists", "in", "notin"):
            self.fail("a variable name")
        self.i += 1
        return t.text

    def lookup(self, name: str) -> str:
        for written, bound in reversed(self.scope):
            if written == name:
                return bound
        return name

    # grammar

    def parse(self) -> Formula:
        f = self.implication()
        if self.tok.kind != "end":
            self.fail("end of input")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.at("|"):
            self.i += 1
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.at("&"):
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        if self.at("!"):
            self.i += 1
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quantified()
        if self.at("("):
            self.i += 1
            f = self.implication()
            self.expect(")")
            return f
        return self.atom()

    def quantified(self) -> Formula:
        kind = Forall if self.tok.text == "forall" else Exists
        self.i += 1
        names = [self.ident()]
        while self.at(","):
            self.i += 1
            names.append(self.ident())
        bound = []
        for name in names:
            target = name
            if any(name in pair for pair in self.scope) or name in bound:
                target = fresh_name(self.used, name + "_")
                self.used.add(target)
                warnings.warn(
                    f"quantified variable {name!r} shadows an outer binding; renamed to {target!r}",
                    AlphaRenameWarning,
                    stacklevel=2,
                )
            self.scope.append((name, target))
            bound.append(target)
        body = self.unary()
        del self.scope[len(self.scope) - len(names):]
        for target in reversed(bound):
            body = kind(target, body)
        return body

    def atom(self) -> Formula:
        if self.at("["):
            self.i += 1
            left = self.term()
            self.expect(",")
            right = self.term()
            self.expect("]")
            negated = self.equality_op()
            self.expect("1")
            f: Formula = Commutes(left, right)
            return Not(f) if negated else f
        left = self.term()
        if self.at("in") or self.at("notin"):
            negated = self.tok.text == "notin"
            self.i += 1
            if self.at("Z"):
                self.i += 1
                f = InZ(left)
            else:
                self.expect("C")
                self.expect("(")
                args = [self.term()]
                while self.at(","):
                    self.i += 1
                    args.append(self.term())
                self.expect(")")
                f = InC(left, tuple(args))
            return Not(f) if negated else f
        negated = self.equality_op()
        right = self.term()
        f = Atom(left) if right.is_one else Eq(left, right)
        return Not(f) if negated else f

    def equality_op(self) -> bool:
        if self.at("="):
            self.i += 1
            return False
        if self.at("!="):
            self.i += 1
            return True
        self.fail("'=', '!=', 'in' or 'notin'")

    def term(self) -> Term:
        if self.at("1"):
            self.i += 1
            return ONE
        t = self.factor()
        while self.at("*"):
            self.i += 1
            t = t * self.factor()
        return t

    def factor(self) -> Term:
        base = Term.var(self.lookup(self.ident()))
        if self.at("^"):
            self.i += 1
            if self.at("-1"):
                self.i += 1
                return base.inverse()
            return base.conjugate(Term.var(self.lookup(self.ident())))
        return base


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula AST.

    Free variables are allowed.  A quantifier that rebinds a variable
    already bound further out is alpha-renamed, with an
    :class:`AlphaRenameWarning`.
    """
    return _Parser(text).parse()


# rendering

_IMPL, _OR, _AND, _UNARY = range(4)


def render_term(t: Term) -> str:
    if t.is_one:
        return "1"
    return "*".join(name if e == 1 else f"{name}^-1" for name, e in t.factors)


def _render_atom(f: Formula, negated: bool) -> str:
    eq = "!=" if negated else "="
    member = "notin" if negated else "in"
    if isinstance(f, Atom):
        return f"{render_term(f.term)} {eq} 1"
    if isinstance(f, Eq):
        return f"{render_term(f.lhs)} {eq} {render_term(f.rhs)}"
    if isinstance(f, Commutes):
        return f"[{render_term(f.left)},{render_term(f.right)}] {eq} 1"
    if isinstance(f, InC):
        args = ",".join(render_term(t) for t in f.of)
        return f"{render_term(f.elem)} {member} C({args})"
    if isinstance(f, InZ):
        return f"{render_term(f.elem)} {member} Z"
    raise TypeError(f)


_ATOMS = (Atom, Eq, Commutes, InC, InZ)


def _render(f: Formula, ctx: int) -> str:
    if isinstance(f, _ATOMS):
        return _render_atom(f, False)
    if isinstance(f, Not):
        if isinstance(f.body, _ATOMS):
            return _render_atom(f.body, True)
        return "!" + _render(f.body, _UNARY)
    if isinstance(f, (Forall, Exists)):
        kind = type(f)
        names = []
        body: Formula = f
        while isinstance(body, kind):
            names.append(body.var)
            body = body.body
        keyword = "forall" if kind is Forall else "exists"
        if isinstance(body, (Forall, Exists)):
            inner = _render(body, _UNARY)
        else:
            inner = "(" + _render(body, _IMPL) + ")"
        return f"{keyword} {', '.join(names)} {inner}"
    if isinstance(f, And):
        level, s = _AND, " & ".join(_render(p, _UNARY) for p in f.parts)
    elif isinstance(f, Or):
        level, s = _OR, " | ".join(_render(p, _AND) for p in f.parts)
    elif isinstance(f, Implies):
        level = _IMPL
        s = f"{_render(f.premise, _OR)} -> {_render(f.conclusion, _IMPL)}"
    else:
        raise TypeError(f)
    return f"({s})" if level < ctx else s


def render(f: Formula) -> str:
    """Canonical text; ``parse(render(f)) == f`` for every well-formed AST."""
    return _render(f, _IMPL)
