"""Lambda-calculus terms: the target language of conversion.

Terms denote booleans (formulas), single values, sets (one-argument
lambdas), or pair sets (two-argument lambdas). This module holds the tree
types, alpha-equivalence, and the concrete text syntax:

    lambda x . body      exists y . body      P(t1,t2)      [t1 = t2]
    a & b      a || b      !a      count(t)      argmax(t1, t2)      in(x, t)

`!` binds tightest, then `&`, then `||`; binders extend as far right as
possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import INT64_MAX, INT64_MIN, Entity, Number, Value, render_value
from .errors import ParseError, UnbalancedDelimiter


class LCTerm:
    """Base class for lambda-calculus terms."""


@dataclass(frozen=True)
class Var(LCTerm):
    name: str


@dataclass(frozen=True)
class Const(LCTerm):
    value: Value


@dataclass(frozen=True)
class Pred(LCTerm):
    """p(t1,t2): the property p relates the two element terms."""

    property: str
    arg1: LCTerm
    arg2: LCTerm


@dataclass(frozen=True)
class Eq(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class And(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class Or(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class Not(LCTerm):
    inner: LCTerm


@dataclass(frozen=True)
class Exists(LCTerm):
    var: str
    body: LCTerm


@dataclass(frozen=True)
class Lam(LCTerm):
    var: str
    body: LCTerm


@dataclass(frozen=True)
class CountApp(LCTerm):
    """count(set_term): the cardinality of a one-argument lambda."""

    set_term: LCTerm


@dataclass(frozen=True)
class SupApp(LCTerm):
    """argmax/argmin over a set term by a two-argument degree term."""

    op: str
    set_term: LCTerm
    degree_term: LCTerm


@dataclass(frozen=True)
class In(LCTerm):
    """[element in set_expr]: membership of an element in a set term."""

    element: LCTerm
    set_expr: LCTerm


def free_vars(t: LCTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, Pred):
        return free_vars(t.arg1) | free_vars(t.arg2)
    if isinstance(t, Eq):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, (And, Or)):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, Not):
        return free_vars(t.inner)
    if isinstance(t, (Exists, Lam)):
        return free_vars(t.body) - {t.var}
    if isinstance(t, CountApp):
        return free_vars(t.set_term)
    if isinstance(t, SupApp):
        return free_vars(t.set_term) | free_vars(t.degree_term)
    if isinstance(t, In):
        return free_vars(t.element) | free_vars(t.set_expr)
    raise TypeError(f"not an LC term: {t!r}")


def _is_element(t: LCTerm) -> bool:
    # Element-level terms denote a single value. count(...) counts as one
    # because it denotes a number, which makes [x = count(...)] expressible.
    return isinstance(t, (Var, Const)) or (
        isinstance(t, CountApp) and well_formed(t)
    )


def _lam_arity(t: LCTerm, n: int) -> bool:
    for _ in range(n):
        if not isinstance(t, Lam):
            return False
        t = t.body
    return not isinstance(t, Lam)


def well_formed(t: LCTerm) -> bool:
    """Structural sanity: element positions hold elements, set positions lambdas."""
    if isinstance(t, (Var, Const)):
        return True
    if isinstance(t, Pred):
        return isinstance(t.arg1, (Var, Const)) and isinstance(t.arg2, (Var, Const))
    if isinstance(t, Eq):
        return _is_element(t.left) and _is_element(t.right)
    if isinstance(t, (And, Or)):
        return well_formed(t.left) and well_formed(t.right)
    if isinstance(t, Not):
        return well_formed(t.inner)
    if isinstance(t, (Exists, Lam)):
        return well_formed(t.body)
    if isinstance(t, CountApp):
        return _lam_arity(t.set_term, 1) and well_formed(t.set_term)
    if isinstance(t, SupApp):
        return (
            _lam_arity(t.set_term, 1)
            and _lam_arity(t.degree_term, 2)
            and well_formed(t.set_term)
            and well_formed(t.degree_term)
        )
    if isinstance(t, In):
        return _is_element(t.element) and well_formed(t.set_expr)
    return False


def alpha_eq(a: LCTerm, b: LCTerm) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {})


def _alpha(a: LCTerm, b: LCTerm, l2r: dict[str, str], r2l: dict[str, str]) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        if a.name in l2r or b.name in r2l:
            return l2r.get(a.name) == b.name and r2l.get(b.name) == a.name
        return a.name == b.name
    if isinstance(a, Const):
        return a == b
    if isinstance(a, Pred):
        return (
            a.property == b.property
            and _alpha(a.arg1, b.arg1, l2r, r2l)
            and _alpha(a.arg2, b.arg2, l2r, r2l)
        )
    if isinstance(a, Eq):
        return _alpha(a.left, b.left, l2r, r2l) and _alpha(a.right, b.right, l2r, r2l)
    if isinstance(a, (And, Or)):
        return _alpha(a.left, b.left, l2r, r2l) and _alpha(a.right, b.right, l2r, r2l)
    if isinstance(a, Not):
        return _alpha(a.inner, b.inner, l2r, r2l)
    if isinstance(a, (Exists, Lam)):
        l2r2 = dict(l2r)
        r2l2 = dict(r2l)
        l2r2[a.var] = b.var
        r2l2[b.var] = a.var
        return _alpha(a.body, b.body, l2r2, r2l2)
    if isinstance(a, CountApp):
        return _alpha(a.set_term, b.set_term, l2r, r2l)
    if isinstance(a, SupApp):
        return (
            a.op == b.op
            and _alpha(a.set_term, b.set_term, l2r, r2l)
            and _alpha(a.degree_term, b.degree_term, l2r, r2l)
        )
    if isinstance(a, In):
        return _alpha(a.element, b.element, l2r, r2l) and _alpha(
            a.set_expr, b.set_expr, l2r, r2l
        )
    raise TypeError(f"not an LC term: {a!r}")


# --- printing -----------------------------------------------------------------

_OR_LEVEL = 0
_AND_LEVEL = 1
_NOT_LEVEL = 2
_ATOM_LEVEL = 3


def format_lc(t: LCTerm) -> str:
    return _fmt(t, 0, True)


def _fmt(t: LCTerm, min_level: int, trailing: bool) -> str:
    # trailing: nothing follows this subterm before the region closes, so a
    # bare binder here cannot capture material that belongs to the parent
    if isinstance(t, (Lam, Exists)):
        word = "lambda" if isinstance(t, Lam) else "exists"
        text = f"{word} {t.var} . {_fmt(t.body, 0, True)}"
        return f"({text})" if min_level > 0 or not trailing else text
    if isinstance(t, Or):
        wrap = min_level > _OR_LEVEL
        text = (f"{_fmt(t.left, _OR_LEVEL, False)} || "
                f"{_fmt(t.right, _AND_LEVEL, wrap or trailing)}")
        return f"({text})" if wrap else text
    if isinstance(t, And):
        wrap = min_level > _AND_LEVEL
        text = (f"{_fmt(t.left, _AND_LEVEL, False)} & "
                f"{_fmt(t.right, _NOT_LEVEL, wrap or trailing)}")
        return f"({text})" if wrap else text
    if isinstance(t, Not):
        return f"!{_fmt(t.inner, _ATOM_LEVEL, True)}"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return render_value(t.value)
    if isinstance(t, Pred):
        return f"{t.property}({_fmt(t.arg1, 0, True)},{_fmt(t.arg2, 0, True)})"
    if isinstance(t, Eq):
        return f"[{_fmt(t.left, 0, True)} = {_fmt(t.right, 0, True)}]"
    if isinstance(t, CountApp):
        return f"count({_fmt(t.set_term, 0, True)})"
    if isinstance(t, SupApp):
        return f"{t.op}({_fmt(t.set_term, 0, True)}, {_fmt(t.degree_term, 0, True)})"
    if isinstance(t, In):
        return f"in({_fmt(t.element, 0, True)}, {_fmt(t.set_expr, 0, True)})"
    raise TypeError(f"not an LC term: {t!r}")


# --- parsing ------------------------------------------------------------------

_KEYWORDS = {"lambda", "exists", "count", "argmax", "argmin", "in"}
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_:]*")
_INT_RE = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "|" and text[i : i + 2] == "||":
            toks.append(_Tok("OR", "||", i))
            i += 2
            continue
        if c in "()[],.&!=":
            kind = {
                "(": "LPAREN", ")": "RPAREN", "[": "LBRACKET", "]": "RBRACKET",
                ",": "COMMA", ".": "DOT", "&": "AND", "!": "NOT", "=": "EQ",
            }[c]
            toks.append(_Tok(kind, c, i))
            i += 1
            continue
        m = _INT_RE.match(text, i)
        if m and (c.isdigit() or c == "-"):
            toks.append(_Tok("INT", m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            toks.append(_Tok("IDENT", m.group(), i))
            i = m.end()
            continue
        raise ParseError(i, f"a token (found {c!r})")
    toks.append(_Tok("EOF", "", n))
    return toks


class _LcParser:
    """Recursive descent over the LC surface syntax.

    Identifiers are classified while parsing: names bound by an enclosing
    lambda/exists become Var, everything else becomes an entity Const.
    """

    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            if kind in ("RPAREN", "RBRACKET"):
                raise UnbalancedDelimiter(tok.pos, what)
            raise ParseError(tok.pos, what)
        return self.advance()

    def parse(self) -> LCTerm:
        t = self.term(frozenset())
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(tok.pos, "end of input")
        return t

    def term(self, scope: frozenset[str]) -> LCTerm:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in ("lambda", "exists"):
            self.advance()
            name = self.binder_name()
            self.expect("DOT", "'.' after binder")
            body = self.term(scope | {name})
            return Lam(name, body) if tok.text == "lambda" else Exists(name, body)
        return self.disjunction(scope)

    def binder_name(self) -> str:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text in _KEYWORDS:
            raise ParseError(tok.pos, "a variable name")
        return self.advance().text

    def disjunction(self, scope) -> LCTerm:
        left = self.conjunction(scope)
        while self.peek().kind == "OR":
            self.advance()
            left = Or(left, self.conjunction(scope))
        return left

    def conjunction(self, scope) -> LCTerm:
        left = self.atom(scope)
        while self.peek().kind == "AND":
            self.advance()
            left = And(left, self.atom(scope))
        return left

    def atom(self, scope) -> LCTerm:
        tok = self.peek()
        if tok.kind == "NOT":
            self.advance()
            return Not(self.atom(scope))
        if tok.kind == "LBRACKET":
            self.advance()
            left = self.element(scope)
            self.expect("EQ", "'=' in equality")
            right = self.element(scope)
            self.expect("RBRACKET", "']' closing equality")
            return Eq(left, right)
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.term(scope)
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "INT":
            self.advance()
            return Const(Number(self._int(tok)))
        if tok.kind == "IDENT":
            if tok.text == "count":
                self.advance()
                self.expect("LPAREN", "'(' after count")
                inner = self.term(scope)
                self.expect("RPAREN", "')' closing count")
                return CountApp(inner)
            if tok.text in ("argmax", "argmin"):
                self.advance()
                self.expect("LPAREN", f"'(' after {tok.text}")
                set_term = self.term(scope)
                self.expect("COMMA", "',' between superlative arguments")
                degree = self.term(scope)
                self.expect("RPAREN", f"')' closing {tok.text}")
                return SupApp(tok.text, set_term, degree)
            if tok.text == "in":
                self.advance()
                self.expect("LPAREN", "'(' after in")
                element = self.element(scope)
                self.expect("COMMA", "',' in membership")
                set_expr = self.term(scope)
                self.expect("RPAREN", "')' closing in")
                return In(element, set_expr)
            if tok.text in _KEYWORDS:
                raise ParseError(tok.pos, f"a term (found keyword {tok.text!r})")
            self.advance()
            if self.peek().kind == "LPAREN":
                self.advance()
                a1 = self.element(scope)
                self.expect("COMMA", "',' between predicate arguments")
                a2 = self.element(scope)
                self.expect("RPAREN", "')' closing predicate")
                return Pred(tok.text, a1, a2)
            return self._name(tok, scope)
        raise ParseError(tok.pos, "a term")

    def element(self, scope) -> LCTerm:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return Const(Number(self._int(tok)))
        if tok.kind == "IDENT" and tok.text == "count":
            return self.atom(scope)
        if tok.kind == "IDENT" and tok.text not in _KEYWORDS:
            self.advance()
            return self._name(tok, scope)
        raise ParseError(tok.pos, "an element (variable, constant, or count)")

    def _name(self, tok: _Tok, scope) -> LCTerm:
        if tok.text in scope:
            return Var(tok.text)
        return Const(Entity(tok.text))

    def _int(self, tok: _Tok) -> int:
        n = int(tok.text)
        if not (INT64_MIN <= n <= INT64_MAX):
            raise ParseError(tok.pos, "an integer in 64-bit range")
        return n


def parse_lc(text: str) -> LCTerm:
    return _LcParser(_lex(text)).parse()
