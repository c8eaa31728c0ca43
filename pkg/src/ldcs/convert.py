"""Translation of set-denoting forms into explicit lambda terms.

Each unary form u becomes a one-argument predicate `lambda x . body` that is
true exactly of the members of u; each binary form becomes a two-argument
predicate. The translation is compositional and introduces an existential
for every join, so the raw output is verbose; `simplify` collapses the
bureaucratic quantifiers without changing the denotation.
"""

from __future__ import annotations

from . import core, lc
from .errors import UnboundVariable

__all__ = ["fresh_var", "to_lc_unary", "to_lc_binary", "simplify"]


def fresh_var(hint: str, used) -> str:
    """Return `hint` if free, else the first hintN (N = 1, 2, ...) that is."""
    if hint not in used:
        return hint
    i = 1
    while f"{hint}{i}" in used:
        i += 1
    return f"{hint}{i}"


def _identifiers(form) -> set[str]:
    """Every name occurring in a form; seeds the fresh-name pool."""
    out: set[str] = set()

    def walk(f) -> None:
        if isinstance(f, core.EntityLit):
            if isinstance(f.value, core.Entity):
                out.add(f.value.entity_id)
        elif isinstance(f, core.Var):
            out.add(f.name)
        elif isinstance(f, core.Join):
            walk(f.binary)
            walk(f.unary)
        elif isinstance(f, (core.Intersect, core.Union)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, core.Negate):
            walk(f.inner)
        elif isinstance(f, core.Aggregate):
            walk(f.inner)
        elif isinstance(f, core.Superlative):
            walk(f.source)
            walk(f.degree)
        elif isinstance(f, (core.Mu, core.Lambda)):
            out.add(f.var)
            walk(f.body)
        elif isinstance(f, core.Property):
            out.add(f.name)
        elif isinstance(f, core.Reverse):
            walk(f.inner)
        else:
            raise TypeError(f"not a resolved form: {f!r}")

    walk(form)
    return out


class _Names:
    def __init__(self, used: set[str]):
        self.used = set(used)

    def fresh(self, hint: str) -> str:
        name = fresh_var(hint, self.used)
        self.used.add(name)
        return name


def to_lc_unary(u: core.UnaryForm) -> lc.Lam:
    names = _Names(_identifiers(u))
    x = names.fresh("x")
    return lc.Lam(x, _unary_body(u, x, {}, names))


def to_lc_binary(b: core.BinaryForm) -> lc.Lam:
    names = _Names(_identifiers(b))
    x = names.fresh("x")
    y = names.fresh("y")
    return lc.Lam(x, lc.Lam(y, _binary_pred(b, x, y, {}, names)))


def _unary_body(u, subj: str, env: dict, names: _Names) -> lc.LCTerm:
    """A term asserting that the value of variable `subj` belongs to u."""
    if isinstance(u, core.EntityLit):
        return lc.Eq(lc.Var(subj), lc.Const(u.value))
    if isinstance(u, core.Var):
        if u.name not in env:
            raise UnboundVariable(u.name)
        return lc.Eq(lc.Var(env[u.name]), lc.Var(subj))
    if isinstance(u, core.Join):
        y = names.fresh("y")
        return lc.Exists(y, lc.And(
            _binary_pred(u.binary, subj, y, env, names),
            _unary_body(u.unary, y, env, names),
        ))
    if isinstance(u, core.Intersect):
        return lc.And(
            _unary_body(u.left, subj, env, names),
            _unary_body(u.right, subj, env, names),
        )
    if isinstance(u, core.Union):
        return lc.Or(
            _unary_body(u.left, subj, env, names),
            _unary_body(u.right, subj, env, names),
        )
    if isinstance(u, core.Negate):
        return lc.Not(_unary_body(u.inner, subj, env, names))
    if isinstance(u, core.Aggregate):
        y = names.fresh("y")
        inner = lc.Lam(y, _unary_body(u.inner, y, env, names))
        return lc.Eq(lc.Var(subj), lc.CountApp(inner))
    if isinstance(u, core.Superlative):
        y = names.fresh("y")
        source = lc.Lam(y, _unary_body(u.source, y, env, names))
        s = names.fresh("s")
        d = names.fresh("d")
        degree = lc.Lam(s, lc.Lam(d, _binary_pred(u.degree, s, d, env, names)))
        return lc.In(lc.Var(subj), lc.SupApp(u.op, source, degree))
    if isinstance(u, core.Mu):
        g = names.fresh(u.var)
        body = _unary_body(u.body, subj, {**env, u.var: g}, names)
        return lc.Exists(g, lc.And(lc.Eq(lc.Var(g), lc.Var(subj)), body))
    raise TypeError(f"not a resolved unary form: {u!r}")


def _binary_pred(b, x: str, y: str, env: dict, names: _Names) -> lc.LCTerm:
    """A term asserting that the pair (x, y) belongs to b."""
    if isinstance(b, core.Property):
        return lc.Pred(b.name, lc.Var(x), lc.Var(y))
    if isinstance(b, core.Reverse):
        return _binary_pred(b.inner, y, x, env, names)
    if isinstance(b, core.Lambda):
        # (x, y) is in (lam a . u) exactly when x is in u with a bound to y.
        return _unary_body(b.body, x, {**env, b.var: y}, names)
    raise TypeError(f"not a resolved binary form: {b!r}")


# --- simplification ---------------------------------------------------------

def simplify(t: lc.LCTerm) -> lc.LCTerm:
    """Collapse redundant structure without changing meaning.

    Repeats until fixpoint:
      * exists y . (... & [y = c] & ...)  ->  conjunction with c for y,
        when c is a constant or another variable (never the result of an
        aggregate, which cannot appear as a predicate argument);
      * [c = v] -> [v = c] when v is a variable and c is not;
      * right-nested conjunctions rebuilt left-associated;
      * double negation dropped.
    """
    for _ in range(200):
        t2 = _simp(t)
        if t2 == t:
            return t
        t = t2
    return t


def _simp(t: lc.LCTerm) -> lc.LCTerm:
    if isinstance(t, (lc.Var, lc.Const)):
        return t
    if isinstance(t, lc.Pred):
        return t
    if isinstance(t, lc.Eq):
        left, right = t.left, t.right
        if isinstance(left, lc.CountApp):
            left = lc.CountApp(_simp(left.set_term))
        if isinstance(right, lc.CountApp):
            right = lc.CountApp(_simp(right.set_term))
        if isinstance(right, lc.Var) and not isinstance(left, lc.Var):
            left, right = right, left
        return lc.Eq(left, right)
    if isinstance(t, lc.And):
        parts = [_simp(p) for p in _conjuncts(t)]
        return _rebuild_and(parts)
    if isinstance(t, lc.Or):
        return lc.Or(_simp(t.left), _simp(t.right))
    if isinstance(t, lc.Not):
        inner = _simp(t.inner)
        if isinstance(inner, lc.Not):
            return inner.inner
        return lc.Not(inner)
    if isinstance(t, lc.Exists):
        body = _simp(t.body)
        collapsed = _eliminate_exists(t.var, body)
        if collapsed is not None:
            return collapsed
        return lc.Exists(t.var, body)
    if isinstance(t, lc.Lam):
        return lc.Lam(t.var, _simp(t.body))
    if isinstance(t, lc.CountApp):
        return lc.CountApp(_simp(t.set_term))
    if isinstance(t, lc.SupApp):
        return lc.SupApp(t.op, _simp(t.set_term), _simp(t.degree_term))
    if isinstance(t, lc.In):
        element = t.element
        if isinstance(element, lc.CountApp):
            element = lc.CountApp(_simp(element.set_term))
        return lc.In(element, _simp(t.set_expr))
    raise TypeError(f"not a lambda term: {t!r}")


def _conjuncts(t: lc.LCTerm) -> list:
    if isinstance(t, lc.And):
        return _conjuncts(t.left) + _conjuncts(t.right)
    return [t]


def _rebuild_and(parts: list) -> lc.LCTerm:
    out = parts[0]
    for p in parts[1:]:
        out = lc.And(out, p)
    return out


def _witness(var: str, conjunct: lc.LCTerm):
    """The element `var` must equal, if this conjunct pins it down."""
    if not isinstance(conjunct, lc.Eq):
        return None
    for a, b in ((conjunct.left, conjunct.right), (conjunct.right, conjunct.left)):
        if isinstance(a, lc.Var) and a.name == var:
            if isinstance(b, lc.Const):
                return b
            if isinstance(b, lc.Var) and b.name != var:
                return b
    return None


def _eliminate_exists(var: str, body: lc.LCTerm):
    """exists var . body with a pinning equation becomes the body itself."""
    parts = _conjuncts(body)
    if len(parts) < 2:
        return None
    for i, part in enumerate(parts):
        w = _witness(var, part)
        if w is not None:
            rest = parts[:i] + parts[i + 1:]
            return _rebuild_and([_subst(p, var, w) for p in rest])
    return None


def _subst(t: lc.LCTerm, name: str, repl: lc.LCTerm) -> lc.LCTerm:
    """Capture-avoiding substitution of an element term for a variable."""
    if isinstance(t, lc.Var):
        return repl if t.name == name else t
    if isinstance(t, lc.Const):
        return t
    if isinstance(t, lc.Pred):
        return lc.Pred(t.property, _subst(t.arg1, name, repl), _subst(t.arg2, name, repl))
    if isinstance(t, lc.Eq):
        return lc.Eq(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, lc.And):
        return lc.And(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, lc.Or):
        return lc.Or(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, lc.Not):
        return lc.Not(_subst(t.inner, name, repl))
    if isinstance(t, (lc.Exists, lc.Lam)):
        ctor = type(t)
        if t.var == name:
            return t
        if isinstance(repl, lc.Var) and repl.name == t.var:
            renamed = fresh_var(t.var, lc.free_vars(t.body) | {name, repl.name})
            body = _subst(t.body, t.var, lc.Var(renamed))
            return ctor(renamed, _subst(body, name, repl))
        return ctor(t.var, _subst(t.body, name, repl))
    if isinstance(t, lc.CountApp):
        return lc.CountApp(_subst(t.set_term, name, repl))
    if isinstance(t, lc.SupApp):
        return lc.SupApp(t.op, _subst(t.set_term, name, repl), _subst(t.degree_term, name, repl))
    if isinstance(t, lc.In):
        return lc.In(_subst(t.element, name, repl), _subst(t.set_expr, name, repl))
    raise TypeError(f"not a lambda term: {t!r}")
