"""Direct set-valued evaluation of logical forms against a knowledge base.

A unary form denotes a set of values, a binary form a set of pairs. Joins
dispatch through the KB indexes instead of materializing relations, so
evaluation stays linear in the touched triples.
"""

from __future__ import annotations

from .core import (
    EMPTY_ENV,
    Aggregate,
    EntityLit,
    Entity,
    Env,
    Intersect,
    Join,
    Lambda,
    Mu,
    Negate,
    Number,
    Property,
    Reverse,
    Superlative,
    Union,
    Var,
)
from .errors import NonNumericDegree
from .kb import KnowledgeBase

__all__ = ["eval_unary", "eval_binary", "degree_of"]


def eval_unary(u, kb: KnowledgeBase, env: Env = EMPTY_ENV) -> frozenset:
    """The set of values denoted by u."""
    if isinstance(u, EntityLit):
        return frozenset({u.value})
    if isinstance(u, Var):
        return frozenset({env.lookup(u.name)})
    if isinstance(u, Join):
        return _join_subjects(u.binary, eval_unary(u.unary, kb, env), kb, env)
    if isinstance(u, Intersect):
        return eval_unary(u.left, kb, env) & eval_unary(u.right, kb, env)
    if isinstance(u, Union):
        return eval_unary(u.left, kb, env) | eval_unary(u.right, kb, env)
    if isinstance(u, Negate):
        return kb.entity_domain - eval_unary(u.inner, kb, env)
    if isinstance(u, Aggregate):
        return frozenset({Number(len(eval_unary(u.inner, kb, env)))})
    if isinstance(u, Superlative):
        return _superlative(u, kb, env)
    if isinstance(u, Mu):
        return frozenset(
            x for x in kb.entity_domain
            if x in eval_unary(u.body, kb, env.bind(u.var, x))
        )
    raise TypeError(f"not a resolved unary form: {u!r}")


def eval_binary(b, kb: KnowledgeBase, env: Env = EMPTY_ENV) -> frozenset:
    """The set of (subject, object) pairs denoted by b."""
    if isinstance(b, Property):
        return frozenset(
            (t.subject, t.object) for t in kb.triples if t.property == b.name
        )
    if isinstance(b, Reverse):
        return frozenset((y, x) for x, y in eval_binary(b.inner, kb, env))
    if isinstance(b, Lambda):
        return frozenset(
            (x, y)
            for y in kb.entity_domain
            for x in eval_unary(b.body, kb, env.bind(b.var, y))
        )
    raise TypeError(f"not a resolved binary form: {b!r}")


def _join_subjects(b, objs: frozenset, kb, env) -> frozenset:
    """{x | some y in objs has (x, y) in b}"""
    if isinstance(b, Property):
        out = set()
        for y in objs:
            out |= kb.subjects_of(b.name, y)
        return frozenset(out)
    if isinstance(b, Reverse):
        return _join_objects(b.inner, objs, kb, env)
    if isinstance(b, Lambda):
        out = set()
        for y in objs & kb.entity_domain:
            out |= eval_unary(b.body, kb, env.bind(b.var, y))
        return frozenset(out)
    raise TypeError(f"not a resolved binary form: {b!r}")


def _join_objects(b, subjs: frozenset, kb, env) -> frozenset:
    """{y | some x in subjs has (x, y) in b}"""
    if isinstance(b, Property):
        out = set()
        for x in subjs:
            out |= kb.objects_of(b.name, x)
        return frozenset(out)
    if isinstance(b, Reverse):
        return _join_subjects(b.inner, subjs, kb, env)
    if isinstance(b, Lambda):
        return frozenset(
            y for y in kb.entity_domain
            if eval_unary(b.body, kb, env.bind(b.var, y)) & subjs
        )
    raise TypeError(f"not a resolved binary form: {b!r}")


def degree_of(x, b, kb: KnowledgeBase, env: Env = EMPTY_ENV, collapse: str = "max"):
    """The number b relates x to, or None if there is none.

    An element related to several numbers collapses to the largest (or the
    smallest, with collapse="min"). Any non-numeric related value raises
    NonNumericDegree.
    """
    related = _join_objects(b, frozenset({x}), kb, env)
    if not related:
        return None
    for v in related:
        if not isinstance(v, Number):
            raise NonNumericDegree(v)
    ns = [v.n for v in related]
    return max(ns) if collapse == "max" else min(ns)


def _superlative(u: Superlative, kb, env) -> frozenset:
    collapse = "max" if u.op == "argmax" else "min"
    scored = []
    for x in eval_unary(u.source, kb, env):
        d = degree_of(x, u.degree, kb, env, collapse)
        if d is not None:
            scored.append((x, d))
    if not scored:
        return frozenset()
    best = max(d for _, d in scored) if u.op == "argmax" else min(d for _, d in scored)
    return frozenset(x for x, d in scored if d == best)
