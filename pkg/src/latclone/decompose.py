"""Constructive decompositions of aggregation functions into generator terms.

decompose_id writes an idempotent aggregation function f as the meet, over
all tuples a, of the join over coordinates i of

    iota[(meet a, a_i, join a); f(a)](meet x, x_i, join x),

which tabulates back to f exactly.  decompose_id_reduced replaces each iota
node by a join of two top-threshold iota nodes, so the whole term only uses
the reduced generating set.  h_agg_term realizes the majorant of a (not
necessarily idempotent) aggregation function as a mu/oplus composite.
"""

from __future__ import annotations

from .errors import NotAggregation, NotIdempotent, UnsupportedArity
from .functable import FnTable, is_aggregation, is_idempotent, leq_pointwise
from .generators import iota_spec, mu_spec, oplus_spec
from .lattice import Lattice
from .terms import Apply, Join, Meet, Term, Var, join_of, meet_of, to_table


def _require_idempotent_aggregation(f: FnTable):
    if not (is_idempotent(f) and is_aggregation(f)):
        raise NotIdempotent("input must be an idempotent aggregation function")


def _meet_vars(n: int) -> Term:
    return meet_of(Var(i) for i in range(1, n + 1))


def _join_vars(n: int) -> Term:
    return join_of(Var(i) for i in range(1, n + 1))


def decompose_id(f: FnTable) -> Term:
    """Meet-of-joins iota term tabulating to f; f idempotent aggregation.

    Outer meet runs over all tuples a in lexicographic order, inner join
    over coordinates i = 1..n.
    """
    _require_idempotent_aggregation(f)
    lat, n = f.lattice, f.arity
    mx, jx = _meet_vars(n), _join_vars(n)
    operands = []
    for a in f.tuples():
        wa, va, fa = lat.meet_all(a), lat.join_all(a), f(a)
        inner = [
            Apply(iota_spec(lat, wa, a[i], va, fa), (mx, Var(i + 1), jx))
            for i in range(n)
        ]
        operands.append(join_of(inner))
    return meet_of(operands)


def decompose_id_reduced(f: FnTable) -> Term:
    """Like decompose_id but every iota node has top as its third threshold.

    Each original iota[(w, a_i, v); f(a)](mx, x_i, jx) becomes
    iota[(w, a_i, 1); f(a)](mx, x_i, jx) join iota[(w, v, 1); f(a)](mx, jx, jx).
    """
    _require_idempotent_aggregation(f)
    lat, n = f.lattice, f.arity
    top = lat.top
    mx, jx = _meet_vars(n), _join_vars(n)
    operands = []
    for a in f.tuples():
        wa, va, fa = lat.meet_all(a), lat.join_all(a), f(a)
        tail = Apply(iota_spec(lat, wa, va, top, fa), (mx, jx, jx))
        inner = [
            Join(
                Apply(iota_spec(lat, wa, a[i], top, fa), (mx, Var(i + 1), jx)),
                tail,
            )
            for i in range(n)
        ]
        operands.append(join_of(inner))
    return meet_of(operands)


def h_agg_term(f: FnTable, a) -> Term:
    """mu/oplus composite tabulating to h_agg(f, a); needs arity >= 2.

    Join over the coordinates where a_i is below top of mu[a_i](x_i),
    joined with the left-nested chain of n-1 oplus[f(a)] applications
    over x_1..x_n.
    """
    if not is_aggregation(f):
        raise NotAggregation("input must be an aggregation function")
    lat, n = f.lattice, f.arity
    if n < 2:
        raise UnsupportedArity("the mu/oplus composite needs arity >= 2")
    a = tuple(a)
    fa = f(a)
    chain = Var(1)
    for i in range(2, n + 1):
        chain = Apply(oplus_spec(lat, fa), (chain, Var(i)))
    mus = [
        Apply(mu_spec(lat, a[i]), (Var(i + 1),))
        for i in range(n)
        if a[i] != lat.top
    ]
    return join_of([*mus, chain])


def _flatten(t: Term, node_type) -> list[Term]:
    if isinstance(t, node_type):
        return _flatten(t.left, node_type) + _flatten(t.right, node_type)
    return [t]


def simplify(t: Term, lat: Lattice, n: int) -> Term:
    """Drop dominated operands from meet/join chains; preserves the table.

    In a meet, an operand can go when another operand is pointwise below it;
    dually for joins.  Purely a size optimization, applied bottom-up.
    """
    if isinstance(t, Var):
        return t
    if isinstance(t, Apply):
        return Apply(t.spec, tuple(simplify(arg, lat, n) for arg in t.args))
    node_type = Meet if isinstance(t, Meet) else Join
    ops = [simplify(o, lat, n) for o in _flatten(t, node_type)]
    tables = [to_table(o, lat, n) for o in ops]
    def dominated(i: int) -> bool:
        for j in range(len(ops)):
            if i == j:
                continue
            if tables[i].values == tables[j].values:
                if j < i:  # keep only the first of equal operands
                    return True
                continue
            better = (
                leq_pointwise(tables[j], tables[i])
                if node_type is Meet
                else leq_pointwise(tables[i], tables[j])
            )
            if better:
                return True
        return False

    kept = [ops[i] for i in range(len(ops)) if not dominated(i)]
    return (meet_of if node_type is Meet else join_of)(kept)
