"""Total n-ary functions on a lattice stored as value vectors.

A function table holds one value per input tuple.  Tuples are indexed
big-endian mixed radix: index(x) = sum of x_i * m^(n-i), i.e. the first
component is the most significant digit.  Lexicographic tuple order thus
coincides with index order, and (by the linear-extension indexing of the
lattice) linearly extends the product order on L^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    IndexOutOfRange,
    LatticeMismatch,
    ParseError,
)
from .lattice import Lattice

DEFAULT_CELL_BUDGET = 64
DEFAULT_COUNT_BUDGET = 10**7


@lru_cache(maxsize=None)
def all_tuples(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All n-tuples over 0..m-1 in lexicographic (= index) order."""
    return tuple(itertools.product(range(m), repeat=n))


def tuple_index(m: int, xs) -> int:
    idx = 0
    for x in xs:
        idx = idx * m + x
    return idx


@dataclass(frozen=True)
class FnTable:
    """Total n-ary function on a lattice, one value per input tuple."""

    lattice: Lattice
    arity: int
    values: tuple[int, ...]
    name: str = field(default="f", compare=False)

    def __post_init__(self):
        m = self.lattice.size
        if self.arity < 1:
            raise ArityMismatch(f"arity must be >= 1, got {self.arity}")
        if len(self.values) != m**self.arity:
            raise ArityMismatch(
                f"value vector has {len(self.values)} entries, expected {m**self.arity}"
            )
        if any(not 0 <= v < m for v in self.values):
            raise IndexOutOfRange("value outside element range")

    def __call__(self, xs) -> int:
        if len(xs) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(xs)}")
        return self.values[tuple_index(self.lattice.size, xs)]

    def key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical encoding for set membership and deduplication."""
        return (self.arity, self.values)

    def tuples(self):
        return all_tuples(self.lattice.size, self.arity)

    def renamed(self, name: str) -> "FnTable":
        return FnTable(self.lattice, self.arity, self.values, name=name)


def from_callable(lat: Lattice, n: int, fn, name: str = "f") -> FnTable:
    """Tabulate a Python callable over all n-tuples."""
    values = tuple(fn(xs) for xs in all_tuples(lat.size, n))
    return FnTable(lat, n, values, name=name)


def projection(lat: Lattice, n: int, i: int) -> FnTable:
    """The i-th n-ary projection (1-based i)."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"projection index {i} outside 1..{n}")
    return from_callable(lat, n, lambda xs: xs[i - 1], name=f"p{i}^{n}")


def meet_fn(lat: Lattice) -> FnTable:
    return from_callable(lat, 2, lambda xs: lat.meet(xs[0], xs[1]), name="meet")


def join_fn(lat: Lattice) -> FnTable:
    return from_callable(lat, 2, lambda xs: lat.join(xs[0], xs[1]), name="join")


def _check_same_lattice(*fns: FnTable):
    lat = fns[0].lattice
    for f in fns[1:]:
        if f.lattice is not lat and f.lattice != lat:
            raise LatticeMismatch("operands live on different lattices")


def compose(f: FnTable, gs) -> FnTable:
    """f(g_1,...,g_k): outer k-ary f applied to k inner n-ary functions."""
    gs = list(gs)
    _check_same_lattice(f, *gs)
    if len(gs) != f.arity:
        raise ArityMismatch(f"outer arity {f.arity}, got {len(gs)} inner functions")
    n = gs[0].arity
    if any(g.arity != n for g in gs):
        raise ArityMismatch("inner functions must share one arity")
    m = f.lattice.size
    fvals = f.values
    gvals = [g.values for g in gs]
    out = []
    for t in range(m**n):
        idx = 0
        for gv in gvals:
            idx = idx * m + gv[t]
        out.append(fvals[idx])
    return FnTable(f.lattice, n, tuple(out))


def is_monotone(f: FnTable) -> bool:
    """Monotonicity along single-coordinate cover steps; equivalent to the
    pairwise definition since every x <= y decomposes into such steps."""
    lat, values = f.lattice, f.values
    m, n = lat.size, f.arity
    leq = lat.leq_table
    strides = [m ** (n - 1 - i) for i in range(n)]
    for k, xs in enumerate(f.tuples()):
        fx = values[k]
        for i in range(n):
            stride = strides[i]
            xi = xs[i]
            for c in lat.upper_covers(xi):
                if not leq[fx][values[k + (c - xi) * stride]]:
                    return False
    return True


def is_boundary(f: FnTable) -> bool:
    lat = f.lattice
    bottoms = (lat.bottom,) * f.arity
    tops = (lat.top,) * f.arity
    return f(bottoms) == lat.bottom and f(tops) == lat.top


def is_aggregation(f: FnTable) -> bool:
    return is_boundary(f) and is_monotone(f)


def is_idempotent(f: FnTable) -> bool:
    """f(x,...,x) = x on the whole diagonal."""
    return all(f((x,) * f.arity) == x for x in range(f.lattice.size))


def is_intermediate(f: FnTable) -> bool:
    """meet(x) <= f(x) <= join(x) for every input tuple."""
    lat = f.lattice
    leq = lat.leq_table
    for xs, v in zip(f.tuples(), f.values):
        if not (leq[lat.meet_all(xs)][v] and leq[v][lat.join_all(xs)]):
            return False
    return True


def pointwise_join(f: FnTable, g: FnTable) -> FnTable:
    _check_same_lattice(f, g)
    if f.arity != g.arity:
        raise ArityMismatch("pointwise join needs equal arities")
    jt = f.lattice.join_table
    return FnTable(f.lattice, f.arity, tuple(jt[a][b] for a, b in zip(f.values, g.values)))


def pointwise_meet(f: FnTable, g: FnTable) -> FnTable:
    _check_same_lattice(f, g)
    if f.arity != g.arity:
        raise ArityMismatch("pointwise meet needs equal arities")
    mt = f.lattice.meet_table
    return FnTable(f.lattice, f.arity, tuple(mt[a][b] for a, b in zip(f.values, g.values)))


def leq_pointwise(f: FnTable, g: FnTable) -> bool:
    _check_same_lattice(f, g)
    if f.arity != g.arity:
        raise ArityMismatch("pointwise comparison needs equal arities")
    leq = f.lattice.leq_table
    return all(leq[a][b] for a, b in zip(f.values, g.values))


CLASSES = ("aggregation", "idempotent", "monotone")


def iter_monotone_values(
    lat: Lattice,
    n: int,
    boundary: bool = False,
    diagonal: bool = False,
    interval: bool = False,
    cell_budget: int = DEFAULT_CELL_BUDGET,
):
    """Yield value vectors of monotone n-ary functions, optionally also
    satisfying the boundary conditions, a pinned diagonal, or confinement of
    every value to [meet(x), join(x)].

    Backtracks over tuples in lexicographic order.  At each tuple the
    candidates are bounded below by the join of the values already assigned
    at smaller comparable tuples, which is sound because the index order is
    a linear extension of the product order.  Vectors come out in
    lexicographic order.
    """
    m = lat.size
    cells = m**n
    if cells > cell_budget:
        raise BudgetExceeded(
            f"{m}^{n} = {cells} cells exceeds the cell budget {cell_budget}"
        )
    tuples = all_tuples(m, n)
    leq = lat.leq_table
    preds = [
        [j for j in range(k) if all(leq[a][b] for a, b in zip(tuples[j], tuples[k]))]
        for k in range(cells)
    ]
    join_t = lat.join_table

    forced: list[int | None] = [None] * cells
    if boundary:
        forced[0] = lat.bottom
        forced[cells - 1] = lat.top
    if diagonal:
        for x in range(m):
            forced[tuple_index(m, (x,) * n)] = x
    intervals: list[tuple[int, int] | None] = [None] * cells
    if interval:
        intervals = [(lat.meet_all(xs), lat.join_all(xs)) for xs in tuples]

    assigned = [0] * cells

    def walk(k: int):
        if k == cells:
            yield tuple(assigned)
            return
        lb = lat.bottom
        for j in preds[k]:
            lb = join_t[lb][assigned[j]]
        pin = forced[k]
        if pin is not None:
            if leq[lb][pin]:
                lo_hi = intervals[k]
                if lo_hi is None or (leq[lo_hi[0]][pin] and leq[pin][lo_hi[1]]):
                    assigned[k] = pin
                    yield from walk(k + 1)
            return
        lo_hi = intervals[k]
        for v in range(m):
            if not leq[lb][v]:
                continue
            if lo_hi is not None and not (leq[lo_hi[0]][v] and leq[v][lo_hi[1]]):
                continue
            assigned[k] = v
            yield from walk(k + 1)

    yield from walk(0)


_CLASS_FLAGS = {
    "monotone": {},
    "aggregation": {"boundary": True},
    "idempotent": {"boundary": True, "diagonal": True, "interval": True},
}


def enumerate_class(
    lat: Lattice,
    n: int,
    cls: str,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    count_budget: int = DEFAULT_COUNT_BUDGET,
) -> list[FnTable]:
    """All n-ary functions of the given class, in lexicographic order of
    value vectors.  For the idempotent class the diagonal is pinned and
    candidates confined to [meet(x), join(x)]."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    out: list[FnTable] = []
    for values in iter_monotone_values(
        lat, n, cell_budget=cell_budget, **_CLASS_FLAGS[cls]
    ):
        if len(out) >= count_budget:
            raise BudgetExceeded(
                f"class size exceeds the count budget {count_budget}"
            )
        out.append(FnTable(lat, n, values))
    return out


def parse_function(text: str, lat: Lattice) -> FnTable:
    """Parse the function-table file format against a known lattice."""
    header = None
    rows: dict[tuple[int, ...], int] = {}
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after 'end'", lineno)
        if header is None:
            fields = line.split()
            if (
                len(fields) != 6
                or fields[0] != "function"
                or fields[2] != "arity"
                or fields[4] != "lattice"
            ):
                raise ParseError(
                    "expected 'function <name> arity <n> lattice <lattice-name>'",
                    lineno,
                )
            try:
                arity = int(fields[3])
            except ValueError:
                raise ParseError(f"bad arity {fields[3]!r}", lineno)
            if arity < 1:
                raise ParseError(f"arity must be >= 1, got {arity}", lineno)
            if fields[5] != lat.name:
                raise ParseError(
                    f"function is on lattice {fields[5]!r}, expected {lat.name!r}",
                    lineno,
                )
            header = (fields[1], arity)
            continue
        if line == "end":
            ended = True
            continue
        if "->" not in line:
            raise ParseError("expected '<labels> -> <label>'", lineno)
        lhs, _, rhs = line.partition("->")
        in_labels = lhs.split()
        out_labels = rhs.split()
        if len(in_labels) != header[1] or len(out_labels) != 1:
            raise ParseError(
                f"expected {header[1]} input labels and one output label", lineno
            )
        try:
            xs = tuple(lat.index(lab) for lab in in_labels)
            v = lat.index(out_labels[0])
        except KeyError as exc:
            raise ParseError(str(exc), lineno)
        if xs in rows:
            raise ParseError(f"duplicate tuple ({' '.join(in_labels)})", lineno)
        rows[xs] = v
    if header is None:
        raise ParseError("missing function header")
    if not ended:
        raise ParseError("missing 'end' directive")
    name, arity = header
    missing = [xs for xs in all_tuples(lat.size, arity) if xs not in rows]
    if missing:
        labs = " ".join(lat.labels[x] for x in missing[0])
        raise ParseError(f"missing tuple ({labs})")
    values = tuple(rows[xs] for xs in all_tuples(lat.size, arity))
    return FnTable(lat, arity, values, name=name)


def format_function(f: FnTable) -> str:
    lat = f.lattice
    lines = [f"function {f.name} arity {f.arity} lattice {lat.name}"]
    for xs, v in zip(f.tuples(), f.values):
        lines.append(" ".join(lat.labels[x] for x in xs) + " -> " + lat.labels[v])
    lines.append("end")
    return "\n".join(lines) + "\n"
