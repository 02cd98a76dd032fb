"""Finite bounded lattices: construction, validation, builtin families, file I/O.

Elements are integer indices 0..m-1.  Construction re-indexes the elements
into a linear extension of the order, so i < j as integers whenever element
i is strictly below element j.  Lexicographic iteration over tuples then
linearly extends the product order, which the enumeration code relies on.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import (
    ArityMismatch,
    EmptyTuple,
    InvalidSize,
    NotALattice,
    NotAPartialOrder,
    NotBounded,
    ParseError,
)


@dataclass(frozen=True)
class Lattice:
    """Immutable finite bounded lattice with precomputed meet/join tables."""

    name: str
    labels: tuple[str, ...]
    leq_table: tuple[tuple[bool, ...], ...] = field(repr=False)
    meet_table: tuple[tuple[int, ...], ...] = field(repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(repr=False)
    bottom: int = field(repr=False, default=0)
    top: int = field(repr=False, default=0)

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index_map[label]
        except KeyError:
            raise KeyError(f"unknown element label {label!r} in lattice {self.name!r}")

    @property
    def _index_map(self) -> dict[str, int]:
        # lazily cached on the instance; frozen dataclass, so go via __dict__
        cached = self.__dict__.get("_index_map_cache")
        if cached is None:
            cached = {lab: i for i, lab in enumerate(self.labels)}
            self.__dict__["_index_map_cache"] = cached
        return cached

    def label(self, i: int) -> str:
        return self.labels[i]

    def leq(self, x: int, y: int) -> bool:
        return self.leq_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet_all(self, xs) -> int:
        """Meet of a nonempty tuple of elements (fold of the binary meet)."""
        it = iter(xs)
        try:
            acc = next(it)
        except StopIteration:
            raise EmptyTuple("meet_all of empty tuple")
        for x in it:
            acc = self.meet_table[acc][x]
        return acc

    def join_all(self, xs) -> int:
        """Join of a nonempty tuple of elements (fold of the binary join)."""
        it = iter(xs)
        try:
            acc = next(it)
        except StopIteration:
            raise EmptyTuple("join_all of empty tuple")
        for x in it:
            acc = self.join_table[acc][x]
        return acc

    def leq_tuple(self, xs, ys) -> bool:
        """Component-wise order on tuples of equal arity."""
        if len(xs) != len(ys):
            raise ArityMismatch(f"tuple arities differ: {len(xs)} vs {len(ys)}")
        leq = self.leq_table
        return all(leq[x][y] for x, y in zip(xs, ys))

    def upper_covers(self, x: int) -> tuple[int, ...]:
        """Elements covering x (immediately above it)."""
        cached = self.__dict__.get("_covers_cache")
        if cached is None:
            leq = self.leq_table
            cached = []
            for v in range(self.size):
                above = [y for y in range(self.size) if y != v and leq[v][y]]
                cached.append(tuple(
                    y for y in above
                    if not any(z != y and leq[z][y] for z in above)
                ))
            self.__dict__["_covers_cache"] = cached
        return cached[x]


def _linear_extension(m: int, succs: list[set[int]]) -> list[int]:
    """Topological order of 0..m-1 (smallest original index first).

    Raises NotAPartialOrder on a cycle.
    """
    indeg = [0] * m
    for lo in range(m):
        for hi in succs[lo]:
            indeg[hi] += 1
    heap = [v for v in range(m) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != m:
        raise NotAPartialOrder("cover relation contains a cycle")
    return order


def from_covers(labels, covers, name: str = "lattice") -> Lattice:
    """Build a lattice from element labels and covering pairs (lower, upper).

    The order is the reflexive-transitive closure of the covers.  Duplicate
    and transitively implied covers are accepted.  Elements are re-indexed
    into a linear extension.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("element labels must be distinct")
    for lab in labels:
        if not lab or any(ch.isspace() for ch in lab):
            raise ValueError(f"bad element label {lab!r}")
    m = len(labels)
    if m < 1:
        raise ValueError("lattice needs at least one element")
    pos = {lab: i for i, lab in enumerate(labels)}
    succs: list[set[int]] = [set() for _ in range(m)]
    for lo, hi in covers:
        if lo not in pos or hi not in pos:
            raise ValueError(f"cover ({lo!r}, {hi!r}) references unknown label")
        if lo == hi:
            raise NotAPartialOrder(f"self-cover on {lo!r}")
        succs[pos[lo]].add(pos[hi])

    order = _linear_extension(m, succs)
    rank = [0] * m
    for new_i, old_i in enumerate(order):
        rank[old_i] = new_i
    new_labels = tuple(labels[old_i] for old_i in order)
    new_succs: list[set[int]] = [set() for _ in range(m)]
    for lo in range(m):
        for hi in succs[lo]:
            new_succs[rank[lo]].add(rank[hi])

    # reflexive-transitive closure; process in reverse topological order
    up: list[set[int]] = [set() for _ in range(m)]
    for v in range(m - 1, -1, -1):
        up[v].add(v)
        for w in new_succs[v]:
            up[v] |= up[w]
    leq = tuple(tuple(y in up[x] for y in range(m)) for x in range(m))

    meet_rows, join_rows = [], []
    for x in range(m):
        meet_row, join_row = [], []
        for y in range(m):
            ups = [z for z in range(m) if leq[x][z] and leq[y][z]]
            lub = [z for z in ups if all(leq[z][w] for w in ups)]
            if len(lub) != 1:
                raise NotALattice(
                    f"join({new_labels[x]},{new_labels[y]}) undefined"
                )
            lows = [z for z in range(m) if leq[z][x] and leq[z][y]]
            glb = [z for z in lows if all(leq[w][z] for w in lows)]
            if len(glb) != 1:
                raise NotALattice(
                    f"meet({new_labels[x]},{new_labels[y]}) undefined"
                )
            meet_row.append(glb[0])
            join_row.append(lub[0])
        meet_rows.append(tuple(meet_row))
        join_rows.append(tuple(join_row))

    bottom, top = 0, m - 1
    for acc_x in range(m):
        bottom = meet_rows[bottom][acc_x]
        top = join_rows[top][acc_x]
    if not all(leq[bottom][x] and leq[x][top] for x in range(m)):
        raise NotBounded("no unique bottom or top element")

    return Lattice(
        name=name,
        labels=new_labels,
        leq_table=leq,
        meet_table=tuple(meet_rows),
        join_table=tuple(join_rows),
        bottom=bottom,
        top=top,
    )


def chain(n: int) -> Lattice:
    """The n-element chain 0 < 1 < ... < n-1; meet=min, join=max."""
    if n < 2:
        raise InvalidSize(f"chain needs n >= 2, got {n}")
    labels = [str(i) for i in range(n)]
    covers = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    return from_covers(labels, covers, name=f"chain{n}")


def m_lattice(k: int) -> Lattice:
    """M_k: bottom, top and k pairwise-incomparable atoms (size k+2)."""
    if k < 1:
        raise InvalidSize(f"m_lattice needs k >= 1, got {k}")
    atoms = [f"a{i}" for i in range(1, k + 1)]
    labels = ["0", *atoms, "1"]
    covers = [("0", a) for a in atoms] + [(a, "1") for a in atoms]
    return from_covers(labels, covers, name=f"m{k}")


def n5() -> Lattice:
    """The pentagon: 0 < a < b < 1 with c incomparable to both a and b."""
    return from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        name="n5",
    )


def boolean(k: int) -> Lattice:
    """Boolean lattice 2^k, elements labeled as k-bit strings."""
    if k < 1:
        raise InvalidSize(f"boolean needs k >= 1, got {k}")
    labels = [format(s, f"0{k}b") for s in range(1 << k)]
    covers = []
    for s in range(1 << k):
        for bit in range(k):
            if not s & (1 << bit):
                covers.append((labels[s], labels[s | (1 << bit)]))
    return from_covers(labels, covers, name=f"boolean{k}")


def parse_lattice(text: str) -> Lattice:
    """Parse the line-oriented lattice file format."""
    name = None
    labels: list[str] | None = None
    covers: list[tuple[str, str]] = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after 'end'", lineno)
        fields = line.split()
        directive = fields[0]
        if directive == "lattice":
            if name is not None:
                raise ParseError("duplicate 'lattice' directive", lineno)
            if len(fields) != 2:
                raise ParseError("'lattice' takes exactly one name", lineno)
            name = fields[1]
        elif directive == "elements":
            if labels is not None:
                raise ParseError("duplicate 'elements' directive", lineno)
            if len(fields) < 2:
                raise ParseError("'elements' needs at least one label", lineno)
            labels = fields[1:]
        elif directive == "cover":
            if len(fields) != 3:
                raise ParseError("'cover' takes exactly two labels", lineno)
            covers.append((fields[1], fields[2]))
        elif directive == "end":
            ended = True
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno)
    if name is None:
        raise ParseError("missing 'lattice' directive")
    if labels is None:
        raise ParseError("missing 'elements' directive")
    if not ended:
        raise ParseError("missing 'end' directive")
    try:
        return from_covers(labels, covers, name=name)
    except ValueError as exc:
        raise ParseError(str(exc))


def format_lattice(lat: Lattice) -> str:
    """Serialize a lattice to the file format (covers from the Hasse diagram)."""
    lines = [f"lattice {lat.name}", "elements " + " ".join(lat.labels)]
    for x in range(lat.size):
        for y in lat.upper_covers(x):
            lines.append(f"cover {lat.labels[x]} {lat.labels[y]}")
    lines.append("end")
    return "\n".join(lines) + "\n"
