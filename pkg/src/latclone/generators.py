"""Generator families for the idempotent and full aggregation clones.

Four kinds of generators, each identified by a GeneratorSpec:

  chi[a1,...,an;b]  -- n-ary: b meet join(x) below the threshold tuple a,
                       plain join(x) elsewhere.
  iota[a,b,c;d]     -- ternary chi with threshold (a,b,c); the workhorse of
                       the decomposition of idempotent functions.
  mu[a]             -- unary: collapses the interval below a (minus top) to
                       bottom, everything else to top.
  oplus[a]          -- binary: top on (top,top), bottom on (bottom,bottom),
                       the constant a elsewhere.

Specs carry element *labels* so that terms can be printed and re-parsed
without a lattice in hand; every evaluation resolves labels against the
lattice it is given.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import (
    EmptyAgreementSet,
    InvalidSize,
    InvalidSpec,
    NotAggregation,
    NotIdempotent,
    PreconditionViolated,
)
from .functable import (
    FnTable,
    from_callable,
    is_aggregation,
    is_idempotent,
    pointwise_join,
)
from .lattice import Lattice

KINDS = ("chi", "iota", "mu", "oplus")
_FIXED_ARITY = {"iota": 3, "mu": 1, "oplus": 2}


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator instance: kind plus its element-label parameters.

    bound holds the threshold labels (chi: the tuple a; iota: (a,b,c);
    mu/oplus: the single parameter), target the output parameter (chi: b;
    iota: d; mu/oplus: None).
    """

    kind: str
    bound: tuple[str, ...]
    target: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown generator kind {self.kind!r}")
        if self.kind in ("mu", "oplus"):
            if len(self.bound) != 1 or self.target is not None:
                raise InvalidSpec(f"{self.kind} takes exactly one parameter")
        else:
            if self.target is None:
                raise InvalidSpec(f"{self.kind} needs a target parameter")
            if self.kind == "iota" and len(self.bound) != 3:
                raise InvalidSpec("iota takes three threshold parameters")
            if self.kind == "chi" and len(self.bound) < 1:
                raise InvalidSpec("chi needs a nonempty threshold tuple")

    @property
    def arity(self) -> int:
        return _FIXED_ARITY.get(self.kind, len(self.bound))

    def format(self) -> str:
        inner = ",".join(self.bound)
        if self.target is not None:
            inner += ";" + self.target
        return f"{self.kind}[{inner}]"

    def resolve(self, lat: Lattice) -> tuple[tuple[int, ...], int | None]:
        """Map the label parameters to element indices of lat."""
        try:
            bound = tuple(lat.index(lab) for lab in self.bound)
            target = None if self.target is None else lat.index(self.target)
        except KeyError as exc:
            raise InvalidSpec(str(exc))
        return bound, target

    def apply(self, lat: Lattice, args) -> int:
        """Evaluate the generator's defining formula on element indices."""
        if len(args) != self.arity:
            raise InvalidSpec(
                f"{self.format()} takes {self.arity} arguments, got {len(args)}"
            )
        bound, target = self.resolve(lat)
        if self.kind in ("chi", "iota"):
            jx = lat.join_all(args)
            if lat.leq_tuple(args, bound):
                return lat.meet(target, jx)
            return jx
        if self.kind == "mu":
            (a,), (x,) = (bound, args)
            return lat.bottom if lat.leq(x, a) and x != lat.top else lat.top
        # oplus
        (a,) = bound
        x, y = args
        if x == lat.top and y == lat.top:
            return lat.top
        if x == lat.bottom and y == lat.bottom:
            return lat.bottom
        return a

    def table(self, lat: Lattice) -> FnTable:
        return from_callable(
            lat, self.arity, lambda xs: self.apply(lat, xs), name=self.format()
        )


def parse_spec(token: str) -> GeneratorSpec:
    """Parse the textual form, e.g. 'iota[0,1,2;1]' or 'mu[a]'."""
    if not token.endswith("]") or "[" not in token:
        raise InvalidSpec(f"malformed generator spec {token!r}")
    kind, _, inner = token[:-1].partition("[")
    if kind not in KINDS:
        raise InvalidSpec(f"unknown generator kind {kind!r}")
    target = None
    if ";" in inner:
        inner, _, target = inner.rpartition(";")
    bound = tuple(lab for lab in inner.split(",") if lab != "")
    if not bound or (target is not None and target == ""):
        raise InvalidSpec(f"malformed generator spec {token!r}")
    return GeneratorSpec(kind, bound, target)


def chi_spec(lat: Lattice, a, b: int) -> GeneratorSpec:
    return GeneratorSpec(
        "chi", tuple(lat.labels[x] for x in a), lat.labels[b]
    )


def iota_spec(lat: Lattice, a: int, b: int, c: int, d: int) -> GeneratorSpec:
    return GeneratorSpec(
        "iota",
        (lat.labels[a], lat.labels[b], lat.labels[c]),
        lat.labels[d],
    )


def mu_spec(lat: Lattice, a: int) -> GeneratorSpec:
    return GeneratorSpec("mu", (lat.labels[a],))


def oplus_spec(lat: Lattice, a: int) -> GeneratorSpec:
    return GeneratorSpec("oplus", (lat.labels[a],))


def make_chi_unchecked(lat: Lattice, a, b: int) -> FnTable:
    """chi table without the idempotency hypothesis; for negative tests."""
    return chi_spec(lat, tuple(a), b).table(lat)


def make_chi(lat: Lattice, a, b: int) -> FnTable:
    """chi_{a,b}; requires meet(a) <= b, which makes it idempotent."""
    a = tuple(a)
    if not lat.leq(lat.meet_all(a), b):
        raise PreconditionViolated(
            f"meet of threshold tuple is not below {lat.labels[b]}"
        )
    return make_chi_unchecked(lat, a, b)


def make_iota(lat: Lattice, a: int, b: int, c: int, d: int) -> FnTable:
    """Ternary iota_{(a,b,c),d}; requires a <= b <= c and a <= d <= c."""
    if not (lat.leq(a, b) and lat.leq(b, c) and lat.leq(a, d) and lat.leq(d, c)):
        raise PreconditionViolated(
            "iota parameters must satisfy a <= b <= c and a <= d <= c"
        )
    return iota_spec(lat, a, b, c, d).table(lat)


def make_mu(lat: Lattice, a: int) -> FnTable:
    return mu_spec(lat, a).table(lat)


def make_oplus(lat: Lattice, a: int) -> FnTable:
    return oplus_spec(lat, a).table(lat)


def h_majorant(pool, f: FnTable, a) -> FnTable:
    """Join of all pool members agreeing with f at a.

    With pool a composition-closed class containing f, this is the largest
    class member taking the value f(a) at a.
    """
    fa = f(a)
    agreeing = [g for g in pool if g(a) == fa]
    if not agreeing:
        raise EmptyAgreementSet(f"no pool member takes value {fa} at {a}")
    return reduce(pointwise_join, agreeing)


def h_id(f: FnTable, a) -> FnTable:
    """Largest idempotent aggregation function agreeing with f at a.

    Closed form: equals chi_{a, f(a)}; f must be an idempotent aggregation
    function.
    """
    if not (is_idempotent(f) and is_aggregation(f)):
        raise NotIdempotent("h_id needs an idempotent aggregation function")
    return make_chi(f.lattice, a, f(a))


def h_agg(f: FnTable, a) -> FnTable:
    """Largest aggregation function agreeing with f at a (piecewise table)."""
    if not is_aggregation(f):
        raise NotAggregation("h_agg needs an aggregation function")
    lat = f.lattice
    a = tuple(a)
    fa = f(a)
    bottoms = (lat.bottom,) * f.arity

    def cell(xs):
        if xs == bottoms:
            return lat.bottom
        if lat.leq_tuple(xs, a):
            return fa
        return lat.top

    return from_callable(lat, f.arity, cell)


def reduce_iota_pair(lat: Lattice, a: int, b: int, c: int, d: int):
    """Split iota_{(a,b,c),d} into two top-threshold specs.

    On comparable triples x1 <= x2 <= x3,
    iota_{(a,b,c),d}(x1,x2,x3) = iota_{(a,b,1),d}(x1,x2,x3)
                                 join iota_{(a,c,1),d}(x1,x3,x3).
    Returns the two specs; the caller wires the argument pattern.
    """
    if not (lat.leq(a, b) and lat.leq(b, c) and lat.leq(a, d) and lat.leq(d, c)):
        raise PreconditionViolated(
            "iota parameters must satisfy a <= b <= c and a <= d <= c"
        )
    return (
        iota_spec(lat, a, b, lat.top, d),
        iota_spec(lat, a, c, lat.top, d),
    )


def reduced_generator_set(lat: Lattice) -> list[GeneratorSpec]:
    """All iota[a,b,1;d] with a <= b and a <= d, in lexicographic index order."""
    out = []
    for a in range(lat.size):
        for b in range(lat.size):
            if not lat.leq(a, b):
                continue
            for d in range(lat.size):
                if lat.leq(a, d):
                    out.append(iota_spec(lat, a, b, lat.top, d))
    return out


def count_generators_chain(n: int) -> int:
    """|G| for the n-element chain: sum of i^2 for i=1..n, plus the two
    lattice operations."""
    if n < 2:
        raise InvalidSize(f"chain counting needs n >= 2, got {n}")
    return sum(i * i for i in range(1, n + 1)) + 2


def count_generators_m(n: int) -> int:
    """|G| for M_{n-2} (an n-element lattice, n >= 4): n^2 + 4n - 5,
    i.e. n^2 + (n-2)*4 + 1 iota functions plus the two lattice operations."""
    if n < 4:
        raise InvalidSize(f"M-family counting needs n >= 4, got {n}")
    return n * n + 4 * n - 5


def count_iota_chain(n: int) -> int:
    """iota-only count for the n-element chain (excludes meet and join)."""
    return count_generators_chain(n) - 2


def count_iota_m(n: int) -> int:
    """iota-only count for M_{n-2} (excludes meet and join)."""
    return count_generators_m(n) - 2
