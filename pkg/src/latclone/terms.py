"""Expression trees over variables, binary meet/join, and generator nodes.

Grammar (whitespace-insensitive s-expressions):

    term := (meet term term) | (join term term) | (<spec> term...) | x<k>

where <spec> is a generator spec token such as iota[0,1,2;1].  Meets and
joins of more than two operands are built as left-nested binary nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, InvalidSpec, ParseError, TermSyntaxError
from .functable import FnTable, all_tuples
from .generators import GeneratorSpec, parse_spec
from .lattice import Lattice


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ArityMismatch(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Apply(Term):
    spec: GeneratorSpec
    args: tuple[Term, ...]

    def __post_init__(self):
        if len(self.args) != self.spec.arity:
            raise InvalidSpec(
                f"{self.spec.format()} takes {self.spec.arity} arguments, "
                f"got {len(self.args)}"
            )


def meet_of(terms) -> Term:
    """Left-nested meet of one or more terms."""
    terms = list(terms)
    if not terms:
        raise ArityMismatch("meet_of needs at least one operand")
    acc = terms[0]
    for t in terms[1:]:
        acc = Meet(acc, t)
    return acc


def join_of(terms) -> Term:
    """Left-nested join of one or more terms."""
    terms = list(terms)
    if not terms:
        raise ArityMismatch("join_of needs at least one operand")
    acc = terms[0]
    for t in terms[1:]:
        acc = Join(acc, t)
    return acc


def max_var(t: Term) -> int:
    if isinstance(t, Var):
        return t.index
    if isinstance(t, (Meet, Join)):
        return max(max_var(t.left), max_var(t.right))
    return max((max_var(arg) for arg in t.args), default=0)


def evaluate(t: Term, lat: Lattice, xs) -> int:
    """Evaluate the term at the tuple xs of element indices."""
    if isinstance(t, Var):
        if t.index > len(xs):
            raise ArityMismatch(
                f"variable x{t.index} outside the {len(xs)}-tuple"
            )
        return xs[t.index - 1]
    if isinstance(t, Meet):
        return lat.meet(evaluate(t.left, lat, xs), evaluate(t.right, lat, xs))
    if isinstance(t, Join):
        return lat.join(evaluate(t.left, lat, xs), evaluate(t.right, lat, xs))
    args = tuple(evaluate(arg, lat, xs) for arg in t.args)
    return t.spec.apply(lat, args)


def to_table(t: Term, lat: Lattice, n: int) -> FnTable:
    """Tabulate the term as an n-ary function table."""
    if max_var(t) > n:
        raise ArityMismatch(f"term uses x{max_var(t)} but arity is {n}")
    values = tuple(evaluate(t, lat, xs) for xs in all_tuples(lat.size, n))
    return FnTable(lat, n, values)


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Meet):
        return f"(meet {print_term(t.left)} {print_term(t.right)})"
    if isinstance(t, Join):
        return f"(join {print_term(t.left)} {print_term(t.right)})"
    inner = " ".join(print_term(arg) for arg in t.args)
    return f"({t.spec.format()} {inner})"


def _tokenize(s: str):
    tokens = []  # (token, position)
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append((ch, i))
            i += 1
        else:
            j = i
            while j < len(s) and not s[j].isspace() and s[j] not in "()":
                j += 1
            tokens.append((s[i:j], i))
            i = j
    return tokens


def parse_term(s: str, n: int) -> Term:
    """Parse an s-expression into a Term over variables x1..xn."""
    tokens = _tokenize(s)
    pos = 0

    def need(what):
        if pos >= len(tokens):
            raise TermSyntaxError(f"expected {what}, got end of input", len(s))
        return tokens[pos]

    def atom_var(token, at):
        if not token.startswith("x") or not token[1:].isdigit():
            raise TermSyntaxError(f"expected variable or '(', got {token!r}", at)
        k = int(token[1:])
        if not 1 <= k <= n:
            raise TermSyntaxError(f"variable x{k} outside 1..{n}", at)
        return Var(k)

    def term():
        nonlocal pos
        token, at = need("a term")
        if token == ")":
            raise TermSyntaxError("unexpected ')'", at)
        if token != "(":
            pos += 1
            return atom_var(token, at)
        pos += 1
        head, head_at = need("an operator")
        pos += 1
        args = []
        while True:
            token, at = need("')'")
            if token == ")":
                pos += 1
                break
            args.append(term())
        if head in ("meet", "join"):
            if len(args) != 2:
                raise TermSyntaxError(f"'{head}' takes two operands", head_at)
            return (Meet if head == "meet" else Join)(*args)
        try:
            spec = parse_spec(head)
        except InvalidSpec as exc:
            raise TermSyntaxError(str(exc), head_at)
        if len(args) != spec.arity:
            raise TermSyntaxError(
                f"{spec.format()} takes {spec.arity} arguments, got {len(args)}",
                head_at,
            )
        return Apply(spec, tuple(args))

    result = term()
    if pos != len(tokens):
        raise TermSyntaxError("trailing input after term", tokens[pos][1])
    return result


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, (Meet, Join)):
        return 1 + size(t.left) + size(t.right)
    return 1 + sum(size(arg) for arg in t.args)


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, (Meet, Join)):
        return 1 + max(depth(t.left), depth(t.right))
    return 1 + max((depth(arg) for arg in t.args), default=0)


def parse_term_file(text: str) -> tuple[int, str, Term]:
    """Parse 'term arity <n> lattice <name>' header plus one s-expression.

    Returns (arity, lattice name, term).
    """
    lines = text.splitlines()
    header_no = None
    for lineno, raw in enumerate(lines, start=1):
        if raw.strip():
            header_no = lineno
            break
    if header_no is None:
        raise ParseError("empty term file")
    fields = lines[header_no - 1].split()
    if (
        len(fields) != 5
        or fields[0] != "term"
        or fields[1] != "arity"
        or fields[3] != "lattice"
    ):
        raise ParseError("expected 'term arity <n> lattice <name>'", header_no)
    try:
        arity = int(fields[2])
    except ValueError:
        raise ParseError(f"bad arity {fields[2]!r}", header_no)
    if arity < 1:
        raise ParseError(f"arity must be >= 1, got {arity}", header_no)
    body = "\n".join(lines[header_no:])
    return arity, fields[4], parse_term(body, arity)


def format_term_file(t: Term, arity: int, lattice_name: str) -> str:
    return f"term arity {arity} lattice {lattice_name}\n{print_term(t)}\n"
