"""Lattice polynomial terms and their function tables.

Terms are small immutable trees over variables, constants, join and meet.
Subterms are freely shared, so a term is really a DAG; table computation
memoizes per node and stays linear in the number of distinct nodes.

Functions are always compared by their tables, never by syntax.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import ArityMismatch, BoundExceeded, ParseError, UnknownElement
from .lattice import Lattice

UNARY_BOUND = 8
BINARY_BOUND = 5
TABLE_BOUND = 100_000
CLOSURE_CAP = 20_000


@dataclass(frozen=True, eq=False)
class Var:
    index: int


@dataclass(frozen=True, eq=False)
class Const:
    value: int


@dataclass(frozen=True, eq=False)
class Join:
    left: "Node"
    right: "Node"


@dataclass(frozen=True, eq=False)
class Meet:
    left: "Node"
    right: "Node"


Node = Union[Var, Const, Join, Meet]


@dataclass(frozen=True)
class FunctionTable:
    """Values of an ``arity``-ary function, tuples in lexicographic order."""

    arity: int
    values: tuple[int, ...]

    def __call__(self, *args: int) -> int:
        n = round(len(self.values) ** (1 / self.arity))
        idx = 0
        for a in args:
            idx = idx * n + a
        return self.values[idx]

    def __len__(self) -> int:
        return len(self.values)


def all_tuples(n: int, arity: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(n), repeat=arity)


class Polynomial:
    """A term together with its declared number of variables."""

    __slots__ = ("root", "arity")

    def __init__(self, root: Node, arity: int):
        self.root = root
        self.arity = arity
        for node in _nodes(root):
            if isinstance(node, Var) and not 0 <= node.index < arity:
                raise ArityMismatch(f"variable x{node.index} exceeds arity {arity}")

    def __repr__(self) -> str:
        return f"Polynomial({_plain(self.root)!r}, arity={self.arity})"

    def size(self) -> int:
        """Number of nodes in the fully expanded tree."""
        memo: dict[int, int] = {}

        def count(node):
            key = id(node)
            if key not in memo:
                if isinstance(node, (Join, Meet)):
                    memo[key] = 1 + count(node.left) + count(node.right)
                else:
                    memo[key] = 1
            return memo[key]

        return count(self.root)

    def substitute(self, mapping: dict[int, Node], arity: int | None = None) -> "Polynomial":
        """Replace variables by terms; unmapped variables stay as they are."""
        memo: dict[int, Node] = {}

        def sub(node):
            key = id(node)
            if key in memo:
                return memo[key]
            if isinstance(node, Var):
                out = mapping.get(node.index, node)
            elif isinstance(node, Const):
                out = node
            else:
                out = type(node)(sub(node.left), sub(node.right))
            memo[key] = out
            return out

        return Polynomial(sub(self.root), self.arity if arity is None else arity)


def _nodes(root: Node) -> Iterator[Node]:
    seen = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        if isinstance(node, (Join, Meet)):
            stack.append(node.left)
            stack.append(node.right)


def _plain(node: Node) -> str:
    return format_term(node, None)


# construction helpers


def variable(i: int = 0) -> Var:
    return Var(i)


def join_all(nodes: Sequence[Node]) -> Node:
    acc = nodes[0]
    for node in nodes[1:]:
        acc = Join(acc, node)
    return acc


def meet_all(nodes: Sequence[Node]) -> Node:
    acc = nodes[0]
    for node in nodes[1:]:
        acc = Meet(acc, node)
    return acc


# evaluation


def evaluate(L: Lattice, t: Polynomial, args: Sequence[int]) -> int:
    if len(args) != t.arity:
        raise ArityMismatch(f"expected {t.arity} arguments, got {len(args)}")
    join, meet = L.join_table, L.meet_table
    memo: dict[int, int] = {}

    def ev(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = args[node.index]
        elif isinstance(node, Const):
            out = node.value
        elif isinstance(node, Join):
            out = join[ev(node.left)][ev(node.right)]
        else:
            out = meet[ev(node.left)][ev(node.right)]
        memo[key] = out
        return out

    return ev(t.root)


def to_table(L: Lattice, t: Polynomial, bound: int = TABLE_BOUND) -> FunctionTable:
    """Evaluate ``t`` on every tuple, all nodes at once."""
    size = L.n ** t.arity
    if size > bound:
        raise BoundExceeded(f"table of {size} entries exceeds bound {bound}")
    tuples = list(all_tuples(L.n, t.arity))
    join, meet = L.join_table, L.meet_table
    memo: dict[int, tuple[int, ...]] = {}
    # post-order walk without recursion, terms can be deep
    stack = [(t.root, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, Var):
            memo[key] = tuple(tup[node.index] for tup in tuples)
        elif isinstance(node, Const):
            memo[key] = (node.value,) * size
        elif not expanded:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            left, right = memo[id(node.left)], memo[id(node.right)]
            op = join if isinstance(node, Join) else meet
            memo[key] = tuple(op[a][b] for a, b in zip(left, right))
    return FunctionTable(t.arity, memo[id(t.root)])


def is_01_preserving(L: Lattice, t: Polynomial) -> bool:
    return (
        evaluate(L, t, (L.bottom,) * t.arity) == L.bottom
        and evaluate(L, t, (L.top,) * t.arity) == L.top
    )


def is_monotone_table(L: Lattice, f: FunctionTable) -> bool:
    """Check monotonicity along single-coordinate cover steps."""
    n = L.n
    for idx, tup in enumerate(all_tuples(n, f.arity)):
        value = f.values[idx]
        stride = 1
        for pos in range(f.arity - 1, -1, -1):
            x = tup[pos]
            for y in L.upper_covers[x]:
                other = idx + (y - x) * stride
                if not L.leq(value, f.values[other]):
                    return False
            stride *= n
    return True


# closures


def _closure(L: Lattice, seeds: list[tuple[tuple[int, ...], Node]], arity: int, cap: int):
    join, meet = L.join_table, L.meet_table
    found: dict[tuple[int, ...], Node] = {}
    for values, node in seeds:
        found.setdefault(values, node)
    members = list(found)
    i = 0
    while i < len(members):
        f = members[i]
        tf = found[f]
        for j in range(i + 1):
            g = members[j]
            h = tuple(join[a][b] for a, b in zip(f, g))
            if h not in found:
                found[h] = Join(tf, found[g])
                members.append(h)
            h = tuple(meet[a][b] for a, b in zip(f, g))
            if h not in found:
                found[h] = Meet(tf, found[g])
                members.append(h)
        if len(members) > cap:
            raise BoundExceeded(f"closure reached more than {cap} functions")
        i += 1
    return {FunctionTable(arity, values): Polynomial(node, arity) for values, node in found.items()}


def polynomial_tables(L: Lattice, arity: int, cap: int = CLOSURE_CAP) -> dict[FunctionTable, Polynomial]:
    """All polynomial functions of the given arity, each with a witness term.

    The witness is the term reached first in the deterministic worklist.
    """
    tuples = list(all_tuples(L.n, arity))
    seeds = [(tuple(tup[i] for tup in tuples), Var(i)) for i in range(arity)]
    seeds += [((c,) * len(tuples), Const(c)) for c in range(L.n)]
    return _closure(L, seeds, arity, cap)


def unary_polynomial_tables(L: Lattice, bound: int = UNARY_BOUND) -> dict[FunctionTable, Polynomial]:
    if L.n > bound:
        raise BoundExceeded(f"unary closure is limited to {bound} elements, got {L.n}")
    return polynomial_tables(L, 1)


def binary_polynomial_tables(
    L: Lattice, bound: int = BINARY_BOUND, cap: int = CLOSURE_CAP
) -> dict[FunctionTable, Polynomial]:
    """All binary polynomial functions.

    The reachable set can be huge even for five elements (on M_3 every
    boundary-preserving monotone map is in it), hence the hard ``cap``.
    """
    if L.n > bound:
        raise BoundExceeded(f"binary closure is limited to {bound} elements, got {L.n}")
    return polynomial_tables(L, 2, cap)


def is_polynomial_function(L: Lattice, f: FunctionTable, bound: int = TABLE_BOUND) -> bool:
    """Decide membership of ``f`` in the polynomial functions without the closure.

    Lattices have a majority term, so a function belongs to the sublattice of
    ``L^(L^k)`` generated by projections and constants iff each of its
    restrictions to two argument tuples lies in the sublattice of ``L^2``
    generated by the corresponding restrictions of the generators.
    """
    from .relations import close_in_square

    size = len(f.values)
    if size > bound:
        raise BoundExceeded(f"table of {size} entries exceeds bound {bound}")
    tuples = list(all_tuples(L.n, f.arity))
    diagonal = [(c, c) for c in range(L.n)]
    cache: dict[frozenset, set] = {}
    for i, u in enumerate(tuples):
        for j in range(i, len(tuples)):
            v = tuples[j]
            gens = frozenset(zip(u, v))
            if gens not in cache:
                cache[gens] = set(close_in_square(L, diagonal + sorted(gens)))
            if (f.values[i], f.values[j]) not in cache[gens]:
                return False
    return True


# text format

_TOKEN = re.compile(r"\s*(\(|\)|\^|[^\s()^]+)")


def format_term(t: Polynomial | Node, L: Lattice | None) -> str:
    """Fully parenthesized infix; ``v`` is join and ``^`` is meet."""
    root = t.root if isinstance(t, Polynomial) else t
    cache: dict[int, str] = {}
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in cache:
            continue
        if isinstance(node, Var):
            cache[key] = f"x{node.index}"
        elif isinstance(node, Const):
            cache[key] = L.names[node.value] if L is not None else f"#{node.value}"
        elif not expanded:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            op = "v" if isinstance(node, Join) else "^"
            cache[key] = f"{_wrap(node.left, cache)} {op} {_wrap(node.right, cache)}"
    return cache[id(root)]


def _wrap(node: Node, cache: dict[int, str]) -> str:
    text = cache[id(node)]
    return f"({text})" if isinstance(node, (Join, Meet)) else text


class _Parser:
    def __init__(self, text: str, L: Lattice):
        self.L = L
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"cannot tokenize term at position {pos}")
            self.tokens.append(m.group(1))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.pos = 0
        self.max_var = -1

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of term")
        self.pos += 1
        return tok

    def expr(self) -> Node:
        node = self.atom()
        op = None
        while self.peek() in ("v", "^"):
            tok = self.take()
            if op is not None and tok != op:
                raise ParseError("mixing 'v' and '^' needs parentheses")
            op = tok
            rhs = self.atom()
            node = Join(node, rhs) if tok == "v" else Meet(node, rhs)
        return node

    def atom(self) -> Node:
        tok = self.take()
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return node
        if tok in (")", "v", "^"):
            raise ParseError(f"unexpected {tok!r}")
        if re.fullmatch(r"x\d+", tok):
            i = int(tok[1:])
            self.max_var = max(self.max_var, i)
            return Var(i)
        try:
            return Const(self.L.index(tok))
        except UnknownElement:
            raise ParseError(f"unknown element {tok!r} in term") from None


def parse_term(text: str, L: Lattice, arity: int | None = None) -> Polynomial:
    """Parse the infix term syntax; arity defaults to the highest variable + 1."""
    p = _Parser(text, L)
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    if arity is None:
        arity = max(p.max_var + 1, 1)
    return Polynomial(node, arity)
