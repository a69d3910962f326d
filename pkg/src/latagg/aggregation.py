"""Aggregation functions, the chi family and the smallest-clone decision.

An aggregation function is a monotone map ``L^n -> L`` fixing the all-0 and
all-1 tuples.  ``chi_a`` sends every nonzero ``x >= a`` to 1 and everything
else to 0.  A finite lattice has only polynomial aggregation functions iff
every ``chi_a`` with ``a`` join-irreducible is a polynomial, and that holds
iff the lattice has no tolerances besides the identity and the full square.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    ArityBoundExceeded,
    BoundExceeded,
    DegenerateLattice,
    InternalInconsistency,
    MissingWitness,
    NotAggregation,
    NotJoinIrreducible,
    NotSmallest,
    ParseError,
)
from .lattice import Lattice
from .polynomials import (
    TABLE_BOUND,
    Const,
    FunctionTable,
    Join,
    Meet,
    Polynomial,
    Var,
    all_tuples,
    is_monotone_table,
    is_polynomial_function,
    join_all,
    meet_all,
    unary_polynomial_tables,
)
from .relations import Tolerance, close_in_square, has_only_trivial_tolerances

SMALLEST = "smallest"
NOT_SMALLEST = "not-smallest"

ENUMERATION_BOUND = 5
MEMBERSHIP_BOUND = 5
REPRESENT_BOUND = 4096


class AggFunctionTable:
    """A validated aggregation function on ``lattice``."""

    __slots__ = ("lattice", "table")

    def __init__(self, lattice: Lattice, table: FunctionTable):
        if table.arity < 1:
            raise NotAggregation("aggregation functions have arity at least 1")
        if len(table.values) != lattice.n**table.arity:
            raise NotAggregation("table size does not match the lattice")
        self.lattice = lattice
        self.table = table
        lo = self(*(lattice.bottom,) * table.arity)
        hi = self(*(lattice.top,) * table.arity)
        if lo != lattice.bottom or hi != lattice.top:
            raise NotAggregation("boundary conditions f(0,..,0)=0 and f(1,..,1)=1 fail")
        if not is_monotone_table(lattice, table):
            raise NotAggregation("function is not monotone")

    @property
    def arity(self) -> int:
        return self.table.arity

    @property
    def values(self) -> tuple[int, ...]:
        return self.table.values

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.lattice.n + a
        return self.table.values[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AggFunctionTable):
            return NotImplemented
        return self.lattice is other.lattice and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"AggFunctionTable(arity={self.arity}, values={self.values})"


@dataclass
class DecisionReport:
    """Outcome of the smallest-clone decision with its constructive witness."""

    verdict: str
    chi_witnesses: dict[int, Polynomial] = field(default_factory=dict)
    tolerance_witness: Tolerance | None = None

    @property
    def smallest(self) -> bool:
        return self.verdict == SMALLEST


def _require_nontrivial(L: Lattice) -> None:
    if L.n < 2:
        raise DegenerateLattice("the one-element lattice has 0 = 1")


def chi(L: Lattice, a: int) -> AggFunctionTable:
    _require_nontrivial(L)
    values = tuple(
        L.top if (x != L.bottom and L.leq(a, x)) else L.bottom for x in range(L.n)
    )
    return AggFunctionTable(L, FunctionTable(1, values))


def lower_cover(L: Lattice, a: int) -> int:
    covers = L.lower_covers[a]
    if len(covers) != 1:
        raise NotJoinIrreducible(f"{L.names[a]} is not join-irreducible")
    return covers[0]


def synthesize_chi_polynomial(L: Lattice, a: int) -> Polynomial | None:
    """A unary term for ``chi_a``, or None when no polynomial equals it.

    Builds the pairs ``(p(b), p(a))`` over all unary polynomials ``p``, where
    ``b`` is the lower cover of ``a``, as the sublattice of ``L^2`` generated
    by the diagonal and ``(b, a)``.  If ``(0, 1)`` is reached by ``p`` then
    ``p(x ^ a)`` is ``chi_a``: for ``x`` not above ``a``, ``x ^ a <= b``.
    """
    b = lower_cover(L, a)
    gens: dict[tuple[int, int], object] = {(c, c): Const(c) for c in range(L.n)}
    gens[(b, a)] = Var(0)
    reached = close_in_square(L, gens, Join, Meet)
    p = reached.get((L.bottom, L.top))
    if p is None:
        return None
    return Polynomial(p, 1).substitute({0: Meet(Var(0), Const(a))})


def chi_for_any_element(L: Lattice, c: int, chi_irr: dict[int, Polynomial]) -> Polynomial:
    """Term for ``chi_c`` assembled from the join-irreducible witnesses."""
    _require_nontrivial(L)
    if c == L.bottom:
        parts = L.atoms()
        combine = join_all
    else:
        parts = [a for a in L.join_irreducibles() if L.leq(a, c)]
        combine = meet_all
    missing = [L.names[a] for a in parts if a not in chi_irr]
    if missing:
        raise MissingWitness("no chi witness for " + " ".join(missing))
    if len(parts) == 1:
        return chi_irr[parts[0]]
    return Polynomial(combine([chi_irr[a].root for a in parts]), 1)


def decide_smallest_agg(L: Lattice) -> DecisionReport:
    """Decide whether every aggregation function on ``L`` is a polynomial.

    Both the tolerance test and chi synthesis run; they must agree, and a
    disagreement raises ``InternalInconsistency``.
    """
    _require_nontrivial(L)
    trivial, witness = has_only_trivial_tolerances(L)
    witnesses = {}
    failed = []
    for a in L.join_irreducibles():
        term = synthesize_chi_polynomial(L, a)
        if term is None:
            failed.append(a)
        else:
            witnesses[a] = term
    if trivial == bool(failed):
        raise InternalInconsistency(
            f"tolerance test says {'trivial' if trivial else 'nontrivial'} but chi synthesis "
            f"failed for {[L.names[a] for a in failed]}"
        )
    if trivial:
        return DecisionReport(SMALLEST, chi_witnesses=witnesses)
    return DecisionReport(NOT_SMALLEST, tolerance_witness=witness)


def represent_aggregation(
    L: Lattice, f: AggFunctionTable, report: DecisionReport, bound: int = REPRESENT_BOUND
) -> Polynomial:
    """Polynomial equal to ``f``: the join over nonzero tuples ``a`` of
    ``f(a) ^ meet(chi_{a_i}(x_i) for nonzero a_i)``."""
    if not report.smallest:
        raise NotSmallest("the lattice has aggregation functions that are not polynomials")
    n = f.arity
    if L.n**n > bound:
        raise ArityBoundExceeded(f"{L.n}^{n} tuples exceed bound {bound}")
    unary: dict[int, Polynomial] = {}
    per_var: dict[tuple[int, int], object] = {}

    def chi_term(c: int, i: int):
        if (c, i) not in per_var:
            if c not in unary:
                unary[c] = chi_for_any_element(L, c, report.chi_witnesses)
            per_var[(c, i)] = unary[c].substitute({0: Var(i)}, arity=n).root
        return per_var[(c, i)]

    zero = (L.bottom,) * n
    parts = []
    for idx, tup in enumerate(all_tuples(L.n, n)):
        if tup == zero:
            continue
        chis = [chi_term(c, i) for i, c in enumerate(tup) if c != L.bottom]
        parts.append(Meet(Const(f.values[idx]), meet_all(chis)))
    return Polynomial(join_all(parts), n)


def is_aggregation_polynomial(L: Lattice, f: AggFunctionTable, bound: int = MEMBERSHIP_BOUND) -> bool:
    if f.arity > 2 or L.n > bound:
        raise BoundExceeded(f"membership test is limited to arity 2 and {bound} elements")
    if f.arity == 1:
        return f.table in unary_polynomial_tables(L)
    return is_polynomial_function(L, f.table)


def enumerate_unary_aggregations(L: Lattice, bound: int = ENUMERATION_BOUND) -> Iterator[AggFunctionTable]:
    """All unary aggregation functions, lexicographic along a linear extension."""
    _require_nontrivial(L)
    if L.n > bound:
        raise BoundExceeded(f"enumeration is limited to {bound} elements, got {L.n}")
    order = L.linear_extension()
    values = [0] * L.n

    def extend(k):
        if k == len(order):
            yield AggFunctionTable(L, FunctionTable(1, tuple(values)))
            return
        x = order[k]
        if x == L.bottom:
            choices = [L.bottom]
        elif x == L.top:
            choices = [L.top]
        else:
            floor = L.join_all(values[y] for y in L.lower_covers[x])
            choices = [v for v in range(L.n) if L.leq(floor, v)]
        for v in choices:
            values[x] = v
            yield from extend(k + 1)

    yield from extend(0)


def random_aggregation(L: Lattice, arity: int, rng_seed: int, bound: int = TABLE_BOUND) -> AggFunctionTable:
    """Seeded random aggregation function.

    Tuples are visited in order of total height; each value is drawn uniformly
    from the elements above the join of the values at its lower covers.
    """
    _require_nontrivial(L)
    size = L.n**arity
    if size > bound:
        raise BoundExceeded(f"{size} tuples exceed bound {bound}")
    rng = random.Random(rng_seed)
    height = L.heights()
    tuples = list(all_tuples(L.n, arity))
    strides = [L.n ** (arity - 1 - i) for i in range(arity)]
    values = [L.bottom] * size
    visit = sorted(range(size), key=lambda idx: (sum(height[x] for x in tuples[idx]), idx))
    zero = (L.bottom,) * arity
    one = (L.top,) * arity
    for idx in visit:
        tup = tuples[idx]
        if tup == zero:
            values[idx] = L.bottom
            continue
        if tup == one:
            values[idx] = L.top
            continue
        floor = L.bottom
        for pos, x in enumerate(tup):
            for y in L.lower_covers[x]:
                floor = L.join(floor, values[idx + (y - x) * strides[pos]])
        choices = [v for v in range(L.n) if L.leq(floor, v)]
        values[idx] = rng.choice(choices)
    return AggFunctionTable(L, FunctionTable(arity, tuple(values)))


# .fun text format


def parse_fun(text: str, L: Lattice) -> FunctionTable:
    arity = None
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if arity is None:
            if words[0] != "arity" or len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'arity <n>' with n >= 1", lineno)
            arity = int(words[1])
            continue
        if words[0] != "map" or len(words) != arity + 3 or words[-2] != "->":
            raise ParseError(f"expected 'map <x1> .. <x{arity}> -> <y>'", lineno)
        try:
            args = tuple(L.index(w) for w in words[1 : 1 + arity])
            value = L.index(words[-1])
        except Exception as exc:
            raise ParseError(str(exc), lineno) from None
        if args in seen:
            raise ParseError("tuple mapped twice", lineno)
        seen[args] = value
    if arity is None:
        raise ParseError("missing 'arity' line")
    expected = list(all_tuples(L.n, arity))
    if len(seen) != len(expected):
        raise ParseError(f"expected {len(expected)} map lines, got {len(seen)}")
    return FunctionTable(arity, tuple(seen[t] for t in expected))


def format_fun(L: Lattice, f: FunctionTable | AggFunctionTable) -> str:
    table = f.table if isinstance(f, AggFunctionTable) else f
    lines = [f"arity {table.arity}"]
    for tup, value in zip(all_tuples(L.n, table.arity), table.values):
        args = " ".join(L.names[x] for x in tup)
        lines.append(f"map {args} -> {L.names[value]}")
    return "\n".join(lines) + "\n"
