"""Binary relations on a lattice: tolerances, congruences and their closures.

A relation is stored as one bitmask per row: bit ``y`` of ``rows[x]`` is set
iff ``(x, y)`` is in the relation.  All closures are deterministic FIFO
worklists seeded in index order, so witnesses print identically across runs.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, TypeVar

from .errors import BoundExceeded, DegenerateLattice, NotATolerance
from .lattice import Lattice, _bits

Pair = tuple[int, int]
W = TypeVar("W")

DEFAULT_TOLERANCE_BOUND = 10


class BinaryRelation:
    """A set of pairs over the elements of a lattice."""

    __slots__ = ("lattice", "rows")

    def __init__(self, lattice: Lattice, rows: Iterable[int]):
        self.lattice = lattice
        self.rows = tuple(rows)

    @classmethod
    def from_pairs(cls, lattice: Lattice, pairs: Iterable[Pair]):
        rows = [0] * lattice.n
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(lattice, rows)

    @classmethod
    def identity(cls, lattice: Lattice):
        return cls(lattice, (1 << x for x in range(lattice.n)))

    @classmethod
    def full(cls, lattice: Lattice):
        everything = (1 << lattice.n) - 1
        return cls(lattice, (everything,) * lattice.n)

    def __contains__(self, pair: Pair) -> bool:
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def __iter__(self):
        for x, row in enumerate(self.rows):
            for y in _bits(row):
                yield (x, y)

    def __len__(self) -> int:
        return sum(bin(row).count("1") for row in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryRelation):
            return NotImplemented
        return self.lattice is other.lattice and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __le__(self, other: "BinaryRelation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __or__(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation(self.lattice, (a | b for a, b in zip(self.rows, other.rows)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({sorted(self)!r})"

    def pairs(self) -> list[Pair]:
        return list(self)

    def is_identity(self) -> bool:
        return self.rows == BinaryRelation.identity(self.lattice).rows

    def is_full(self) -> bool:
        return self.rows == BinaryRelation.full(self.lattice).rows

    def inverse(self) -> "BinaryRelation":
        return relation_inverse(self)

    def blocks(self) -> list[list[int]]:
        """Equivalence classes, assuming the relation is an equivalence."""
        seen = 0
        out = []
        for x in range(self.lattice.n):
            if not seen >> x & 1:
                out.append(list(_bits(self.rows[x])))
                seen |= self.rows[x]
        return out


class Tolerance(BinaryRelation):
    """Reflexive, symmetric relation compatible with join and meet."""

    __slots__ = ()

    @classmethod
    def checked(cls, relation: BinaryRelation) -> "Tolerance":
        if not is_tolerance(relation.lattice, relation):
            raise NotATolerance("relation is not a tolerance")
        return cls(relation.lattice, relation.rows)


class Congruence(Tolerance):
    """A transitive tolerance."""

    __slots__ = ()

    @classmethod
    def checked(cls, relation: BinaryRelation) -> "Congruence":
        if not is_congruence(relation.lattice, relation):
            raise NotATolerance("relation is not a congruence")
        return cls(relation.lattice, relation.rows)


# predicates


def is_reflexive(R: BinaryRelation) -> bool:
    return all(row >> x & 1 for x, row in enumerate(R.rows))


def is_symmetric(R: BinaryRelation) -> bool:
    return R.rows == relation_inverse(R).rows


def is_transitive(R: BinaryRelation) -> bool:
    return compose(R, R) <= R


def is_compatible(L: Lattice, R: BinaryRelation) -> bool:
    pairs = R.pairs()
    join, meet = L.join_table, L.meet_table
    rows = R.rows
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i:]:
            if not rows[join[a][c]] >> join[b][d] & 1:
                return False
            if not rows[meet[a][c]] >> meet[b][d] & 1:
                return False
    return True


def is_tolerance(L: Lattice, R: BinaryRelation) -> bool:
    return is_reflexive(R) and is_symmetric(R) and is_compatible(L, R)


def is_congruence(L: Lattice, R: BinaryRelation) -> bool:
    return is_tolerance(L, R) and is_transitive(R)


# relational algebra


def compose(B: BinaryRelation, C: BinaryRelation) -> BinaryRelation:
    """``{(x, z) : (x, y) in B and (y, z) in C for some y}``."""
    rows = []
    for row in B.rows:
        acc = 0
        for y in _bits(row):
            acc |= C.rows[y]
        rows.append(acc)
    return BinaryRelation(B.lattice, rows)


def relation_inverse(B: BinaryRelation) -> BinaryRelation:
    rows = [0] * B.lattice.n
    for x, y in B:
        rows[y] |= 1 << x
    return BinaryRelation(B.lattice, rows)


def transitive_closure_rows(rows: Iterable[int]) -> tuple[int, ...]:
    rows = list(rows)
    for k in range(len(rows)):
        bit = 1 << k
        rk = rows[k]
        for x in range(len(rows)):
            if rows[x] & bit:
                rows[x] |= rk
    return tuple(rows)


# closures


def close_in_square(
    L: Lattice,
    generators: Mapping[Pair, W] | Iterable[Pair],
    join_witness: Callable[[W, W], W] | None = None,
    meet_witness: Callable[[W, W], W] | None = None,
) -> dict[Pair, W | None]:
    """Sublattice of ``L x L`` generated by ``generators``.

    With a mapping and witness callbacks, every produced pair carries the
    witness built from the first derivation that reached it.  Each newly
    reached pair is combined with every pair reached before it, so the loop
    visits each unordered combination exactly once.
    """
    if isinstance(generators, Mapping):
        found: dict[Pair, W | None] = dict(generators)
    else:
        found = dict.fromkeys(generators)
    track = join_witness is not None
    join, meet = L.join_table, L.meet_table
    members = list(found)
    i = 0
    while i < len(members):
        p = members[i]
        wp = found[p]
        for j in range(i + 1):
            q = members[j]
            wq = found[q]
            jp = (join[p[0]][q[0]], join[p[1]][q[1]])
            if jp not in found:
                found[jp] = join_witness(wp, wq) if track else None
                members.append(jp)
            mp = (meet[p[0]][q[0]], meet[p[1]][q[1]])
            if mp not in found:
                found[mp] = meet_witness(wp, wq) if track else None
                members.append(mp)
        i += 1
    return found


def _diagonal(L: Lattice) -> list[Pair]:
    return [(x, x) for x in range(L.n)]


def tolerance_generated_by(L: Lattice, seed: Iterable[Pair]) -> Tolerance:
    """Least tolerance containing ``seed``."""
    gens = _diagonal(L)
    for x, y in sorted(set(seed)):
        gens.append((x, y))
        gens.append((y, x))
    closed = close_in_square(L, dict.fromkeys(gens))
    return Tolerance.from_pairs(L, closed)


def _tolerance_closure_of(R: BinaryRelation) -> Tolerance:
    return tolerance_generated_by(R.lattice, R)


def transitive_closure(T: BinaryRelation) -> Congruence:
    """Least congruence containing the tolerance ``T``."""
    # the transitive closure of a tolerance is already compatible
    return Congruence(T.lattice, transitive_closure_rows(T.rows))


def congruence_generated_by(L: Lattice, seed: Iterable[Pair]) -> Congruence:
    current = tolerance_generated_by(L, seed)
    while True:
        closed = transitive_closure_rows(current.rows)
        if closed == current.rows:
            return Congruence(L, closed)
        current = _tolerance_closure_of(BinaryRelation(L, closed))


def _require_nontrivial(L: Lattice) -> None:
    if L.n < 2:
        raise DegenerateLattice("the one-element lattice has 0 = 1")


def is_simple(L: Lattice) -> bool:
    _require_nontrivial(L)
    return all(congruence_generated_by(L, [c]).is_full() for c in L.cover_pairs())


def has_only_trivial_tolerances(L: Lattice) -> tuple[bool, Tolerance | None]:
    """Whether ``Tol(L) = {id, L^2}``.

    Any tolerance other than the identity contains a pair ``a < b`` and so
    the square of the interval ``[a, b]``, hence a cover pair; testing the
    tolerances generated by single cover pairs is therefore enough.  On
    failure the first nontrivial generated tolerance is returned as witness.
    """
    _require_nontrivial(L)
    for cover in L.cover_pairs():
        T = tolerance_generated_by(L, [cover])
        if not T.is_full():
            return False, T
    return True, None


def join_tolerances(T1: BinaryRelation, T2: BinaryRelation) -> Tolerance:
    return _tolerance_closure_of(T1 | T2)


def all_tolerances(L: Lattice, bound: int = DEFAULT_TOLERANCE_BOUND) -> list[Tolerance]:
    """Every tolerance of ``L``, smallest generating pair first.

    Each tolerance is the join of the single-pair tolerances it contains, so
    closing the pair-generated tolerances under joins reaches all of them.
    """
    if L.n > bound:
        raise BoundExceeded(f"tolerance enumeration is limited to {bound} elements, got {L.n}")
    found = {BinaryRelation.identity(L).rows: Tolerance.identity(L)}
    for a in range(L.n):
        for b in range(L.n):
            if a != b and L.leq(a, b):
                T = tolerance_generated_by(L, [(a, b)])
                found.setdefault(T.rows, T)
    members = list(found.values())
    i = 0
    while i < len(members):
        for j in range(i):
            T = join_tolerances(members[i], members[j])
            if T.rows not in found:
                found[T.rows] = T
                members.append(T)
        i += 1
    return members


def format_tolerance(T: BinaryRelation) -> str:
    """One ``~ x y`` line per unordered off-diagonal pair, by index."""
    names = T.lattice.names
    lines = [f"~ {names[x]} {names[y]}" for x, y in sorted(T) if x < y]
    return "\n".join(lines) + ("\n" if lines else "")
