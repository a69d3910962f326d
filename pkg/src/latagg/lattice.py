"""Finite bounded lattices built from a cover relation.

Elements are the dense indices ``0..n-1`` in the order the names were given;
names only matter for input and output.  Everything is validated once at
construction, so the query methods are plain table lookups.
"""

from __future__ import annotations

import heapq
import re
from collections import deque
from typing import Iterable, Sequence

from .errors import (
    CycleError,
    InputError,
    NotALattice,
    NotBounded,
    NotComparable,
    ParseError,
    RedundantCover,
    UnknownElement,
)

_RESERVED_NAME = re.compile(r"^x\d+$")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """An immutable finite bounded lattice.

    Attributes:
        names: element names, index ``i`` is element ``i``.
        covers: cover pairs ``(lo, hi)`` as indices, in input order.
        leq_matrix: ``leq_matrix[x][y]`` is True iff ``x <= y``.
        join_table, meet_table: ``n x n`` tuples of element indices.
        bottom, top: element indices.
    """

    def __init__(self, names: Sequence[str], covers: Iterable[tuple[int, int]]):
        names = tuple(str(name) for name in names)
        if not names:
            raise InputError("a lattice needs at least one element")
        if len(set(names)) != len(names):
            dup = sorted({x for x in names if names.count(x) > 1})
            raise InputError(f"duplicate element names: {' '.join(dup)}")
        n = len(names)
        covers = tuple((int(lo), int(hi)) for lo, hi in covers)
        for lo, hi in covers:
            if not (0 <= lo < n and 0 <= hi < n):
                raise UnknownElement(f"cover ({lo}, {hi}) references an unknown index")
        self.names = names
        self.n = n
        self.covers = covers
        self._index = {name: i for i, name in enumerate(names)}

        upper = [[] for _ in range(n)]
        lower = [[] for _ in range(n)]
        for lo, hi in covers:
            if lo == hi:
                raise CycleError(f"element {names[lo]} covers itself")
            upper[lo].append(hi)
            lower[hi].append(lo)
        if len(set(covers)) != len(covers):
            raise RedundantCover("a cover pair is declared twice")
        self.upper_covers = tuple(tuple(sorted(u)) for u in upper)
        self.lower_covers = tuple(tuple(sorted(d)) for d in lower)

        order = self._topological_order()
        up = [0] * n
        for x in reversed(order):
            mask = 1 << x
            for y in upper[x]:
                mask |= up[y]
            up[x] = mask
        down = [0] * n
        for x in range(n):
            for y in _bits(up[x]):
                down[y] |= 1 << x
        self._up = tuple(up)
        self._down = tuple(down)

        for lo, hi in covers:
            for mid in upper[lo]:
                if mid != hi and up[mid] >> hi & 1:
                    raise RedundantCover(
                        f"cover {names[lo]} < {names[hi]} is implied via {names[mid]}"
                    )

        minimal = [x for x in range(n) if not lower[x]]
        maximal = [x for x in range(n) if not upper[x]]
        if len(minimal) != 1:
            raise NotBounded(
                "expected a unique minimum, found " + " ".join(names[x] for x in minimal)
            )
        if len(maximal) != 1:
            raise NotBounded(
                "expected a unique maximum, found " + " ".join(names[x] for x in maximal)
            )
        self.bottom = minimal[0]
        self.top = maximal[0]

        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                j = self._extremal(up[x] & up[y], self._up)
                m = self._extremal(down[x] & down[y], self._down)
                if j is None:
                    raise NotALattice(f"{names[x]} and {names[y]} have no least upper bound")
                if m is None:
                    raise NotALattice(f"{names[x]} and {names[y]} have no greatest lower bound")
                join[x][y] = join[y][x] = j
                meet[x][y] = meet[y][x] = m
        self.join_table = tuple(tuple(row) for row in join)
        self.meet_table = tuple(tuple(row) for row in meet)
        self.leq_matrix = tuple(
            tuple(bool(up[x] >> y & 1) for y in range(n)) for x in range(n)
        )

    def _topological_order(self) -> list[int]:
        indegree = [len(d) for d in self.lower_covers]
        queue = deque(x for x in range(self.n) if indegree[x] == 0)
        order = []
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in self.upper_covers[x]:
                indegree[y] -= 1
                if indegree[y] == 0:
                    queue.append(y)
        if len(order) != self.n:
            stuck = [self.names[x] for x in range(self.n) if indegree[x] > 0]
            raise CycleError("covers contain a cycle through " + " ".join(stuck))
        return order

    @staticmethod
    def _extremal(candidates: int, cones: tuple[int, ...]):
        # the least (greatest) bound is the candidate whose cone holds all others
        for c in _bits(candidates):
            if candidates & ~cones[c] == 0:
                return c
        return None

    @classmethod
    def from_covers(cls, names: Sequence[str], covers: Iterable[tuple[str, str]]) -> "Lattice":
        """Build a lattice from names and ``(lo, hi)`` cover pairs given by name."""
        index = {str(name): i for i, name in enumerate(names)}
        pairs = []
        for lo, hi in covers:
            try:
                pairs.append((index[str(lo)], index[str(hi)]))
            except KeyError as exc:
                raise UnknownElement(f"cover references undeclared element {exc.args[0]}") from None
        return cls(names, pairs)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, names={list(self.names)})"

    # lookups

    def index(self, name: str) -> int:
        try:
            return self._index[str(name)]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    @property
    def elements(self) -> range:
        return range(self.n)

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.leq_matrix[x][y]

    def up_mask(self, x: int) -> int:
        """Bitmask of the principal filter of ``x``."""
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join_table[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet_table[acc][x]
        return acc

    # derived sets

    def join_irreducibles(self) -> list[int]:
        return [x for x in range(self.n) if len(self.lower_covers[x]) == 1]

    def atoms(self) -> list[int]:
        return list(self.upper_covers[self.bottom]) if self.n > 1 else []

    def coatoms(self) -> list[int]:
        return list(self.lower_covers[self.top]) if self.n > 1 else []

    def interval(self, x: int, y: int) -> list[int]:
        if not self.leq(x, y):
            raise NotComparable(f"{self.names[x]} is not below {self.names[y]}")
        return list(_bits(self._up[x] & self._down[y]))

    def principal_filter(self, a: int) -> list[int]:
        return list(_bits(self._up[a]))

    def cover_pairs(self) -> list[tuple[int, int]]:
        """All cover pairs sorted by index."""
        return sorted(self.covers)

    def linear_extension(self) -> list[int]:
        """Topological order preferring the smallest available index."""
        indegree = [len(d) for d in self.lower_covers]
        heap = [x for x in range(self.n) if indegree[x] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            x = heapq.heappop(heap)
            order.append(x)
            for y in self.upper_covers[x]:
                indegree[y] -= 1
                if indegree[y] == 0:
                    heapq.heappush(heap, y)
        return order

    def heights(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for x in self.linear_extension():
            for y in self.upper_covers[x]:
                h[y] = max(h[y], h[x] + 1)
        return h


def from_covers(names: Sequence[str], covers: Iterable[tuple[str, str]]) -> Lattice:
    return Lattice.from_covers(names, covers)


# text formats


def _check_name(name: str, line: int) -> None:
    if name == "v" or _RESERVED_NAME.match(name) or any(ch in name for ch in "()^#"):
        raise ParseError(f"element name {name!r} clashes with the term syntax", line)


def parse_lat(text: str) -> Lattice:
    """Parse the ``.lat`` format: an ``elements`` line then ``cover x y`` lines."""
    names = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if names is None:
            if words[0] != "elements" or len(words) < 2:
                raise ParseError("expected 'elements <t1> <t2> ...'", lineno)
            names = words[1:]
            for name in names:
                _check_name(name, lineno)
            if len(set(names)) != len(names):
                raise ParseError("element names must be distinct", lineno)
            known = set(names)
            continue
        if words[0] != "cover" or len(words) != 3:
            raise ParseError(f"expected 'cover <x> <y>', got {line!r}", lineno)
        for w in words[1:]:
            if w not in known:
                raise ParseError(f"undeclared element {w!r}", lineno)
        covers.append((words[1], words[2]))
    if names is None:
        raise ParseError("missing 'elements' line")
    return Lattice.from_covers(names, covers)


def read_lat(path) -> Lattice:
    if str(path) == "-":
        import sys

        return parse_lat(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_lat(fh.read())


def format_lat(L: Lattice, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append("elements " + " ".join(L.names))
    for lo, hi in L.covers:
        lines.append(f"cover {L.names[lo]} {L.names[hi]}")
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(L: Lattice) -> str:
    """Hasse diagram as a Graphviz digraph, bottom to top."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for x in range(L.n):
        lines.append(f"  n{x} [label={_dot_quote(L.names[x])}];")
    for lo, hi in L.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
