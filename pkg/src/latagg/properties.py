"""Classical lattice predicates and the profile that ties them together.

Every predicate is an exhaustive scan; lattices here are small.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .aggregation import decide_smallest_agg
from .errors import DegenerateLattice, ImplicationViolation
from .lattice import Lattice
from .relations import has_only_trivial_tolerances, is_simple


def is_modular(L: Lattice) -> bool:
    r = range(L.n)
    for a in r:
        for c in r:
            if not L.leq(a, c):
                continue
            for b in r:
                if L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), c):
                    return False
    return True


def _interval_complemented(L: Lattice, lo: int, hi: int) -> bool:
    members = L.interval(lo, hi)
    return all(
        any(L.meet(x, y) == lo and L.join(x, y) == hi for y in members) for x in members
    )


def is_complemented(L: Lattice) -> bool:
    return _interval_complemented(L, L.bottom, L.top)


def is_relatively_complemented(L: Lattice) -> bool:
    return all(
        _interval_complemented(L, a, b)
        for a in range(L.n)
        for b in range(L.n)
        if L.leq(a, b)
    )


def atoms_join_is_top(L: Lattice) -> bool:
    if L.n < 2:
        raise DegenerateLattice("the one-element lattice has no atoms")
    return L.join_all(L.atoms()) == L.top


def coatoms_meet_is_bottom(L: Lattice) -> bool:
    if L.n < 2:
        raise DegenerateLattice("the one-element lattice has no coatoms")
    return L.meet_all(L.coatoms()) == L.bottom


@dataclass(frozen=True)
class PropertyProfile:
    simple: bool
    modular: bool
    complemented: bool
    relatively_complemented: bool
    atoms_join_is_top: bool
    coatoms_meet_is_bottom: bool
    tolerance_trivial: bool
    smallest_agg: bool

    def items(self) -> list[tuple[str, bool]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def flags(self) -> str:
        return "\t".join("Y" if v else "N" for _, v in self.items())

    def violations(self) -> list[str]:
        """Implications that must hold in every finite lattice but fail here."""
        p = self
        rules = [
            ("smallest_agg <=> tolerance_trivial", p.smallest_agg == p.tolerance_trivial),
            ("smallest_agg => simple", not p.smallest_agg or p.simple),
            (
                "simple & relatively_complemented => smallest_agg",
                not (p.simple and p.relatively_complemented) or p.smallest_agg,
            ),
            (
                "simple & modular & complemented => smallest_agg",
                not (p.simple and p.modular and p.complemented) or p.smallest_agg,
            ),
            (
                "modular & complemented => relatively_complemented",
                not (p.modular and p.complemented) or p.relatively_complemented,
            ),
            (
                "simple & (atoms_join_is_top | coatoms_meet_is_bottom) => smallest_agg",
                not (p.simple and (p.atoms_join_is_top or p.coatoms_meet_is_bottom))
                or p.smallest_agg,
            ),
            (
                "relatively_complemented => complemented",
                not p.relatively_complemented or p.complemented,
            ),
        ]
        return [name for name, ok in rules if not ok]


def profile(L: Lattice) -> PropertyProfile:
    if L.n < 2:
        raise DegenerateLattice("the one-element lattice has 0 = 1")
    trivial, _ = has_only_trivial_tolerances(L)
    result = PropertyProfile(
        simple=is_simple(L),
        modular=is_modular(L),
        complemented=is_complemented(L),
        relatively_complemented=is_relatively_complemented(L),
        atoms_join_is_top=atoms_join_is_top(L),
        coatoms_meet_is_bottom=coatoms_meet_is_bottom(L),
        tolerance_trivial=trivial,
        smallest_agg=decide_smallest_agg(L).smallest,
    )
    broken = result.violations()
    if broken:
        raise ImplicationViolation("profile violates: " + "; ".join(broken))
    return result
