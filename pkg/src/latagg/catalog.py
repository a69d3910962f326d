"""Named lattices and exhaustive enumeration of small lattices.

Enumeration walks naturally labelled bounded posets (every cover goes from a
smaller to a larger index), keeps those that are lattices and drops
isomorphic copies by a brute-force canonical form.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BadParam, BoundExceeded, InternalInconsistency, NotALattice, UnknownBuiltin
from .lattice import Lattice
from .properties import PropertyProfile, profile
from .relations import BinaryRelation, is_simple, is_tolerance

ENUMERATION_BOUND = 7
ENUMERATION_OVERRIDE_BOUND = 8

GLUED_NAMES = ["0", "a", "b", "c", "d", "e", "f", "1"]
GLUED_COVERS = [
    ("0", "a"), ("0", "b"), ("0", "c"),
    ("a", "d"), ("b", "d"), ("c", "d"),
    ("c", "e"), ("c", "f"),
    ("d", "1"), ("e", "1"), ("f", "1"),
]
GLUED_LOWER = ["0", "a", "b", "c", "d"]
GLUED_UPPER = ["c", "d", "e", "f", "1"]


def chain(k: int) -> Lattice:
    if k < 2:
        raise BadParam("chain-k needs k >= 2")
    names = ["0"] + [f"c{i}" for i in range(1, k - 1)] + ["1"]
    return Lattice.from_covers(names, list(zip(names, names[1:])))


def mn(k: int) -> Lattice:
    if k < 3:
        raise BadParam("mn-k needs k >= 3")
    atoms = [f"a{i}" for i in range(1, k + 1)]
    covers = [("0", a) for a in atoms] + [(a, "1") for a in atoms]
    return Lattice.from_covers(["0", *atoms, "1"], covers)


def boolean(k: int) -> Lattice:
    if not 1 <= k <= 4:
        raise BadParam("bool-k needs 1 <= k <= 4")
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))

    def label(s):
        if s == 0:
            return "0"
        return "".join(str(i + 1) for i in range(k) if s >> i & 1)

    names = [label(s) for s in subsets]
    index = {s: names[i] for i, s in enumerate(subsets)}
    covers = [
        (index[s], index[s | 1 << i]) for s in subsets for i in range(k) if not s >> i & 1
    ]
    return Lattice.from_covers(names, covers)


def glued_m3_parts(L: Lattice) -> tuple[list[int], list[int]]:
    return [L.index(x) for x in GLUED_LOWER], [L.index(x) for x in GLUED_UPPER]


def glued_union_tolerance(L: Lattice) -> BinaryRelation:
    lower, upper = glued_m3_parts(L)
    pairs = list(itertools.product(lower, repeat=2)) + list(itertools.product(upper, repeat=2))
    return BinaryRelation.from_pairs(L, pairs)


def _is_m3_sublattice(L: Lattice, members: list[int]) -> bool:
    s = set(members)
    if any(L.join(x, y) not in s or L.meet(x, y) not in s for x in s for y in s):
        return False
    lo = L.meet_all(members)
    hi = L.join_all(members)
    middle = [x for x in members if x not in (lo, hi)]
    return len(s) == 5 and all(
        L.join(x, y) == hi and L.meet(x, y) == lo for x, y in itertools.combinations(middle, 2)
    )


def validate_glued_m3(L: Lattice) -> None:
    lower, upper = glued_m3_parts(L)
    if not (_is_m3_sublattice(L, lower) and _is_m3_sublattice(L, upper)):
        raise InternalInconsistency("glued-m3: the two halves are not copies of M_3")
    T = glued_union_tolerance(L)
    if not is_tolerance(L, T) or T.is_identity() or T.is_full():
        raise InternalInconsistency("glued-m3: the union of squares is not a proper tolerance")
    if not is_simple(L):
        raise InternalInconsistency("glued-m3: lattice is not simple")


def glued_m3() -> Lattice:
    """Two copies of M_3 sharing the cover pair c < d, checked on every build."""
    L = Lattice.from_covers(GLUED_NAMES, GLUED_COVERS)
    validate_glued_m3(L)
    return L


BUILTIN_NAMES = ("chain-k", "mn-k", "bool-k", "glued-m3")


def builtin(name: str) -> Lattice:
    if name == "glued-m3":
        return glued_m3()
    family, _, param = name.rpartition("-")
    makers = {"chain": chain, "mn": mn, "bool": boolean}
    if family not in makers:
        raise UnknownBuiltin(f"unknown builtin {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    if not param.isdigit():
        raise BadParam(f"builtin {name!r} needs an integer parameter")
    return makers[family](int(param))


# canonical form


def order_matrix(L: Lattice) -> np.ndarray:
    return np.array(L.leq_matrix, dtype=bool)


_PERMS: dict[int, np.ndarray] = {}


def _permutations(n: int) -> np.ndarray:
    if n not in _PERMS:
        _PERMS[n] = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    return _PERMS[n]


def canonical_matrix(L: Lattice) -> np.ndarray:
    """Lexicographically least order matrix over all relabellings."""
    leq = order_matrix(L)
    n = L.n
    if n > ENUMERATION_OVERRIDE_BOUND:
        raise BoundExceeded(f"canonical form is limited to {ENUMERATION_OVERRIDE_BOUND} elements")
    perms = _permutations(n)
    relabelled = leq[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    # rows packed big-endian into 64-bit keys compare like the bit strings
    packed = np.packbits(relabelled, axis=1)
    padded = np.zeros((len(perms), 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    keys = padded.view(">u8").ravel()
    best = int(np.argmin(keys))
    return relabelled[best].reshape(n, n)


def canonical_key(L: Lattice) -> bytes:
    return np.packbits(canonical_matrix(L)).tobytes() + bytes([L.n])


def canonical_hash(L: Lattice) -> str:
    """16 hex chars of BLAKE2b over the canonical matrix as 0/1 bytes, row-major."""
    data = canonical_matrix(L).astype(np.uint8).tobytes()
    return hashlib.blake2b(data, digest_size=8).hexdigest()


# enumeration


def _element_names(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    middle = [chr(ord("a") + i) for i in range(n - 2)]
    return ["0", *middle, "1"]


def _natural_cover_sets(n: int) -> Iterator[list[tuple[int, int]]]:
    """Cover relations of bounded posets on 0..n-1 with covers going upward.

    Element ``j`` in the middle picks a nonempty antichain among ``0..j-1``
    as its lower covers; the top covers whatever is still maximal.
    """
    down = [0] * n
    down[0] = 1
    chosen: list[tuple[int, ...]] = [()] * n

    def antichains(j):
        for size in range(1, j + 1):
            for combo in itertools.combinations(range(j), size):
                if size > 1 and any(down[y] >> x & 1 for x in combo for y in combo if x != y):
                    continue
                yield combo

    def place(j):
        if j == n - 1:
            has_upper = 0
            for k in range(1, n - 1):
                for x in chosen[k]:
                    has_upper |= 1 << x
            maximal = [x for x in range(n - 1) if not has_upper >> x & 1]
            covers = [(x, k) for k in range(1, n - 1) for x in chosen[k]]
            yield covers + [(x, n - 1) for x in maximal]
            return
        for combo in antichains(j):
            chosen[j] = combo
            mask = 1 << j
            for x in combo:
                mask |= down[x]
            down[j] = mask
            yield from place(j + 1)

    yield from place(1)


def enumerate_lattices(n: int, allow_override: bool = False) -> Iterator[Lattice]:
    """One lattice per isomorphism class of ``n``-element lattices."""
    limit = ENUMERATION_OVERRIDE_BOUND if allow_override else ENUMERATION_BOUND
    if not 1 <= n <= limit:
        raise BoundExceeded(f"lattice enumeration supports 1 <= n <= {limit}, got {n}")
    names = _element_names(n)
    if n == 1:
        yield Lattice(names, [])
        return
    if n == 2:
        yield Lattice(names, [(0, 1)])
        return
    seen = set()
    for covers in _natural_cover_sets(n):
        try:
            L = Lattice(names, covers)
        except NotALattice:
            continue
        key = canonical_key(L)
        if key not in seen:
            seen.add(key)
            yield L


@dataclass
class CatalogEntry:
    name: str
    lattice: Lattice
    provenance: str
    _profile: PropertyProfile | None = None

    @property
    def profile(self) -> PropertyProfile | None:
        """Property profile, computed on first access; None for one element."""
        if self._profile is None and self.lattice.n >= 2:
            self._profile = profile(self.lattice)
        return self._profile

    @property
    def hash(self) -> str:
        return canonical_hash(self.lattice)


def census(n: int, allow_override: bool = False) -> Iterator[CatalogEntry]:
    for i, L in enumerate(enumerate_lattices(n, allow_override), start=1):
        entry = CatalogEntry(f"L{n}-{i}", L, "enumerated")
        entry.profile  # noqa: B018 - force the implication checks now
        yield entry


def census_line(index: int, entry: CatalogEntry) -> str:
    prof = entry.profile
    flags = prof.flags() if prof is not None else "\t".join("-" * 8)
    return f"{index}\t{entry.lattice.n}\t{entry.hash}\t{flags}"
