import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latagg.catalog import builtin, enumerate_lattices
from latagg.errors import (
    CycleError,
    NotALattice,
    NotBounded,
    NotComparable,
    ParseError,
    RedundantCover,
    UnknownElement,
)
from latagg.lattice import Lattice, format_lat, parse_lat, to_dot

from conftest import make


def small_lattices():
    out = []
    for n in range(2, 7):
        out.extend(enumerate_lattices(n))
    out += [builtin("glued-m3"), builtin("bool-3"), builtin("mn-4")]
    return out


LATTICES = small_lattices()


class TestFromCovers:
    def test_two_chain(self):
        L = make(["0", "1"], [("0", "1")])
        assert L.join(0, 1) == 1
        assert L.meet(0, 1) == 0
        assert (L.bottom, L.top) == (0, 1)

    def test_m3_structure(self, m3):
        a, b = m3.index("a"), m3.index("b")
        assert m3.n == 5
        assert m3.join(a, b) == m3.top
        assert m3.meet(a, b) == m3.bottom

    def test_missing_top(self):
        with pytest.raises(NotBounded):
            make(["0", "a", "b", "1"], [("0", "a"), ("0", "b")])

    def test_cycle(self):
        with pytest.raises(CycleError):
            make(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")])

    def test_self_cover_is_cycle(self):
        with pytest.raises(CycleError):
            make(["0", "1"], [("0", "1"), ("1", "1")])

    def test_redundant_cover(self):
        with pytest.raises(RedundantCover):
            make(["0", "m", "1"], [("0", "m"), ("m", "1"), ("0", "1")])

    def test_duplicate_cover(self):
        with pytest.raises(RedundantCover):
            make(["0", "1"], [("0", "1"), ("0", "1")])

    def test_not_a_lattice(self):
        # a and b have two minimal upper bounds c and d
        names = ["0", "a", "b", "c", "d", "1"]
        covers = [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "1"), ("d", "1")]
        with pytest.raises(NotALattice):
            make(names, covers)

    def test_unknown_name(self):
        with pytest.raises(UnknownElement):
            make(["0", "1"], [("0", "z")])

    def test_one_element(self):
        L = Lattice(["0"], [])
        assert L.bottom == L.top == 0


class TestQueries:
    def test_idempotent_join(self):
        for L in LATTICES:
            assert all(L.join(x, x) == x for x in L.elements)

    def test_absorption_on_chain(self, chain3):
        m = chain3.index("m")
        assert chain3.meet(m, chain3.top) == m

    def test_join_irreducibles(self, m3, chain4, diamond):
        assert m3.join_irreducibles() == [m3.index(x) for x in "abc"]
        assert chain4.join_irreducibles() == [chain4.index(x) for x in ("a", "b", "1")]
        assert diamond.join_irreducibles() == [diamond.index("a"), diamond.index("b")]

    def test_atoms_and_coatoms(self, chain2):
        M = builtin("mn-5")
        assert M.atoms() == M.coatoms() == [M.index(f"a{i}") for i in range(1, 6)]
        assert chain2.atoms() == [chain2.top]
        assert chain2.coatoms() == [chain2.bottom]
        B = builtin("bool-3")
        assert len(B.atoms()) == 3
        assert len(B.coatoms()) == 3

    def test_interval_and_filter(self, chain4, m3):
        a = chain4.index("a")
        assert chain4.interval(a, chain4.top) == [a, chain4.index("b"), chain4.top]
        assert m3.principal_filter(m3.index("a")) == [m3.index("a"), m3.top]
        for x in m3.elements:
            assert m3.interval(x, x) == [x]

    def test_interval_needs_order(self, m3):
        with pytest.raises(NotComparable):
            m3.interval(m3.index("a"), m3.index("b"))


class TestLatticeLaws:
    @pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{L.n}")
    def test_identities(self, L):
        j, m = L.join, L.meet
        E = L.elements
        for a, b in itertools.product(E, repeat=2):
            assert j(a, b) == j(b, a) and m(a, b) == m(b, a)
            assert j(a, m(a, b)) == a and m(a, j(a, b)) == a
            assert L.leq(a, b) == (j(a, b) == b) == (m(a, b) == a)
        for a, b, c in itertools.product(E, repeat=3):
            assert j(a, j(b, c)) == j(j(a, b), c)
            assert m(a, m(b, c)) == m(m(a, b), c)

    @pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{L.n}")
    def test_partial_order_and_bounds(self, L):
        for x, y, z in itertools.product(L.elements, repeat=3):
            if L.leq(x, y) and L.leq(y, z):
                assert L.leq(x, z)
        for x, y in itertools.product(L.elements, repeat=2):
            if x != y:
                assert not (L.leq(x, y) and L.leq(y, x))
        assert all(L.leq(L.bottom, x) and L.leq(x, L.top) for x in L.elements)

    @pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{L.n}")
    def test_join_of_irreducibles(self, L):
        J = L.join_irreducibles()
        for x in L.elements:
            if x != L.bottom:
                assert L.join_all(a for a in J if L.leq(a, x)) == x

    @pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{L.n}")
    def test_covers_are_transitive_reduction(self, L):
        full = set(map(tuple, (p for p in itertools.product(L.elements, repeat=2) if L.leq(*p))))
        for drop in L.covers:
            rest = [c for c in L.covers if c != drop]
            # reflexive transitive closure of the remaining covers
            reach = {(x, x) for x in L.elements} | set(rest)
            changed = True
            while changed:
                new = {(a, d) for a, b in reach for c, d in reach if b == c} - reach
                reach |= new
                changed = bool(new)
            assert reach != full


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(LATTICES), st.data())
def test_leq_matches_join(L, data):
    x = data.draw(st.sampled_from(list(L.elements)))
    y = data.draw(st.sampled_from(list(L.elements)))
    assert L.leq(x, y) == (L.join(x, y) == y)


class TestTextFormat:
    def test_round_trip(self):
        for name in ("chain-4", "mn-3", "bool-2", "glued-m3"):
            L = builtin(name)
            again = parse_lat(format_lat(L, comment=name))
            assert again.names == L.names
            assert again.leq_matrix == L.leq_matrix

    def test_comments_and_blank_lines(self):
        text = "# a chain\n\nelements 0 m 1  # three\ncover 0 m\n  cover m 1\n"
        L = parse_lat(text)
        assert L.n == 3 and L.leq(0, 2)

    def test_bad_cover_line_reports_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_lat("elements 0 1\ncover 0 1\ncovr 0 1\n")

    def test_missing_elements_line(self):
        with pytest.raises(ParseError):
            parse_lat("cover 0 1\n")

    def test_reserved_names(self):
        with pytest.raises(ParseError):
            parse_lat("elements 0 x1 1\ncover 0 x1\ncover x1 1\n")
        with pytest.raises(ParseError):
            parse_lat("elements 0 v 1\ncover 0 v\ncover v 1\n")

    def test_dot_is_deterministic(self, m3):
        dot = to_dot(m3)
        assert dot == to_dot(make(list(m3.names), [(m3.names[a], m3.names[b]) for a, b in m3.covers]))
        assert dot.startswith("digraph hasse {\n  rankdir=BT;\n")
        assert dot.count("->") == len(m3.covers)
        assert '  n1 [label="a"];' in dot
