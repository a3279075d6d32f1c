import random
from itertools import combinations
from math import gcd

import pytest

from thetaconf import (CapExceeded, PosetView, boundary_matrices,
                       euler_characteristic, homology, order_complex,
                       poset_homology, smith_normal_form)


def test_smith_basics():
    assert smith_normal_form([]) == ((), 0)
    assert smith_normal_form([[0]]) == ((), 0)
    assert smith_normal_form([[2, 0], [0, 0]]) == ((2,), 1)
    assert smith_normal_form([[1, 0], [0, 1]]) == ((1, 1), 2)
    assert smith_normal_form([[2, 4], [4, 2]]) == ((2, 6), 2)
    assert smith_normal_form([[0, 1], [1, 0]]) == ((1, 1), 2)


def _determinant_divisors(matrix, k):
    """gcd of all k x k minors, the classical invariant-factor oracle."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0

    def det(sub):
        if len(sub) == 1:
            return sub[0][0]
        total = 0
        for j in range(len(sub)):
            minor = [row[:j] + row[j + 1:] for row in sub[1:]]
            total += (-1) ** j * sub[0][j] * det(minor)
        return total

    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, det([[matrix[i][j] for j in cs] for i in rs]))
    return g


def test_smith_against_minor_gcds():
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        matrix = [[rng.randrange(-6, 7) for _ in range(cols)]
                  for _ in range(rows)]
        factors, rank = smith_normal_form(matrix)
        assert len(factors) == rank
        for i in range(rank - 1):
            assert factors[i + 1] % factors[i] == 0
        previous = 1
        for k in range(1, min(rows, cols) + 1):
            d = _determinant_divisors(matrix, k)
            if k <= rank:
                assert d == previous * factors[k - 1]
                previous = d
            else:
                assert d == 0


def _chain_view(size):
    return PosetView(tuple(range(size)), lambda a, b: a < b)


def test_order_complex_counts():
    cx = order_complex(_chain_view(3), 100)
    assert cx.counts() == (3, 3, 1)
    view = PosetView.of_orderings(("a", "b"), 2)
    assert order_complex(view, 100).counts() == (4, 4)


def test_order_complex_cap():
    with pytest.raises(CapExceeded):
        order_complex(_chain_view(6), 10)


def test_boundary_of_boundary_vanishes():
    for view in (_chain_view(4), PosetView.of_orderings(("a", "b", "c"), 2)):
        cc = boundary_matrices(order_complex(view, 10 ** 5))
        for k in range(2, len(cc.dims)):
            low = cc.boundary_dense(k - 1)
            high = cc.boundary_dense(k)
            for col in range(cc.dims[k]):
                for row in range(cc.dims[k - 2]):
                    entry = sum(low[row][mid] * high[mid][col]
                                for mid in range(cc.dims[k - 1]))
                    assert entry == 0


def test_contractible_chain():
    result = poset_homology(_chain_view(3), 100)
    assert result.betti == (1, 0, 0)
    assert all(not t for t in result.torsion)
    assert result.euler == 1


def test_empty_and_antichain():
    empty = poset_homology(PosetView((), lambda a, b: False), 10)
    assert empty.betti == (0,)
    assert empty.euler == 0
    anti = poset_homology(PosetView(tuple("abc"), lambda a, b: False), 10)
    assert anti.betti == (3,)
    assert anti.euler == 3


def test_circle():
    result = poset_homology(PosetView.of_orderings(("a", "b"), 2), 100)
    assert result.betti == (1, 1)
    assert result.torsion == ((), ())
    assert result.euler == 0
    assert result.simplex_counts == (4, 4)


def test_homology_invariant_under_element_order():
    base = PosetView.of_orderings(("a", "b", "c"), 2)
    shuffled = list(base.elements)
    random.Random(3).shuffle(shuffled)
    from thetaconf import leq
    result = poset_homology(PosetView(tuple(shuffled), leq), 10 ** 5)
    assert result.betti == (1, 3, 2)
    assert result.torsion == ((), (), ())


# Closed surface on six vertices: every edge lies in two triangles and
# every vertex link is a 5-cycle, so with euler characteristic
# 6 - 15 + 10 = 1 this is the projective plane, whose middle homology
# is pure 2-torsion.  The order complex of its face poset is the
# barycentric subdivision.
RP2_FACES = ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
             (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6))


def _rp2_view():
    cells = sorted(
        {frozenset([v]) for f in RP2_FACES for v in f}
        | {frozenset(e) for f in RP2_FACES for e in combinations(f, 2)}
        | {frozenset(f) for f in RP2_FACES},
        key=lambda s: (len(s), sorted(s)))
    return PosetView(tuple(cells), lambda a, b: a < b)


def test_rp2_fixture_is_a_closed_surface():
    edge_count = {}
    for f in RP2_FACES:
        for e in combinations(f, 2):
            edge_count[e] = edge_count.get(e, 0) + 1
    assert len(edge_count) == 15
    assert set(edge_count.values()) == {2}
    for v in range(1, 7):
        link = {}
        for f in RP2_FACES:
            if v in f:
                a, b = (x for x in f if x != v)
                link.setdefault(a, set()).add(b)
                link.setdefault(b, set()).add(a)
        assert len(link) == 5
        assert all(len(nbrs) == 2 for nbrs in link.values())


def test_projective_plane_torsion():
    result = poset_homology(_rp2_view(), 10 ** 5)
    assert result.betti == (1, 0, 0)
    assert result.torsion == ((), (2,), ())
    assert result.euler == 1
    assert result.simplex_counts == (31, 90, 60)


def test_euler_characteristic_matches_counts():
    cx = order_complex(_rp2_view(), 10 ** 5)
    assert euler_characteristic(cx) == 31 - 90 + 60


def test_homology_result_json():
    result = poset_homology(_chain_view(2), 100)
    data = result.to_json()
    assert data["betti"] == [1, 0]
    assert data["torsion"] == [[], []]
    assert data["euler"] == 1
    assert data["simplex_counts"] == [2, 1]


def test_homology_accepts_chain_complex():
    cc = boundary_matrices(order_complex(_chain_view(3), 100))
    result = homology(cc)
    assert result.betti == (1, 0, 0)
