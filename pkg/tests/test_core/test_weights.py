"""Tests for weight maps, pushforward and derived tables."""
from collections import Counter

import pytest
from conwaygordon.core.cycles import Cycle, CyclePair, enumerate_cycles, enumerate_disjoint_pairs
from conwaygordon.core.graph import TriangleSite, delta_y
from conwaygordon.core.weights import (
    IdentityKind,
    WeightMap,
    arf_support,
    base_weights_k6,
    base_weights_k7,
    derive_weights,
    pushforward,
    tables_agree,
)

def _q7_expected(cycle, x, tri):
    has_x = x in cycle.vertex_set
    full = tri <= cycle.vertex_set
    if cycle.length == 7:
        return 1
    if cycle.length == 6:
        if not has_x:
            return 1
        return -1 if full else 0
    if cycle.length == 5:
        return -1
    return 0

def _h8_cycle_expected(cycle, x, tri):
    has_x = x in cycle.vertex_set
    full = tri <= cycle.vertex_set
    if cycle.length == 8:
        return 7
    if cycle.length == 7:
        if not has_x:
            return 7
        return -6 if full else 1
    if cycle.length == 6:
        if not has_x:
            return -6
        return -2 if full else -8
    if cycle.length == 5:
        return -2
    return 0

def _h8_pair_expected(pair, x, tri):
    if pair.lengths in ((5, 3), (4, 4)):
        return 1
    if pair.lengths == (4, 3):
        return 0 if ({x} | tri) <= pair.vertex_set else 1
    return 0

@pytest.mark.weights
def test_identity_kinds():
    """Test identity constants and coefficients."""
    assert IdentityKind.K6.constant == -1
    assert IdentityKind.K7.constant == -21
    assert (IdentityKind.K6.knot_coefficient, IdentityKind.K6.link_coefficient) == (2, -1)
    assert (IdentityKind.K7.knot_coefficient, IdentityKind.K7.link_coefficient) == (1, -2)

@pytest.mark.weights
def test_base_weights_k6(k6):
    """Test the base table on K6."""
    w = base_weights_k6()
    assert w.kind is IdentityKind.K6 and w.constant == -1
    for c in enumerate_cycles(k6):
        assert w[c] == {6: 1, 5: -1}.get(c.length, 0)
    for p in enumerate_disjoint_pairs(k6):
        assert w[p] == 1
    assert w.histogram() == {(6, 1): 60, (5, -1): 72, ((3, 3), 1): 10}

@pytest.mark.weights
def test_base_weights_k7(k7):
    """Test the base table on K7."""
    w = base_weights_k7()
    assert w.constant == -21
    assert w.histogram() == {(7, 7): 360, (6, -6): 420, (5, -2): 252, ((4, 3), 1): 105}
    pair33 = CyclePair(Cycle((0, 1, 2)), Cycle((3, 4, 5)))
    assert w[pair33] == 0
    assert w[Cycle((0, 1, 2, 3))] == 0

@pytest.mark.weights
def test_base_weights_reject_wrong_host(q7):
    """Test that base tables need a complete host."""
    with pytest.raises(ValueError) as exc_info:
        base_weights_k6(q7.graph)
    assert "complete host" in str(exc_info.value)

@pytest.mark.weights
def test_derive_weights_empty_sequence():
    """Test that zero steps give the base table."""
    assert derive_weights("K6", []).weights == base_weights_k6().weights
    assert derive_weights(IdentityKind.K7, []).weights == base_weights_k7().weights

@pytest.mark.weights
def test_q7_golden_table_every_site(k6):
    """Test the one-step K6 table against the case analysis for every triangle."""
    for site in k6.triangles():
        w = derive_weights("K6", [site])
        tri = set(site.vertices)
        for c in enumerate_cycles(w.host):
            assert w[c] == _q7_expected(c, 6, tri), (site, c)
        for p in enumerate_disjoint_pairs(w.host):
            assert w[p] == 1
        assert set(w.weights.values()) <= {-1, 1}

@pytest.mark.weights
def test_h8_golden_table_every_site(k7):
    """Test the one-step K7 tables on cycles and pairs for every triangle."""
    for site in k7.triangles():
        w = derive_weights("K7", [site])
        tri = set(site.vertices)
        for c in enumerate_cycles(w.host):
            assert w[c] == _h8_cycle_expected(c, 7, tri), (site, c)
        for p in enumerate_disjoint_pairs(w.host):
            assert w[p] == _h8_pair_expected(p, 7, tri), (site, p)

@pytest.mark.weights
def test_arf_support(k7):
    """Test odd-weight supports on K7 and H8."""
    assert arf_support(base_weights_k7()) == set(enumerate_cycles(k7, 7))

    site = TriangleSite(0, 1, 2)
    w = derive_weights("K7", [site])
    expected = {
        c for c in enumerate_cycles(w.host)
        if c.length == 8 or (c.length == 7 and not (7 in c.vertex_set and {0, 1, 2} <= c.vertex_set))
    }
    support = arf_support(w)
    assert support == expected

    with pytest.raises(ValueError) as exc_info:
        arf_support(base_weights_k6())
    assert "K7-type" in str(exc_info.value)

    empty = WeightMap(k7, IdentityKind.K7, -21, {Cycle((0, 1, 2)): 2})
    assert arf_support(empty) == set()

@pytest.mark.weights
def test_pushforward_keeps_kind_and_constant():
    """Test that pushforward carries kind and constant."""
    w = pushforward(base_weights_k7(), TriangleSite(0, 1, 2))
    assert w.kind is IdentityKind.K7
    assert w.constant == -21
    w.validate()

@pytest.mark.weights
def test_pushforward_total_weight_on_pairs(k6):
    """Test that every pair of Q7 gets weight 1."""
    w = pushforward(base_weights_k6(), TriangleSite(1, 3, 5))
    pairs = enumerate_disjoint_pairs(w.host)
    assert Counter(w[p] for p in pairs) == Counter({1: len(pairs)})

@pytest.mark.weights
def test_derive_weights_invalid_step():
    """Test that a bad step is named in the error."""
    with pytest.raises(ValueError) as exc_info:
        derive_weights("K6", [TriangleSite(0, 1, 2), TriangleSite(0, 1, 2)])
    assert "Step 2 (0-1-2) is invalid" in str(exc_info.value)
    with pytest.raises(ValueError):
        derive_weights("K5", [])

@pytest.mark.weights
def test_tables_agree_across_sites():
    """Test that one-step tables from different triangles agree up to isomorphism."""
    a = derive_weights("K7", [TriangleSite(0, 1, 2)])
    b = derive_weights("K7", [TriangleSite(2, 4, 6)])
    assert tables_agree(a, b)
    assert not tables_agree(a, derive_weights("K6", [TriangleSite(0, 1, 2)]))

@pytest.mark.weights
def test_two_step_tables_identity_ready():
    """Test a two-step table is supported on cycle sets of its host."""
    k6 = delta_y(delta_y(base_weights_k6().host, TriangleSite(0, 1, 2)), TriangleSite(3, 4, 5))
    w = derive_weights("K6", [TriangleSite(0, 1, 2), TriangleSite(3, 4, 5)])
    assert w.host == k6
    w.validate()
    assert all(w[p] == 1 for p in enumerate_disjoint_pairs(w.host))
