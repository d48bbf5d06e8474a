"""Tests for Gauss-code diagrams and Reidemeister moves."""
import pytest
from conwaygordon.core.diagram import LinkDiagram, Visit
from conwaygordon.core.invariants import conway_coefficients, linking_number
from conwaygordon.core.reidemeister import (
    add_kink,
    add_poke,
    braid_commute,
    braid_r2,
    braid_r3,
    conjugate,
    find_kink,
    find_poke,
    simplify,
    stabilize,
)

@pytest.mark.invariants
def test_trefoil_from_braid():
    """Test the Gauss code of the closed braid σ1³."""
    d = LinkDiagram.from_braid([1, 1, 1], 2)
    assert d.component_count == 1
    assert d.crossing_count == 3
    assert [v.over for v in d.components[0]] == [True, False] * 3
    assert d.writhe() == 3

@pytest.mark.invariants
def test_hopf_from_braid():
    """Test that σ1² closes to two components."""
    d = LinkDiagram.from_braid([1, 1], 2)
    assert d.component_count == 2
    assert d.component_of(0) == (0, 1)
    assert d.component_of(1) == (1, 0)

@pytest.mark.invariants
def test_from_braid_rejects_bad_generator():
    """Test generator range checking."""
    with pytest.raises(ValueError) as exc_info:
        LinkDiagram.from_braid([1, 2], 2)
    assert "out of range" in str(exc_info.value)
    with pytest.raises(ValueError):
        LinkDiagram.from_braid([0], 3)

@pytest.mark.invariants
def test_inconsistent_crossing_tables():
    """Test that malformed Gauss codes are rejected."""
    with pytest.raises(ValueError) as exc_info:
        LinkDiagram([[Visit(0, 1, True)]])
    assert "visited 1 times" in str(exc_info.value)
    with pytest.raises(ValueError) as exc_info:
        LinkDiagram([[Visit(0, 1, True), Visit(0, 1, True)]])
    assert "one over and one under" in str(exc_info.value)
    with pytest.raises(ValueError) as exc_info:
        LinkDiagram([[Visit(0, 1, True), Visit(0, -1, False)]])
    assert "inconsistent signs" in str(exc_info.value)

@pytest.mark.invariants
def test_switch_and_mirror():
    """Test crossing switches flip signs and over/under."""
    d = LinkDiagram.from_braid([1, 1, 1], 2)
    s = d.switch(0)
    assert s.sign(0) == -1
    assert s.crossing_table()[0].over == d.crossing_table()[0].under
    assert d.mirror().writhe() == -3
    assert d.mirror().mirror() == d

@pytest.mark.invariants
def test_smooth_self_crossing_splits():
    """Test that smoothing a trefoil crossing leaves a Hopf link."""
    d = LinkDiagram.from_braid([1, 1, 1], 2).smooth(0)
    assert d.component_count == 2
    assert d.crossing_count == 2
    assert linking_number(d) == 1

@pytest.mark.invariants
def test_smooth_mixed_crossing_merges():
    """Test that smoothing a Hopf crossing leaves one component."""
    d = LinkDiagram.from_braid([1, 1], 2).smooth(0)
    assert d.component_count == 1
    assert d.crossing_count == 1

@pytest.mark.invariants
def test_reverse_component():
    """Test that reversing one component negates mixed crossings only."""
    hopf = LinkDiagram.from_braid([1, 1], 2)
    assert linking_number(hopf.reverse(0)) == -1
    trefoil = LinkDiagram.from_braid([1, 1, 1], 2)
    assert trefoil.reverse(0).writhe() == 3

@pytest.mark.invariants
def test_relabelled_and_rotated():
    """Test renumbering and basepoint moves."""
    d = LinkDiagram([[Visit(7, 1, True), Visit(3, 1, False), Visit(7, 1, False), Visit(3, 1, True)]])
    r = d.relabelled()
    assert r.crossings() == [0, 1]
    assert r.components[0][0].crossing == 0
    assert d.rotated(0, 1).components[0][0] == Visit(3, 1, False)
    assert d.rotated(0, 4) == d

@pytest.mark.invariants
def test_kink_round_trip():
    """Test that an added kink is found and simplified away."""
    trefoil = LinkDiagram.from_braid([1, 1, 1], 2)
    assert find_kink(trefoil) is None
    kinked = add_kink(trefoil, 0, 2, -1, True)
    assert kinked.crossing_count == 4
    assert find_kink(kinked) == 3
    assert simplify(kinked).crossing_count == 3
    with pytest.raises(ValueError):
        add_kink(trefoil, 0, 0, 0, True)

@pytest.mark.invariants
def test_poke_round_trip():
    """Test that an R2 poke is found and simplified away."""
    trefoil = LinkDiagram.from_braid([1, 1, 1], 2)
    poked = add_poke(trefoil, 0, True, True)
    assert poked.crossing_count == 5
    assert find_poke(poked) is not None
    assert simplify(poked).crossing_count == 3

@pytest.mark.invariants
def test_trivial_braid_simplifies_to_unlink():
    """Test that σ1σ1⁻¹ reduces to two crossingless components."""
    d = LinkDiagram.from_braid([1, -1], 2)
    assert find_poke(d) == (0, 1)
    s = simplify(d)
    assert s.components == ((), ())
    assert conway_coefficients(d) == ()

@pytest.mark.invariants
def test_braid_word_moves():
    """Test the braid-word rewrites."""
    assert braid_r2([1, 1], 1, 2) == [1, 2, -2, 1]
    assert braid_r3([1, 2, 1], 0) == [2, 1, 2]
    assert braid_commute([1, 3], 0) == [3, 1]
    assert conjugate([1, 2, 3], 1) == [2, 3, 1]
    assert conjugate([], 3) == []
    assert stabilize([1, 1, 1], 2, -1) == ([1, 1, 1, -2], 3)

@pytest.mark.invariants
def test_braid_word_move_errors():
    """Test that invalid braid rewrites are refused."""
    with pytest.raises(ValueError) as exc_info:
        braid_r3([1, -2, 1], 0)
    assert "No braid relation" in str(exc_info.value)
    with pytest.raises(ValueError) as exc_info:
        braid_commute([1, 2], 0)
    assert "do not commute" in str(exc_info.value)
    with pytest.raises(ValueError):
        stabilize([1], 2, 2)
