"""Tests for linking number, Conway polynomial, a2 and Arf."""
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conwaygordon.core.diagram import LinkDiagram, Visit
from conwaygordon.core.invariants import (
    arf,
    conway_a2,
    conway_coefficients,
    conway_polynomial,
    gauss_a2,
    is_split,
    linking_number,
    lk_squared,
    z,
)
from conwaygordon.core.reidemeister import add_kink, add_poke, braid_r2, braid_r3, conjugate, stabilize

TREFOIL = ([1, 1, 1], 2)
FIGURE_EIGHT = ([1, -2, 1, -2], 3)
HOPF = ([1, 1], 2)
TORUS_LINK_4 = ([1, 1, 1, 1], 2)

def braid(word, strands):
    return LinkDiagram.from_braid(word, strands)

def knot_words(max_strands=3, max_length=7):
    """Braid words on up to three strands; closures may have several components."""
    return st.integers(min_value=2, max_value=max_strands).flatmap(
        lambda n: st.tuples(
            st.lists(
                st.integers(min_value=1, max_value=n - 1).flatmap(
                    lambda g: st.sampled_from([g, -g])
                ),
                min_size=1,
                max_size=max_length,
            ),
            st.just(n),
        )
    )

@st.composite
def single_component_braids(draw, max_strands=5, max_length=10):
    """Braid words whose closure is a knot.

    Each generator appears once in some order, which makes the permutation an
    n-cycle; adjacent letter pairs on one generator leave it unchanged.
    """
    strands = draw(st.integers(min_value=2, max_value=max_strands))
    signs = st.sampled_from([1, -1])
    word = [g * draw(signs) for g in draw(st.permutations(range(1, strands)))]
    for _ in range(draw(st.integers(min_value=0, max_value=(max_length - len(word)) // 2))):
        g = draw(st.integers(min_value=1, max_value=strands - 1))
        position = draw(st.integers(min_value=0, max_value=len(word)))
        word[position:position] = [g * draw(signs), g * draw(signs)]
    return word, strands

@pytest.mark.invariants
def test_trefoil_invariants():
    """Test the right-handed trefoil."""
    d = braid(*TREFOIL)
    assert conway_polynomial(d).as_expr() == 1 + z**2
    assert conway_a2(d, check=True) == 1
    assert arf(d) == 1

@pytest.mark.invariants
def test_figure_eight_invariants():
    """Test the figure-eight knot."""
    d = braid(*FIGURE_EIGHT)
    assert d.component_count == 1
    assert conway_polynomial(d).as_expr() == 1 - z**2
    assert gauss_a2(d) == -1
    assert arf(d) == 1

@pytest.mark.invariants
def test_hopf_link_invariants():
    """Test the positive Hopf link."""
    d = braid(*HOPF)
    assert linking_number(d) == 1
    assert lk_squared(d, check=True) == 1
    assert conway_coefficients(d) == (0, 1)

@pytest.mark.invariants
def test_torus_link_invariants():
    """Test the (2,4) torus link."""
    d = braid(*TORUS_LINK_4)
    assert linking_number(d) == 2
    assert conway_polynomial(d).as_expr() == 2 * z + z**3
    assert lk_squared(d, check=True) == 4

@pytest.mark.invariants
def test_unknot_and_unlink():
    """Test crossingless diagrams."""
    unknot = LinkDiagram([[]])
    assert conway_coefficients(unknot) == (1,)
    assert conway_a2(unknot, check=True) == 0
    unlink = LinkDiagram([[], []])
    assert is_split(unlink)
    assert conway_polynomial(unlink) == sp.Poly(0, z, domain="ZZ")
    assert linking_number(unlink) == 0

@pytest.mark.invariants
def test_split_detection():
    """Test that linked components are not split."""
    assert not is_split(braid(*HOPF))
    assert not is_split(braid(*TREFOIL))
    assert is_split(braid([1, 1, 1], 3))

@pytest.mark.invariants
def test_linking_number_errors():
    """Test linking number preconditions."""
    with pytest.raises(ValueError) as exc_info:
        linking_number(braid(*TREFOIL))
    assert "needs 2 components" in str(exc_info.value)
    odd = LinkDiagram([[Visit(0, 1, True)], [Visit(0, 1, False)]])
    with pytest.raises(ValueError) as exc_info:
        linking_number(odd)
    assert "odd" in str(exc_info.value)

@pytest.mark.invariants
def test_a2_needs_knot():
    """Test that a2 refuses links."""
    with pytest.raises(ValueError) as exc_info:
        gauss_a2(braid(*HOPF))
    assert "knot diagram" in str(exc_info.value)

@pytest.mark.invariants
def test_a2_independent_of_basepoint():
    """Test that moving the basepoint keeps a2."""
    d = braid(*FIGURE_EIGHT)
    for k in range(len(d.components[0])):
        assert gauss_a2(d.rotated(0, k)) == -1

@pytest.mark.invariants
def test_mirror_and_reverse():
    """Test a2 under mirror and reversal, and lk under mirror."""
    trefoil = braid(*TREFOIL)
    assert gauss_a2(trefoil.mirror()) == 1
    assert gauss_a2(trefoil.reverse(0)) == 1
    assert linking_number(braid(*HOPF).mirror()) == -1

@pytest.mark.invariants
def test_reidemeister_invariance_of_a2():
    """Test a2 after kinks and pokes on the figure-eight knot."""
    d = braid(*FIGURE_EIGHT)
    for sign in (1, -1):
        for over_first in (True, False):
            assert conway_a2(add_kink(d, 0, 3, sign, over_first), check=True) == -1
    for finger_on_over in (True, False):
        for finger_over in (True, False):
            assert conway_a2(add_poke(d, 1, finger_on_over, finger_over), check=True) == -1

@pytest.mark.invariants
@settings(max_examples=120, deadline=None)
@given(single_component_braids())
def test_gauss_a2_matches_skein(word_and_strands):
    """Test the Gauss-diagram a2 against the skein oracle on closed braids."""
    word, strands = word_and_strands
    d = braid(word, strands)
    assert d.component_count == 1
    assert d.crossing_count == len(word) <= 10
    coeffs = conway_coefficients(d)
    assert gauss_a2(d) == (coeffs[2] if len(coeffs) > 2 else 0)

@pytest.mark.invariants
@settings(max_examples=40, deadline=None)
@given(knot_words(), st.integers(min_value=0, max_value=10), st.sampled_from([1, -1]))
def test_conway_invariant_under_braid_moves(word_and_strands, shift, sign):
    """Test the Conway polynomial under conjugation, R2 and stabilization."""
    word, strands = word_and_strands
    expected = conway_coefficients(braid(word, strands))
    assert conway_coefficients(braid(conjugate(word, shift), strands)) == expected
    assert conway_coefficients(braid(braid_r2(word, shift % (len(word) + 1), 1), strands)) == expected
    assert conway_coefficients(braid(*stabilize(word, strands, sign))) == expected

def _knot_and_link_invariants(d):
    values = {"conway": conway_coefficients(d)}
    if d.component_count == 1:
        values["a2"] = gauss_a2(d)
        values["arf"] = arf(d)
    elif d.component_count == 2:
        values["lk"] = linking_number(d)
    return values

@pytest.mark.invariants
@settings(max_examples=500, deadline=None)
@given(knot_words(max_length=6), st.sampled_from(["R1", "R2", "R2-braid", "R3"]), st.data())
def test_invariants_under_reidemeister_moves(word_and_strands, move, data):
    """Test lk, a2, Arf and the Conway polynomial under random R1, R2 and R3 moves."""
    word, strands = word_and_strands
    sign = data.draw(st.sampled_from([1, -1]))
    if move == "R3":
        strands = max(strands, 3)
        g = data.draw(st.integers(min_value=1, max_value=strands - 2))
        a, b = data.draw(st.sampled_from([(g, g + 1), (g + 1, g)]))
        position = data.draw(st.integers(min_value=0, max_value=len(word)))
        word = word[:position] + [sign * a, sign * b, sign * a] + word[position:]
        before = braid(word, strands)
        after = braid(braid_r3(word, position), strands)
    elif move == "R2-braid":
        before = braid(word, strands)
        g = data.draw(st.integers(min_value=1, max_value=strands - 1))
        position = data.draw(st.integers(min_value=0, max_value=len(word)))
        after = braid(braid_r2(word, position, sign * g), strands)
    elif move == "R1":
        before = braid(word, strands)
        component = data.draw(st.integers(min_value=0, max_value=before.component_count - 1))
        position = data.draw(st.integers(min_value=0, max_value=20))
        after = add_kink(before, component, position, sign, data.draw(st.booleans()))
        assert after.crossing_count == before.crossing_count + 1
    else:
        before = braid(word, strands)
        c = data.draw(st.sampled_from(before.crossings()))
        after = add_poke(before, c, data.draw(st.booleans()), data.draw(st.booleans()))
        assert after.crossing_count == before.crossing_count + 2
    assert after.component_count == before.component_count
    assert _knot_and_link_invariants(after) == _knot_and_link_invariants(before)

@pytest.mark.invariants
@settings(max_examples=40, deadline=None)
@given(knot_words())
def test_linking_number_squared_matches_a1(word_and_strands):
    """Test lk² against the z-coefficient on two-component closures."""
    word, strands = word_and_strands
    d = braid(word, strands)
    assume(d.component_count == 2)
    lk_squared(d, check=True)
