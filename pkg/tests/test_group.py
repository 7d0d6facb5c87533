import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgflow.errors import GroupMismatchError, InvalidGroupError
from sgflow.group import (
    AbelianGroup,
    add,
    double_solutions,
    epsilon,
    int_scale,
    involution_set,
    make_group,
    neg,
)


@pytest.mark.parametrize("orders, size", [([6], 6), ([2, 4], 8), ([1], 1)])
def test_make_group_order(orders, size):
    assert make_group(orders).order == size


@pytest.mark.parametrize("orders", [[0], [-3], [2, 0], []])
def test_make_group_rejects_bad_orders(orders):
    with pytest.raises(InvalidGroupError):
        make_group(orders)


@pytest.mark.parametrize("text", ["", "a", "2,,3", "2;4", "1.5"])
def test_parse_rejects_garbage(text):
    with pytest.raises(InvalidGroupError):
        AbelianGroup.parse(text)


def test_parse_and_str():
    G = AbelianGroup.parse("2,4")
    assert G.cyclic_orders == (2, 4)
    assert str(G) == "Z_2 x Z_4"


def test_arithmetic():
    Z6 = make_group([6])
    assert add(Z6.element(4), Z6.element(5)) == Z6.element(3)
    assert neg(Z6.element(1)) == Z6.element(5)
    G = make_group([2, 4])
    assert int_scale(2, G.element(1, 3)) == G.element(0, 2)
    assert int_scale(0, G.element(1, 3)).is_zero()
    assert int_scale(-1, G.element(1, 3)) == G.element(1, 1)
    assert 3 * Z6.element(5) == Z6.element(3)


def test_mismatched_groups():
    with pytest.raises(GroupMismatchError):
        add(make_group([6]).element(1), make_group([2, 3]).element(1, 1))
    with pytest.raises(GroupMismatchError):
        make_group([6]).index(make_group([3]).element(1))


@pytest.mark.parametrize("orders, eps", [([3], 0), ([6], 1), ([2, 4], 2), ([2, 2, 2], 3), ([1], 0)])
def test_epsilon(orders, eps):
    G = make_group(orders)
    assert epsilon(G) == eps
    assert len(involution_set(G)) == 2**eps


def test_involutions():
    assert {g.residues for g in involution_set(make_group([6]))} == {(0,), (3,)}
    assert involution_set(make_group([5])) == [make_group([5]).zero]
    assert {g.residues for g in involution_set(make_group([2, 4]))} == {(0, 0), (1, 0), (0, 2), (1, 2)}


def test_double_solutions():
    Z6 = make_group([6])
    assert {g.residues[0] for g in double_solutions(Z6.element(2))} == {2, 5}
    Z5 = make_group([5])
    assert double_solutions(Z5.element(3)) == [Z5.element(3)]
    V = make_group([2, 2])
    assert len(set(double_solutions(V.element(1, 0)))) == 4


def test_element_indexing_round_trip():
    G = make_group([2, 3, 4])
    for i, g in enumerate(G.elements()):
        assert G.index(g) == i
        assert G.from_index(i) == g


def test_to_json():
    assert make_group([5]).element(3).to_json() == 3
    assert make_group([2, 4]).element(1, 2).to_json() == [1, 2]


orders = st.lists(st.integers(1, 6), min_size=1, max_size=3)


@given(orders, st.data())
def test_group_axioms(ords, data):
    G = make_group(ords)
    pick = st.integers(0, G.order - 1).map(G.from_index)
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + G.zero == a
    assert (a + neg(a)).is_zero()
    k = data.draw(st.integers(-10, 10))
    assert int_scale(k, a + b) == int_scale(k, a) + int_scale(k, b)


@given(orders)
def test_involutions_are_exactly_order_two_elements(ords):
    G = make_group(ords)
    brute = {g for g in G.elements() if (g + g).is_zero()}
    assert set(involution_set(G)) == brute
