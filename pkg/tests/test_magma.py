from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorchain.magma import MagmaTable


def three_element_table():
    elements = ["a", "b", "c"]
    rows = [["a", "c", "b"], ["c", "b", "a"], ["b", "a", "c"]]
    return MagmaTable.from_rows(elements, rows)


def test_three_element_magma():
    m = three_element_table()
    assert m.is_idempotent()
    assert m.is_commutative()
    assert m.op(m.op("a", "b"), "c") == "c"
    assert m.op("a", m.op("b", "c")) == "a"
    a, b, c = m.find_associativity_counterexample()
    assert m.op(m.op(a, b), c) != m.op(a, m.op(b, c))


def test_semilattice_of_subsets():
    elements = [frozenset(s) for s in [(), (1,), (2,), (1, 2)]]
    m = MagmaTable.from_operation(elements, lambda x, y: x | y)
    report = m.laws()
    assert report.idempotent and report.commutative and report.associative
    assert report.elements == 4


def test_open_table():
    m = MagmaTable.from_operation([1, 2], lambda x, y: x + y)
    assert not m.closed
    assert m.op(1, 1) == 2
    assert m.op(2, 2) is None
    with pytest.raises(ValueError):
        m.find_associativity_counterexample()


def test_duplicate_elements_rejected():
    with pytest.raises(ValueError):
        MagmaTable.from_operation([1, 1], max)


def test_compatibility_violation():
    m = MagmaTable.from_operation(list(range(4)), lambda x, y: (x + y) % 4)
    assert m.compatibility_violation([x % 2 for x in range(4)]) is None
    bad = m.compatibility_violation([x == 0 for x in range(4)])
    assert bad is not None
    a, b, c, side = bad
    lab = lambda x: x == 0
    assert lab(a) == lab(b)
    if side == "left":
        assert lab(m.op(c, a)) != lab(m.op(c, b))
    else:
        assert lab(m.op(a, c)) != lab(m.op(b, c))


def brute_associative(m):
    e = m.elements
    return all(m.op(m.op(a, b), c) == m.op(a, m.op(b, c)) for a, b, c in cartesian(e, e, e))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_associativity_matches_brute_force(rows):
    n = len(rows)
    m = MagmaTable.from_rows(list(range(n)), rows)
    assert m.is_associative() == brute_associative(m)
    triple = m.find_associativity_counterexample()
    if triple is not None:
        a, b, c = triple
        assert m.op(m.op(a, b), c) != m.op(a, m.op(b, c))
