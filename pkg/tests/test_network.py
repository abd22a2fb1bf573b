import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorchain.errors import NetworkError, ParseError
from tensorchain.network import (
    DIRECTED,
    GENERAL,
    Tensor,
    from_tensor_graph,
    index_set,
    make_network,
    parse_network,
    phi,
    psi,
    serialize_network,
)

from conftest import FIXTURES, random_network


def test_tensor_index_sets():
    t = Tensor("t", frozenset({"a", "b"}), frozenset({"c"}))
    assert psi(t) == {"a", "b"}
    assert phi(t) == {"c"}
    assert index_set(t) == {"a", "b", "c"}
    assert not t.is_correlation
    assert Tensor("u", frozenset({"a"})).is_correlation


def test_tensor_needs_covariant_indices():
    with pytest.raises(NetworkError):
        Tensor("t", frozenset())


def test_trivial_tensor_detected():
    assert Tensor("t", frozenset({"a"}), frozenset({"a"})).is_trivial
    assert not Tensor("t", frozenset({"a", "b"}), frozenset({"a", "b"})).is_trivial


def test_general_network_rejects_trivial_tensor():
    with pytest.raises(NetworkError):
        make_network(GENERAL, {"a"}, [Tensor("t", frozenset({"a"}), frozenset({"a"}))])


def test_duplicate_tensor_id():
    t = Tensor("t", frozenset({"a"}))
    with pytest.raises(NetworkError, match="duplicate"):
        make_network(GENERAL, {"a"}, [t, t])


def test_unknown_vertex():
    with pytest.raises(NetworkError, match="unknown vertex"):
        make_network(GENERAL, {"a"}, [Tensor("t", frozenset({"b"}))])


def test_directed_arity():
    with pytest.raises(NetworkError):
        make_network(DIRECTED, {"a", "b"}, [Tensor("e", frozenset({"a", "b"}), frozenset({"b"}))])


def test_directed_self_loop_is_an_edge():
    net = parse_network("network directed\nvertex a\nedge e a a\n")
    assert net.source("e") == net.range("e") == "a"


def test_bad_token():
    with pytest.raises(NetworkError):
        Tensor("t t", frozenset({"a"}))
    with pytest.raises(NetworkError):
        Tensor("t", frozenset({"a,b"}))


def test_adjacent_pairs_sorted():
    net = parse_network((FIXTURES / "ex1.net").read_text())
    pairs = [pair for pair, _ in net.adjacent_pairs]
    assert pairs == [("t1", "t2"), ("t2", "t3"), ("t2", "t4")]
    shared = dict(net.adjacent_pairs)
    assert shared[("t1", "t2")] == {"b"}


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("vertex a\n", 1, "missing network header"),
        ("", None, "missing network header"),
        ("network general\nvertex a\ntensor t1 cov a\n", 3, "expected"),
        ("network general\nvertex a\ntensor t1 cov b contra -\n", 3, "unknown vertex"),
        ("network general\nvertex a\nvertex a\n", 3, "duplicate vertex"),
        ("network general\nvertex a\nedge e a a\n", 3, "only allowed in directed"),
        ("network general\nfoo\n", 2, "unknown directive"),
        ("network weird\n", 1, "header"),
        ("network general\nvertex a\ntensor t1 cov a, contra -\n", 3, "malformed"),
        ("network general\nvertex a\ntensor t1 cov a contra -\ntensor t1 cov a contra -\n", 4, "duplicate tensor"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_network(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    if line is not None:
        assert str(info.value).startswith(f"line {line}: ")


def test_parse_bytes_and_bad_utf8():
    net = parse_network(b"network general\nvertex a\ntensor t cov a contra -\n")
    assert net.tensor_ids == ("t",)
    with pytest.raises(ParseError, match="UTF-8"):
        parse_network(b"network general\n\xff\n")


def test_vertices_may_follow_tensors():
    net = parse_network("network general\ntensor t cov a contra -\nvertex a\n")
    assert net.vertices == {"a"}


def test_comments_and_blank_lines():
    text = "# header\n\nnetwork general\n  # indented comment\nvertex a\ntensor t cov a contra -\n"
    assert len(parse_network(text).tensors) == 1


@pytest.mark.parametrize("name", ["ex1.net", "triangle.net", "single_edge.net", "two_cycle.net", "branching.net", "sinks.net"])
def test_fixture_round_trip(name):
    net = parse_network((FIXTURES / name).read_text())
    text = serialize_network(net)
    again = parse_network(text)
    assert again == net
    assert serialize_network(again) == text


def test_from_tensor_graph_adjacency():
    net = from_tensor_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert [pair for pair, _ in net.adjacent_pairs] == [("a", "b"), ("b", "c")]
    with pytest.raises(NetworkError):
        from_tensor_graph(["a"], [("a", "a")])


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_round_trip(rng):
    net = random_network(rng)
    assert parse_network(serialize_network(net)) == net
