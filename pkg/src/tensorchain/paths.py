"""Graph inverse semigroup of a directed network, built from tensors.

Generators are the trivial tensors ``v^v_v`` (one per vertex), the edges
``e`` (covariant ``s(e)``, contravariant ``r(e)``) and their formal inverses
``e*`` (covariant ``r(e)``, contravariant ``s(e)``).  Every nonzero element
has the unique normal form ``p q*`` for directed paths ``p``, ``q`` with a
common range.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import KindError, NetworkError, WordError
from .network import Network

VERTEX = "vertex"
EDGE = "edge"
STAR = "star"


def _require_directed(network):
    if not network.is_directed:
        raise KindError("path algebra needs a directed network")


@dataclass(frozen=True)
class Generator:
    kind: str
    name: str

    def __str__(self):
        if self.kind == VERTEX:
            return f"{self.name}."
        if self.kind == STAR:
            return f"{self.name}*"
        return self.name


def trivial(v: str) -> Generator:
    return Generator(VERTEX, v)


def edge(e: str) -> Generator:
    return Generator(EDGE, e)


def star(e: str) -> Generator:
    return Generator(STAR, e)


def generators(network: Network) -> list:
    """All of ``T^0``, ``T`` and ``T*`` for a directed network."""
    _require_directed(network)
    out = [trivial(v) for v in sorted(network.vertices)]
    out += [edge(e) for e in network.tensor_ids]
    out += [star(e) for e in network.tensor_ids]
    return out


def _check_generator(network, g):
    if g.kind == VERTEX:
        if g.name not in network.vertices:
            raise WordError(f"unknown vertex {g.name!r}")
    elif g.kind in (EDGE, STAR):
        if g.name not in network.tensor_map:
            raise WordError(f"unknown edge {g.name!r}")
    else:
        raise WordError(f"unknown generator kind {g.kind!r}")


def gen_psi(network: Network, g: Generator) -> str:
    """The single covariant index of a generator."""
    if g.kind == VERTEX:
        return g.name
    return network.source(g.name) if g.kind == EDGE else network.range(g.name)


def gen_phi(network: Network, g: Generator) -> str:
    """The single contravariant index of a generator."""
    if g.kind == VERTEX:
        return g.name
    return network.range(g.name) if g.kind == EDGE else network.source(g.name)


# -- paths and normal forms -------------------------------------------------


@dataclass(frozen=True)
class DirectedPath:
    """``e_1 ... e_k`` from ``source`` to ``range``; length 0 is the trivial path."""

    source: str
    range: str
    edges: tuple = ()

    @property
    def trivial(self) -> bool:
        return not self.edges

    def __len__(self):
        return len(self.edges)

    def then(self, other: "DirectedPath") -> "DirectedPath":
        if self.range != other.source:
            raise ValueError(f"cannot compose a path ending at {self.range} with one starting at {other.source}")
        return DirectedPath(self.source, other.range, self.edges + other.edges)

    def strip_prefix(self, prefix: "DirectedPath") -> Optional["DirectedPath"]:
        """``z`` with ``self == prefix.then(z)``, or None when ``prefix`` is not a prefix."""
        if prefix.source != self.source:
            return None
        k = len(prefix.edges)
        if self.edges[:k] != prefix.edges:
            return None
        return DirectedPath(prefix.range, self.range, self.edges[k:])

    def __str__(self):
        return " ".join(self.edges) if self.edges else f"1@{self.source}"


def vertex_path(v: str) -> DirectedPath:
    return DirectedPath(v, v)


def make_path(network: Network, edges: Sequence[str], base: Optional[str] = None) -> DirectedPath:
    """Validated path; ``base`` is required (and only used) for the trivial path."""
    _require_directed(network)
    edges = tuple(edges)
    if not edges:
        if base is None or base not in network.vertices:
            raise ValueError("a trivial path needs a vertex of the network")
        return vertex_path(base)
    for a, b in zip(edges, edges[1:]):
        if network.range(a) != network.source(b):
            raise ValueError(f"edges {a} and {b} are not composable")
    return DirectedPath(network.source(edges[0]), network.range(edges[-1]), edges)


class Zero:
    """The zero element ``o``."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __str__(self):
        return "0"

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


@dataclass(frozen=True)
class PathPair:
    """The nonzero element ``p q*``; ``p`` and ``q`` share their range."""

    p: DirectedPath
    q: DirectedPath

    def __post_init__(self):
        if self.p.range != self.q.range:
            raise ValueError(f"p ends at {self.p.range} but q ends at {self.q.range}")

    def __str__(self):
        return format_normal_form(self)


NormalForm = Union[PathPair, Zero]


def format_normal_form(a: NormalForm) -> str:
    """``p | q*`` with ``1@v`` for trivial paths; the ``| q*`` part is dropped for trivial ``q``."""
    if a is ZERO:
        return "0"
    if a.q.trivial:
        return str(a.p)
    qstar = " ".join(f"{e}*" for e in reversed(a.q.edges))
    return f"{a.p} | {qstar}"


def generator_form(network: Network, g: Generator) -> PathPair:
    _check_generator(network, g)
    if g.kind == VERTEX:
        v = vertex_path(g.name)
        return PathPair(v, v)
    path = make_path(network, [g.name])
    end = vertex_path(path.range)
    return PathPair(path, end) if g.kind == EDGE else PathPair(end, path)


def product(a: NormalForm, b: NormalForm) -> NormalForm:
    """``(p q*)(x y*)``: ``p z y*`` if ``x = q z``; ``p (y w)*`` if ``q = x w``; else zero."""
    if a is ZERO or b is ZERO:
        return ZERO
    z = b.p.strip_prefix(a.q)
    if z is not None:
        return PathPair(a.p.then(z), b.q)
    w = a.q.strip_prefix(b.p)
    if w is not None:
        return PathPair(a.p, b.q.then(w))
    return ZERO


def product_all(items: Iterable[NormalForm]) -> NormalForm:
    acc = None
    for x in items:
        acc = x if acc is None else product(acc, x)
    if acc is None:
        raise ValueError("empty product")
    return acc


def is_idempotent(a: NormalForm) -> bool:
    return a is ZERO or a.p == a.q


def inverse(a: NormalForm) -> NormalForm:
    return ZERO if a is ZERO else PathPair(a.q, a.p)


# -- extended chain addition on generators ----------------------------------

# Outcomes of one application of the extended chain addition.
LEFT, RIGHT, CONCAT, CANCEL, NONE = "left", "right", "concat", "cancel", "none"


def _bar_add_case(network, t1: Generator, t2: Generator):
    """Which clause of the extended chain addition applies to ``t1, t2``."""
    _check_generator(network, t1)
    _check_generator(network, t2)
    meet = gen_phi(network, t1) == gen_psi(network, t2)
    if t2.kind == VERTEX and meet:
        return LEFT
    if t1.kind == VERTEX and meet:
        return RIGHT
    kinds = (t1.kind, t2.kind)
    if kinds in ((EDGE, EDGE), (STAR, STAR), (EDGE, STAR)) and meet:
        return CONCAT
    if kinds == (STAR, EDGE) and t1.name == t2.name:
        return CANCEL
    return NONE


def bar_add(network: Network, t1: Generator, t2: Generator) -> NormalForm:
    """Extended chain addition of two generators, as a normal form."""
    _require_directed(network)
    case = _bar_add_case(network, t1, t2)
    if case == LEFT:
        return generator_form(network, t1)
    if case == RIGHT:
        return generator_form(network, t2)
    if case == CANCEL:
        return generator_form(network, trivial(gen_phi(network, t2)))
    if case == NONE:
        return ZERO
    # 2-line chain t1 t2
    if t1.kind == EDGE and t2.kind == EDGE:
        path = make_path(network, [t1.name, t2.name])
        return PathPair(path, vertex_path(path.range))
    if t1.kind == STAR:
        # e* f* = (f e)*
        path = make_path(network, [t2.name, t1.name])
        return PathPair(vertex_path(path.range), path)
    return PathPair(make_path(network, [t1.name]), make_path(network, [t2.name]))


def reduce_word(network: Network, word: Sequence[Generator]) -> NormalForm:
    """Left-to-right reduction of a generator word by the extended chain addition.

    The reduced word is kept as a stack; each new letter is combined with
    the last letter only, and a cancellation ``e* e`` leaves the trivial
    tensor ``r(e)`` to be absorbed by the letter before it.
    """
    _require_directed(network)
    if not word:
        raise WordError("empty word")
    stack = []
    for g in word:
        _check_generator(network, g)
        pending = g
        while pending is not None:
            if not stack:
                stack.append(pending)
                break
            case = _bar_add_case(network, stack[-1], pending)
            if case == LEFT:
                pending = None
            elif case == RIGHT:
                stack[-1] = pending
                pending = None
            elif case == CONCAT:
                stack.append(pending)
                pending = None
            elif case == CANCEL:
                stack.pop()
                pending = trivial(gen_phi(network, pending))
            else:
                return ZERO
    return _stack_to_normal_form(network, stack)


def _stack_to_normal_form(network, stack):
    if len(stack) == 1 and stack[0].kind == VERTEX:
        return generator_form(network, stack[0])
    edges = [g.name for g in stack if g.kind == EDGE]
    stars = [g.name for g in stack if g.kind == STAR]
    if any(g.kind == VERTEX for g in stack):
        raise AssertionError("trivial tensor left inside a reduced word")
    q_edges = list(reversed(stars))
    if edges:
        p = make_path(network, edges)
    else:
        p = vertex_path(network.range(q_edges[-1]))
    q = make_path(network, q_edges, base=p.range)
    return PathPair(p, q)


def evaluate_word(network: Network, word: Sequence[Generator]) -> NormalForm:
    """The same element as :func:`reduce_word`, via products of normal forms."""
    if not word:
        raise WordError("empty word")
    return product_all(generator_form(network, g) for g in word)


def parse_word(network: Network, text: str) -> list:
    """Whitespace-separated generators: ``e``, ``e*``, ``v.`` (or ``1@v``)."""
    _require_directed(network)
    out = []
    for tok in text.split():
        if tok.endswith("*"):
            g = star(tok[:-1])
        elif tok.endswith("."):
            g = trivial(tok[:-1])
        elif tok.startswith("1@"):
            g = trivial(tok[2:])
        else:
            g = edge(tok)
        _check_generator(network, g)
        out.append(g)
    if not out:
        raise WordError("empty word")
    return out


# -- enumeration ------------------------------------------------------------


def directed_paths(network: Network, max_length: int) -> list:
    """Every directed path of length at most ``max_length``, trivial paths first."""
    _require_directed(network)
    out = [vertex_path(v) for v in sorted(network.vertices)]
    frontier = [make_path(network, [e]) for e in network.tensor_ids] if max_length >= 1 else []
    length = 1
    while frontier:
        out.extend(frontier)
        if length == max_length:
            break
        nxt = []
        for path in frontier:
            for e in network.tensor_ids:
                if network.source(e) == path.range:
                    nxt.append(DirectedPath(path.source, network.range(e), path.edges + (e,)))
        frontier = nxt
        length += 1
    return out


def normal_forms(network: Network, max_length: int) -> list:
    """ZERO and every ``p q*`` with both paths of length at most ``max_length``."""
    paths = directed_paths(network, max_length)
    out = [ZERO]
    for p in paths:
        for q in paths:
            if p.range == q.range:
                out.append(PathPair(p, q))
    return out


# -- presentation relations -------------------------------------------------


def generator_relation_instances(network: Network) -> Iterator[tuple]:
    """``(name, lhs, rhs)`` for every instance of the four defining relations."""
    _require_directed(network)
    gens = generators(network)
    for g in gens:
        form = generator_form(network, g)
        s = trivial(gen_psi(network, g))
        r = trivial(gen_phi(network, g))
        yield (f"unit {s}{g}", bar_add(network, s, g), form)
        yield (f"unit {g}{r}", bar_add(network, g, r), form)
    vs = sorted(network.vertices)
    for u in vs:
        for v in vs:
            if u != v:
                yield (f"vertices {u}.{v}.", bar_add(network, trivial(u), trivial(v)), ZERO)
    es = network.tensor_ids
    for e in es:
        for f in es:
            if e != f:
                yield (f"orthogonal {e}*{f}", bar_add(network, star(e), edge(f)), ZERO)
        r = generator_form(network, trivial(network.range(e)))
        yield (f"cancel {e}*{e}", bar_add(network, star(e), edge(e)), r)


def verify_generator_relations(network: Network) -> bool:
    return all(lhs == rhs for _, lhs, rhs in generator_relation_instances(network))


# -- vertex order and Cuntz-Krieger relations -------------------------------


def vertex_leq(u: str, v: str, network: Network) -> bool:
    """``u <= v`` when some directed path runs from ``v`` to ``u``."""
    _require_directed(network)
    for x in (u, v):
        if x not in network.vertices:
            raise NetworkError(f"unknown vertex {x!r}")
    out = {}
    for e in network.tensor_ids:
        out.setdefault(network.source(e), []).append(network.range(e))
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if x == u:
            return True
        for y in out.get(x, ()):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def path_leq(path: DirectedPath, v: str, network: Network) -> bool:
    """``q <= v`` when every edge of ``q`` has its range below ``v``."""
    return all(vertex_leq(network.range(e), v, network) for e in path.edges)


@dataclass(frozen=True)
class CK1:
    vertex: str
    edges: tuple

    def __str__(self):
        return f"{self.vertex} = " + " + ".join(f"{e} {e}*" for e in self.edges)

    def tensor_form(self):
        v = self.vertex
        return f"{v}^{v}_{v} = " + " + ".join(f"{e} {e}*" for e in self.edges)


@dataclass(frozen=True)
class CK2:
    edge: str
    vertex: str
    holds: bool

    def __str__(self):
        return f"{self.edge} {self.edge}* <= {self.vertex}"

    def tensor_form(self):
        return f"{self.edge} {self.edge}* <= psi({self.edge}) = {self.vertex}"


@dataclass(frozen=True)
class RelationSet:
    ck1: tuple
    ck2: tuple


def ck_relations(network: Network) -> RelationSet:
    """CK1 for every vertex with outgoing edges, CK2 for every edge."""
    _require_directed(network)
    out = {}
    for e in network.tensor_ids:
        out.setdefault(network.source(e), []).append(e)
    ck1 = tuple(CK1(v, tuple(out[v])) for v in sorted(out))
    ck2 = tuple(
        CK2(e, network.source(e), path_leq(make_path(network, [e]), network.source(e), network))
        for e in network.tensor_ids
    )
    return RelationSet(ck1, ck2)
