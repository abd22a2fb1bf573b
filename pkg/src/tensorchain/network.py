"""Vertices, tensors and networks, plus the line-oriented network file format.

A tensor ``T_A^B`` relates a nonempty covariant vertex set ``A`` to a
(possibly empty) contravariant vertex set ``B``.  A *general* network holds
arbitrary tensors; a *directed* network holds only first-order edges, i.e.
tensors with exactly one covariant and one contravariant index.

File format::

    # comment
    network general
    vertex a
    vertex b
    tensor t1 cov a,b contra -
    edge e a b            # directed networks only: tensor e cov a contra b
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import NetworkError, ParseError

GENERAL = "general"
DIRECTED = "directed"
KINDS = (GENERAL, DIRECTED)

# Tokens may not contain whitespace, commas, or the characters used by the
# chain literal and word syntaxes (``{}|-*``), and may not end in ``.``.
_TOKEN = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.:@+]*[A-Za-z0-9_:@+])?\Z")


def is_token(name: str) -> bool:
    return isinstance(name, str) and _TOKEN.match(name) is not None


def _check_token(name, what):
    if not is_token(name):
        raise NetworkError(f"invalid {what} name {name!r}")


@dataclass(frozen=True)
class Tensor:
    """A primitive relation ``T_A^B`` identified by ``id``."""

    id: str
    covariant: frozenset
    contravariant: frozenset = frozenset()

    def __post_init__(self):
        _check_token(self.id, "tensor")
        cov = frozenset(self.covariant)
        contra = frozenset(self.contravariant)
        if not cov:
            raise NetworkError(f"tensor {self.id}: covariant index set is empty")
        for v in cov | contra:
            _check_token(v, "vertex")
        object.__setattr__(self, "covariant", cov)
        object.__setattr__(self, "contravariant", contra)

    @property
    def is_trivial(self) -> bool:
        """True for the empty tensor ``v^v_v``."""
        return len(self.covariant) == 1 and self.covariant == self.contravariant

    @property
    def is_correlation(self) -> bool:
        return not self.contravariant

    def __repr__(self):
        cov = ",".join(sorted(self.covariant))
        contra = ",".join(sorted(self.contravariant)) or "-"
        return f"Tensor({self.id}: cov {cov} contra {contra})"


def psi(t: Tensor) -> frozenset:
    """Covariant index set."""
    return t.covariant


def phi(t: Tensor) -> frozenset:
    """Contravariant index set (possibly empty)."""
    return t.contravariant


def index_set(t: Tensor) -> frozenset:
    """All indices of ``t``: covariant and contravariant together."""
    return t.covariant | t.contravariant


@dataclass(frozen=True)
class Network:
    """A finite network.  Tensors are kept sorted by id."""

    kind: str
    vertices: frozenset
    tensors: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise NetworkError(f"unknown network kind {self.kind!r}")
        vertices = frozenset(self.vertices)
        for v in vertices:
            _check_token(v, "vertex")
        tensors = tuple(sorted(self.tensors, key=lambda t: t.id))
        seen = set()
        for t in tensors:
            if t.id in seen:
                raise NetworkError(f"duplicate tensor id {t.id!r}")
            seen.add(t.id)
            missing = index_set(t) - vertices
            if missing:
                raise NetworkError(f"tensor {t.id}: unknown vertex {min(missing)!r}")
            _check_arity(self.kind, t)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "tensors", tensors)

    # ``cached_property`` writes straight into ``__dict__``, so it coexists
    # with ``frozen=True``; the caches are derived data and excluded from eq.

    @cached_property
    def tensor_ids(self) -> tuple:
        return tuple(t.id for t in self.tensors)

    @cached_property
    def tensor_map(self) -> dict:
        return {t.id: t for t in self.tensors}

    @cached_property
    def tensor_position(self) -> dict:
        return {tid: i for i, tid in enumerate(self.tensor_ids)}

    @cached_property
    def adjacent_pairs(self) -> tuple:
        """``((i, j), shared)`` for every pair of distinct tensors sharing a vertex.

        Pairs are ordered ``i < j`` and the tuple is sorted, so the position
        of a pair is stable and can be used as a bit index.
        """
        out = []
        ts = self.tensors
        for a in range(len(ts)):
            ia = index_set(ts[a])
            for b in range(a + 1, len(ts)):
                shared = ia & index_set(ts[b])
                if shared:
                    out.append(((ts[a].id, ts[b].id), shared))
        return tuple(out)

    @cached_property
    def pair_position(self) -> dict:
        return {pair: k for k, (pair, _) in enumerate(self.adjacent_pairs)}

    @cached_property
    def pair_endpoint_masks(self) -> tuple:
        """For each adjacent pair, the bitmask of its two tensors."""
        pos = self.tensor_position
        return tuple((1 << pos[i]) | (1 << pos[j]) for (i, j), _ in self.adjacent_pairs)

    def tensor(self, tid: str) -> Tensor:
        try:
            return self.tensor_map[tid]
        except KeyError:
            raise NetworkError(f"unknown tensor {tid!r}") from None

    def __contains__(self, t):
        return isinstance(t, Tensor) and self.tensor_map.get(t.id) == t

    @property
    def is_directed(self) -> bool:
        return self.kind == DIRECTED

    def source(self, edge_id: str) -> str:
        (s,) = self.tensor(edge_id).covariant
        return s

    def range(self, edge_id: str) -> str:
        (r,) = self.tensor(edge_id).contravariant
        return r


def _check_arity(kind, t):
    if kind == DIRECTED:
        if len(t.covariant) != 1 or len(t.contravariant) != 1:
            raise NetworkError(
                f"tensor {t.id}: directed networks admit only edges with one source and one range"
            )
    elif t.is_trivial:
        raise NetworkError(f"tensor {t.id}: trivial tensors are only admitted in directed networks")


def make_network(kind: str, vertices: Iterable[str], tensors: Iterable[Tensor]) -> Network:
    return Network(kind, frozenset(vertices), tuple(tensors))


def from_tensor_graph(nodes: Iterable[str], edges: Iterable[tuple]) -> Network:
    """A general network whose tensor graph is the given simple graph.

    Tensor ``n`` gets a private vertex ``n:`` plus one vertex per incident
    edge, so two tensors share a vertex exactly when they are joined.
    """
    nodes = [str(n) for n in nodes]
    cov = {n: {f"{n}:"} for n in nodes}
    for a, b in edges:
        a, b = str(a), str(b)
        if a == b:
            raise NetworkError("tensor graphs are simple: no self-loops")
        v = f"{min(a, b)}:{max(a, b)}"
        cov[a].add(v)
        cov[b].add(v)
    vertices = set().union(*cov.values()) if cov else set()
    return make_network(GENERAL, vertices, (Tensor(n, frozenset(c)) for n, c in cov.items()))


def _split_set(text, lineno):
    if text == "-":
        return frozenset()
    items = text.split(",")
    if any(not item for item in items):
        raise ParseError(f"malformed index list {text!r}", lineno)
    return frozenset(items)


def parse_network(text) -> Network:
    """Parse the network file format; ``text`` may be ``str`` or ``bytes``."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None

    kind = None
    vertex_lines = {}
    tensor_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if kind is None:
            if words[0] != "network":
                raise ParseError("missing network header", lineno)
            if len(words) != 2 or words[1] not in KINDS:
                raise ParseError("header must be 'network general' or 'network directed'", lineno)
            kind = words[1]
            continue
        head = words[0]
        if head == "vertex":
            if len(words) != 2:
                raise ParseError("expected 'vertex <name>'", lineno)
            name = words[1]
            if not is_token(name):
                raise ParseError(f"invalid vertex name {name!r}", lineno)
            if name in vertex_lines:
                raise ParseError(f"duplicate vertex {name!r}", lineno)
            vertex_lines[name] = lineno
        elif head == "tensor":
            if len(words) != 6 or words[2] != "cov" or words[4] != "contra":
                raise ParseError("expected 'tensor <id> cov <v,...> contra <w,...|->'", lineno)
            tensor_lines.append((lineno, words[1], _split_set(words[3], lineno), _split_set(words[5], lineno)))
        elif head == "edge":
            if kind != DIRECTED:
                raise ParseError("'edge' lines are only allowed in directed networks", lineno)
            if len(words) != 4:
                raise ParseError("expected 'edge <id> <source> <range>'", lineno)
            tensor_lines.append((lineno, words[1], frozenset([words[2]]), frozenset([words[3]])))
        elif head == "network":
            raise ParseError("duplicate network header", lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if kind is None:
        raise ParseError("missing network header", 1 if text.strip() else None)

    tensors = []
    seen = {}
    for lineno, tid, cov, contra in tensor_lines:
        if tid in seen:
            raise ParseError(f"duplicate tensor id {tid!r}", lineno)
        seen[tid] = lineno
        unknown = sorted((cov | contra) - vertex_lines.keys())
        if unknown:
            raise ParseError(f"unknown vertex {unknown[0]!r}", lineno)
        try:
            t = Tensor(tid, cov, contra)
            _check_arity(kind, t)
        except NetworkError as exc:
            raise ParseError(str(exc), lineno) from None
        tensors.append(t)
    return make_network(kind, vertex_lines, tensors)


def serialize_network(n: Network) -> str:
    """Canonical text: sorted vertices, tensors sorted by id, sorted index lists."""
    lines = [f"network {n.kind}"]
    lines.extend(f"vertex {v}" for v in sorted(n.vertices))
    for t in n.tensors:
        if n.kind == DIRECTED:
            lines.append(f"edge {t.id} {n.source(t.id)} {n.range(t.id)}")
        else:
            cov = ",".join(sorted(t.covariant))
            contra = ",".join(sorted(t.contravariant)) or "-"
            lines.append(f"tensor {t.id} cov {cov} contra {contra}")
    return "\n".join(lines) + "\n"
