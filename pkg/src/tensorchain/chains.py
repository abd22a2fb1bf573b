"""Chain addition, 2-chains, reducing, and the elements of the chain space.

An element of the chain space is either :data:`EMPTY` or a connected
:class:`TensorChain` ``(P, S)``: a set of tensors ``P`` and a set ``S`` of
2-chains among them.  Internally ``P`` and ``S`` are bitmasks over the
network's sorted tensor ids and sorted adjacent pairs, which keeps
:func:`reduce` cheap enough for exhaustive law checking.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ChainError, DomainError
from .network import Network, Tensor, index_set


@dataclass(frozen=True)
class TwoChain:
    """``l_ij``: an unordered pair of tensor ids and the vertices they share.

    A one-element ``pair`` is the degenerate form ``l_ii``, whose ``shared``
    set is the whole index set of the tensor.
    """

    pair: frozenset
    shared: frozenset

    @property
    def degenerate(self) -> bool:
        return len(self.pair) == 1

    def ids(self) -> tuple:
        return tuple(sorted(self.pair))

    def __repr__(self):
        return "TwoChain(" + "-".join(self.ids()) + ")"


class EmptyChain:
    """The absorbing empty element; a singleton."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    tensors = frozenset()
    pairs = frozenset()
    two_chains = frozenset()

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (EmptyChain, ())

    def __bool__(self):
        return False


EMPTY = EmptyChain()


class TensorChain:
    """A nonempty connected chain ``(P, S)`` over one network."""

    __slots__ = ("network", "pmask", "smask", "_hash")

    def __init__(self, network: Network, pmask: int, smask: int):
        self.network = network
        self.pmask = pmask
        self.smask = smask
        self._hash = None

    @classmethod
    def _trusted(cls, network, pmask, smask):
        obj = object.__new__(cls)
        obj.network = network
        obj.pmask = pmask
        obj.smask = smask
        obj._hash = None
        return obj

    def __eq__(self, other):
        if not isinstance(other, TensorChain):
            return NotImplemented
        return (
            self.pmask == other.pmask
            and self.smask == other.smask
            and (self.network is other.network or self.network == other.network)
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.pmask, self.smask))
        return h

    def __bool__(self):
        return True

    @property
    def tensors(self) -> frozenset:
        ids = self.network.tensor_ids
        return frozenset(ids[i] for i in _bits(self.pmask))

    @property
    def pairs(self) -> frozenset:
        """``S`` as a set of two-element frozensets of tensor ids."""
        table = self.network.adjacent_pairs
        return frozenset(frozenset(table[k][0]) for k in _bits(self.smask))

    @property
    def two_chains(self) -> frozenset:
        table = self.network.adjacent_pairs
        return frozenset(TwoChain(frozenset(table[k][0]), table[k][1]) for k in _bits(self.smask))

    @property
    def size(self) -> int:
        """``|P|``."""
        return bin(self.pmask).count("1")

    def sort_key(self):
        return chain_sort_key(self)

    def __repr__(self):
        return format_chain(self)


Chain = Union[TensorChain, EmptyChain]


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def chain_sort_key(c: Chain):
    """Deterministic order: by ``|P|``, then sorted tensor ids, then sorted pairs."""
    if c is EMPTY:
        return (0, (), ())
    net = c.network
    ids = net.tensor_ids
    pairs = net.adjacent_pairs
    return (c.size, tuple(ids[i] for i in _bits(c.pmask)), tuple(pairs[k][0] for k in _bits(c.smask)))


def _tensor_id(network, t):
    tid = t.id if isinstance(t, Tensor) else t
    if tid not in network.tensor_map or (isinstance(t, Tensor) and network.tensor_map[tid] != t):
        raise DomainError(f"tensor {tid!r} does not belong to this network")
    return tid


def same_network(a: Network, b: Network) -> bool:
    return a is b or a == b


def chain_add(network: Network, t1, t2) -> Union[TwoChain, EmptyChain]:
    """``t1 (+) t2``: the 2-chain of two tensors, ``l_ii`` for equal ones, else EMPTY.

    ``t1`` and ``t2`` may be :class:`Tensor` objects or tensor ids.
    """
    i = _tensor_id(network, t1)
    j = _tensor_id(network, t2)
    ti, tj = network.tensor(i), network.tensor(j)
    if i == j:
        return TwoChain(frozenset([i]), index_set(ti))
    shared = index_set(ti) & index_set(tj)
    if not shared:
        return EMPTY
    return TwoChain(frozenset([i, j]), shared)


def is_connected(P: Iterable[str], S: Iterable) -> bool:
    """True when every two tensors of ``P`` are joined by a walk of 2-chains in ``S``."""
    P = set(P)
    if not P:
        return False
    adj = {t: set() for t in P}
    for item in S:
        ends = _pair_ids(item)
        if len(ends) == 1:
            continue
        a, b = ends
        if a not in adj or b not in adj:
            raise ChainError(f"2-chain {a}-{b} has an endpoint outside P")
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(P))
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(P)


def _pair_ids(item) -> tuple:
    if isinstance(item, TwoChain):
        return item.ids()
    ids = tuple(sorted(set(item)))
    if not 1 <= len(ids) <= 2:
        raise ChainError(f"a 2-chain joins one or two tensors, got {item!r}")
    return ids


def make_chain(network: Network, P: Iterable, S: Iterable = ()) -> TensorChain:
    """The canonical chain ``(+)(P|S)``; degenerate self-pairs are dropped."""
    pos = network.tensor_position
    P = {_tensor_id(network, t) for t in P}
    if not P:
        raise ChainError("a tensor chain needs at least one tensor")
    pmask = 0
    for t in P:
        pmask |= 1 << pos[t]
    smask = 0
    kept = []
    for item in S:
        ends = _pair_ids(item)
        for t in ends:
            _tensor_id(network, t)
        if not set(ends) <= P:
            raise ChainError(f"2-chain {'-'.join(ends)} has an endpoint outside P")
        if len(ends) == 1:
            continue
        k = network.pair_position.get(ends)
        if k is None:
            raise ChainError(f"invalid 2-chain {ends[0]}-{ends[1]}: no shared vertex")
        if isinstance(item, TwoChain) and item.shared != network.adjacent_pairs[k][1]:
            raise ChainError(f"invalid 2-chain {ends[0]}-{ends[1]}: wrong shared vertex set")
        smask |= 1 << k
        kept.append(ends)
    if not is_connected(P, kept):
        raise ChainError("disconnected chain")
    return TensorChain._trusted(network, pmask, smask)


def one_chain(network: Network, t) -> TensorChain:
    return make_chain(network, [t])


def two_chain_to_chain(network: Network, l: Union[TwoChain, EmptyChain]) -> Chain:
    if l is EMPTY:
        return EMPTY
    return make_chain(network, l.pair, [l])


def reduce_two_chains(network: Network, l1, l2) -> Chain:
    """Reducing on 2-chains (including degenerate ``l_ii``), clause by clause.

    Arguments are :class:`TwoChain` values (or EMPTY) of ``network``.
    """
    for l in (l1, l2):
        if l is EMPTY:
            return EMPTY
        if not isinstance(l, TwoChain):
            raise TypeError(f"expected a TwoChain, got {l!r}")
        ids = l.ids()
        if chain_add(network, ids[0], ids[-1]) != l:
            raise DomainError(f"{l!r} is not a 2-chain of this network")
    if l1.degenerate and l2.degenerate:
        return two_chain_to_chain(network, l1) if l1 == l2 else EMPTY
    if l1.degenerate or l2.degenerate:
        single, full = (l1, l2) if l1.degenerate else (l2, l1)
        return two_chain_to_chain(network, full) if single.pair <= full.pair else EMPTY
    if l1 == l2:
        return two_chain_to_chain(network, l1)
    if l1.pair & l2.pair:
        return make_chain(network, l1.pair | l2.pair, [l1, l2])
    return EMPTY


def reduce(l1: Chain, l2: Chain) -> Chain:
    """Reducing of two chains: merge them when they share a tensor, else EMPTY."""
    if l1 is EMPTY or l2 is EMPTY:
        return EMPTY
    if l1.network is not l2.network and l1.network != l2.network:
        raise DomainError("chains belong to different networks")
    if l1.pmask & l2.pmask:
        return TensorChain._trusted(l1.network, l1.pmask | l2.pmask, l1.smask | l2.smask)
    return EMPTY


def reduce_all(chains: Iterable[Chain]) -> Chain:
    """Left fold of :func:`reduce`; EMPTY for no chains."""
    acc = None
    for c in chains:
        acc = c if acc is None else reduce(acc, c)
    return EMPTY if acc is None else acc


# -- chain literals ---------------------------------------------------------

_LITERAL = re.compile(r"\s*chain\s*\{(?P<body>[^{}]*)\}\s*\Z")


def format_chain(c: Chain) -> str:
    """``chain{t1,t2,t3 | t1-t2, t2-t3}``, ``chain{t1 |}`` or ``empty``."""
    if c is EMPTY:
        return "empty"
    _, ids, pairs = chain_sort_key(c)
    body = ",".join(ids) + " |"
    if pairs:
        body += " " + ", ".join(f"{a}-{b}" for a, b in pairs)
    return "chain{" + body + "}"


def parse_chain(network: Network, text: str) -> Chain:
    """Inverse of :func:`format_chain`; the ``| pairs`` part may be omitted."""
    if text.strip() == "empty":
        return EMPTY
    m = _LITERAL.match(text)
    if not m:
        raise ChainError(f"malformed chain literal {text!r}")
    tensor_part, _, pair_part = m.group("body").partition("|")
    ids = [s.strip() for s in tensor_part.split(",") if s.strip()]
    pairs = []
    for item in pair_part.split(","):
        item = item.strip()
        if not item:
            continue
        ends = item.split("-")
        if len(ends) != 2 or not all(ends):
            raise ChainError(f"malformed 2-chain {item!r} in chain literal")
        pairs.append(tuple(e.strip() for e in ends))
    try:
        return make_chain(network, ids, pairs)
    except DomainError as exc:
        raise ChainError(str(exc)) from None
