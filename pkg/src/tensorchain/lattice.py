"""Structure of the chain space: laws, delta-classes, quotient, order, extrema.

Everything exhaustive here works on the full list of chains of a small
network (see :func:`enumerate_chains`) and caps the network size, since
the number of chains grows exponentially with the number of tensors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .chains import EMPTY, Chain, TensorChain, chain_sort_key, reduce
from .errors import CapExceeded, InvalidKey
from .magma import LawReport, MagmaTable
from .matrix_tree import Laplacian
from .network import Network

CHAIN_CAP = 12
SEARCH_CAP = 8

EMPTY_KEY = frozenset()


def _check_cap(count, max_tensors, hard_cap=CHAIN_CAP):
    if max_tensors < 1:
        raise ValueError("max_tensors must be positive")
    if max_tensors > hard_cap or count > max_tensors:
        raise CapExceeded("network too large for exhaustive enumeration")


# -- connected edge sets ----------------------------------------------------


def _line_graph(network, node_mask):
    """Adjacent pairs inside ``node_mask`` and their line-graph neighbour masks."""
    ends = network.pair_endpoint_masks
    edges = [k for k, em in enumerate(ends) if em & node_mask == em]
    nbr = []
    for a, ka in enumerate(edges):
        m = 0
        for b, kb in enumerate(edges):
            if a != b and ends[ka] & ends[kb]:
                m |= 1 << b
        nbr.append(m)
    return edges, nbr


def _connected_sets(nbr):
    """Every nonempty connected vertex set of the graph given by neighbour masks.

    Each set is produced exactly once, grown from its smallest member by
    extending only with exclusive neighbours (the ESU scheme).
    """
    n = len(nbr)
    for v in range(n):
        above = ~((1 << (v + 1)) - 1)
        start = 1 << v
        stack = [(start, nbr[v] | start, nbr[v] & above)]
        while stack:
            sub, closed, ext = stack.pop()
            yield sub
            while ext:
                wb = ext & -ext
                ext ^= wb
                w = wb.bit_length() - 1
                stack.append((sub | wb, closed | nbr[w] | wb, ext | (nbr[w] & ~closed & above)))


def _edge_chains(network, node_mask):
    """``(pmask, smask)`` for every connected nonempty set of 2-chains inside ``node_mask``."""
    edges, nbr = _line_graph(network, node_mask)
    ends = network.pair_endpoint_masks
    for sub in _connected_sets(nbr):
        pmask = smask = 0
        i = 0
        while sub:
            if sub & 1:
                k = edges[i]
                smask |= 1 << k
                pmask |= ends[k]
            sub >>= 1
            i += 1
        yield pmask, smask


def enumerate_chains(network: Network, max_tensors: int = CHAIN_CAP) -> list:
    """All elements of the chain space: EMPTY, then chains in sort order."""
    _check_cap(len(network.tensors), max_tensors)
    out = [TensorChain._trusted(network, 1 << i, 0) for i in range(len(network.tensors))]
    full = (1 << len(network.tensors)) - 1
    out.extend(TensorChain._trusted(network, p, s) for p, s in _edge_chains(network, full))
    out.sort(key=chain_sort_key)
    return [EMPTY] + out


@lru_cache(maxsize=64)
def chain_table(network: Network, max_tensors: int = CHAIN_CAP) -> MagmaTable:
    """Cayley table of reducing over :func:`enumerate_chains`."""
    return MagmaTable.from_operation(enumerate_chains(network, max_tensors), reduce)


# -- relations --------------------------------------------------------------


def chain_size(l: Chain) -> int:
    """``|P|``, with 0 for EMPTY."""
    return 0 if l is EMPTY else l.size


def sigma_related(l1: Chain, l2: Chain) -> bool:
    return chain_size(l1) == chain_size(l2)


def delta_related(l1: Chain, l2: Chain) -> bool:
    return chi(l1) == chi(l2)


def chi(l: Chain) -> frozenset:
    """Projection onto the delta-class key (the tensor set); EMPTY_KEY for EMPTY."""
    return EMPTY_KEY if l is EMPTY else l.tensors


def check_laws(network: Network, max_tensors: int = CHAIN_CAP) -> LawReport:
    """Idempotence and commutativity of reducing, plus an associativity counterexample."""
    return chain_table(network, max_tensors).laws()


def check_delta_congruence(network: Network, max_tensors: int = CHAIN_CAP) -> bool:
    return delta_violation(network, max_tensors) is None


def delta_violation(network: Network, max_tensors: int = CHAIN_CAP):
    table = chain_table(network, max_tensors)
    return table.compatibility_violation([chi(l) for l in table.elements])


def sigma_violation(network: Network, max_tensors: int = CHAIN_CAP):
    """``(a, b, c, side)`` with ``a`` sigma ``b`` but ``c*a``, ``c*b`` not sigma-related."""
    table = chain_table(network, max_tensors)
    return table.compatibility_violation([chain_size(l) for l in table.elements])


# -- delta-classes and keys -------------------------------------------------


def _key_mask(network, key):
    pos = network.tensor_position
    mask = 0
    for t in key:
        if t not in pos:
            raise InvalidKey(f"unknown tensor {t!r}")
        mask |= 1 << pos[t]
    return mask


def _mask_connected(network, mask):
    if not mask:
        return False
    ends = network.pair_endpoint_masks
    inside = [em for em in ends if em & mask == em]
    seen = mask & -mask
    grew = True
    while grew:
        grew = False
        for em in inside:
            if em & seen and em & ~seen:
                seen |= em
                grew = True
    return seen == mask


def normalize_key(network: Network, key: Iterable[str]) -> frozenset:
    key = frozenset(key)
    _key_mask(network, key)
    return key


def is_inducible(network: Network, key: Iterable[str]) -> bool:
    """True when the tensor graph induced on ``key`` is connected."""
    return _mask_connected(network, _key_mask(network, key))


def _require_inducible(network, key):
    key = normalize_key(network, key)
    if not key:
        raise InvalidKey("empty tensor set")
    if not is_inducible(network, key):
        raise InvalidKey("tensor set is not connected in the tensor graph: " + ",".join(sorted(key)))
    return key


def delta_class(network: Network, key: Iterable[str]) -> list:
    """All chains with tensor set exactly ``key``, in sort order."""
    key = normalize_key(network, key)
    _check_cap(len(key), CHAIN_CAP)
    mask = _key_mask(network, key)
    if not key or not _mask_connected(network, mask):
        warnings.warn(f"no chains have tensor set {sorted(key)}", stacklevel=2)
        return []
    if len(key) == 1:
        return [TensorChain._trusted(network, mask, 0)]
    out = [TensorChain._trusted(network, p, s) for p, s in _edge_chains(network, mask) if p == mask]
    out.sort(key=chain_sort_key)
    return out


def check_class_semilattice(elements: Iterable[Chain]) -> bool:
    """Closed under reducing and associative on every triple."""
    elements = sorted(set(elements), key=chain_sort_key)
    if not elements:
        return False
    table = MagmaTable.from_operation(elements, reduce)
    return table.closed and table.is_associative()


def quotient_keys(network: Network, max_tensors: int = CHAIN_CAP) -> list:
    """All delta-class keys: EMPTY_KEY first, then connected tensor sets by size."""
    _check_cap(len(network.tensors), max_tensors)
    ids = network.tensor_ids
    keys = [
        frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        for mask in range(1, 1 << len(ids))
        if _mask_connected(network, mask)
    ]
    keys.sort(key=lambda k: (len(k), sorted(k)))
    return [EMPTY_KEY] + keys


def quotient_star(k1: frozenset, k2: frozenset) -> frozenset:
    """Product of delta-classes: union of overlapping keys, else the empty key."""
    if k1 & k2:
        return k1 | k2
    return EMPTY_KEY


@lru_cache(maxsize=64)
def quotient_table(network: Network, max_tensors: int = CHAIN_CAP) -> MagmaTable:
    return MagmaTable.from_operation(quotient_keys(network, max_tensors), quotient_star)


def check_quotient_laws(network: Network, max_tensors: int = CHAIN_CAP) -> LawReport:
    return quotient_table(network, max_tensors).laws()


def chi_violation(network: Network, max_tensors: int = CHAIN_CAP):
    """A pair ``(a, b)`` with ``chi(a*b) != chi(a) * chi(b)``, or None."""
    chains = chain_table(network, max_tensors)
    keys = quotient_table(network, max_tensors)
    kidx = np.array([keys.index[chi(l)] for l in chains.elements], dtype=np.int64)
    image = kidx[chains.table]
    expected = keys.table[kidx[:, None], kidx[None, :]]
    bad = np.argwhere(image != expected)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return chains.elements[a], chains.elements[b]
    return None


def chi_is_epimorphism(network: Network, max_tensors: int = CHAIN_CAP) -> bool:
    if chi_violation(network, max_tensors) is not None:
        return False
    images = {chi(l) for l in chain_table(network, max_tensors).elements}
    return images == set(quotient_keys(network, max_tensors))


# -- order ------------------------------------------------------------------


def chain_leq(l1: Chain, l2: Chain) -> bool:
    """``l1 <= l2`` iff reducing them gives ``l2``."""
    return reduce(l1, l2) == l2


def order_matrix(elements) -> np.ndarray:
    """``m[i, j]`` is True when ``elements[i] <= elements[j]``."""
    elements = list(elements)
    return np.array([[chain_leq(a, b) for b in elements] for a in elements], dtype=bool)


def poset_violations(leq: np.ndarray) -> list:
    """Names of the partial-order axioms that ``leq`` fails."""
    failed = []
    if not leq.diagonal().all():
        failed.append("reflexive")
    both = leq & leq.T
    if (both & ~np.eye(len(leq), dtype=bool)).any():
        failed.append("antisymmetric")
    m = leq.astype(np.float64)
    if ((m @ m > 0) & ~leq).any():
        failed.append("transitive")
    return failed


@dataclass(frozen=True)
class TensorGraph:
    """Simple graph on tensors whose edges are the nonempty 2-chains."""

    nodes: tuple
    edges: tuple

    def laplacian(self) -> Laplacian:
        return Laplacian.of_graph(self.nodes, self.edges)

    def degree(self, node) -> int:
        return sum(node in e for e in self.edges)


def tensor_graph(network: Network, key: Optional[Iterable[str]] = None) -> TensorGraph:
    if key is None:
        key = network.tensor_ids
    key = normalize_key(network, key)
    nodes = tuple(sorted(key))
    edges = tuple(pair for pair, _ in network.adjacent_pairs if pair[0] in key and pair[1] in key)
    return TensorGraph(nodes, edges)


def local_max(network: Network, key: Iterable[str]) -> TensorChain:
    """``(P, S_P)``: the greatest chain of the class."""
    key = _require_inducible(network, key)
    mask = _key_mask(network, key)
    smask = 0
    for k, em in enumerate(network.pair_endpoint_masks):
        if em & mask == em:
            smask |= 1 << k
    return TensorChain._trusted(network, mask, smask)


def spanning_trees(network: Network, key: Iterable[str]) -> list:
    """Spanning trees of the tensor graph on ``key``, as chains in sort order."""
    key = _require_inducible(network, key)
    mask = _key_mask(network, key)
    if len(key) == 1:
        return [TensorChain._trusted(network, mask, 0)]
    ends = network.pair_endpoint_masks
    edges = [k for k, em in enumerate(ends) if em & mask == em]
    pos = network.tensor_position
    nodes = [pos[t] for t in key]
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    need = len(nodes) - 1
    found = []

    def grow(i, chosen, count):
        if count == need:
            found.append(chosen)
            return
        if len(edges) - i < need - count:
            return
        k = edges[i]
        em = ends[k]
        a = (em & -em).bit_length() - 1
        b = em.bit_length() - 1
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            grow(i + 1, chosen | (1 << k), count + 1)
            parent[ra] = ra
        grow(i + 1, chosen, count)

    grow(0, 0, 0)
    out = [TensorChain._trusted(network, mask, s) for s in found]
    out.sort(key=chain_sort_key)
    return out


def local_minima(network: Network, key: Iterable[str]) -> list:
    key = normalize_key(network, key)
    _check_cap(len(key), SEARCH_CAP, SEARCH_CAP)
    return spanning_trees(network, key)


def laplacian(network: Network, key: Iterable[str]) -> Laplacian:
    return tensor_graph(network, _require_inducible(network, key)).laplacian()


def count_minima(network: Network, key: Iterable[str], removed_index: int = 0) -> int:
    """Number of spanning trees on ``key``, as the reduced-Laplacian determinant."""
    return laplacian(network, key).tree_count(removed_index)


# -- isomorphism of classes -------------------------------------------------


@dataclass(frozen=True)
class IsoWitness:
    """Tensor bijection ``theta`` and the 2-chain bijection ``tau`` it induces."""

    theta: dict
    tau: dict
    eta_checked: bool

    def eta(self, network: Network, l: TensorChain) -> TensorChain:
        """Image of a chain of the first class in the second class."""
        from .chains import make_chain

        pairs = [self.tau[p] for p in l.pairs]
        return make_chain(network, [self.theta[t] for t in l.tensors], pairs)


ETA_CHECK_EDGES = 10


def _graph_isomorphism(g1: TensorGraph, g2: TensorGraph):
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return None
    adj1 = {v: set() for v in g1.nodes}
    adj2 = {v: set() for v in g2.nodes}
    for a, b in g1.edges:
        adj1[a].add(b)
        adj1[b].add(a)
    for a, b in g2.edges:
        adj2[a].add(b)
        adj2[b].add(a)
    if sorted(map(len, adj1.values())) != sorted(map(len, adj2.values())):
        return None
    order = sorted(g1.nodes, key=lambda v: (-len(adj1[v]), v))
    theta = {}
    used = set()

    def assign(i):
        if i == len(order):
            return True
        v = order[i]
        for w in sorted(g2.nodes):
            if w in used or len(adj2[w]) != len(adj1[v]):
                continue
            if all((theta[u] in adj2[w]) == (u in adj1[v]) for u in theta):
                theta[v] = w
                used.add(w)
                if assign(i + 1):
                    return True
                del theta[v]
                used.discard(w)
        return False

    return dict(theta) if assign(0) else None


def class_isomorphic(network: Network, k1: Iterable[str], k2: Iterable[str]) -> Optional[IsoWitness]:
    """A witness that the two delta-classes are isomorphic semilattices, or None.

    The witness exists exactly when the tensor graphs on the two keys are
    isomorphic.  For keys with at most ``ETA_CHECK_EDGES`` 2-chains the
    induced map between the classes is checked to be a bijective
    homomorphism of reducing.
    """
    k1 = _require_inducible(network, k1)
    k2 = _require_inducible(network, k2)
    if max(len(k1), len(k2)) > SEARCH_CAP:
        raise CapExceeded("isomorphism search is limited to 8 tensors")
    g1, g2 = tensor_graph(network, k1), tensor_graph(network, k2)
    theta = _graph_isomorphism(g1, g2)
    if theta is None:
        return None
    tau = {}
    for a, b in g1.edges:
        image = frozenset((theta[a], theta[b]))
        tau[frozenset((a, b))] = image
    if set(tau.values()) != {frozenset(e) for e in g2.edges}:
        raise AssertionError("tensor graph isomorphism does not carry 2-chains onto 2-chains")
    checked = len(g1.edges) <= ETA_CHECK_EDGES
    witness = IsoWitness(theta, tau, checked)
    if checked:
        _check_eta(network, witness, k1, k2)
    return witness


def _check_eta(network, witness, k1, k2):
    class1 = delta_class(network, k1)
    class2 = set(delta_class(network, k2))
    image = {l: witness.eta(network, l) for l in class1}
    if set(image.values()) != class2 or len(class2) != len(class1):
        raise AssertionError("induced class map is not a bijection")
    for a in class1:
        for b in class1:
            if image[reduce(a, b)] != reduce(image[a], image[b]):
                raise AssertionError("induced class map is not a homomorphism")
