"""Tensor chains of general networks and the algebra of reducing them."""

from .chains import (
    EMPTY,
    EmptyChain,
    TensorChain,
    TwoChain,
    chain_add,
    format_chain,
    is_connected,
    make_chain,
    parse_chain,
    reduce,
    reduce_two_chains,
)
from .errors import (
    CapExceeded,
    ChainError,
    DomainError,
    InvalidKey,
    KindError,
    NetworkError,
    ParseError,
    TensorChainError,
    WordError,
)
from .network import Network, Tensor, from_tensor_graph, index_set, parse_network, phi, psi, serialize_network

__version__ = "0.1.0"
