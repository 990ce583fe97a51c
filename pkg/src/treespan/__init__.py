"""Spanning-tree embedding machinery for dense hosts, with exact oracles."""

from .graphs import Embedding, Graph, RootedTree, Verdict, verify_embedding
from .generators import HostProfile, InfeasibleProfile, gen_host, gen_host_with_witness, gen_tree

__all__ = [
    "Embedding",
    "Graph",
    "RootedTree",
    "Verdict",
    "verify_embedding",
    "HostProfile",
    "InfeasibleProfile",
    "gen_host",
    "gen_host_with_witness",
    "gen_tree",
]

__version__ = "0.1.0"
