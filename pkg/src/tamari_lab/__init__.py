"""Exact enumeration and verification toolkit for Tamari lattice intervals."""

from tamari_lab.trees import LEAF, Y, Node, decode, encode
from tamari_lab.tamari import build_poset, tamari_leq
from tamari_lab.intervals import Interval, enumerate_intervals

__all__ = [
    "LEAF",
    "Y",
    "Node",
    "encode",
    "decode",
    "build_poset",
    "tamari_leq",
    "Interval",
    "enumerate_intervals",
]

__version__ = "0.1.0"
