"""Core functionality for conwaygordon."""

from .graph import Graph, TriangleSite, WyeSite
from .cycles import Cycle, CyclePair

__all__ = ['Graph', 'TriangleSite', 'WyeSite', 'Cycle', 'CyclePair']
