"""Packing (1,1,2,2)-colourings of subcubic graphs: exact solving, maximum
average degree, discharging audits and reducibility checks."""

from ._accel import backend
from .density import mad_exact, structural_audit
from .graph import Acyclic, Graph, GraphError, girth, petersen, prism, subdivide
from .graph6 import parse_graph6, write_graph6
from .packing import (PackingColoring, PackingSpec, Status, chi_p, lift_subdivision, solve,
                      verify_coloring)

__version__ = "0.1.0"

__all__ = [
    "Acyclic", "Graph", "GraphError", "PackingColoring", "PackingSpec", "Status", "backend",
    "chi_p", "girth", "lift_subdivision", "mad_exact", "parse_graph6", "petersen", "prism",
    "solve", "structural_audit", "subdivide", "verify_coloring", "write_graph6",
]
