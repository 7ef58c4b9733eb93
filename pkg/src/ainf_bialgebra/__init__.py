"""Exact verification of A∞-bialgebra structure relations of type (m, n)."""
from .algebra import QQ, Z2, Element, GradedModule, Ring, Scalar, exterior, parse_element, parse_ring
from .catalog import (
    HopfStructure,
    TypeParams,
    classify,
    degree_condition,
    enumerate_types,
    load_structure,
    make_ex1,
    make_theorem1,
    parse_structure,
    q_of_n,
)
from .ops import MultiOp, Table, compose, fraction, op_equal, sigma, tensor
from .relations import Mode, RelationId, RelationReport, Verification, verify

__all__ = [
    "QQ", "Z2", "Element", "GradedModule", "Ring", "Scalar", "exterior", "parse_element",
    "parse_ring", "HopfStructure", "TypeParams", "classify", "degree_condition",
    "enumerate_types", "load_structure", "make_ex1", "make_theorem1", "parse_structure",
    "q_of_n", "MultiOp", "Table", "compose", "fraction", "op_equal", "sigma", "tensor",
    "Mode", "RelationId", "RelationReport", "Verification", "verify",
]

__version__ = "0.1.0"
