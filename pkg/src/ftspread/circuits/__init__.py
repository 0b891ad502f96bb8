"""Circuit IR, simulators, gadget builders and logical-action verification."""

from .circuit import Circuit, Condition, Gate, Measure, CPauli, IfGate, Decode, cnot_ladder, transversal
from .tableau import TableauState, simulate_tableau, enumerate_branches
from .dense import DenseState, simulate_dense, enumerate_dense_branches
from .verify import Gadget, Verdict, check_clifford_action, verify_gadget
from .gadgets import (
    build_coherent_injection,
    build_magic_injection,
    build_teleportation_gadget,
    steane_rm_switch_circuit,
    surface_layer_split,
)

__all__ = [
    "Circuit",
    "Condition",
    "Gate",
    "Measure",
    "CPauli",
    "IfGate",
    "Decode",
    "cnot_ladder",
    "transversal",
    "TableauState",
    "simulate_tableau",
    "enumerate_branches",
    "DenseState",
    "simulate_dense",
    "enumerate_dense_branches",
    "Gadget",
    "Verdict",
    "check_clifford_action",
    "verify_gadget",
    "build_teleportation_gadget",
    "build_magic_injection",
    "build_coherent_injection",
    "steane_rm_switch_circuit",
    "surface_layer_split",
]
