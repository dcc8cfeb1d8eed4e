"""Canonical qubit ordering, gate lifting, and state-vector application.

Qubit 0 is the least significant bit of a basis index, and a gate applied to
``(q1, q2, ...)`` reads its matrix with ``q1`` as the most significant factor.
"""
from .apply import Register, adjoin_left, apply_gate, dump_wavefunction, normalize, probabilities
from .indexing import (
    BasisError,
    BasisIndex,
    bits_of_index,
    excited_qubits,
    format_ket,
    index_of_bits,
    parse_ket,
    tensor_index,
)
from .lifting import (
    GateApplication,
    initial_factor_order,
    lift,
    reinterpret,
    tau_matrix,
    transposition_sequence,
)
from .linalg import is_unitary, kron, matmul, matvec, permutation_matrix
from .parser import Program, SourceError, parse_program, resolve

__all__ = [
    "BasisError", "BasisIndex", "GateApplication", "Program", "Register", "SourceError",
    "adjoin_left", "apply_gate", "bits_of_index", "dump_wavefunction", "excited_qubits",
    "format_ket", "index_of_bits", "initial_factor_order", "is_unitary", "kron", "lift",
    "matmul", "matvec", "normalize", "parse_ket", "parse_program", "permutation_matrix",
    "probabilities", "reinterpret", "resolve", "tau_matrix", "tensor_index",
    "transposition_sequence",
]
