"""Built-in gate matrices.

Multi-qubit matrices are written in the canonical basis of their argument
qubits with the first argument most significant, so for ``CNOT c t`` the
control is the first argument.
"""
import numpy as np

from .linalg import DTYPE

_S2 = 1 / np.sqrt(2)

BUILTINS = {
    "I": np.eye(2, dtype=DTYPE),
    "X": np.array([[0, 1], [1, 0]], dtype=DTYPE),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=DTYPE),
    "Z": np.array([[1, 0], [0, -1]], dtype=DTYPE),
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=DTYPE),
    "CNOT": np.array([[1, 0, 0, 0],
                      [0, 1, 0, 0],
                      [0, 0, 0, 1],
                      [0, 0, 1, 0]], dtype=DTYPE),
    "SWAP": np.array([[1, 0, 0, 0],
                      [0, 0, 1, 0],
                      [0, 1, 0, 0],
                      [0, 0, 0, 1]], dtype=DTYPE),
    "CZ": np.diag([1, 1, 1, -1]).astype(DTYPE),
}
for _m in BUILTINS.values():
    _m.flags.writeable = False


def builtin(name: str) -> np.ndarray:
    return BUILTINS[name]


def arity(matrix) -> int:
    """Number of qubits a ``2**k`` square matrix acts on."""
    d = np.shape(matrix)[0]
    k = d.bit_length() - 1
    if d <= 0 or (1 << k) != d or np.shape(matrix) != (d, d):
        raise ValueError(f"gate matrix must be 2**k square, got {np.shape(matrix)}")
    return k
