"""Lift a k-qubit gate matrix to an operator on the full n-qubit register.

The construction has three steps:

1. Read the gate matrix in the basis of its argument qubits, first argument
   most significant (``CNOT 1 3`` acts on ``B1 (x) B3``).
2. Pad with identities on the remaining qubits, which are placed to the left
   in descending order: ``I[n-1] (x) ... (x) I[4] (x) I[2] (x) I[0] (x) CNOT[1,3]``.
3. Bring the tensor factors back into canonical order ``n-1, ..., 1, 0`` with
   adjacent transpositions ``tau[i]`` (swap factors ``i`` and ``i+1`` counted
   from the right) and conjugate: ``P @ M @ P^-1``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gates
from .linalg import (
    DimensionError,
    as_matrix,
    identity,
    is_unitary,
    kron,
    kron_all,
    permutation_matrix,
)

MAX_DENSE_QUBITS = 12
UNITARY_TOL = 1e-10


class QubitError(ValueError):
    """Duplicate, negative, or out-of-range qubit labels."""


class NonUnitaryError(ValueError):
    """A gate failed the unitarity check under the ``error`` policy."""


@dataclass(frozen=True)
class GateApplication:
    """A gate matrix bound to an ordered tuple of distinct qubits."""

    matrix: np.ndarray = field(repr=False)
    qubits: tuple[int, ...]
    name: str | None = None

    def __post_init__(self):
        m = as_matrix(self.matrix)
        try:
            k = gates.arity(m)
        except ValueError as exc:
            raise DimensionError(str(exc)) from None
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != k:
            raise DimensionError(
                f"{self.name or 'gate'} acts on {k} qubit(s) but got {len(qubits)}"
            )
        check_qubits(qubits)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "qubits", qubits)

    @classmethod
    def builtin(cls, name: str, *qubits: int) -> GateApplication:
        return cls(gates.builtin(name), qubits, name)

    @property
    def arity(self) -> int:
        return len(self.qubits)


def check_qubits(qubits: Sequence[int], n: int | None = None) -> None:
    seen = set()
    for q in qubits:
        if q < 0:
            raise QubitError(f"negative qubit label {q}")
        if n is not None and q >= n:
            raise QubitError(f"qubit {q} out of range for a {n}-qubit register")
        if q in seen:
            raise QubitError(f"qubit {q} repeated in {tuple(qubits)}")
        seen.add(q)


def check_unitary(matrix, policy: str = "warn", *, name: str | None = None) -> None:
    """Apply the unitarity policy: ``"warn"``, ``"error"`` or ``"ignore"``."""
    if policy == "ignore" or is_unitary(matrix, UNITARY_TOL):
        return
    msg = f"gate {name or '<matrix>'} is not unitary"
    if policy == "error":
        raise NonUnitaryError(msg)
    if policy != "warn":
        raise ValueError(f"unknown unitarity policy {policy!r}")
    warnings.warn(msg, stacklevel=3)


def initial_factor_order(qubits: Sequence[int], n: int) -> tuple[int, ...]:
    """Factor order after identity padding, leftmost factor first.

    >>> initial_factor_order((1, 3), 5)
    (4, 2, 0, 1, 3)
    """
    qubits = tuple(qubits)
    check_qubits(qubits, n)
    rest = [q for q in range(n - 1, -1, -1) if q not in qubits]
    return tuple(rest) + qubits


def _check_order(order: Sequence[int]) -> list[int]:
    order = [int(o) for o in order]
    if sorted(order) != list(range(len(order))):
        raise QubitError(f"factor order {tuple(order)} is not a permutation")
    return order


def transposition_sequence(order: Sequence[int], method: str = "bubble") -> list[int]:
    """Indices ``i`` of the ``tau[i]`` that sort ``order`` descending, in application order.

    ``tau[i]`` swaps the factors at positions ``i`` and ``i+1`` counted from
    the right. ``method`` is ``"bubble"`` (the default) or ``"insertion"``;
    both give sequences of at most ``n(n-1)/2`` transpositions.
    """
    order = _check_order(order)
    n = len(order)
    seq = []

    def swap(j):
        # left positions j, j+1 are right positions n-2-j, n-1-j
        order[j], order[j + 1] = order[j + 1], order[j]
        seq.append(n - 2 - j)

    if method == "bubble":
        changed = True
        while changed:
            changed = False
            for j in range(n - 1):
                if order[j] < order[j + 1]:
                    swap(j)
                    changed = True
    elif method == "insertion":
        for j in range(1, n):
            while j > 0 and order[j - 1] < order[j]:
                swap(j - 1)
                j -= 1
    else:
        raise ValueError(f"unknown sorting method {method!r}")
    return seq


def tau_matrix(i: int, n: int, *, max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
    """``I^(n-i-2) (x) SWAP (x) I^i`` as a dense ``2**n`` permutation matrix."""
    if not 0 <= i <= n - 2:
        raise ValueError(f"tau index {i} out of range for n={n}")
    if n > max_qubits:
        raise DimensionError(f"n={n} exceeds the dense cap of {max_qubits} qubits")
    return kron_all(identity(1 << (n - i - 2)), gates.builtin("SWAP"), identity(1 << i),
                    max_dim=1 << max_qubits)


def tau_permutation(i: int, n: int) -> np.ndarray:
    """Index map of ``tau_matrix(i, n)``: basis ``j`` goes to ``out[j]``."""
    if not 0 <= i <= n - 2:
        raise ValueError(f"tau index {i} out of range for n={n}")
    swap = np.array([0, 2, 1, 3])
    lo = 1 << i
    j = np.arange(1 << n)
    # Kronecker layout: j = (hi * 4 + s) * lo + l, with s the SWAP block index
    hi, rem = np.divmod(j, 4 * lo)
    s, l = np.divmod(rem, lo)
    return (hi * 4 + swap[s]) * lo + l


def sequence_permutation(seq: Sequence[int], n: int) -> np.ndarray:
    """Index map of ``tau[seq[-1]] @ ... @ tau[seq[0]]``."""
    perm = np.arange(1 << n)
    for i in seq:
        perm = tau_permutation(i, n)[perm]
    return perm


def sequence_matrix(seq: Sequence[int], n: int, *,
                    max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
    """Dense product ``tau[seq[-1]] @ ... @ tau[seq[0]]``, multiplied out."""
    p = identity(1 << n)
    for i in seq:
        p = tau_matrix(i, n, max_qubits=max_qubits) @ p
    return p


def lift(app: GateApplication, n: int, *, max_qubits: int = MAX_DENSE_QUBITS,
         unitary: str = "warn") -> np.ndarray:
    """Dense ``2**n`` matrix of ``app`` acting on an ``n``-qubit register.

    >>> lift(GateApplication.builtin("CNOT", 0, 1), 2).real.astype(int)
    array([[1, 0, 0, 0],
           [0, 0, 0, 1],
           [0, 0, 1, 0],
           [0, 1, 0, 0]])
    """
    if n > max_qubits:
        raise DimensionError(f"n={n} exceeds the dense cap of {max_qubits} qubits")
    check_unitary(app.matrix, unitary, name=app.name)
    order = initial_factor_order(app.qubits, n)
    padded = kron(identity(1 << (n - app.arity)), app.matrix, max_dim=1 << max_qubits)
    perm = sequence_permutation(transposition_sequence(order), n)
    # P @ padded @ P.T for the permutation matrix P of `perm`
    out = np.empty_like(padded)
    out[np.ix_(perm, perm)] = padded
    return out


def reinterpret(gate, from_order: Sequence[int], to_order: Sequence[int]) -> np.ndarray:
    """Rewrite ``gate`` from the basis of ``from_order`` into that of ``to_order``.

    Both orders list the same qubit labels, most significant first.
    """
    g = as_matrix(gate)
    from_order, to_order = tuple(from_order), tuple(to_order)
    if sorted(from_order) != sorted(to_order) or len(set(from_order)) != len(from_order):
        raise QubitError(f"orders {from_order} and {to_order} differ in labels")
    k = len(from_order)
    if g.shape != (1 << k, 1 << k):
        raise DimensionError(f"matrix {g.shape} does not act on {k} qubits")
    where = {label: k - 1 - pos for pos, label in enumerate(to_order)}
    perm = []
    for j in range(1 << k):
        t = 0
        for pos, label in enumerate(from_order):
            if (j >> (k - 1 - pos)) & 1:
                t |= 1 << where[label]
        perm.append(t)
    p = permutation_matrix(perm)
    return p @ g @ p.T
