"""State-vector registers and direct gate application.

Gates are applied by contracting the ``2**k`` gate matrix against the
argument-qubit axes of the state viewed as an ``n``-axis ``(2, ..., 2)``
tensor. Axis ``a`` of that view is qubit ``n-1-a``, so the layout matches
the canonical basis and no ``2**n`` square matrix is ever built.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .indexing import BasisIndex, format_ket, index_of_bits
from .lifting import GateApplication, check_qubits, check_unitary
from .linalg import DTYPE, DimensionError, format_complex, format_real

MAX_STATE_QUBITS = 26
DEFAULT_THRESHOLD = 1e-12
NORM_TOL = 1e-10


@dataclass(frozen=True)
class Register:
    """``n`` qubits with a dense length ``2**n`` amplitude vector."""

    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=DTYPE)
        if self.n < 1:
            raise DimensionError(f"register needs at least one qubit, got {self.n}")
        if amps.shape != (1 << self.n,):
            raise DimensionError(
                f"{self.n} qubits need {1 << self.n} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes contain NaN or infinite entries")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n: int, *, max_qubits: int = MAX_STATE_QUBITS) -> Register:
        _check_cap(n, max_qubits)
        amps = np.zeros(1 << n, dtype=DTYPE)
        amps[0] = 1
        return cls(n, amps)

    @classmethod
    def basis(cls, state: BasisIndex | str, *,
              max_qubits: int = MAX_STATE_QUBITS) -> Register:
        """Basis state from a :class:`BasisIndex` or a bit string like ``"01000"``."""
        if isinstance(state, str):
            state = index_of_bits(state)
        _check_cap(state.width, max_qubits)
        amps = np.zeros(1 << state.width, dtype=DTYPE)
        amps[state.value] = 1
        return cls(state.width, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> Register:
        amps = np.asarray(amplitudes, dtype=DTYPE)
        n = amps.shape[0].bit_length() - 1 if amps.ndim == 1 else -1
        if n < 1 or amps.shape != (1 << n,):
            raise DimensionError(f"amplitude count must be 2**n with n >= 1, got {amps.shape}")
        return cls(n, amps)

    @classmethod
    def _wrap(cls, n: int, amplitudes: np.ndarray) -> Register:
        # kernel outputs are finite and correctly shaped; skip the O(2**n) mask
        reg = object.__new__(cls)
        object.__setattr__(reg, "n", n)
        object.__setattr__(reg, "amplitudes", amplitudes)
        return reg

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm ** 2 - 1) <= tol


def _check_cap(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise MemoryError(
            f"{n} qubits exceeds the state cap of {max_qubits} "
            f"({16 << n} bytes of amplitudes)"
        )


def apply_gate(reg: Register, app: GateApplication, *, unitary: str = "warn") -> Register:
    """Return the register after applying ``app``; ``reg`` is left untouched."""
    n, k = reg.n, app.arity
    check_qubits(app.qubits, n)
    check_unitary(app.matrix, unitary, name=app.name)
    src = reg.amplitudes.reshape((2,) * n)
    out = np.empty_like(reg.amplitudes)
    axes = list(range(n))
    gate_out = list(range(n, n + k))
    gate_in = [n - 1 - q for q in app.qubits]
    out_axes = axes.copy()
    for m, q in enumerate(app.qubits):
        out_axes[n - 1 - q] = gate_out[m]
    # first gate qubit is the most significant row/column bit
    np.einsum(app.matrix.reshape((2,) * (2 * k)), gate_out + gate_in,
              src, axes, out_axes, out=out.reshape((2,) * n))
    return Register._wrap(n, out)


def run(apps, n: int, *, unitary: str = "warn",
        max_qubits: int = MAX_STATE_QUBITS) -> Register:
    """Apply ``apps`` in order to ``|0...0>`` on ``n`` qubits."""
    reg = Register.zero(n, max_qubits=max_qubits)
    for app in apps:
        reg = apply_gate(reg, app, unitary=unitary)
    return reg


def adjoin_left(reg: Register, k: int = 1, *,
                max_qubits: int = MAX_STATE_QUBITS) -> Register:
    """Tensor ``k`` fresh ``|0>`` qubits on as the new most significant factors.

    Existing amplitudes keep their positions; everything above ``2**n`` is zero.
    """
    if k < 0:
        raise ValueError(f"cannot adjoin {k} qubits")
    if k == 0:
        return reg
    _check_cap(reg.n + k, max_qubits)
    amps = np.zeros(1 << (reg.n + k), dtype=DTYPE)
    amps[: 1 << reg.n] = reg.amplitudes
    return Register._wrap(reg.n + k, amps)


def probabilities(reg: Register) -> np.ndarray:
    a = reg.amplitudes
    return a.real ** 2 + a.imag ** 2


def normalize(reg: Register) -> Register:
    norm = reg.norm
    if norm == 0:
        raise ZeroDivisionError("cannot normalize the zero vector")
    return Register(reg.n, reg.amplitudes / norm)


def dump_wavefunction(reg: Register, *, threshold: float = DEFAULT_THRESHOLD,
                      style: str = "binary", ascii: bool = False) -> str:
    """``|bits⟩ a+bi p=<prob>`` for each amplitude with modulus above ``threshold``."""
    probs = probabilities(reg)
    lines = []
    for j in np.flatnonzero(np.abs(reg.amplitudes) > threshold):
        ket = format_ket(BasisIndex(int(j), reg.n), style=style, ascii=ascii)
        lines.append(f"{ket} {format_complex(reg.amplitudes[j])} p={format_real(probs[j])}")
    return "".join(line + "\n" for line in lines)
