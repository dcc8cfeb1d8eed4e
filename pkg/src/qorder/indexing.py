"""Canonical basis ordering for qubit registers.

A register of ``n`` qubits is the space ``B[n-1] (x) ... (x) B[1] (x) B[0]``.
Basis vectors are named by integers whose bit ``i`` is the state of qubit
``i``; qubit 0 is the least significant (rightmost) bit. Kets are written
most-significant bit first, so ``|01000>`` has qubit 3 excited.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_WIDTH = 62

KET_OPEN = "|"
KET_CLOSE = "⟩"
ASCII_KET_CLOSE = ">"

_KET_RE = re.compile(r"^\|([0-9]+)(?:⟩|>)$")


class BasisError(ValueError):
    """Invalid basis index, bit string, or ket literal."""


@dataclass(frozen=True, order=True)
class BasisIndex:
    """A basis index read against a register of ``width`` qubits."""

    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise BasisError(f"width {self.width} outside 1..{MAX_WIDTH}")
        if not 0 <= self.value < (1 << self.width):
            raise BasisError(
                f"index {self.value} out of range for width {self.width}"
            )

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return format_ket(self)


def index_of_bits(bits: str | Sequence[int]) -> BasisIndex:
    """Read a most-significant-first bit string as a basis index.

    >>> index_of_bits("01000")
    BasisIndex(value=8, width=5)
    """
    if isinstance(bits, str):
        symbols = list(bits)
    else:
        symbols = [str(b) for b in bits]
    if not symbols:
        raise BasisError("empty bit string")
    value = 0
    for pos, s in enumerate(symbols):
        if s not in ("0", "1"):
            raise BasisError(f"non-binary symbol {s!r} at position {pos}")
        value = (value << 1) | (s == "1")
    return BasisIndex(value, len(symbols))


def bits_of_index(index: BasisIndex | int, width: int | None = None) -> str:
    """Inverse of :func:`index_of_bits`, zero-padded to the index width."""
    index = _coerce(index, width)
    return format(index.value, f"0{index.width}b")


def tensor_index(p: int, q: int, dim_w: int) -> int:
    """Index of ``|p>_V (x) |q>_W`` in the induced basis of ``V (x) W``."""
    p, q = int(p), int(q)
    if dim_w <= 0:
        raise BasisError(f"dimension must be positive, got {dim_w}")
    if p < 0 or not 0 <= q < dim_w:
        raise BasisError(f"q={q} must lie in [0, {dim_w}) and p={p} >= 0")
    return q + p * dim_w


def excited_qubits(index: BasisIndex | int, width: int | None = None) -> frozenset[int]:
    """Labels of the qubits in state ``|1>`` for the given basis index."""
    index = _coerce(index, width)
    v = index.value
    return frozenset(i for i in range(index.width) if (v >> i) & 1)


def format_ket(index: BasisIndex | int, width: int | None = None, *,
               style: str = "binary", ascii: bool = False) -> str:
    """Render a basis index as ``|01000⟩`` (binary) or ``|8⟩`` (decimal)."""
    index = _coerce(index, width)
    if style == "binary":
        body = bits_of_index(index)
    elif style == "decimal":
        body = str(index.value)
    else:
        raise ValueError(f"unknown ket style {style!r}")
    return KET_OPEN + body + (ASCII_KET_CLOSE if ascii else KET_CLOSE)


def parse_ket(text: str, *, style: str = "binary") -> BasisIndex:
    """Parse a ket literal; both ``⟩`` and ASCII ``>`` closers are accepted.

    Binary kets take their width from the digit count. Decimal kets get the
    smallest width that holds the value (at least 1).
    """
    m = _KET_RE.match(text.strip())
    if m is None:
        raise BasisError(f"malformed ket {text!r}")
    digits = m.group(1)
    if style == "binary":
        return index_of_bits(digits)
    if style == "decimal":
        value = int(digits)
        return BasisIndex(value, max(1, value.bit_length()))
    raise ValueError(f"unknown ket style {style!r}")


def basis_order(width: int) -> Iterable[BasisIndex]:
    """All basis indices of a ``width``-qubit register in ascending order."""
    return (BasisIndex(v, width) for v in range(1 << width))


def _coerce(index: BasisIndex | int, width: int | None) -> BasisIndex:
    if isinstance(index, BasisIndex):
        if width is not None and width != index.width:
            raise BasisError(
                f"width mismatch: index has width {index.width}, got {width}"
            )
        return index
    if width is None:
        raise BasisError("a bare integer index needs an explicit width")
    return BasisIndex(int(index), width)
