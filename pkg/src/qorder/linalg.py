"""Dense complex linear algebra in the canonical basis.

Matrices and vectors are ``numpy`` arrays of ``complex128``; vectors are
1-D arrays and are treated as columns. The Kronecker product is written out
block-wise here rather than delegated, because its index layout *is* the
basis convention the rest of the package depends on.
"""
from __future__ import annotations

import re
from typing import Sequence

import numpy as np

DTYPE = np.complex128
DEFAULT_TOL = 1e-12
MAX_DENSE_DIM = 1 << 12

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>{_NUM})i)?"
    rf"|(?P<pure>[+-]?{_NUM})i)$"
)


class DimensionError(ValueError):
    """Shapes that do not fit together, or exceed the dense size cap."""


class LiteralError(ValueError):
    """A complex literal that does not match the accepted decimal forms."""


def as_matrix(a, *, allow_vector: bool = False) -> np.ndarray:
    """Coerce to a finite complex array (2-D, or 1-D if ``allow_vector``)."""
    m = np.asarray(a, dtype=DTYPE)
    if m.ndim != 2 and not (allow_vector and m.ndim == 1):
        raise DimensionError(f"expected a matrix, got shape {m.shape}")
    if m.size == 0:
        raise DimensionError("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or infinite entries")
    return m


def kron(a, b, *, max_dim: int = MAX_DENSE_DIM) -> np.ndarray:
    """Kronecker product: block ``(r, c)`` of the result is ``a[r, c] * b``.

    Entry ``(ra * b.rows + rb, ca * b.cols + cb)`` equals
    ``a[ra, ca] * b[rb, cb]``. Two 1-D inputs give a 1-D result.
    """
    vec = np.ndim(a) == 1 and np.ndim(b) == 1
    a = as_matrix(a, allow_vector=True)
    b = as_matrix(b, allow_vector=True)
    if a.ndim == 1:
        a = a[:, None]
    if b.ndim == 1:
        b = b[:, None]
    (ar, ac), (br, bc) = a.shape, b.shape
    rows, cols = ar * br, ac * bc
    if max(rows, cols) > max_dim:
        raise DimensionError(f"kron result {rows}x{cols} exceeds cap {max_dim}")
    out = (a[:, None, :, None] * b[None, :, None, :]).reshape(rows, cols)
    return out[:, 0] if vec else out


def kron_all(*factors, max_dim: int = MAX_DENSE_DIM) -> np.ndarray:
    """Left fold of :func:`kron`; ``kron_all(a, b, c) == kron(kron(a, b), c)``."""
    if not factors:
        raise DimensionError("kron_all needs at least one factor")
    out = as_matrix(factors[0], allow_vector=True)
    for f in factors[1:]:
        out = kron(out, f, max_dim=max_dim)
    return out


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=DTYPE)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def matvec(a, v) -> np.ndarray:
    a = as_matrix(a)
    v = as_matrix(v, allow_vector=True)
    if v.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {v.shape}")
    if a.shape[1] != v.shape[0]:
        raise DimensionError(f"cannot apply {a.shape} matrix to length {v.shape[0]}")
    return a @ v


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending basis vector ``e[j]`` to ``e[perm[j]]``."""
    perm = [int(p) for p in perm]
    d = len(perm)
    if d == 0:
        raise DimensionError("empty permutation")
    if sorted(perm) != list(range(d)):
        raise ValueError(f"not a permutation of 0..{d - 1}: {perm}")
    m = np.zeros((d, d), dtype=DTYPE)
    m[perm, np.arange(d)] = 1
    return m


def compose_perm(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """``p`` after ``q``, so that ``P(p) @ P(q) == P(compose_perm(p, q))``."""
    if len(p) != len(q):
        raise DimensionError("permutations of different lengths")
    return [p[j] for j in q]


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"unitarity needs a square matrix, got {m.shape}")
    err = m.conj().T @ m - np.eye(m.shape[0])
    return bool(np.max(np.abs(err)) <= tol)


def allclose(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise max-norm comparison with an absolute tolerance."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.max(np.abs(a - b), initial=0.0) <= tol)


# -- text formats -----------------------------------------------------------

def format_real(x: float) -> str:
    """Shortest round-trip decimal for ``x``; integral values drop ``.0``."""
    x = float(x)
    if x == 0:
        return "0"
    r = repr(x)
    return r[:-2] if r.endswith(".0") else r


def format_complex(z: complex) -> str:
    """``a+bi`` / ``a-bi`` with shortest round-trip parts."""
    z = complex(z)
    im = z.imag
    sign = "-" if im < 0 else "+"
    return f"{format_real(z.real)}{sign}{format_real(abs(im))}i"


def parse_complex(text: str) -> complex:
    """Parse ``1``, ``-0.5``, ``2i``, ``1+2i``, ``1e-3-4.5i`` and similar."""
    m = _COMPLEX_RE.match(text.strip())
    if m is None:
        raise LiteralError(f"malformed complex literal {text!r}")
    if m.group("pure") is not None:
        return complex(0.0, float(m.group("pure")))
    re_part = float(m.group("re"))
    im_part = 0.0
    if m.group("im") is not None:
        im_part = float(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
    return complex(re_part, im_part)


def dump_matrix(m) -> str:
    """One row per line, entries separated by single spaces."""
    m = as_matrix(m)
    return "\n".join(" ".join(format_complex(z) for z in row) for row in m) + "\n"


def load_matrix(text: str) -> np.ndarray:
    """Inverse of :func:`dump_matrix`; blank lines and ``#`` comments are skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_complex(tok) for tok in line.split()])
        except LiteralError as exc:
            raise LiteralError(f"line {lineno}: {exc}") from None
    if not rows:
        raise DimensionError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise DimensionError("ragged matrix rows")
    return np.array(rows, dtype=DTYPE)
