"""Parser for a small Quil-like gate language.

::

    # comment
    DEFGATE MYSWAP:
        1, 0, 0, 0
        0, 0, 1, 0
        0, 1, 0, 0
        0, 0, 0, 1
    CNOT 1 3
    MYSWAP 2 1

Each instruction is a gate name followed by decimal qubit labels, the first
label being the most significant factor of the gate's basis (the control, for
``CNOT``). ``DEFGATE NAME:`` is followed by indented rows of comma-separated
decimal complex literals (``1``, ``-0.5``, ``2i``, ``1+2i``); expressions such
as ``1/sqrt(2)`` are not evaluated. Gate names are case-sensitive. The full
grammar is in ``docs/grammar.ebnf``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .gates import BUILTINS
from .lifting import GateApplication
from .linalg import DTYPE, LiteralError, format_complex, parse_complex

_NAME = r"[A-Za-z_][A-Za-z0-9_\-]*"
_NAME_RE = re.compile(rf"^{_NAME}$")
_DEFGATE_RE = re.compile(rf"^DEFGATE(?:\s+(?P<name>\S+?))?\s*(?P<colon>:)?$")
_TOKEN_RE = re.compile(r"\S+")
_KEYWORD_RE = re.compile(r"^DEFGATE(?![A-Za-z0-9_\-])")


class SourceError(Exception):
    """An error tied to a position in the program text (1-based line/column)."""

    def __init__(self, message: str, line: int, column: int = 1, text: str = ""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.text = text

    def __str__(self):
        where = f"line {self.line}, column {self.column}"
        return f"{where}: {self.message}" + (f": {self.text!r}" if self.text else "")


class QuilSyntaxError(SourceError):
    pass


class UnknownGateError(SourceError):
    pass


class ArityError(SourceError):
    pass


class DuplicateQubitError(SourceError):
    pass


class MatrixShapeError(SourceError):
    pass


class ComplexLiteralError(SourceError):
    pass


class DuplicateDefinitionError(SourceError):
    pass


class ResolveError(SourceError):
    """An instruction that no longer resolves against the program's definitions."""


@dataclass(frozen=True)
class Instruction:
    name: str
    qubits: tuple[int, ...]
    line: int = field(default=0, compare=False)

    def __str__(self):
        return " ".join([self.name, *map(str, self.qubits)])


@dataclass
class Program:
    definitions: dict[str, np.ndarray] = field(default_factory=dict)
    instructions: list[Instruction] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return (
            self.instructions == other.instructions
            and self.definitions.keys() == other.definitions.keys()
            and all(np.array_equal(m, other.definitions[k])
                    for k, m in self.definitions.items())
        )

    @property
    def required_width(self) -> int:
        """``1 + max qubit label``, and at least 1."""
        return 1 + max((q for ins in self.instructions for q in ins.qubits), default=0)

    def gate_matrix(self, name: str) -> np.ndarray | None:
        if name in self.definitions:
            return self.definitions[name]
        return BUILTINS.get(name)


@dataclass
class _PendingDef:
    name: str
    line: int
    text: str
    rows: list = field(default_factory=list)


def parse_program(text: str) -> Program:
    """Parse program text; raises a :class:`SourceError` subclass on bad input."""
    program = Program()
    pending: _PendingDef | None = None
    raw_instructions = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0] in " \t"
        if indented:
            if pending is None:
                raise QuilSyntaxError("unexpected indentation", lineno,
                                      _col(raw, line.lstrip()), raw.strip())
            pending.rows.append((lineno, raw.strip(), _parse_row(line, lineno)))
            continue
        if pending is not None:
            _finish_def(program, pending)
            pending = None
        if _KEYWORD_RE.match(line):
            pending = _parse_defgate_header(program, line, lineno, raw)
        else:
            raw_instructions.append(_parse_instruction(line, lineno, raw))
    if pending is not None:
        _finish_def(program, pending)

    for ins, tokens in raw_instructions:
        matrix = program.gate_matrix(ins.name)
        if matrix is None:
            raise UnknownGateError(f"unknown gate {ins.name!r}", ins.line, 1, ins.name)
        k = matrix.shape[0].bit_length() - 1
        if len(ins.qubits) != k:
            raise ArityError(
                f"{ins.name} takes {k} qubit(s), got {len(ins.qubits)}",
                ins.line, 1, str(ins),
            )
        seen = set()
        for q, (col, tok) in zip(ins.qubits, tokens):
            if q in seen:
                raise DuplicateQubitError(f"qubit {q} used twice", ins.line, col, tok)
            seen.add(q)
        program.instructions.append(ins)
    return program


def parse_file(path) -> Program:
    return parse_program(Path(path).read_text(encoding="utf-8"))


def _col(raw: str, fragment: str) -> int:
    return raw.find(fragment) + 1 if fragment in raw else 1


def _parse_defgate_header(program, line, lineno, raw) -> _PendingDef:
    m = _DEFGATE_RE.match(line)
    if m is None or m.group("name") is None or m.group("colon") is None:
        raise QuilSyntaxError("expected 'DEFGATE NAME:'", lineno, 1, raw.strip())
    name = m.group("name")
    if not _NAME_RE.match(name):
        raise QuilSyntaxError(f"invalid gate name {name!r}", lineno, _col(raw, name), name)
    if name in BUILTINS or name in program.definitions:
        raise DuplicateDefinitionError(f"gate {name!r} is already defined",
                                       lineno, _col(raw, name), name)
    return _PendingDef(name, lineno, raw.strip())


def _parse_row(line, lineno) -> list[complex]:
    row = []
    start = 0
    for cell in line.split(","):
        col = start + len(cell) - len(cell.lstrip()) + 1
        start += len(cell) + 1
        tok = cell.strip()
        try:
            row.append(parse_complex(tok))
        except LiteralError:
            raise ComplexLiteralError(f"malformed complex literal {tok!r}",
                                      lineno, col, tok) from None
    return row


def _finish_def(program: Program, pending: _PendingDef) -> None:
    rows = pending.rows
    d = len(rows)
    if d == 0:
        raise MatrixShapeError(f"DEFGATE {pending.name} has no matrix rows",
                               pending.line, 1, pending.text)
    width = len(rows[0][2])
    for lineno, text, row in rows:
        if len(row) != width:
            raise MatrixShapeError(
                f"DEFGATE {pending.name} has ragged rows: {len(row)} entries, "
                f"expected {width}",
                lineno, 1, text,
            )
    if width != d:
        raise MatrixShapeError(
            f"DEFGATE {pending.name} is not square: {d} rows of {width} entries",
            pending.line, 1, pending.text,
        )
    if d < 2 or d & (d - 1):
        raise MatrixShapeError(
            f"DEFGATE {pending.name} dimension {d} is not a power of two >= 2",
            pending.line, 1, pending.text,
        )
    program.definitions[pending.name] = np.array([r[2] for r in rows], dtype=DTYPE)


def _parse_instruction(line, lineno, raw):
    tokens = [(m.start() + 1, m.group()) for m in _TOKEN_RE.finditer(line)]
    (_, name), args = tokens[0], tokens[1:]
    if not _NAME_RE.match(name):
        raise QuilSyntaxError(f"invalid gate name {name!r}", lineno, 1, name)
    qubits = []
    for col, tok in args:
        if not tok.isascii() or not tok.isdigit():
            raise QuilSyntaxError(f"expected a qubit label, got {tok!r}", lineno, col, tok)
        qubits.append(int(tok))
    return Instruction(name, tuple(qubits), lineno), args


def resolve(program: Program) -> list[GateApplication]:
    """Bind every instruction to its gate matrix."""
    apps = []
    for ins in program.instructions:
        matrix = program.gate_matrix(ins.name)
        if matrix is None:
            raise ResolveError(f"gate {ins.name!r} has no definition", ins.line, 1, ins.name)
        try:
            apps.append(GateApplication(matrix, ins.qubits, ins.name))
        except ValueError as exc:
            raise ResolveError(str(exc), ins.line, 1, str(ins)) from None
    return apps


def format_program(program: Program) -> str:
    """Render a program that parses back to an equal :class:`Program`."""
    out = []
    for name, m in program.definitions.items():
        out.append(f"DEFGATE {name}:")
        out.extend("    " + ", ".join(format_complex(z) for z in row) for row in m)
    out.extend(str(ins) for ins in program.instructions)
    return "".join(line + "\n" for line in out)
