"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 resolve error, 3 runtime error,
4 bad command-line usage. Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import gates
from .apply import DEFAULT_THRESHOLD, MAX_STATE_QUBITS, Register, apply_gate, dump_wavefunction
from .indexing import BasisError, excited_qubits, parse_ket
from .lifting import MAX_DENSE_QUBITS, GateApplication, NonUnitaryError, check_unitary, lift, tau_matrix
from .linalg import LiteralError, dump_matrix, load_matrix
from .parser import ResolveError, SourceError, parse_file, resolve

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_RESOLVE = 2
EXIT_RUNTIME = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    program: Path
    qubits: int | None = None
    threshold: float = DEFAULT_THRESHOLD
    decimal: bool = False
    ascii: bool = False
    strict_unitary: bool = False
    max_state: int = MAX_STATE_QUBITS

    @property
    def style(self) -> str:
        return "decimal" if self.decimal else "binary"


def _fail(err, code: int, message) -> int:
    print(f"error: {message}", file=err)
    return code


def _check_unitary(apps, strict: bool, err) -> None:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for app in apps:
            check_unitary(app.matrix, "error" if strict else "warn", name=app.name)
    for w in caught:
        print(f"warning: {w.message}", file=err)


def cmd_run(config: RunConfig, out=None, err=None) -> int:
    """Run a program from ``|0...0>`` and print its wavefunction."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        program = parse_file(config.program)
    except OSError as exc:
        return _fail(err, EXIT_PARSE, exc)
    except SourceError as exc:
        return _fail(err, EXIT_PARSE, f"{config.program}: {exc}")

    try:
        apps = resolve(program)
        _check_unitary(apps, config.strict_unitary, err)
    except (ResolveError, NonUnitaryError) as exc:
        return _fail(err, EXIT_RESOLVE, exc)
    n = program.required_width
    if config.qubits is not None:
        if config.qubits < n:
            return _fail(err, EXIT_RESOLVE,
                         f"--qubits {config.qubits} is smaller than the {n} qubits "
                         "the program uses")
        n = config.qubits

    try:
        reg = Register.zero(n, max_qubits=config.max_state)
        for app in apps:
            reg = apply_gate(reg, app, unitary="ignore")
        text = dump_wavefunction(reg, threshold=config.threshold,
                                 style=config.style, ascii=config.ascii)
    except (ValueError, MemoryError) as exc:
        return _fail(err, EXIT_RUNTIME, exc)
    out.write(text)
    return EXIT_OK


def _lift_matrix(args):
    if args.matrix is not None:
        return load_matrix(Path(args.matrix).read_text(encoding="utf-8"))
    if args.program is not None:
        matrix = parse_file(args.program).gate_matrix(args.gate)
    else:
        matrix = gates.BUILTINS.get(args.gate)
    return matrix


def cmd_lift(args, out=None, err=None) -> int:
    """Print the dense lifted matrix of one gate application."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        matrix = _lift_matrix(args)
    except (OSError, LiteralError, SourceError) as exc:
        return _fail(err, EXIT_PARSE, exc)
    if matrix is None:
        return _fail(err, EXIT_RESOLVE, f"unknown gate {args.gate!r}")
    try:
        app = GateApplication(matrix, tuple(args.qubit), args.gate)
        n = args.qubits if args.qubits is not None else 1 + max(app.qubits)
        _check_unitary([app], args.strict_unitary, err)
    except ValueError as exc:
        return _fail(err, EXIT_RESOLVE, exc)
    try:
        m = lift(app, n, max_qubits=args.max_dense, unitary="ignore")
    except (ValueError, MemoryError) as exc:
        return _fail(err, EXIT_RUNTIME, exc)
    out.write(dump_matrix(m))
    return EXIT_OK


def cmd_who(ket: str, *, decimal: bool = False, out=None, err=None) -> int:
    """Print the excited qubit labels of a basis ket, ascending."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        index = parse_ket(ket, style="decimal" if decimal else "binary")
    except BasisError as exc:
        return _fail(err, EXIT_PARSE, exc)
    labels = sorted(excited_qubits(index))
    if labels:
        out.write(" ".join(map(str, labels)) + "\n")
    return EXIT_OK


def cmd_tau(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        m = tau_matrix(args.i, args.n, max_qubits=args.max_dense)
    except ValueError as exc:
        return _fail(err, EXIT_RUNTIME, exc)
    out.write(dump_matrix(m))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dense = _Parser(add_help=False)
    dense.add_argument("--max-dense", type=int, default=MAX_DENSE_QUBITS, metavar="N",
                       help="largest n for dense 2**n matrices (default %(default)s)")
    unitary = _Parser(add_help=False)
    unitary.add_argument("--strict-unitary", action="store_true",
                         help="treat non-unitary gates as errors instead of warnings")

    p = sub.add_parser("run", parents=[unitary],
                       help="run a program and print the wavefunction")
    p.add_argument("program", type=Path)
    p.add_argument("--qubits", type=int, metavar="N",
                   help="register width; may only exceed 1 + max qubit label")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD, metavar="T",
                   help="hide amplitudes with modulus <= T (default %(default)s)")
    p.add_argument("--decimal", action="store_true", help="print kets as |8> not |01000>")
    p.add_argument("--ascii", action="store_true", help="close kets with '>' instead of '⟩'")
    p.add_argument("--max-state", type=int, default=MAX_STATE_QUBITS, metavar="N",
                   help="largest register width (default %(default)s)")

    p = sub.add_parser("lift", parents=[dense, unitary],
                       help="print the lifted matrix of one gate application")
    p.add_argument("gate", help="built-in gate, or a DEFGATE name with --program")
    p.add_argument("qubit", type=int, nargs="+")
    p.add_argument("--qubits", type=int, metavar="N",
                   help="register width (default 1 + max qubit)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--program", type=Path, help="program file holding DEFGATEs")
    src.add_argument("--matrix", type=Path, help="gate matrix in dump format")

    p = sub.add_parser("who", help="list the excited qubits of a ket")
    p.add_argument("ket")
    p.add_argument("--decimal", action="store_true", help="read the ket as a decimal index")

    p = sub.add_parser("tau", parents=[dense],
                       help="print the transposition matrix swapping factors i and i+1")
    p.add_argument("i", type=int)
    p.add_argument("n", type=int)
    return parser


def main(argv=None, out=None, err=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        config = RunConfig(
            program=args.program, qubits=args.qubits, threshold=args.threshold,
            decimal=args.decimal, ascii=args.ascii, strict_unitary=args.strict_unitary,
            max_state=args.max_state,
        )
        return cmd_run(config, out, err)
    if args.command == "lift":
        return cmd_lift(args, out, err)
    if args.command == "who":
        return cmd_who(args.ket, decimal=args.decimal, out=out, err=err)
    return cmd_tau(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
