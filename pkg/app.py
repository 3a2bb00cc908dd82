#!/usr/bin/env python3
"""
Solver de Eberlein por bloques para matrices complejas no simétricas.
Aplicación principal de línea de comandos.

Subcomandos:
    solve      Resolver una matriz (generada o Matrix Market)
    gen        Generar una matriz de prueba
    orderings  Mostrar un ordenamiento de pivotes
    report     Verificar un resultado guardado
    bench      Medir el tiempo por ciclo según el tamaño de bloque
"""

import argparse
import os
import sys
from typing import List, Optional

# Agregar el directorio raíz al path para imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import (
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    configure_logging,
    get_default_max_cycles,
    get_default_tolerance,
    get_seed,
)
from models import (
    ConvergenceFailure,
    InvalidArgumentError,
    MatrixMarketParseError,
    NumericalFailure,
    OutputError,
    RunConfig,
)
from scripts import run_gen, show_ordering, solve_and_save, time_sweeps, verify_result
from scripts.show_orderings import ORDERING_KINDS
from scripts.solve import parse_int_list, resolve_input


class UsageError(Exception):
    """Error de uso de la línea de comandos (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _setting(getter, *args):
    """Valores de .env o de --log-level; un valor mal escrito es un error de uso."""
    try:
        return getter(*args)
    except ValueError as e:
        raise UsageError(str(e)) from e


def print_header():
    """Imprime el encabezado de la aplicación."""
    print("\n" + "=" * 70)
    print(" " * 12 + "🧮 SOLVER DE EBERLEIN POR BLOQUES")
    print(" " * 8 + "Rotaciones de Jacobi + cizallas no unitarias por bloques")
    print("=" * 70)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eberlein", description="Método de Eberlein por bloques")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (EBERLEIN_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    solve = sub.add_parser("solve", help="Resolver una matriz")
    solve.add_argument("--input", required=True, help="gen:a0 | gen:a1 | gen:a2 | archivo .mtx")
    solve.add_argument("--n", type=int, default=None)
    solve.add_argument("--mult", default=None, help="m1,m2,m3,m4,m5 para gen:a2")
    solve.add_argument("--block-size", type=int, default=None)
    solve.add_argument("--partition", default=None, help="n1,n2,... tamaños de bloque explícitos")
    solve.add_argument("--ordering", default="row", help="row | col | serial-perm:SEED | file:PATH")
    solve.add_argument("--tol", type=float, default=None)
    solve.add_argument("--absolute-tol", action="store_true")
    solve.add_argument("--max-cycles", type=int, default=None)
    solve.add_argument("--precondition", action="store_true")
    solve.add_argument("--post-precondition", action="store_true")
    solve.add_argument("--shear-sweeps", type=int, default=1)
    solve.add_argument("--seed", type=int, default=None)
    solve.add_argument("--out", default=None, help="Resultado JSON")
    solve.add_argument("--trace", default=None, help="Traza CSV por ciclo")
    solve.add_argument("--structure", default=None, help="Estructura de bloques CSV")
    solve.add_argument("--progress", action="store_true", help="Barra de progreso por ciclo")

    gen = sub.add_parser("gen", help="Generar una matriz de prueba")
    gen.add_argument("--kind", required=True, choices=["a0", "a1", "a2"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--mult", default=None)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", required=True)

    orderings = sub.add_parser("orderings", help="Mostrar un ordenamiento de pivotes")
    orderings.add_argument("--m", type=int, required=True)
    orderings.add_argument("--kind", default="row", choices=ORDERING_KINDS)
    orderings.add_argument("--seed", type=int, default=None)

    report = sub.add_parser("report", help="Verificar un resultado guardado")
    report.add_argument("--result", required=True)
    report.add_argument("--spectrum", default=None)
    report.add_argument("--trace", default=None)

    bench = sub.add_parser("bench", help="Tiempo por ciclo según el tamaño de bloque")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--block-sizes", default="4,8,16")
    bench.add_argument("--cycles", type=int, default=3)
    bench.add_argument("--seed", type=int, default=None)

    return parser


def command_solve(args) -> int:
    if args.block_size is None and args.partition is None:
        raise UsageError("solve: se requiere --block-size o --partition")
    seed = _setting(get_seed, args.seed)
    mult = parse_int_list(args.mult, "--mult") if args.mult else None
    config = RunConfig(
        input=resolve_input(args.input, n=args.n, multiplicities=mult, seed=seed),
        block_size=args.block_size,
        partition=parse_int_list(args.partition, "--partition") if args.partition else None,
        ordering=args.ordering,
        tolerance=args.tol if args.tol is not None else _setting(get_default_tolerance),
        max_cycles=args.max_cycles if args.max_cycles is not None else _setting(get_default_max_cycles),
        precondition=args.precondition,
        post_precondition=args.post_precondition,
        shear_sweeps=args.shear_sweeps,
        absolute_tolerance=args.absolute_tol,
        seed=seed,
        out_result=args.out,
        out_trace=args.trace,
        out_structure=args.structure,
    )
    solve_and_save(config, verbose=args.progress)
    return EXIT_OK


def command_gen(args) -> int:
    mult = parse_int_list(args.mult, "--mult") if args.mult else None
    run_gen(args.kind, args.n, args.out, multiplicities=mult, seed=_setting(get_seed, args.seed))
    return EXIT_OK


def command_orderings(args) -> int:
    show_ordering(args.m, args.kind, _setting(get_seed, args.seed))
    return EXIT_OK


def command_report(args) -> int:
    summary = verify_result(args.result, args.spectrum, args.trace)
    return EXIT_OK if summary["status"] in ("converged", "stalled") else EXIT_NUMERICAL


def command_bench(args) -> int:
    time_sweeps(args.n, parse_int_list(args.block_sizes, "--block-sizes"), args.cycles, _setting(get_seed, args.seed))
    return EXIT_OK


COMMANDS = {
    "solve": command_solve,
    "gen": command_gen,
    "orderings": command_orderings,
    "report": command_report,
    "bench": command_bench,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI.

    Returns:
        0 éxito, 1 error de uso, 2 falla numérica, 3 error de entrada/salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _setting(configure_logging, args.log_level)
        if args.command is None:
            parser.print_help()
            return EXIT_USAGE
        print_header()
        return COMMANDS[args.command](args)
    except (UsageError, InvalidArgumentError) as e:
        print(f"\n❌ Error de uso: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, ConvergenceFailure, ArithmeticError) as e:
        print(f"\n❌ Falla numérica: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OutputError, MatrixMarketParseError, OSError) as e:
        print(f"\n❌ Error de entrada/salida: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        # numpy/scipy: LinAlgError y otros errores internos de cálculo
        print(f"\n❌ Error interno de cálculo: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except KeyboardInterrupt:
        print("\n\n👋 Programa interrumpido")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(cli_main())
