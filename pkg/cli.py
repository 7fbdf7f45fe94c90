"""
Command-line front end: `table`, `wmax` and `verify`.

Exit codes: 0 ok, 1 usage or configuration, 2 verification failure,
3 I/O or cache.
"""
import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from rich.table import Table

from affine_group import (
    AffineGroupError, UnsupportedParameterError, coset_word, find_wmax,
    find_wmax_by_alcove, format_word, length, reduced_word, weight_from_element,
)
from ko_analysis import METHODS, KoAnalysisError, build_rows
from table_io import (
    FORMATS, LATEX_COLUMNS, RowCheckpoint, TableIOError, cache_path_for, emit,
    load_cache, resolve_cache_dir, save_cache, summarize,
)
from utils_logging import console, logger, set_quiet_mode, show_cache_error, show_progress_message
from verification import DEFAULT_RANKS, DEFAULT_SWEEP_LENGTH, TableVerifier
from weights import ConfigurationError, RankConfig, Weight, format_vector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3


class UsageError(Exception):
    """Invalid command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rightsets", description="Tablas de conjuntos derechos para Ã_n")
    parser.add_argument("--quiet", action="store_true", help="solo advertencias y errores")
    # --quiet también después del subcomando; SUPPRESS no pisa el valor global
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="solo advertencias y errores")
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", parents=[common], help="calcula y emite la tabla de A_n")
    table.add_argument("--rank", type=int, required=True)
    table.add_argument("--p", type=int, default=None, help="por defecto h = n+1")
    table.add_argument("--restricted-only", action="store_true")
    table.add_argument("--format", choices=FORMATS, default="latex")
    table.add_argument("--latex-column", choices=LATEX_COLUMNS, default="epsilon")
    table.add_argument("--method", choices=METHODS, default="interval")
    table.add_argument("--out", default=None)
    table.add_argument("--cache", nargs="?", const="", default=None, metavar="DIR",
                       help="directorio de caché (sin valor: RIGHTSETS_CACHE_DIR); "
                            "solo --method lifting reanuda una ejecución interrumpida")
    table.add_argument("--threads", type=int, default=None, help="por defecto RIGHTSETS_THREADS o 1")
    table.set_defaults(handler=cmd_table)

    wmax = sub.add_parser("wmax", parents=[common], help="muestra el elemento maximal")
    wmax.add_argument("--rank", type=int, required=True)
    wmax.add_argument("--p", type=int, default=None)
    wmax.set_defaults(handler=cmd_wmax)

    verify = sub.add_parser("verify", parents=[common], help="corre el conjunto de verificaciones")
    verify.add_argument("--rank", type=int, nargs="+", default=None)
    verify.add_argument("--oracle-maxlen", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)
    return parser


def _print_summary(rows, cfg: RankConfig):
    stats = summarize(rows, cfg)
    summary = Table(title=f"A_{cfg.n}, p = {cfg.p}")
    summary.add_column("filas", justify="right")
    summary.add_column("restringidas", justify="right")
    summary.add_column("longitudes", justify="right")
    summary.add_column("max c7", justify="right")
    summary.add_row(
        str(stats["rows"]), str(stats["restricted"]),
        f"{stats['min_length']}..{stats['max_length']}", str(stats["max_c7"]),
    )
    console.print(summary)


def cmd_table(args) -> int:
    cfg = RankConfig(args.rank, args.p)
    workers = args.threads if args.threads is not None else _env_int('RIGHTSETS_THREADS', 1)
    if workers < 1:
        raise UsageError(f"--threads must be >= 1, got {workers}")

    rows = None
    cache_file = None
    if args.cache is not None:
        cache_file = cache_path_for(cfg, resolve_cache_dir(args.cache))
        if cache_file.exists():
            try:
                rows = load_cache(cache_file, cfg)
            except TableIOError as exc:
                show_cache_error(cache_file.name, str(exc), "borre el archivo para recalcular")
                raise
            show_progress_message(f"📂 Filas cargadas desde {cache_file}", "info")

    if rows is None:
        checkpoint = RowCheckpoint(cache_file, cfg) if cache_file else None
        rows = build_rows(cfg, method=args.method, workers=workers, checkpoint=checkpoint)
        if cache_file:
            save_cache(rows, cfg, cache_file)
            checkpoint.clear()

    text = emit(rows, args.format, args.restricted_only, cfg, args.latex_column)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        show_progress_message(f"💾 Tabla escrita en {out}", "success")
    else:
        sys.stdout.write(text)
    _print_summary(rows, cfg)
    return EXIT_OK


def cmd_wmax(args) -> int:
    cfg = RankConfig(args.rank, args.p)
    w = find_wmax(cfg) if cfg.is_generic else find_wmax_by_alcove(cfg)
    target = Weight.multiple_of_rho(cfg.n, cfg.p - 2)
    if target.in_root_lattice():
        target_eps = format_vector(target.epsilon)
    else:
        target_eps = "(" + ", ".join(str(e) for e in target.rational_epsilon) + ")"
    reached = weight_from_element(w)
    lines = [
        f"rank: {cfg.n}",
        f"p: {cfg.p}",
        f"w_max: {format_word(reduced_word(w))}",
        f"y: {format_word(coset_word(w))}",
        f"length: {length(w)}",
        f"(p-2)rho omega: {format_vector(target.omega)}",
        f"(p-2)rho epsilon: {target_eps}",
        f"w_max.(-2rho) omega: {format_vector(reached.omega)}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    ranks = args.rank or list(DEFAULT_RANKS)
    sweep = args.oracle_maxlen if args.oracle_maxlen is not None else DEFAULT_SWEEP_LENGTH
    bound = _env_int('RIGHTSETS_ORACLE_MAXLEN', 10)
    if sweep > bound:
        raise UsageError(f"--oracle-maxlen {sweep} exceeds RIGHTSETS_ORACLE_MAXLEN = {bound}")
    for n in ranks:
        RankConfig(n)
    cache_dir = os.getenv('RIGHTSETS_CACHE_DIR') or None
    passed, report = TableVerifier(ranks, sweep, log_callback=logger.info, cache_dir=cache_dir).run()
    for name, status in report["checks"].items():
        sys.stdout.write(f"{name}: {status}\n")
    if not passed:
        for error in report["errors"]:
            logger.error(error)
        return EXIT_VERIFY
    show_progress_message("✅ Verificación completa", "success")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        logger.error(f"uso: {exc}")
        return EXIT_USAGE
    set_quiet_mode(args.quiet)
    try:
        return args.handler(args)
    except (UsageError, ConfigurationError, UnsupportedParameterError) as exc:
        logger.error(str(exc))
        return EXIT_USAGE
    except (TableIOError, OSError) as exc:
        logger.error(f"error de E/S: {exc}")
        return EXIT_IO
    except (AffineGroupError, KoAnalysisError) as exc:
        logger.error(f"error de cálculo: {exc}")
        return EXIT_VERIFY
