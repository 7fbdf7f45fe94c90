"""
Table emission (LaTeX / CSV / JSON) and the row cache.

Cache files are JSON lines: a header object followed by one row per line.
The header carries the format version, n, p, the row count and a SHA-256
checksum over the row lines.
"""
import hashlib
import json
import os
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

from affine_group import compact_word, format_word, longest_finite_element, reduced_word
from ko_analysis import TableRow
from utils_logging import logger
from weights import RankConfig, Weight, format_vector, is_restricted

CACHE_FORMAT = "rightsets-rows"
CACHE_VERSION = 1
FORMATS = ("latex", "csv", "json")
LATEX_COLUMNS = ("epsilon", "right_set")
COLUMNS = ["y_word", "epsilon", "omega", "length", "c5", "c6", "c7", "right_set"]


class TableIOError(Exception):
    """Base error for emission and persistence."""


class UnknownFormatError(TableIOError):
    pass


class CacheError(TableIOError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


class CacheMismatchError(CacheError):
    """The cache was written for a different (n, p)."""


def format_right_set(indices: Iterable[int]) -> str:
    return "{" + ", ".join(str(i) for i in sorted(indices)) + "}"


def latex_word(word: Sequence[int]) -> str:
    """`$s_{0}s_{3}s_{1}s_{2}$`; the identity is `$1$`."""
    if not word:
        return "$1$"
    return "$" + "".join(f"s_{{{i}}}" for i in word) + "$"


def filter_restricted(rows: Iterable[TableRow], p: int) -> List[TableRow]:
    """Rows whose weight has every omega-coefficient in 0..p-1."""
    return [row for row in rows if is_restricted(Weight(row.omega), p)]


def rows_to_frame(rows: Sequence[TableRow]) -> pd.DataFrame:
    records = [
        {
            "y_word": format_word(row.y_word),
            "epsilon": format_vector(row.epsilon),
            "omega": format_vector(row.omega),
            "length": row.length,
            "c5": row.c5,
            "c6": row.c6,
            "c7": row.c7,
            "right_set": format_right_set(row.right_set),
        }
        for row in rows
    ]
    return pd.DataFrame.from_records(records, columns=COLUMNS)


def w0_line(n: int, p: int) -> str:
    """The `w = w_0 y` line printed above a table, with w_0 as its canonical word."""
    w0 = longest_finite_element(n, p)
    return rf"\noindent $A_{{{n}}}$: $w = w_0 y$, $w_0 = $ {latex_word(reduced_word(w0))}"


def _emit_latex(rows: Sequence[TableRow], column: str, cfg: Optional[RankConfig] = None) -> str:
    if column not in LATEX_COLUMNS:
        raise UnknownFormatError(f"unknown LaTeX column {column!r}; expected one of {LATEX_COLUMNS}")
    second = r"$\varepsilon$" if column == "epsilon" else r"$R(w)$"
    lines = []
    if cfg is None and rows:
        cfg = RankConfig(len(rows[0].omega))
    if cfg is not None:
        lines += [w0_line(cfg.n, cfg.p), ""]
    lines += [
        r"\begin{longtable}{|l|l|l|l|l|l|l|}",
        r"\hline",
        rf"$y$ & {second} & $\omega$ & $\ell(w)$ & (5) & (6) & (7) \\",
        r"\hline",
        r"\endhead",
    ]
    for row in rows:
        if column == "epsilon":
            word = latex_word(row.y_word)
            middle = format_vector(row.epsilon)
        else:
            # abbreviated layout of the large tables: subscripts only
            word = compact_word(row.y_word)
            middle = r"$\{" + ", ".join(str(i) for i in sorted(row.right_set)) + r"\}$"
        lines.append(
            f"{word} & {middle} & {format_vector(row.omega)} & "
            f"{row.length} & {row.c5} & {row.c6} & {row.c7} \\\\ \\hline"
        )
    lines.append(r"\end{longtable}")
    return "\n".join(lines) + "\n"


def emit(
    rows: Sequence[TableRow],
    fmt: str,
    restricted_only: bool = False,
    cfg: Optional[RankConfig] = None,
    latex_column: str = "epsilon",
) -> str:
    """
    Render rows as text.

    Raises:
        UnknownFormatError: fmt is not latex, csv or json.
        TableIOError: restricted_only without a configuration to read p from.
    """
    if fmt not in FORMATS:
        raise UnknownFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if restricted_only:
        if cfg is None:
            raise TableIOError("restricted_only needs the rank configuration")
        rows = filter_restricted(rows, cfg.p)

    if fmt == "latex":
        return _emit_latex(rows, latex_column, cfg)
    if fmt == "csv":
        return rows_to_frame(rows).to_csv(index=False, lineterminator="\n")
    return json.dumps([row.to_dict() for row in rows], indent=2) + "\n"


def summarize(rows: Sequence[TableRow], cfg: RankConfig) -> Dict[str, int]:
    """Row count, restricted rows, length range and the largest c7."""
    if not rows:
        return {"rows": 0, "restricted": 0, "min_length": 0, "max_length": 0, "max_c7": 0}
    return {
        "rows": len(rows),
        "restricted": len(filter_restricted(rows, cfg.p)),
        "min_length": min(row.length for row in rows),
        "max_length": max(row.length for row in rows),
        "max_c7": max(row.c7 for row in rows),
    }


# --- cache ---

def _row_line(row: TableRow) -> str:
    return json.dumps(row.to_dict(), sort_keys=True, separators=(",", ":"))


def _checksum(lines: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def _header(cfg: RankConfig, **extra) -> Dict:
    return {"format": CACHE_FORMAT, "version": CACHE_VERSION, "n": cfg.n, "p": cfg.p, **extra}


def cache_path_for(cfg: RankConfig, directory) -> Path:
    return Path(directory).expanduser() / f"A{cfg.n}_p{cfg.p}.jsonl"


def resolve_cache_dir(value: Optional[str]) -> Path:
    """
    Directorio de caché: el valor explícito o RIGHTSETS_CACHE_DIR.

    Raises:
        TableIOError: no hay directorio explícito ni variable de entorno.
    """
    directory = value or os.getenv('RIGHTSETS_CACHE_DIR')
    if not directory:
        raise TableIOError("no cache directory given and RIGHTSETS_CACHE_DIR is not set")
    return Path(directory).expanduser()


def save_cache(rows: Sequence[TableRow], cfg: RankConfig, path) -> Path:
    path = Path(path)
    lines = [_row_line(row) for row in rows]
    header = _header(cfg, rows=len(lines), checksum=_checksum(lines))
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join([json.dumps(header)] + lines) + "\n", encoding="utf-8")
    tmp.replace(path)
    logger.info(f"caché guardada: {path} ({len(lines)} filas)")
    return path


def load_cache(path, cfg: Optional[RankConfig] = None) -> List[TableRow]:
    """
    Rows from a cache file.

    Raises:
        CacheError: missing or unreadable file.
        CacheVersionError: unknown format or version.
        CacheMismatchError: the file was written for another (n, p).
        CacheChecksumError: the rows do not match the header.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    if not lines:
        raise CacheError(f"cache {path} is empty")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache {path} has a corrupt header") from exc
    if not isinstance(header, dict):
        raise CacheError(f"cache {path} header is not an object")

    if header.get("format") != CACHE_FORMAT or header.get("version") != CACHE_VERSION:
        raise CacheVersionError(
            f"cache {path} has format {header.get('format')!r} version {header.get('version')!r}; "
            f"expected {CACHE_FORMAT!r} version {CACHE_VERSION}"
        )
    if cfg is not None and (header.get("n"), header.get("p")) != (cfg.n, cfg.p):
        raise CacheMismatchError(
            f"cache {path} holds A_{header.get('n')} p={header.get('p')}, requested A_{cfg.n} p={cfg.p}"
        )
    body = [line for line in lines[1:] if line.strip()]
    if len(body) != header.get("rows") or _checksum(body) != header.get("checksum"):
        raise CacheChecksumError(f"cache {path} does not match its checksum")
    try:
        return [TableRow.from_dict(json.loads(line)) for line in body]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"cache {path} has a malformed row: {exc}") from exc


class RowCheckpoint:
    """
    Append-only `<cache>.partial` file of finished rows for resuming.

    A partial file written for another (n, p) or format version is discarded.
    """

    def __init__(self, cache_path, cfg: RankConfig):
        self.cfg = cfg
        self.path = Path(str(cache_path) + ".partial")

    def load(self) -> Dict[tuple, TableRow]:
        """Rows already finished, keyed by omega."""
        if not self.path.exists():
            return {}
        lines = self.path.read_text(encoding="utf-8").splitlines()
        try:
            header = json.loads(lines[0]) if lines else {}
        except json.JSONDecodeError:
            header = {}
        if not isinstance(header, dict):
            header = {}
        expected = _header(self.cfg)
        if any(header.get(k) != v for k, v in expected.items()):
            logger.warning(f"checkpoint {self.path} no corresponde a A_{self.cfg.n} p={self.cfg.p}; se descarta")
            self.clear()
            return {}
        rows = {}
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                row = TableRow.from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                logger.warning(f"checkpoint {self.path}: línea {number} incompleta, se ignora")
                continue
            rows[row.omega] = row
        return rows

    def append(self, row: TableRow):
        fresh = not self.path.exists()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            if fresh:
                handle.write(json.dumps(_header(self.cfg)) + "\n")
            handle.write(_row_line(row) + "\n")

    def clear(self):
        self.path.unlink(missing_ok=True)
