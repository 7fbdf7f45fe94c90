"""
Columns (5), (6) and (7) of the right-set tables.

For w in the ideal below w_max, over all v in W+ with v <= w:
    c7 counts them, c6 those with R(w) contained in R(v), c5 those with
    R(v) = R(w).
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from affine_group import (
    AffineElement, RightSet, UnsupportedParameterError, coset_word, find_wmax,
    length, right_set, weight_from_element,
)
from bruhat import (
    BruhatCache, IdealEnumeration, bruhat_leq, enumerate_Wplus_ideal,
    interval_lower_sets,
)
from utils_logging import ProgressManager, logger
from weights import RankConfig, Weight, format_vector, omega_from_epsilon

METHODS = ("interval", "lifting")


class KoAnalysisError(Exception):
    """Base error for the counting pipeline."""


class RowInvariantError(KoAnalysisError, ValueError):
    """A table row violates one of its structural invariants."""


class KoCounts(NamedTuple):
    c5: int
    c6: int
    c7: int


class KoSets(NamedTuple):
    equal: FrozenSet[AffineElement]
    contained: FrozenSet[AffineElement]
    below: FrozenSet[AffineElement]

    def counts(self) -> KoCounts:
        return KoCounts(len(self.equal), len(self.contained), len(self.below))


@dataclass(frozen=True)
class TableRow:
    y_word: Tuple[int, ...]
    epsilon: Tuple[int, ...]
    omega: Tuple[int, ...]
    length: int
    c5: int
    c6: int
    c7: int
    right_set: RightSet

    def __post_init__(self):
        object.__setattr__(self, 'y_word', tuple(self.y_word))
        object.__setattr__(self, 'epsilon', tuple(self.epsilon))
        object.__setattr__(self, 'omega', tuple(self.omega))
        object.__setattr__(self, 'right_set', RightSet(self.right_set))
        if not 1 <= self.c5 <= self.c6 <= self.c7:
            raise RowInvariantError(f"counts out of order: {(self.c5, self.c6, self.c7)}")
        if omega_from_epsilon(self.epsilon) != self.omega:
            raise RowInvariantError(f"omega {self.omega} does not match epsilon {self.epsilon}")
        n = len(self.omega)
        if self.length != n * (n + 1) // 2 + len(self.y_word):
            raise RowInvariantError(f"length {self.length} is not l(w_0) + |y| for y = {self.y_word}")

    @property
    def counts(self) -> KoCounts:
        return KoCounts(self.c5, self.c6, self.c7)

    @property
    def weight(self) -> Weight:
        return Weight(self.omega)

    def order_key(self) -> Tuple[int, Tuple[int, ...]]:
        return -self.length, self.y_word

    def to_dict(self) -> Dict:
        return {
            "y_word": list(self.y_word),
            "epsilon": list(self.epsilon),
            "omega": list(self.omega),
            "length": self.length,
            "c5": self.c5,
            "c6": self.c6,
            "c7": self.c7,
            "right_set": sorted(self.right_set),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'TableRow':
        return cls(
            y_word=tuple(data["y_word"]),
            epsilon=tuple(data["epsilon"]),
            omega=tuple(data["omega"]),
            length=int(data["length"]),
            c5=int(data["c5"]),
            c6=int(data["c6"]),
            c7=int(data["c7"]),
            right_set=RightSet(data["right_set"]),
        )


def ko_sets(w: AffineElement, ideal: IdealEnumeration, cache: Optional[BruhatCache] = None) -> KoSets:
    """The elements behind the three counts for w."""
    if w not in ideal:
        raise KoAnalysisError(f"{w.key} is not a member of the ideal")
    if cache is None:
        cache = BruhatCache(w)
    top = right_set(w)
    below = [v for v in ideal.members if bruhat_leq(v, w, cache)]
    contained = [v for v in below if top <= right_set(v)]
    equal = [v for v in contained if right_set(v) == top]
    return KoSets(frozenset(equal), frozenset(contained), frozenset(below))


def ko_counts(w: AffineElement, ideal: IdealEnumeration, cache: Optional[BruhatCache] = None) -> KoCounts:
    return ko_sets(w, ideal, cache).counts()


def make_row(w: AffineElement, counts: Sequence[int]) -> TableRow:
    weight = weight_from_element(w)
    c5, c6, c7 = counts
    return TableRow(
        y_word=tuple(coset_word(w)),
        epsilon=weight.epsilon,
        omega=weight.omega,
        length=length(w),
        c5=int(c5),
        c6=int(c6),
        c7=int(c7),
        right_set=right_set(w),
    )


def counts_from_lower_sets(ideal: IdealEnumeration, masks: np.ndarray) -> List[KoCounts]:
    """Per-member counts from the matrix of interval_lower_sets."""
    right_masks = np.array([right_set(m).as_mask() for m in ideal.members], dtype=np.int64)
    counts = []
    for k in range(len(ideal)):
        top = right_masks[k]
        below = right_masks[masks[k]]
        counts.append(KoCounts(
            int(np.count_nonzero(below == top)),
            int(np.count_nonzero((below & top) == top)),
            int(below.size),
        ))
    return counts


_row_ideal: Optional[IdealEnumeration] = None


def _init_row_worker(ideal: IdealEnumeration):
    global _row_ideal
    _row_ideal = ideal


def _row_counts(w: AffineElement) -> KoCounts:
    return ko_counts(w, _row_ideal)


def build_rows(
    cfg: RankConfig,
    method: str = "interval",
    workers: int = 1,
    checkpoint=None,
) -> List[TableRow]:
    """
    Full table for A_n at p = h, in canonical row order.

    Args:
        cfg: rank and p (p must equal h)
        method: "interval" derives every lower set at once; "lifting" runs
            ko_counts per row against a fresh BruhatCache
        workers: process count for candidate filtering and per-row counting
        checkpoint: optional RowCheckpoint; rows it already holds are not
            recounted by the lifting method, new rows are appended to it

    Raises:
        UnsupportedParameterError: p != h.
        KoAnalysisError: unknown method.
    """
    if method not in METHODS:
        raise KoAnalysisError(f"unknown counting method {method!r}; expected one of {METHODS}")
    if cfg.p != cfg.h:
        raise UnsupportedParameterError(f"tables are defined for p = h = {cfg.h}; got p = {cfg.p}")

    wmax = find_wmax(cfg)
    ideal = enumerate_Wplus_ideal(wmax, cfg, workers=workers)

    if method == "interval":
        counts = counts_from_lower_sets(ideal, interval_lower_sets(ideal))
        rows = [make_row(w, c) for w, c in zip(ideal.members, counts)]
    else:
        done = checkpoint.load() if checkpoint is not None else {}
        if done:
            logger.info(f"reanudando: {len(done)} filas ya calculadas en {checkpoint.path}")
        omegas = {w.key: weight_from_element(w).omega for w in ideal.members}
        pending = [w for w in ideal.members if omegas[w.key] not in done]
        known = set(omegas.values())
        rows = [row for omega, row in done.items() if omega in known]
        with ProgressManager("Contando filas", total=len(pending)) as progress:
            if workers > 1:
                chunk = max(1, len(pending) // (workers * 8))
                with ProcessPoolExecutor(max_workers=workers, initializer=_init_row_worker,
                                         initargs=(ideal,)) as executor:
                    results = executor.map(_row_counts, pending, chunksize=chunk)
                    for w, c in zip(pending, results):
                        rows.append(_record(make_row(w, c), checkpoint))
                        progress.update()
            else:
                for w in pending:
                    rows.append(_record(make_row(w, ko_counts(w, ideal)), checkpoint))
                    progress.update()

    rows.sort(key=TableRow.order_key)
    if rows and rows[0].c7 != len(rows):
        raise KoAnalysisError(f"top row counts {rows[0].c7} elements but the table has {len(rows)} rows")
    logger.info(f"A_{cfg.n}: {len(rows)} filas, w_max con peso {format_vector(rows[0].omega)}")
    return rows


def _record(row: TableRow, checkpoint) -> TableRow:
    if checkpoint is not None:
        checkpoint.append(row)
    return row
