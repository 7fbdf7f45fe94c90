"""
Bruhat order on W_p and the W+ order ideal below w_max.

Comparison uses the lifting property along a fixed descent chain of the
right argument, with a memo keyed by (left element, chain depth). The
subword oracle is an independent, exponential check for tests.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np

from affine_group import (
    AffineElement, NotInWplusError, RankMismatchError, compose, coset_word,
    element_from_weight, generator, identity, is_in_Wplus, is_right_descent,
    length, longest_finite_element, OrbitMembershipError, project_to_Wplus,
    reduced_word, weight_from_element,
)
from utils_logging import ProgressManager, logger
from weights import RankConfig, dominant_weights_below

DEFAULT_ORACLE_MAXLEN = 10


class BruhatError(Exception):
    """Base error for order computations."""


class OracleBoundError(BruhatError):
    """The subword oracle was asked about an element longer than its bound."""


class BruhatCache:
    """
    Memoized comparisons v <= w against one fixed right argument w.

    The chain w = w^0 > w^1 > ... > e strips the smallest right descent at each
    step, so a state (v, k) means "is v <= w^k" and its answer never changes.
    """

    def __init__(self, right: AffineElement):
        self.right = right
        self._chain: List[AffineElement] = [right]
        self._lengths: List[int] = [length(right)]
        self._steps: List[int] = []
        self._memo: Dict[Tuple[tuple, int], bool] = {}
        self.hits = 0
        self.misses = 0

    def _extend(self, depth: int):
        while len(self._chain) <= depth:
            last = self._chain[-1]
            step = next(i for i in range(last.n + 1) if is_right_descent(last, i))
            self._steps.append(step)
            self._chain.append(compose(last, generator(step, last.n, last.p)))
            self._lengths.append(self._lengths[-1] - 1)

    def element_at(self, depth: int) -> AffineElement:
        self._extend(depth)
        return self._chain[depth]

    def length_at(self, depth: int) -> int:
        self._extend(depth)
        return self._lengths[depth]

    def step_at(self, depth: int) -> int:
        """Generator stripped from w^depth to reach w^(depth+1)."""
        self._extend(depth + 1)
        return self._steps[depth]

    def get(self, state: Tuple[tuple, int]) -> Optional[bool]:
        return self._memo.get(state)

    def store(self, state: Tuple[tuple, int], value: bool):
        self._memo.setdefault(state, value)

    def stats(self) -> Dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "entries": len(self._memo)}

    def __len__(self) -> int:
        return len(self._memo)


def bruhat_leq(v: AffineElement, w: AffineElement, cache: Optional[BruhatCache] = None) -> bool:
    """
    v <= w in Bruhat order.

    With s the smallest right descent of w: if vs < v then v <= w iff
    vs <= ws, otherwise v <= w iff v <= ws.
    """
    if v.dim != w.dim or v.p != w.p:
        raise RankMismatchError(f"A_{v.n} (p={v.p}) vs A_{w.n} (p={w.p})")
    if cache is None:
        cache = BruhatCache(w)
    elif cache.right != w:
        raise BruhatError("cache was built for a different right argument")

    x = v
    lx = length(v)
    depth = 0
    path = []
    while True:
        state = (x.key, depth)
        known = cache.get(state)
        if known is not None:
            result = known
            cache.hits += 1
            break
        path.append(state)
        if lx > cache.length_at(depth):
            result = False
            cache.misses += 1
            break
        if lx == cache.length_at(depth):
            result = x == cache.element_at(depth)
            cache.misses += 1
            break
        step = cache.step_at(depth)
        if is_right_descent(x, step):
            x = compose(x, generator(step, x.n, x.p))
            lx -= 1
        depth += 1
    for state in path:
        cache.store(state, result)
    return result


def lower_interval(w: AffineElement, max_length: Optional[int] = None) -> FrozenSet[AffineElement]:
    """
    Every element below w: the products of subwords of a reduced word of w.

    Raises:
        OracleBoundError: l(w) exceeds max_length.
    """
    word = reduced_word(w)
    if max_length is not None and len(word) > max_length:
        raise OracleBoundError(f"l(w) = {len(word)} exceeds the oracle bound {max_length}")
    reach = {identity(w.n, w.p)}
    for i in word:
        s = generator(i, w.n, w.p)
        reach |= {compose(x, s) for x in reach}
    return frozenset(reach)


def subword_oracle(v: AffineElement, w: AffineElement, max_length: Optional[int] = None) -> bool:
    """v <= w by the subword property; bound from RIGHTSETS_ORACLE_MAXLEN when not given."""
    if max_length is None:
        max_length = int(os.getenv('RIGHTSETS_ORACLE_MAXLEN', DEFAULT_ORACLE_MAXLEN))
    if v.dim != w.dim or v.p != w.p:
        raise RankMismatchError(f"A_{v.n} (p={v.p}) vs A_{w.n} (p={w.p})")
    return v in lower_interval(w, max_length)


def row_order_key(w: AffineElement) -> Tuple[int, Tuple[int, ...]]:
    """Length descending, then the canonical y-word ascending."""
    return -length(w), tuple(coset_word(w))


@dataclass
class IdealEnumeration:
    """{v in W+ : v <= root_element}, in canonical row order."""
    root_element: AffineElement
    members: List[AffineElement]
    cfg: RankConfig
    index: Dict[tuple, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.members = sorted(self.members, key=row_order_key)
        self.index = {m.key: k for k, m in enumerate(self.members)}
        if self.root_element.key not in self.index:
            raise BruhatError("the root element is missing from its own ideal")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[AffineElement]:
        return iter(self.members)

    def __contains__(self, w: AffineElement) -> bool:
        return w.key in self.index

    def position(self, w: AffineElement) -> int:
        try:
            return self.index[w.key]
        except KeyError:
            raise BruhatError(f"{w.key} is not in the ideal") from None


_filter_cache: Optional[BruhatCache] = None


def _init_filter_worker(wmax: AffineElement):
    global _filter_cache
    _filter_cache = BruhatCache(wmax)


def _below_root(x: AffineElement) -> bool:
    return bruhat_leq(x, _filter_cache.right, _filter_cache)


def enumerate_Wplus_ideal(wmax: AffineElement, cfg: RankConfig, workers: int = 1) -> IdealEnumeration:
    """
    Dominant orbit weights below lambda_max in root order, filtered by an
    exact Bruhat test against wmax.

    Raises:
        NotInWplusError: wmax is not in W+.
    """
    if not is_in_Wplus(wmax):
        raise NotInWplusError(f"{wmax.key} is not in W+")
    top = weight_from_element(wmax)
    candidates = []
    singular = 0
    for mu in dominant_weights_below(top):
        try:
            candidates.append(element_from_weight(mu, cfg.p))
        except OrbitMembershipError:
            singular += 1
    logger.info(f"A_{cfg.n}, p={cfg.p}: {len(candidates)} candidatos ({singular} pesos fuera de la órbita)")

    if workers > 1:
        chunk = max(1, len(candidates) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_filter_worker,
                                 initargs=(wmax,)) as executor:
            flags = list(executor.map(_below_root, candidates, chunksize=chunk))
    else:
        cache = BruhatCache(wmax)
        flags = []
        with ProgressManager("Filtrando candidatos por Bruhat", total=len(candidates)) as progress:
            for x in candidates:
                flags.append(bruhat_leq(x, wmax, cache))
                progress.update()
        logger.debug(f"caché de Bruhat: {cache.stats()}")

    members = [x for x, keep in zip(candidates, flags) if keep]
    logger.info(f"ideal bajo w_max: {len(members)} elementos")
    return IdealEnumeration(wmax, members, cfg)


def wplus_descent(w: AffineElement) -> Optional[int]:
    """Smallest right descent s of w with ws still in W+ (None for w_0)."""
    for i in range(w.n + 1):
        if is_right_descent(w, i) and is_in_Wplus(compose(w, generator(i, w.n, w.p))):
            return i
    return None


def enumerate_Wplus_ideal_by_lifting(wmax: AffineElement, cfg: RankConfig) -> IdealEnumeration:
    """
    The same ideal from P(w) = P(ws) | {(us)+ : u in P(ws)}, following the
    W+ descent chain of wmax down to w_0.
    """
    if not is_in_Wplus(wmax):
        raise NotInWplusError(f"{wmax.key} is not in W+")
    steps = []
    x = wmax
    while True:
        step = wplus_descent(x)
        if step is None:
            break
        steps.append(step)
        x = compose(x, generator(step, x.n, x.p))
    if x != longest_finite_element(cfg.n, cfg.p):
        raise BruhatError(f"W+ descent chain ended at {x.key} instead of w_0")

    members = {x}
    for step in reversed(steps):
        s = generator(step, cfg.n, cfg.p)
        members |= {project_to_Wplus(compose(u, s)) for u in members}
    return IdealEnumeration(wmax, list(members), cfg)


def interval_lower_sets(ideal: IdealEnumeration) -> np.ndarray:
    """
    Boolean matrix M with M[k, j] true iff members[j] <= members[k].

    Rows are filled shortest first: the row of w is the row of ws plus the
    images (us)+ of its members, s = wplus_descent(w).
    """
    size = len(ideal)
    n, p = ideal.cfg.n, ideal.cfg.p
    images = {}
    for i in range(n + 1):
        s = generator(i, n, p)
        images[i] = np.array(
            [ideal.index.get(project_to_Wplus(compose(u, s)).key, -1) for u in ideal.members],
            dtype=np.int64,
        )

    masks = np.zeros((size, size), dtype=bool)
    for k in sorted(range(size), key=lambda k: length(ideal.members[k])):
        w = ideal.members[k]
        step = wplus_descent(w)
        if step is None:
            masks[k, k] = True
            continue
        below = ideal.position(compose(w, generator(step, n, p)))
        row = masks[below].copy()
        targets = images[step][row]
        if (targets < 0).any():
            raise BruhatError(f"projected lift left the ideal at {w.key}")
        row[targets] = True
        masks[k] = row
    return masks
