"""
Integral weight arithmetic for the root system A_n.

Weights are stored in omega-coordinates (coefficients at the fundamental
weights). The epsilon form is the sum-zero representative in the standard
basis of R^(n+1); rho is kept as exact Fractions so that every pairing is
exact.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from utils_logging import logger


class WeightError(ValueError):
    """Raised for malformed vectors or weights outside the root lattice."""


class ConfigurationError(ValueError):
    """Raised for an invalid rank / dilation pair."""


@dataclass(frozen=True)
class RankConfig:
    """Rank n of A_n and the affine dilation parameter p (default h = n+1)."""
    n: int
    p: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigurationError(f"rank must be a positive integer, got {self.n!r}")
        if self.p is None:
            object.__setattr__(self, 'p', self.n + 1)
        if not isinstance(self.p, int) or self.p < self.n + 1:
            raise ConfigurationError(
                f"p must be an integer >= h = {self.n + 1} for A_{self.n}, got {self.p!r}"
            )

    @property
    def h(self) -> int:
        """Coxeter number."""
        return self.n + 1

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def is_generic(self) -> bool:
        return self.p == self.h


@dataclass(frozen=True, order=True)
class Root:
    """The positive root eps_i - eps_j, 1 <= i < j <= n+1."""
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise WeightError(f"invalid positive root ({self.i}, {self.j})")

    @property
    def is_simple(self) -> bool:
        return self.j == self.i + 1

    def height(self) -> int:
        return self.j - self.i

    def vector(self, dim: int) -> Tuple[int, ...]:
        if self.j > dim:
            raise WeightError(f"root ({self.i}, {self.j}) does not fit dimension {dim}")
        return tuple(1 if k == self.i else -1 if k == self.j else 0 for k in range(1, dim + 1))


def simple_roots(n: int) -> List[Root]:
    return [Root(i, i + 1) for i in range(1, n + 1)]


def highest_root(n: int) -> Root:
    """alpha_0 in the tables' notation: eps_1 - eps_(n+1)."""
    return Root(1, n + 1)


@lru_cache(maxsize=None)
def positive_roots(n: int) -> Tuple[Root, ...]:
    return tuple(Root(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2))


@dataclass(frozen=True)
class RhoVector:
    """Half the sum of the positive roots, in epsilon coordinates."""
    entries: Tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def doubled(self) -> Tuple[int, ...]:
        """2*rho, which is always integral."""
        return tuple(int(2 * e) for e in self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@lru_cache(maxsize=None)
def rho(n: int) -> RhoVector:
    return RhoVector(tuple(Fraction(n - 2 * (k - 1), 2) for k in range(1, n + 2)))


def rho_norm(n: int) -> Fraction:
    """(rho, rho^vee); twice this is the length of the maximal element."""
    return sum((e * e for e in rho(n)), Fraction(0))


VectorLike = Sequence[Union[int, Fraction]]


def omega_from_epsilon(eps: VectorLike, n: Optional[int] = None) -> Tuple[int, ...]:
    """Successive differences eps_i - eps_(i+1); constant shifts drop out."""
    if len(eps) < 2:
        raise WeightError(f"epsilon vector needs at least 2 entries, got {len(eps)}")
    if n is not None and len(eps) != n + 1:
        raise WeightError(f"epsilon vector for A_{n} needs {n + 1} entries, got {len(eps)}")
    diffs = [Fraction(eps[i]) - Fraction(eps[i + 1]) for i in range(len(eps) - 1)]
    if any(d.denominator != 1 for d in diffs):
        raise WeightError(f"non-integral omega coefficients for {tuple(eps)}")
    return tuple(int(d) for d in diffs)


def rational_epsilon(omega: Sequence[int]) -> Tuple[Fraction, ...]:
    """Sum-zero epsilon representative with rational entries."""
    if len(omega) < 1:
        raise WeightError("omega vector must have at least one entry")
    dim = len(omega) + 1
    first = Fraction(sum((dim - i) * int(c) for i, c in enumerate(omega, start=1)), dim)
    eps = [first]
    for c in omega:
        eps.append(eps[-1] - int(c))
    return tuple(eps)


def epsilon_from_omega(omega: Sequence[int]) -> Tuple[int, ...]:
    """
    Integral sum-zero epsilon representative.

    Raises:
        WeightError: when the representative is not integral, i.e. the weight
            lies outside the root lattice.
    """
    eps = rational_epsilon(omega)
    if eps[0].denominator != 1:
        raise WeightError(f"weight {format_vector(omega)} is not in the root lattice")
    return tuple(int(e) for e in eps)


@dataclass(frozen=True)
class Weight:
    """An integral weight of A_n in canonical omega-coordinates."""
    omega: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'omega', tuple(int(c) for c in self.omega))
        if not self.omega:
            raise WeightError("a weight needs at least one omega coefficient")

    @classmethod
    def from_epsilon(cls, eps: VectorLike) -> 'Weight':
        return cls(omega_from_epsilon(eps))

    @classmethod
    def zero(cls, n: int) -> 'Weight':
        return cls((0,) * n)

    @classmethod
    def multiple_of_rho(cls, n: int, k: int) -> 'Weight':
        """k*rho; rho has every omega-coefficient equal to 1."""
        return cls((k,) * n)

    @property
    def n(self) -> int:
        return len(self.omega)

    @property
    def epsilon(self) -> Tuple[int, ...]:
        return epsilon_from_omega(self.omega)

    @property
    def rational_epsilon(self) -> Tuple[Fraction, ...]:
        return rational_epsilon(self.omega)

    def in_root_lattice(self) -> bool:
        return rational_epsilon(self.omega)[0].denominator == 1

    def _check_rank(self, other: 'Weight'):
        if self.n != other.n:
            raise WeightError(f"rank mismatch: A_{self.n} vs A_{other.n}")

    def __add__(self, other: 'Weight') -> 'Weight':
        self._check_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.omega, other.omega)))

    def __sub__(self, other: 'Weight') -> 'Weight':
        self._check_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.omega, other.omega)))

    def __str__(self) -> str:
        return format_vector(self.omega)


def root_weight(root: Root, n: int) -> Weight:
    return Weight.from_epsilon(root.vector(n + 1))


def pairing(v: Union[Weight, VectorLike], r: Root) -> Fraction:
    """(v, r^vee) for a positive root r = (i, j); in type A this is v_i - v_j."""
    vec = rational_epsilon(v.omega) if isinstance(v, Weight) else v
    if r.j > len(vec):
        raise WeightError(f"root ({r.i}, {r.j}) does not fit a vector of length {len(vec)}")
    return Fraction(vec[r.i - 1]) - Fraction(vec[r.j - 1])


def height(v: Weight) -> int:
    """(v, rho^vee): the sum of the simple-root coefficients of v."""
    eps = epsilon_from_omega(v.omega)
    value = sum((e * r for e, r in zip(eps, rho(v.n))), Fraction(0))
    if value.denominator != 1:
        raise WeightError(f"height of {v} is not integral")
    return int(value)


def is_dominant(v: Weight) -> bool:
    return all(c >= 0 for c in v.omega)


def is_restricted(v: Weight, p: int) -> bool:
    return all(0 <= c <= p - 1 for c in v.omega)


def is_regular(v: Weight, p: int) -> bool:
    """(v + rho, alpha^vee) is prime to p for every positive root alpha."""
    shifted = [e + r for e, r in zip(rational_epsilon(v.omega), rho(v.n))]
    return all(pairing(shifted, a) % p != 0 for a in positive_roots(v.n))


def dominant_weights_below(lam: Weight) -> Iterator[Weight]:
    """
    Every dominant mu with lam - mu a nonnegative combination of simple roots.

    Breadth-first from lam, subtracting positive roots and keeping only
    dominant weights. Dominant weights below lam are connected to it through
    dominant weights by positive-root steps, so nothing is missed.
    """
    if not is_dominant(lam):
        raise WeightError(f"{lam} is not dominant")
    n = lam.n
    steps = [root_weight(a, n) for a in positive_roots(n)]
    seen = {lam.omega}
    level = deque([lam])
    while level:
        nxt = deque()
        for mu in level:
            yield mu
            for step in steps:
                below = mu - step
                if below.omega in seen or not is_dominant(below):
                    continue
                seen.add(below.omega)
                nxt.append(below)
        level = nxt
    logger.debug(f"{len(seen)} pesos dominantes bajo {lam}")


def format_vector(vec: Sequence[int]) -> str:
    """`(3, 1, -1, -3)` text form."""
    return "(" + ", ".join(str(int(c)) for c in vec) + ")"


def parse_vector(text: str) -> Tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise WeightError(f"not a vector literal: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(part) for part in inner.split(","))
    except ValueError as exc:
        raise WeightError(f"not a vector literal: {text!r}") from exc
