"""
The affine Weyl group W_p of type A~_n as affine maps of rho-shifted space.

An element is a pair (sigma, tau) acting by y -> sigma(y) + p*tau, where
(sigma(y))_i = y_(sigma^-1(i)) and tau is a sum-zero integer vector. Points
are rho-shifted (y = lambda + rho), so the dot action is plain action
conjugated by the shift. The base alcove is C^-, the alcove of -rho (the
image of the base weight -2*rho); s_0 reflects in (y, alpha_0^vee) = -p.

Everything below only needs the integer differences

    (w(-rho))_i - (w(-rho))_j = sigma^-1(i) - sigma^-1(j) + p*(tau_i - tau_j),

which are never multiples of p when p >= h, so lengths and descents are
computed in exact integer arithmetic.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import Dict, Iterable, List, Sequence, Tuple

from utils_logging import logger
from weights import (
    RankConfig, Weight, WeightError, epsilon_from_omega, format_vector,
    omega_from_epsilon, rho, rho_norm,
)


class AffineGroupError(Exception):
    """Base error for group-element operations."""


class OrbitMembershipError(AffineGroupError):
    """The weight is not in the dot orbit W_p . (-2 rho)."""


class NotInWplusError(AffineGroupError):
    """The element is not maximal in its coset W_f w."""


class RankMismatchError(AffineGroupError):
    """Operands belong to different groups (rank or p differ)."""


class UnsupportedParameterError(AffineGroupError):
    """The requested p is outside what the operation supports."""


@dataclass(frozen=True)
class AffineElement:
    """
    Element (sigma, tau) of W_p.

    sigma is stored in one-line notation (sigma[k-1] = sigma(k)); tau is the
    translation part, a root-lattice vector.
    """
    sigma: Tuple[int, ...]
    tau: Tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'sigma', tuple(int(k) for k in self.sigma))
        object.__setattr__(self, 'tau', tuple(int(t) for t in self.tau))
        dim = len(self.sigma)
        if dim < 2 or len(self.tau) != dim:
            raise AffineGroupError(f"sigma and tau must have the same length >= 2: {self.sigma}, {self.tau}")
        if sorted(self.sigma) != list(range(1, dim + 1)):
            raise AffineGroupError(f"{self.sigma} is not a permutation of 1..{dim}")
        if sum(self.tau) != 0:
            raise AffineGroupError(f"translation {self.tau} does not sum to zero")
        if self.p < dim:
            raise UnsupportedParameterError(f"p = {self.p} is below h = {dim}")

    @property
    def n(self) -> int:
        return len(self.sigma) - 1

    @property
    def dim(self) -> int:
        return len(self.sigma)

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.sigma, self.tau

    @cached_property
    def sigma_inverse(self) -> Tuple[int, ...]:
        inv = [0] * self.dim
        for k, image in enumerate(self.sigma, start=1):
            inv[image - 1] = k
        return tuple(inv)

    def is_identity(self) -> bool:
        return self.sigma == tuple(range(1, self.dim + 1)) and not any(self.tau)

    def act(self, y: Sequence) -> tuple:
        """y -> sigma(y) + p*tau on a rho-shifted point."""
        if len(y) != self.dim:
            raise RankMismatchError(f"point of length {len(y)} for an element of A_{self.n}")
        inv = self.sigma_inverse
        return tuple(y[inv[i] - 1] + self.p * self.tau[i] for i in range(self.dim))

    def to_dict(self) -> Dict[str, List[int]]:
        return {"sigma": list(self.sigma), "tau": list(self.tau)}

    @classmethod
    def from_dict(cls, data: Dict[str, Sequence[int]], p: int) -> 'AffineElement':
        return cls(tuple(data["sigma"]), tuple(data["tau"]), p)

    def __mul__(self, other: 'AffineElement') -> 'AffineElement':
        return compose(self, other)

    def __str__(self) -> str:
        return format_word(reduced_word(self))


class RightSet(frozenset):
    """Indices i of the generators with w s_i < w."""

    def as_mask(self) -> int:
        return sum(1 << i for i in self)

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in sorted(self)) + "}"

    def __repr__(self) -> str:
        return f"RightSet({sorted(self)})"


def _check_same_group(a: AffineElement, b: AffineElement):
    if a.dim != b.dim or a.p != b.p:
        raise RankMismatchError(f"A_{a.n} (p={a.p}) vs A_{b.n} (p={b.p})")


def identity(n: int, p: int) -> AffineElement:
    return AffineElement(tuple(range(1, n + 2)), (0,) * (n + 1), p)


@lru_cache(maxsize=None)
def generator(i: int, n: int, p: int) -> AffineElement:
    """s_i; s_0 is (transposition(1, n+1), -alpha_0)."""
    if not 0 <= i <= n:
        raise AffineGroupError(f"generator index {i} outside 0..{n}")
    dim = n + 1
    sigma = list(range(1, dim + 1))
    tau = [0] * dim
    if i == 0:
        sigma[0], sigma[-1] = dim, 1
        tau[0], tau[-1] = -1, 1
    else:
        sigma[i - 1], sigma[i] = i + 1, i
    return AffineElement(tuple(sigma), tuple(tau), p)


def generators(n: int, p: int) -> List[AffineElement]:
    return [generator(i, n, p) for i in range(n + 1)]


def compose(a: AffineElement, b: AffineElement) -> AffineElement:
    """(sigma, tau) o (sigma', tau') = (sigma sigma', sigma(tau') + tau)."""
    _check_same_group(a, b)
    sigma = tuple(a.sigma[k - 1] for k in b.sigma)
    inv = a.sigma_inverse
    tau = tuple(b.tau[inv[i] - 1] + a.tau[i] for i in range(a.dim))
    return AffineElement(sigma, tau, a.p)


def inverse(w: AffineElement) -> AffineElement:
    """(sigma^-1, -sigma^-1(tau))."""
    tau = tuple(-w.tau[w.sigma[i] - 1] for i in range(w.dim))
    return AffineElement(w.sigma_inverse, tau, w.p)


def dot_action(w: AffineElement, lam: Weight) -> Weight:
    """w . lambda = w(lambda + rho) - rho."""
    if lam.n != w.n:
        raise RankMismatchError(f"weight of A_{lam.n} for an element of A_{w.n}")
    shift = rho(w.n).entries
    moved = w.act([e + r for e, r in zip(lam.rational_epsilon, shift)])
    try:
        return Weight(omega_from_epsilon([z - r for z, r in zip(moved, shift)]))
    except WeightError as exc:
        raise AffineGroupError(f"dot action of {w.key} on {lam} left the weight lattice") from exc


def _base_difference(w: AffineElement, i: int, j: int) -> int:
    """(w(-rho))_i - (w(-rho))_j for 0-based positions i, j."""
    inv = w.sigma_inverse
    return inv[i] - inv[j] + w.p * (w.tau[i] - w.tau[j])


def length(w: AffineElement) -> int:
    """
    Number of affine hyperplanes separating C^- from w(C^-).

    For each positive root alpha the base point -rho has floor((y, alpha)/p)
    equal to -1, so the root contributes |floor((y_w, alpha)/p) + 1|.
    """
    inv = w.sigma_inverse
    tau = w.tau
    p = w.p
    total = 0
    for i in range(w.dim):
        for j in range(i + 1, w.dim):
            d = inv[i] - inv[j] + p * (tau[i] - tau[j])
            if d % p == 0:
                raise AffineGroupError(f"element {w.key} sends the base point onto a wall")
            total += abs(d // p + 1)
    return total


def _check_index(w: AffineElement, i: int):
    if not 0 <= i <= w.n:
        raise AffineGroupError(f"generator index {i} outside 0..{w.n}")


def is_right_descent(w: AffineElement, i: int) -> bool:
    """
    True iff w s_i < w, i.e. the wall w(H_i) of w(C^-) separates it from C^-.

    With a, b the images under sigma of the two coordinates H_i involves,
    C^- lies beyond the wall iff (a - b) - p(tau_a - tau_b) crosses 0
    (i >= 1) or -p (i = 0).
    """
    _check_index(w, i)
    sigma, tau, p = w.sigma, w.tau, w.p
    if i == 0:
        a, b = sigma[0], sigma[-1]
        return (a - b) - p * (tau[a - 1] - tau[b - 1]) < -p
    a, b = sigma[i - 1], sigma[i]
    return (a - b) - p * (tau[a - 1] - tau[b - 1]) > 0


def right_set(w: AffineElement) -> RightSet:
    """R(w) = {i : w s_i < w}."""
    return RightSet(i for i in range(w.n + 1) if is_right_descent(w, i))


def left_descends(w: AffineElement, i: int) -> bool:
    """True iff s_i w < w: the wall H_i of C^- separates C^- from w(C^-)."""
    _check_index(w, i)
    if i == 0:
        return _base_difference(w, 0, w.n) < -w.p
    return _base_difference(w, i - 1, i) > 0


def is_in_Wplus(w: AffineElement) -> bool:
    """w is maximal in W_f w; equivalently w . (-2 rho) is dominant."""
    return all(left_descends(w, i) for i in range(1, w.n + 1))


def longest_finite_element(n: int, p: int) -> AffineElement:
    """w_0: sigma reverses 1..n+1, no translation."""
    return AffineElement(tuple(range(n + 1, 0, -1)), (0,) * (n + 1), p)


def weight_from_element(w: AffineElement) -> Weight:
    """w . (-2 rho); the epsilon entries are sigma^-1(i) + i - n - 2 + p tau_i."""
    inv = w.sigma_inverse
    eps = [inv[i] + (i + 1) - w.n - 2 + w.p * w.tau[i] for i in range(w.dim)]
    return Weight.from_epsilon(eps)


def element_from_weight(mu: Weight, p: int) -> AffineElement:
    """
    The unique w with w . (-2 rho) = mu.

    With v = eps(mu) + 2 rho, sigma^-1(i) is the element of 1..n+1 congruent
    to v_i + i mod p and tau_i = (v_i - (sigma^-1(i) - i)) / p.

    Raises:
        OrbitMembershipError: mu is not in the orbit of -2 rho.
    """
    n = mu.n
    dim = n + 1
    if p < dim:
        raise UnsupportedParameterError(f"p = {p} is below h = {dim}")
    try:
        eps = epsilon_from_omega(mu.omega)
    except WeightError as exc:
        raise OrbitMembershipError(str(exc)) from exc
    v = [e + r for e, r in zip(eps, rho(n).doubled())]
    inv = []
    for i, vi in enumerate(v, start=1):
        residue = (vi + i) % p
        candidate = residue if residue else p
        if candidate > dim:
            raise OrbitMembershipError(f"{mu} is not in the orbit of -2rho (coordinate {i})")
        inv.append(candidate)
    if len(set(inv)) != dim:
        raise OrbitMembershipError(f"{mu} is singular for p = {p}")
    tau = []
    for i, (vi, k) in enumerate(zip(v, inv), start=1):
        shift, rest = divmod(vi - (k - i), p)
        if rest:
            raise OrbitMembershipError(f"{mu}: non-integral translation at coordinate {i}")
        tau.append(shift)
    sigma = [0] * dim
    for i, k in enumerate(inv, start=1):
        sigma[k - 1] = i
    w = AffineElement(tuple(sigma), tuple(tau), p)
    if weight_from_element(w) != mu:
        raise OrbitMembershipError(f"round trip failed for {mu}")
    return w


def reduced_word(w: AffineElement) -> List[int]:
    """Canonical reduced word: strip the smallest right descent, then reverse."""
    word = []
    x = w
    while not x.is_identity():
        for i in range(x.n + 1):
            if is_right_descent(x, i):
                break
        else:
            raise AffineGroupError(f"element {x.key} has no right descent")
        word.append(i)
        x = compose(x, generator(i, x.n, x.p))
    word.reverse()
    return word


def word_to_element(word: Iterable[int], n: int, p: int) -> AffineElement:
    return reduce(lambda acc, i: compose(acc, generator(i, n, p)), word, identity(n, p))


def format_word(word: Sequence[int]) -> str:
    """`s0s3s1s2`; the empty word prints as `1`."""
    return "".join(f"s{i}" for i in word) if word else "1"


def compact_word(word: Sequence[int]) -> str:
    """Subscripts only (`0312`), as in the abbreviated tables."""
    return "".join(str(i) for i in word) if word else "1"


def parse_word(text: str) -> List[int]:
    body = text.strip()
    if body in ("", "1", "e"):
        return []
    if not body.startswith("s"):
        raise AffineGroupError(f"not a word: {text!r}")
    try:
        return [int(part) for part in body[1:].split("s")]
    except ValueError as exc:
        raise AffineGroupError(f"not a word: {text!r}") from exc


def coset_factorize(w: AffineElement) -> Tuple[AffineElement, AffineElement]:
    """
    Split w in W+ as w_0 y with l(w) = l(w_0) + l(y).

    Raises:
        NotInWplusError: w is not in W+ or the lengths are not additive.
    """
    if not is_in_Wplus(w):
        raise NotInWplusError(f"{w.key} is not maximal in its W_f coset")
    w0 = longest_finite_element(w.n, w.p)
    y = compose(w0, w)
    if length(w) != length(w0) + length(y):
        raise NotInWplusError(f"lengths of w_0 and y do not add up to l(w) for {w.key}")
    return w0, y


def coset_word(w: AffineElement) -> List[int]:
    """Canonical reduced word of y in w = w_0 y (the tables' first column)."""
    return reduced_word(coset_factorize(w)[1])


def project_to_Wplus(x: AffineElement) -> AffineElement:
    """The maximal element of W_f x: reorder x(-rho) into decreasing order."""
    inv = x.sigma_inverse
    keys = [inv[i] + x.p * x.tau[i] for i in range(x.dim)]
    order = sorted(range(x.dim), key=lambda i: -keys[i])
    pi = [0] * x.dim
    for rank, i in enumerate(order, start=1):
        pi[i] = rank
    return compose(AffineElement(tuple(pi), (0,) * x.dim, x.p), x)


def wmax_length(n: int) -> int:
    """2 (rho, rho^vee)."""
    value = 2 * rho_norm(n)
    assert value.denominator == 1
    return int(value)


def find_wmax(cfg: RankConfig) -> AffineElement:
    """
    The element with w_max . (-2 rho) = (p-2) rho, for p = h.

    Raises:
        UnsupportedParameterError: p > h (use find_wmax_by_alcove there).
    """
    if cfg.p != cfg.h:
        raise UnsupportedParameterError(
            f"find_wmax needs p = h = {cfg.h}; got p = {cfg.p} (see find_wmax_by_alcove)"
        )
    target = Weight.multiple_of_rho(cfg.n, cfg.p - 2)
    w = element_from_weight(target, cfg.p)
    expected = wmax_length(cfg.n)
    if length(w) != expected:
        raise AffineGroupError(f"w_max has length {length(w)}, expected {expected}")
    logger.debug(f"w_max de A_{cfg.n}: longitud {expected}, peso {format_vector(target.omega)}")
    return w


def _wall_separates(w: AffineElement, i: int, target2: Sequence[int]) -> bool:
    """Whether the wall w(H_i) separates w(C^-) from the point target2 / 2."""
    sigma, tau, p = w.sigma, w.tau, w.p
    if i == 0:
        a, b = sigma[0], sigma[-1]
        return target2[a - 1] - target2[b - 1] - 2 * p * (tau[a - 1] - tau[b - 1]) < -2 * p
    a, b = sigma[i - 1], sigma[i]
    return target2[a - 1] - target2[b - 1] - 2 * p * (tau[a - 1] - tau[b - 1]) > 0


def find_wmax_by_alcove(cfg: RankConfig) -> AffineElement:
    """
    Maximal element for any p >= h: the w whose alcove w(C^-) contains
    (p-1) rho, the rho-shift of (p-2) rho.

    Walks from C^- crossing, at each step, the smallest-index wall that
    separates the current alcove from the target.
    """
    n, p = cfg.n, cfg.p
    target2 = [(p - 1) * r for r in rho(n).doubled()]
    expected = wmax_length(n)
    w = identity(n, p)
    for _ in range(expected + 1):
        for i in range(n + 1):
            if _wall_separates(w, i, target2):
                w = compose(w, generator(i, n, p))
                break
        else:
            break
    else:
        raise AffineGroupError(f"alcove walk for A_{n}, p = {p} did not terminate")
    if length(w) != expected:
        raise AffineGroupError(f"alcove walk reached length {length(w)}, expected {expected}")
    return w


def elements_up_to_length(n: int, p: int, max_length: int) -> List[List[AffineElement]]:
    """All elements of W_p grouped by length 0..max_length."""
    levels = [[identity(n, p)]]
    gens = generators(n, p)
    for _ in range(max_length):
        seen = {}
        for x in levels[-1]:
            for i, s in enumerate(gens):
                if not is_right_descent(x, i):
                    up = compose(x, s)
                    seen.setdefault(up.key, up)
        levels.append([seen[k] for k in sorted(seen)])
    return levels
