"""
Self-check suite behind `verify`: oracle agreement, published fixtures and
structural invariants of the group and the tables.
"""
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

import affine_group
import bruhat
from ko_analysis import build_rows
from reference_tables import A3_WORDS, A4_WORDS, published_rows
from table_io import CacheError, cache_path_for, load_cache, save_cache
from utils_logging import logger
from weights import RankConfig, Weight, epsilon_from_omega, is_dominant, omega_from_epsilon

DEFAULT_RANKS = (2, 3)
DEFAULT_SWEEP_LENGTH = 8
GROUP_SAMPLES = 2000


class TableVerifier:
    """
    Corre las comprobaciones y arma un reporte.

    Cada comprobación es una función con nombre que agrega mensajes de error;
    una excepción dentro de ella se registra como error de esa comprobación.
    Con cache_dir, las tablas calculadas se leen o se guardan en esa caché.
    """

    def __init__(
        self,
        ranks: Sequence[int] = DEFAULT_RANKS,
        oracle_maxlen: int = DEFAULT_SWEEP_LENGTH,
        seed: int = 0,
        log_callback: Optional[Callable[[str], None]] = None,
        cache_dir: Optional[str] = None,
    ):
        self.ranks = tuple(ranks)
        self.cache_dir = cache_dir
        self.oracle_maxlen = oracle_maxlen
        self.seed = seed
        self.log_callback = log_callback or logger.info
        self._tables: Dict[int, list] = {}
        self._level_cache: Dict[int, list] = {}
        self._ideals: Dict[int, bruhat.IdealEnumeration] = {}
        self.checks: List[Tuple[str, Callable[[List[str]], None]]] = [
            ("oracle", self._check_oracle),
            ("group_axioms", self._check_group_axioms),
            ("word_lengths", self._check_word_lengths),
            ("weight_round_trips", self._check_weight_round_trips),
            ("wplus_agreement", self._check_wplus_agreement),
            ("fixtures", self._check_fixtures),
            ("table_invariants", self._check_table_invariants),
        ]

    def run(self) -> Tuple[bool, Dict]:
        """
        Ejecuta todas las comprobaciones.

        Returns:
            (passed, report) con report = {validation_passed, errors, checks}
        """
        report = {"validation_passed": True, "errors": [], "checks": {}}
        self.log_callback("🔍 Verificando grupo, orden de Bruhat y tablas...")
        for name, check in self.checks:
            errors: List[str] = []
            try:
                check(errors)
            except Exception as exc:
                errors.append(f"{type(exc).__name__}: {exc}")
            report["checks"][name] = "ok" if not errors else "failed"
            report["errors"].extend(f"[{name}] {e}" for e in errors)
            mark = "✅" if not errors else "❌"
            self.log_callback(f"   - {mark} {name}")

        report["validation_passed"] = not report["errors"]
        if report["validation_passed"]:
            self.log_callback("✅ Todas las comprobaciones pasaron.")
        else:
            summary = "Se encontraron fallas:"
            for error in report["errors"][:20]:
                summary += f"\n- {error}"
            self.log_callback(f"❌ {summary}")
        return report["validation_passed"], report

    def _levels(self, n: int) -> List[List[affine_group.AffineElement]]:
        if n not in self._level_cache:
            self._level_cache[n] = affine_group.elements_up_to_length(n, n + 1, self.oracle_maxlen)
        return self._level_cache[n]

    def _ideal(self, n: int) -> bruhat.IdealEnumeration:
        if n not in self._ideals:
            cfg = RankConfig(n)
            self._ideals[n] = bruhat.enumerate_Wplus_ideal(affine_group.find_wmax(cfg), cfg)
        return self._ideals[n]

    def _table(self, n: int) -> list:
        if n in self._tables:
            return self._tables[n]
        cfg = RankConfig(n)
        path = cache_path_for(cfg, self.cache_dir) if self.cache_dir else None
        rows = None
        if path is not None and path.exists():
            try:
                rows = load_cache(path, cfg)
            except CacheError as exc:
                logger.warning(f"caché {path} descartada: {exc}")
        if rows is None:
            rows = build_rows(cfg)
            if path is not None:
                save_cache(rows, cfg, path)
        self._tables[n] = rows
        return rows

    def _check_oracle(self, errors: List[str]):
        for n in self.ranks:
            elements = [x for level in self._levels(n) for x in level]
            for w in elements:
                interval = bruhat.lower_interval(w, self.oracle_maxlen)
                cache = bruhat.BruhatCache(w)
                for v in elements:
                    if bruhat.bruhat_leq(v, w, cache) != (v in interval):
                        errors.append(f"A_{n}: lifting and subwords disagree on {v.key} <= {w.key}")
                        return

    def _check_group_axioms(self, errors: List[str]):
        rng = np.random.default_rng(self.seed)
        for n in self.ranks:
            p = n + 1
            e = affine_group.identity(n, p)
            gens = affine_group.generators(n, p)
            for i, s in enumerate(gens):
                if affine_group.compose(s, s) != e:
                    errors.append(f"A_{n}: s_{i} is not an involution")
                # s_0 s_1 has infinite order in rank 1
                for j in range(i + 1, n + 1 if n > 1 else 0):
                    order = 3 if (j - i) % (n + 1) in (1, n) else 2
                    product = affine_group.compose(s, gens[j])
                    power = e
                    for _ in range(order):
                        power = affine_group.compose(power, product)
                    if power != e:
                        errors.append(f"A_{n}: (s_{i} s_{j})^{order} is not the identity")
            for _ in range(GROUP_SAMPLES // len(self.ranks)):
                a, b, c = (
                    affine_group.word_to_element(rng.integers(0, n + 1, size=12).tolist(), n, p)
                    for _ in range(3)
                )
                if affine_group.compose(affine_group.compose(a, b), c) != affine_group.compose(a, affine_group.compose(b, c)):
                    errors.append(f"A_{n}: composition is not associative at {a.key}, {b.key}, {c.key}")
                    return
                if affine_group.compose(a, affine_group.inverse(a)) != e:
                    errors.append(f"A_{n}: {a.key} times its inverse is not the identity")
                    return
                if affine_group.length(affine_group.inverse(a)) != affine_group.length(a):
                    errors.append(f"A_{n}: l(w^-1) != l(w) for {a.key}")
                    return

    def _check_word_lengths(self, errors: List[str]):
        for n in self.ranks:
            p = n + 1
            for k, level in enumerate(self._levels(n)):
                for x in level:
                    word = affine_group.reduced_word(x)
                    if affine_group.length(x) != k or len(word) != k:
                        errors.append(f"A_{n}: {x.key} reached at depth {k} has length {affine_group.length(x)}")
                        return
                    if affine_group.word_to_element(word, n, p) != x:
                        errors.append(f"A_{n}: reduced word of {x.key} does not multiply back")
                        return
                    for i in range(n + 1):
                        moved = affine_group.length(affine_group.compose(x, affine_group.generator(i, n, p)))
                        descent = affine_group.is_right_descent(x, i)
                        if moved != k + (-1 if descent else 1):
                            errors.append(f"A_{n}: descent test disagrees with length at {x.key}, s_{i}")
                            return

    def _check_weight_round_trips(self, errors: List[str]):
        for n in (3, 4):
            cfg = RankConfig(n)
            ideal = self._ideal(n)
            for w in ideal:
                mu = affine_group.weight_from_element(w)
                if omega_from_epsilon(epsilon_from_omega(mu.omega)) != mu.omega:
                    errors.append(f"A_{n}: epsilon/omega round trip fails for {mu}")
                if affine_group.element_from_weight(mu, cfg.p) != w:
                    errors.append(f"A_{n}: weight round trip fails for {mu}")
                if affine_group.dot_action(w, Weight.multiple_of_rho(n, -2)) != mu:
                    errors.append(f"A_{n}: dot action disagrees with the closed form at {mu}")

    def _check_wplus_agreement(self, errors: List[str]):
        samples = []
        for n in self.ranks:
            samples.extend(x for level in self._levels(n) for x in level)
        samples.extend(self._ideal(4))
        for x in samples:
            left = all(affine_group.left_descends(x, i) for i in range(1, x.n + 1))
            dominant = is_dominant(affine_group.weight_from_element(x))
            if not affine_group.is_in_Wplus(x) == left == dominant:
                errors.append(f"A_{x.n}: W+ tests disagree at {x.key}")

    def _check_fixtures(self, errors: List[str]):
        for n, words in ((3, A3_WORDS), (4, A4_WORDS)):
            expected = published_rows(n)
            rows = {row.omega: row for row in self._table(n)}
            if set(rows) != set(expected):
                errors.append(f"A_{n}: computed weights differ from the published table")
                continue
            for omega, ref in expected.items():
                got = rows[omega]
                if (got.length, got.c5, got.c6, got.c7) != (ref.length, ref.c5, ref.c6, ref.c7):
                    errors.append(
                        f"A_{n} {omega}: got l={got.length} {(got.c5, got.c6, got.c7)}, "
                        f"published l={ref.length} {(ref.c5, ref.c6, ref.c7)}"
                    )
                if got.epsilon != ref.epsilon:
                    errors.append(f"A_{n} {omega}: epsilon {got.epsilon}, published {ref.epsilon}")
            p = n + 1
            for ref in expected.values():
                built = affine_group.element_from_weight(Weight.from_epsilon(ref.epsilon), p)
                if affine_group.length(built) != ref.length:
                    errors.append(
                        f"A_{n} {ref.epsilon}: element has length {affine_group.length(built)}, "
                        f"published {ref.length}"
                    )
            w0 = affine_group.longest_finite_element(n, p)
            for omega, word in words.items():
                published = affine_group.compose(w0, affine_group.word_to_element(word, n, p))
                if published != affine_group.element_from_weight(Weight(omega), p):
                    errors.append(f"A_{n} {omega}: published word names a different element")

    def _check_table_invariants(self, errors: List[str]):
        for n in sorted(set(self.ranks) | {3, 4}):
            rows = self._table(n)
            if rows[0].c7 != len(rows):
                errors.append(f"A_{n}: top row c7 = {rows[0].c7} but {len(rows)} rows")
            if rows[0].length != affine_group.wmax_length(n):
                errors.append(f"A_{n}: top row length {rows[0].length} != 2(rho, rho)")
            for row in rows:
                if not 1 <= row.c5 <= row.c6 <= row.c7:
                    errors.append(f"A_{n} {row.omega}: counts out of order")


def verify_all(
    ranks: Sequence[int] = DEFAULT_RANKS,
    oracle_maxlen: int = DEFAULT_SWEEP_LENGTH,
    log_callback=None,
    cache_dir: Optional[str] = None,
) -> Tuple[bool, Dict]:
    """
    Función principal simplificada para correr la verificación.

    Returns:
        Una tupla con (es_valido, reporte_detallado)
    """
    return TableVerifier(ranks, oracle_maxlen, log_callback=log_callback, cache_dir=cache_dir).run()
