"""Block extraction from a sparse pair ``A <_l B`` of a poset.

The procedure keeps two shrinking sets ``A`` and ``B`` and two dump sets
``A'`` and ``B'``, buckets ``B`` by dyadic degree into ``A`` and either
stops with two anticomplete halves or runs a sub-procedure that ends in a
random sparse selection (Case 1). All sets are Python-int bitsets over the
host poset's elements.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from app.core.config import AlgoConfig
from app.core.logger import logger
from app.core.seeding import derive_rng
from app.domain.entities import BlockCertificate, CertificateKind
from app.domain.graph import Graph, mask_of, members
from app.domain.poset import Poset, comparability_graph
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    CaseOneShortfallException,
    PreconditionViolationException,
    RetryCapExhaustedException,
)

# slack for comparisons against sums of irrational bucket bounds
_FLOAT_SLACK = 1e-9


def bucket_limit(m: int, epsilon: float) -> int:
    """``J0 = floor(log2(epsilon m)) + 1``, or 0 when ``epsilon m < 1``."""
    if epsilon * m < 1:
        return 0
    return math.floor(math.log2(epsilon * m)) + 1


def bucket_bound(m: int, j: int) -> float:
    """``t_j = sqrt(m) 2^(j/2)``."""
    return math.sqrt(m) * 2 ** (j / 2)


def eq1_sum(m: int, epsilon: float) -> float:
    return sum(bucket_bound(m, i) for i in range(1, bucket_limit(m, epsilon) + 1))


def eq1_holds(m: int, epsilon: float) -> bool:
    """Bucket bounds sum to less than a quarter of ``m``."""
    return eq1_sum(m, epsilon) < m / 4


def good_probability(d: int, k: int) -> Fraction:
    """Chance that exactly one of ``d`` neighbours is sampled at rate ``2^-k``."""
    p = Fraction(1, 2**k)
    return d * p * (1 - p) ** (d - 1)


def good_probability_lower_bound(k: int) -> Fraction:
    """Closed-form ``(1/2)(1 - 2^-k)^(2^k)`` for degrees in ``[2^(k-1), 2^k)``."""
    p = Fraction(1, 2**k)
    return Fraction(1, 2) * (1 - p) ** (2**k)


def certified_exponent(delta: float, ratio: float) -> float:
    """Exponent certified by ``delta * sqrt(m/|X|) < t`` when ``m = ratio * n``."""
    return math.log(2) / (2 * math.log(2 / (delta * math.sqrt(ratio))))


@dataclass(frozen=True)
class StateSnapshot:
    event: str
    j: int
    k: Optional[int]
    step: int
    size_a: int
    size_b: int
    size_a_out: int
    size_b_out: int
    size_w: int


@dataclass
class MainAlgoState:
    """Working sets of one run; every ``B``-degree into ``A`` is below ``2^j``."""

    m: int
    j0: int
    a: int
    b: int
    a_out: int = 0
    b_out: int = 0
    j: int = 0
    k: Optional[int] = None
    w: int = 0
    step: int = 0
    trace: list[StateSnapshot] = field(default_factory=list)

    def t(self, j: int) -> float:
        return bucket_bound(self.m, j)

    def dump_bound(self, level: Optional[int] = None) -> float:
        """``2 * sum(t_i for J < i <= J0)``; ``level`` overrides ``J``."""
        low = self.j if level is None else level
        return 2 * sum(self.t(i) for i in range(low + 1, self.j0 + 1))

    def record(self, event: str) -> None:
        self.trace.append(
            StateSnapshot(
                event=event,
                j=self.j,
                k=self.k,
                step=self.step,
                size_a=self.a.bit_count(),
                size_b=self.b.bit_count(),
                size_a_out=self.a_out.bit_count(),
                size_b_out=self.b_out.bit_count(),
                size_w=self.w.bit_count(),
            )
        )


@dataclass(frozen=True)
class MainAlgorithmResult:
    certificate: BlockCertificate
    branch: str
    trace: tuple[StateSnapshot, ...]


def check_properties(
    state: MainAlgoState, g: Graph, open_k: Optional[int] = None
) -> None:
    """Size conservation, dump bounds and the ``2^J`` degree bound.

    While the sub-algorithm of bucket ``open_k`` runs, its heavy sets already
    sit in ``A'`` and are charged to level ``open_k``.
    """
    m = state.m
    if state.a.bit_count() + state.a_out.bit_count() != m:
        raise AlgorithmInvariantException(f"|A|+|A'| != {m} at step {state.step}")
    if state.b.bit_count() + state.b_out.bit_count() != m:
        raise AlgorithmInvariantException(f"|B|+|B'| != {m} at step {state.step}")
    level = state.j if open_k is None else open_k - 1
    bound = state.dump_bound(level) + _FLOAT_SLACK
    if state.a_out.bit_count() > bound or state.b_out.bit_count() > bound:
        raise AlgorithmInvariantException(
            f"dump sizes {state.a_out.bit_count()}, {state.b_out.bit_count()} exceed "
            f"{bound:.4g} at J={state.j}"
        )
    limit = 1 << state.j
    for v in members(state.b):
        if g.degree_into_mask(v, state.a) >= limit:
            raise AlgorithmInvariantException(
                f"vertex {v} of B has {g.degree_into_mask(v, state.a)} >= 2^{state.j} "
                f"neighbours in A"
            )


def sample_good_vertices(
    g: Graph,
    candidates: Sequence[int],
    pool: Sequence[int],
    k: int,
    rng: np.random.Generator,
) -> tuple[int, list[int]]:
    """Sample ``pool`` at rate ``2^-k``; keep candidates with one sampled neighbour."""
    pool = np.asarray(pool, dtype=np.int64)
    chosen = pool[rng.random(pool.size) < 2.0**-k]
    selected = mask_of(chosen.tolist())
    good = [w for w in candidates if (g.rows[w] & selected).bit_count() == 1]
    return selected, good


def group_cells(cells: dict[int, list[int]], threshold: float) -> list[frozenset[int]]:
    """Greedy grouping of cells by decreasing size, closing at ``threshold``.

    A trailing partial group joins the last closed one.
    """
    groups: list[list[int]] = []
    current: list[int] = []
    for v in sorted(cells, key=lambda v: (-len(cells[v]), v)):
        current.extend(cells[v])
        if len(current) >= threshold:
            groups.append(current)
            current = []
    if current:
        if groups:
            groups[-1].extend(current)
        else:
            groups.append(current)
    return [frozenset(group) for group in groups]


def _as_set(mask: int) -> frozenset[int]:
    return frozenset(members(mask))


class _MainAlgorithm:
    def __init__(self, p: Poset, g: Graph, a: int, b: int, config: AlgoConfig):
        self.p = p
        self.g = g
        self.config = config
        m = a.bit_count()
        self.state = MainAlgoState(m=m, j0=bucket_limit(m, config.epsilon), a=a, b=b)
        self.state.j = self.state.j0
        self.activations = 0

    def _checkpoint(self, event: str, open_k: Optional[int] = None) -> None:
        self.state.step += 1
        self.state.record(event)
        if self.config.check_invariants:
            check_properties(self.state, self.g, open_k)

    def _degree(self, v: int) -> int:
        return self.g.degree_into_mask(v, self.state.a)

    def _emit(self, branch: str, blocks: list[frozenset[int]]) -> MainAlgorithmResult:
        state = self.state
        ratio = state.m / self.p.n
        cert = BlockCertificate(
            CertificateKind.EMPTY,
            tuple(blocks),
            certified_exponent(self.config.delta, ratio),
            self.p.n,
        )
        logger.info(
            f"main_algorithm: {branch} with t={cert.t}, min block {cert.min_block}, "
            f"m={state.m}, steps={state.step}"
        )
        return MainAlgorithmResult(cert, branch, tuple(state.trace))

    def run(self) -> MainAlgorithmResult:
        state = self.state
        if self.config.check_invariants and not eq1_holds(state.m, self.config.epsilon):
            raise AlgorithmInvariantException(
                f"Bucket bounds sum to {eq1_sum(state.m, self.config.epsilon):.4g}, "
                f"not below m/4 = {state.m / 4}"
            )
        self._checkpoint("start")
        while state.j >= 1:
            buckets: dict[int, int] = {}
            for v in members(state.b):
                level = self._degree(v).bit_length()
                buckets[level] = buckets.get(level, 0) | (1 << v)
            sizes = {i: mask.bit_count() for i, mask in buckets.items()}
            logger.debug(f"J={state.j}, bucket sizes {sorted(sizes.items())}")
            active = [k for k in range(1, state.j + 1) if state.t(k) < sizes.get(k, 0)]
            if not active:
                low = buckets.get(0, 0)
                if not low or not state.a:
                    raise AlgorithmInvariantException("Empty side at no-bucket stop")
                self._checkpoint("no-bucket")
                return self._emit("no-bucket", [_as_set(low), _as_set(state.a)])
            k = max(active)
            for i in range(k + 1, state.j + 1):
                dumped = buckets.get(i, 0)
                state.b &= ~dumped
                state.b_out |= dumped
            state.j, state.k = k, k
            self._checkpoint(f"dump-above-{k}")
            outcome = self._sub_algorithm(k, buckets[k])
            if outcome is not None:
                return outcome
        if not state.a or not state.b:
            raise AlgorithmInvariantException("J reached 0 with an empty side")
        return self._emit("exhausted", [_as_set(state.a), _as_set(state.b)])

    def _sub_algorithm(self, k: int, w: int) -> Optional[MainAlgorithmResult]:
        state, g = self.state, self.g
        tk = state.t(k)
        removed = 0
        self.activations += 1
        for l in range(state.m + 1):
            state.w = w
            size_w = w.bit_count()
            if size_w < 2 * tk:
                state.b &= ~w
                state.b_out |= w
                state.j, state.k, state.w = k - 1, None, 0
                self._checkpoint(f"dump-working-set-{k}")
                return None
            delta = size_w * size_w / state.m
            heavy = mask_of(
                v for v in members(state.a) if g.degree_into_mask(v, w) >= delta
            )
            if heavy.bit_count() * size_w >= state.m * (1 << k):
                raise AlgorithmInvariantException(
                    f"heavy set of size {heavy.bit_count()} is not below t_k/x_l"
                )
            before = {}
            if self.config.check_invariants:
                before = {v: self._degree(v) for v in members(w)}
            state.a &= ~heavy
            state.a_out |= heavy
            removed += heavy.bit_count()
            if removed >= tk:
                raise AlgorithmInvariantException(
                    f"heavy sets total {removed} >= t_{k} = {tk:.4g}"
                )
            if any(self._degree(v) > d for v, d in before.items()):
                raise AlgorithmInvariantException("Degree into A grew after removing H")
            half = 1 << (k - 1)
            strong = [v for v in members(w) if self._degree(v) >= half]
            logger.debug(
                f"sub-algorithm k={k} l={l}: |W|={size_w}, |H|={heavy.bit_count()}, "
                f"|T|={len(strong)}"
            )
            if 2 * len(strong) >= size_w:
                self._checkpoint(f"case-one-{k}", open_k=k)
                cell_cap = min(self.config.epsilon * state.m, delta)
                return self._case_one(k, l, strong, size_w, cell_cap)
            w = mask_of(v for v in members(state.b) if self._degree(v) >= half)
            if self.config.check_invariants and w != mask_of(strong):
                raise AlgorithmInvariantException("Recomputed working set left T")
            self._checkpoint(f"case-two-{k}", open_k=k)
        raise AlgorithmInvariantException("Sub-algorithm did not terminate")

    def _case_one(
        self, k: int, l: int, strong: list[int], size_w: int, cell_cap: float
    ) -> MainAlgorithmResult:
        state, g = self.state, self.g
        rng = derive_rng(self.config.seed, "case-one", state.m, k, self.activations, l)
        pool = members(state.a)
        for attempt in range(1, self.config.retry_cap + 1):
            selected, good = sample_good_vertices(g, strong, pool, k, rng)
            if 12 * len(good) >= size_w:
                break
        else:
            raise RetryCapExhaustedException(
                f"Case-1 sampling found no selection with |Y| >= {size_w}/12 after "
                f"{self.config.retry_cap} attempts "
                f"(k={k}, |T|={len(strong)}, |A|={len(pool)})"
            )
        logger.debug(f"Case 1: k={k}, |Y|={len(good)} after {attempt} attempt(s)")

        cells: dict[int, list[int]] = {}
        for w in good:
            v = (g.rows[w] & selected).bit_length() - 1
            cells.setdefault(v, []).append(w)
        blocks = group_cells(cells, cell_cap)
        t = len(blocks)
        if t < 2:
            raise CaseOneShortfallException(
                f"Case 1 grouped {len(good)} good vertices into t={t} < 2 blocks "
                f"(cell cap {cell_cap:.4g})"
            )
        bound = max(self.config.delta * math.sqrt(state.m / len(x)) for x in blocks)
        if not bound < t:
            raise CaseOneShortfallException(
                f"Case 1 emitted t={t} but delta*sqrt(m/|X|) reaches {bound:.4g}"
            )
        return self._emit("case-one", blocks)


def run_main_algorithm(
    p: Poset,
    a: Sequence[int],
    b: Sequence[int],
    le: Sequence[int],
    config: AlgoConfig,
    graph: Optional[Graph] = None,
) -> MainAlgorithmResult:
    """Main algorithm with its step trace; see ``main_algorithm``."""
    g = graph if graph is not None else comparability_graph(p)
    a_set, b_set = frozenset(a), frozenset(b)
    if not a_set or len(a_set) != len(b_set):
        raise PreconditionViolationException(
            f"A and B must be non-empty and of equal size, "
            f"got {len(a_set)} and {len(b_set)}"
        )
    if a_set & b_set:
        raise PreconditionViolationException("A and B must be disjoint")
    position = np.empty(p.n, dtype=np.intp)
    position[np.asarray(le, dtype=np.intp)] = np.arange(p.n)
    if max(position[v] for v in a_set) > min(position[v] for v in b_set):
        raise PreconditionViolationException("A must precede B in the linear extension")
    m = len(a_set)
    a_mask, b_mask = mask_of(a_set), mask_of(b_set)
    cap = config.epsilon * m
    for side, other in ((a_set, b_mask), (b_set, a_mask)):
        worst = max(g.degree_into_mask(v, other) for v in side)
        if worst > cap:
            raise PreconditionViolationException(
                f"A crossing degree {worst} exceeds epsilon*m = {cap:.4g}"
            )
    return _MainAlgorithm(p, g, a_mask, b_mask, config).run()


def main_algorithm(
    p: Poset,
    a: Sequence[int],
    b: Sequence[int],
    le: Sequence[int],
    config: AlgoConfig,
    graph: Optional[Graph] = None,
) -> BlockCertificate:
    """Pairwise anticomplete blocks of ``A | B`` with ``delta * sqrt(m/|X_i|) < t``.

    The certificate's exponent is the one this inequality implies for the
    host ``p``: with ``m = r * n`` it holds for ``ln 2 / (2 ln(2 / (delta sqrt r)))``.
    """
    return run_main_algorithm(p, a, b, le, config, graph).certificate
