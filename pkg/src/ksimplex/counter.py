"""Exact repetition counts N_k(a) and the two routes to their partial sums."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from .arith import SortedParts, canonicalize, central_cap, multinomial, solve_largest_part, sorted_prefixes

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when a search would exceed its node budget."""


@dataclass
class CountReport:
    a: int
    k: int
    total: int
    witnesses: list[SortedParts] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "a": str(self.a),
            "k": self.k,
            "N": self.total,
            "witnesses": [{"parts": list(w.parts), "orbit": w.orbit} for w in self.witnesses],
        }


@dataclass
class OrderClasses:
    M: int
    k: int
    f: int
    g: int
    h: int


@dataclass
class SumCheck:
    M: int
    k: int
    total: int
    trivial_family: int
    nontrivial: int
    main_term: int
    residual: int


@dataclass
class BoundProfile:
    a: int
    small_part_cap: int
    m_cap: int


def _check_args(a: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if a <= 1:
        raise ValueError(
            f"a must be >= 2, got {a} (the value 1 occurs infinitely often)"
        )


def _solve_chunk(prefixes: list[tuple[int, ...]], a: int) -> list[SortedParts]:
    hits = []
    for prefix in prefixes:
        x = solve_largest_part(prefix, a)
        if x is not None:
            hits.append(canonicalize(prefix + (x,)))
    return hits


def count_exact(a: int, k: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CountReport:
    """Exact N_k(a) with the full witness list.

    Every solution, sorted ascending, has its k-1 smallest parts among
    ``sorted_prefixes(k, a)`` and its largest part fixed by the prefix, so
    each multiset is found exactly once; its orbit gives the ordered count.
    """
    _check_args(a, k)
    prefixes = sorted_prefixes(k, a)
    witnesses: list[SortedParts] = []
    if jobs > 1:
        chunks = []
        n = 0
        while True:
            chunk = list(islice(prefixes, 2048))
            if not chunk:
                break
            n += len(chunk)
            if n > budget:
                raise BudgetExceeded(f"prefix evaluations exceed budget {budget}")
            chunks.append(chunk)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for hits in pool.map(_solve_chunk, chunks, [a] * len(chunks)):
                witnesses.extend(hits)
    else:
        for n, prefix in enumerate(prefixes, 1):
            if n > budget:
                raise BudgetExceeded(f"prefix evaluations exceed budget {budget}")
            x = solve_largest_part(prefix, a)
            if x is not None:
                witnesses.append(canonicalize(prefix + (x,)))
    witnesses.sort()
    return CountReport(a, k, sum(w.orbit for w in witnesses), witnesses)


def bound_profile(a: int, k: int = 2) -> BoundProfile:
    """Search caps: largest ``t`` with C(2t, t) <= a, largest ``m`` with C(m, 2) <= a."""
    if a < 2:
        raise ValueError(f"a must be >= 2, got {a}")
    m = math.isqrt(2 * a) + 1
    while m * (m - 1) // 2 > a:
        m -= 1
    return BoundProfile(a, central_cap(a), m)


def _check_cap(M: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if M < 3:
        raise ValueError(f"M must be >= 3, got {M}")


def order_classes(M: int, k: int, budget: int = DEFAULT_BUDGET) -> OrderClasses:
    """Split 1 < a <= M by N_k(a) below, at, or above k(k-1)."""
    _check_cap(M, k)
    base = k * (k - 1)
    f = g = h = 0
    for a in range(2, M + 1):
        n = count_exact(a, k, budget).total
        if n < base:
            f += 1
        elif n == base:
            g += 1
        else:
            h += 1
    return OrderClasses(M, k, f, g, h)


def sum_via_counts(M: int, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Sum of N_k(a) over 1 < a <= M, one exact count at a time."""
    _check_cap(M, k)
    return sum(count_exact(a, k, budget).total for a in range(2, M + 1))


def nontrivial_tuples(k: int, M: int, budget: int = DEFAULT_BUDGET):
    """Yield ``(value, SortedParts)`` for every multiset with all parts < m - 1 and value <= M.

    Uses only the closed-form caps: each of the k-1 smallest parts is at most
    log2(M) (C(2t, t) >= 2^t), and m is at most the largest m with C(m, 2) <= M.
    The largest part is stepped upward from the prefix's last part.
    """
    small = M.bit_length() - 1
    m_cap = bound_profile(M).m_cap
    nodes = 0

    def grow(prefix: tuple[int, ...], start: int):
        nonlocal nodes
        if len(prefix) == k - 1:
            s = sum(prefix)
            if s < 2:
                return
            x = prefix[-1]
            while s + x <= m_cap:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(f"enumeration exceeds budget {budget}")
                parts = prefix + (x,)
                v = multinomial(parts)
                if v > M:
                    break
                yield v, canonicalize(parts)
                x += 1
            return
        for t in range(start, small + 1):
            if sum(prefix) + t * (k - len(prefix)) > m_cap:
                break
            yield from grow(prefix + (t,), t)

    yield from grow((), 0)


def sum_via_simplex(M: int, k: int, budget: int = DEFAULT_BUDGET) -> SumCheck:
    """Sum of N_k(a) over 1 < a <= M, counted point by point in the simplex.

    The trivial family (one part equal to m - 1) contributes C(k, 2) for the
    value 2 and k(k-1) for each of 3..M in closed form; the remaining points
    are enumerated directly.
    """
    _check_cap(M, k)
    trivial = math.comb(k, 2) + k * (k - 1) * (M - 2)
    nontrivial = 0
    for v, sp in nontrivial_tuples(k, M, budget):
        if v > 2:
            nontrivial += sp.orbit
    total = trivial + nontrivial
    main = math.comb(k, 2) + k * (k - 1) * (M - 2)
    return SumCheck(M, k, total, trivial, nontrivial, main, total - main)


def residual_scale(M: int, k: int) -> float:
    """sqrt(M) * log(M)^(k-1), the size of the error term in the partial sum."""
    return math.sqrt(M) * math.log(M) ** (k - 1)
