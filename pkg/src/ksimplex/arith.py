"""Exact integer primitives: factorials, multinomial coefficients, compositions.

Every value here is a Python ``int``; nothing is ever rounded.  Part tuples are
plain tuples of nonnegative ints, coefficient values are unbounded ints.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

MAX_PART = 2**63 - 1

_fact_memo = [1]
_fact_lock = threading.Lock()


def factorial(n: int) -> int:
    """Return ``n!``, memoizing every value up to the largest ``n`` requested."""
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    memo = _fact_memo
    if n < len(memo):
        return memo[n]
    with _fact_lock:
        while len(memo) <= n:
            memo.append(memo[-1] * len(memo))
        return memo[n]


def check_parts(parts: Sequence[int], machine: bool = True) -> tuple[int, ...]:
    """Validate a part tuple and return it as a tuple.

    ``machine`` enforces the 64-bit range on parts supplied from outside;
    derived witnesses such as ``(a - 1, 1, 0, ...)`` skip it.
    """
    t = tuple(parts)
    if len(t) < 2:
        raise ValueError(f"need at least 2 parts, got {len(t)}")
    for p in t:
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"part {p!r} is not an integer")
        if p < 0:
            raise ValueError(f"negative part {p}")
        if machine and p > MAX_PART:
            raise ValueError(f"part {p} exceeds machine range")
    return t


def multinomial(parts: Sequence[int]) -> int:
    """Multinomial coefficient ``m! / (m_1! ... m_k!)`` with ``m = sum(parts)``.

    Built as a product of binomials over running partial sums, which is exact
    and avoids forming ``m!`` for lopsided tuples such as ``(a - 1, 1, 0)``.
    """
    value = 1
    s = 0
    for p in parts:
        s += p
        if p:
            value *= math.comb(s, p)
    return value


def multinomial_by_factorials(parts: Sequence[int]) -> int:
    """Reference form ``m! // prod(m_i!)``; used to validate faster routes."""
    den = 1
    for p in parts:
        den *= factorial(p)
    num = factorial(sum(parts))
    q, r = divmod(num, den)
    assert r == 0
    return q


@dataclass(frozen=True, order=True)
class SortedParts:
    """Canonical ascending multiset of parts plus its number of orderings."""

    parts: tuple[int, ...]
    orbit: int

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return sum(self.parts)

    def value(self) -> int:
        return multinomial(self.parts)


def orbit_size(parts: Sequence[int]) -> int:
    """Number of distinct orderings of ``parts``: k! / prod(c_v!)."""
    orbit = factorial(len(parts))
    for c in Counter(parts).values():
        orbit //= factorial(c)
    return orbit


def canonicalize(parts: Sequence[int]) -> SortedParts:
    t = check_parts(parts, machine=False)
    return SortedParts(tuple(sorted(t)), orbit_size(t))


def solve_largest_part(prefix: Sequence[int], a: int) -> Optional[int]:
    """Find the unique ``x >= prefix[-1]`` with ``multinomial(prefix + (x,)) == a``.

    For a fixed prefix with sum ``s > 0`` the coefficient equals
    ``multinomial(prefix) * C(s + x, s)``, strictly increasing in ``x``, so an
    exponential probe followed by bisection finds the only candidate.
    Returns ``None`` when no such ``x`` exists.
    """
    s = sum(prefix)
    if s == 0 or a < 2:
        return None
    base = multinomial(prefix)
    if a % base:
        return None
    target = a // base
    lo = prefix[-1] if prefix else 0
    # C(s + x, s) is what has to hit target exactly.
    if math.comb(s + lo, s) > target:
        return None
    if math.comb(s + lo, s) == target:
        return lo
    step = 1
    hi = lo + step
    while math.comb(s + hi, s) < target:
        lo = hi
        step *= 2
        hi = lo + step
    # invariant: comb(s + lo) < target <= comb(s + hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if math.comb(s + mid, s) < target:
            lo = mid
        else:
            hi = mid
    return hi if math.comb(s + hi, s) == target else None


def compositions(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """All ordered ``k``-tuples of nonnegative ints summing to ``m``, lexicographically."""
    if m < 0 or k < 1:
        raise ValueError(f"bad composition shape m={m}, k={k}")
    if k == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in compositions(m - first, k - 1):
            yield (first,) + rest


def central_cap(a: int) -> int:
    """Largest ``t`` with ``C(2t, t) <= a`` (0 when ``a < 2``)."""
    t = 0
    while math.comb(2 * (t + 1), t + 1) <= a:
        t += 1
    return t


def sorted_prefixes(k: int, a: int) -> Iterator[tuple[int, ...]]:
    """Ascending ``(k-1)``-tuples that can be the smallest parts of a solution.

    Each part ``t`` obeys ``C(2t, t) <= a``.  A prefix with sum ``s`` and last
    part ``l`` is dropped once ``multinomial(prefix) * C(s + l, s) > a``, since
    the largest part is at least ``l``.  The same bound holds for every
    shorter prefix (appending parts only grows the coefficient), so whole
    subtrees are cut at the first violation.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    cap = central_cap(a)

    def grow(prefix: tuple[int, ...], start: int, base: int, s: int):
        if len(prefix) == k - 1:
            yield prefix
            return
        for t in range(start, cap + 1):
            s2 = s + t
            base2 = base * math.comb(s2, t)
            # a future largest part >= t
            if base2 * math.comb(s2 + t, t) > a:
                break
            yield from grow(prefix + (t,), t, base2, s2)

    yield from grow((), 0, 1, 0)
