"""Audits of explicit factorial identities and multinomial constructions.

No displayed representation is taken on faith: each candidate is checked for
a consistent part total first, then for its exact value, and failures are
recorded in the report rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import canonicalize, factorial, multinomial
from .counter import DEFAULT_BUDGET, BudgetExceeded, count_exact

CONFIRMED = "confirmed"
PARTIAL = "partially-confirmed"
REFUTED = "refuted"

LARGE_VALUE = 2671465728531600


@dataclass(frozen=True)
class FactorialIdentity:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def holds(self) -> bool:
        return check_factorial_identity(self)

    def __str__(self) -> str:
        side = lambda xs: "".join(f"{x}!" for x in xs)
        return f"{side(self.lhs)}={side(self.rhs)}"


EQ_SMALL = FactorialIdentity((12, 2, 1), (11, 4, 0))
EQ_LARGE = FactorialIdentity((24, 5, 3, 1), (23, 6, 4, 0))


@dataclass
class Candidate:
    parts: tuple[int, ...]
    verified: bool
    orbit: int = 0
    reason: str = ""

    def as_dict(self) -> dict:
        d = {"parts": list(self.parts), "verified": self.verified, "orbit": self.orbit}
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class FamilyWitness:
    a: int
    k: int
    m: int
    candidates: list[Candidate]
    claimed_bound: int

    @property
    def verified(self) -> list[Candidate]:
        return [c for c in self.candidates if c.verified]

    @property
    def achieved_bound(self) -> int:
        trivial = self.k * (self.k - 1) if self.a >= 3 else 0
        return sum(c.orbit for c in self.verified) + trivial


@dataclass
class AuditReport:
    name: str
    status: str
    claimed_bound: Optional[int] = None
    achieved_bound: Optional[int] = None
    details: dict = field(default_factory=dict)
    findings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.claimed_bound is not None:
            d["claimed_bound"] = self.claimed_bound
            d["achieved_bound"] = self.achieved_bound
        d["details"] = self.details
        d["findings"] = self.findings
        return d


def check_factorial_identity(identity: FactorialIdentity) -> bool:
    return math.prod(map(factorial, identity.lhs)) == math.prod(map(factorial, identity.rhs))


def verify_candidate(parts: Sequence[int], a: int, total: int) -> Candidate:
    """Check a displayed representation: part total first, then value."""
    parts = tuple(parts)
    s = sum(parts)
    if s != total:
        return Candidate(parts, False, reason=f"part sum {s} ≠ {total}")
    if multinomial(parts) != a:
        return Candidate(parts, False, reason="value differs")
    return Candidate(parts, True, canonicalize(parts).orbit)


def _status(achieved: int, claimed: int) -> str:
    if achieved >= claimed:
        return CONFIRMED
    return PARTIAL if achieved > 0 else REFUTED


def default_extras(count: int, avoid: set[int], start: int = 5) -> list[int]:
    """Smallest ``count`` distinct integers >= start outside ``avoid``."""
    out = []
    x = start
    while len(out) < count:
        if x not in avoid:
            out.append(x)
        x += 1
    return out


def _exact_count(a: int, k: int, budget: int) -> Optional[int]:
    try:
        return count_exact(a, k, budget).total
    except BudgetExceeded:
        return None


def _family_audit(name, k, m, a, candidates, claimed, budget, exact) -> AuditReport:
    fw = FamilyWitness(a, k, m, candidates, claimed)
    achieved = fw.achieved_bound
    report = AuditReport(
        name,
        _status(achieved, claimed),
        claimed,
        achieved,
        details={
            "k": k,
            "m": m,
            "a": str(a),
            "candidates": [c.as_dict() for c in candidates],
            "trivial_family": k * (k - 1),
        },
    )
    for c in candidates:
        if not c.verified:
            report.findings.append(f"candidate {list(c.parts)} rejected: {c.reason}")
    if achieved < claimed:
        report.findings.append(
            f"listed witnesses give {achieved} representations, short of the claimed {claimed}"
        )
    if exact:
        n = _exact_count(a, k, budget)
        report.details["exact_N"] = n
        if n is None:
            report.findings.append("exact count skipped: budget exceeded")
        elif n < achieved:
            report.status = REFUTED
            report.findings.append(f"exact count {n} below achieved bound {achieved}")
    return report


def prop3_audit(
    k: int = 4,
    m: int = 28,
    extras: Optional[Sequence[int]] = None,
    exact: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> AuditReport:
    """Two representations of m!/(12!2!1!(m-15)!) from 12!2!1! = 11!4!0!.

    Claimed bound: 2*k! + k(k-1).
    """
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    if m < 28:
        raise ValueError(f"m must be >= 28 for distinct parts, got {m}")
    core = {12, 2, 1, 11, 4, 0, m - 15}
    if extras is None:
        extras = default_extras(k - 4, {11, 12, m - 15})
    extras = tuple(extras)
    if len(extras) != k - 4:
        raise ValueError(f"need {k - 4} extra parts, got {len(extras)}")
    if len(set(extras)) != len(extras) or core & set(extras) or 0 in extras:
        raise ValueError(f"extras {extras} must be distinct, nonzero and avoid {sorted(core)}")
    first = (12, 2, 1, m - 15) + extras
    second = (11, 4, 0, m - 15) + extras
    a = multinomial(first)
    total = sum(first)
    cands = [verify_candidate(first, a, total), verify_candidate(second, a, total)]
    claimed = 2 * math.factorial(k) + k * (k - 1)
    return _family_audit("prop3", k, m, a, cands, claimed, budget, exact)


def prop4_audit(
    k: int = 7,
    m: int = 72,
    extras: Optional[Sequence[int]] = None,
    exact: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> AuditReport:
    """The four displayed denominators for m!/(24!12!5!3!2!1!(m-47)!).

    Claimed bound: 7*k!/2 + k(k-1).  The fourth display is checked as written.
    """
    if k < 7:
        raise ValueError(f"k must be >= 7, got {k}")
    if m < 72:
        raise ValueError(f"m must be >= 72 for distinct parts, got {m}")
    r = m - 47
    if extras is None:
        extras = default_extras(k - 7, {23, 24, 11, 12, r, *range(7)})
    extras = tuple(extras)
    if len(extras) != k - 7:
        raise ValueError(f"need {k - 7} extra parts, got {len(extras)}")
    core = {24, 12, 5, 3, 2, 1, 23, 6, 4, 0, 11, r}
    if len(set(extras)) != len(extras) or core & set(extras) or 0 in extras:
        raise ValueError(f"extras {extras} must be distinct, nonzero and avoid {sorted(core)}")
    displays = [
        (24, 12, 5, 3, 2, 1),
        (23, 12, 6, 4, 2, 0),
        (24, 11, 5, 4, 3, 0),
        (23, 6, 4, 0, 11, 4, 0),
    ]
    listed_total = sum(displays[0])
    a = multinomial(displays[0] + (r,) + extras)
    total = m + sum(extras)
    cands = []
    for d in displays:
        if sum(d) != listed_total:
            parts = d + (r,) + extras
            cands.append(Candidate(parts, False, reason=f"part sum {sum(d)} ≠ {listed_total}"))
            continue
        cands.append(verify_candidate(d + (r,) + extras, a, total))
    claimed = 7 * math.factorial(k) // 2 + k * (k - 1)
    report = _family_audit("prop4", k, m, a, cands, claimed, budget, exact)
    bad = cands[3]
    if not bad.verified:
        report.findings.append(
            f"fourth display has {len(bad.parts)} parts for k={k} and its factorial "
            "product matches the first, so its numerator would have to be (m+1)!"
        )
    return report


def prop2_family(k: int = 4, x: int = 10**6, budget: int = DEFAULT_BUDGET) -> AuditReport:
    """Members a = (m+T)!/(0!1!...(k-2)! m!) <= x, T = (k-1)(k-2)/2, each checked for N_k(a) >= k!.

    Only m >= k-1 is used so that all k parts are distinct.
    """
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    T = (k - 1) * (k - 2) // 2
    fixed = tuple(range(k - 1))
    C_k = 1 / math.prod(math.factorial(j) for j in range(1, k - 1))
    members = []
    m = k - 1
    while True:
        a = multinomial(fixed + (m,))
        if a > x:
            break
        members.append((m, a))
        m += 1
    need = math.factorial(k)
    rows = []
    unverified = 0
    failed = 0
    for m, a in members:
        n = _exact_count(a, k, budget)
        if n is None:
            unverified += 1
        elif n < need:
            failed += 1
        rows.append({"m": m, "a": str(a), "N": n, "ok": None if n is None else n >= need})
    exponent = 2 / ((k - 1) * (k - 2))
    predicted = (x / C_k) ** (1 / T)
    status = CONFIRMED if failed == 0 and unverified == 0 else (REFUTED if failed else PARTIAL)
    report = AuditReport(
        "prop2",
        status,
        details={
            "k": k,
            "x": str(x),
            "threshold": need,
            "members": rows,
            "member_count": len(members),
            "density_exponent": exponent,
            "C_k": C_k,
            "predicted_m_max": predicted,
            "count_over_x_power": len(members) / x**exponent if members else 0.0,
        },
    )
    if unverified:
        report.findings.append(f"{unverified} members not verified within budget")
    if failed:
        report.findings.append(f"{failed} members fall below {need}")
    return report


def identities_audit() -> AuditReport:
    results = {str(eq): check_factorial_identity(eq) for eq in (EQ_SMALL, EQ_LARGE)}
    return AuditReport(
        "identities",
        CONFIRMED if all(results.values()) else REFUTED,
        details=results,
        findings=[f"{name} fails" for name, ok in results.items() if not ok],
    )


K3_DISPLAYS = [(17, 11, 9), (19, 11, 8), (19, 14, 6), (19, 16, 5)]
K4_DISPLAYS = [
    (17, 11, 9, 0), (19, 11, 8, 0), (19, 14, 6, 0), (19, 16, 5, 0),
    (20, 16, 3, 1), (21, 13, 4, 1), (22, 10, 4, 2),
]


def known_large_values_audit(a: int = LARGE_VALUE, budget: int = DEFAULT_BUDGET) -> AuditReport:
    """Re-derive the displayed representations of a = 2671465728531600 and its exact counts."""
    report = AuditReport("large-values", CONFIRMED, details={"a": str(a)})
    printed = (7, 11, 9)
    if sum(printed) != 37 or multinomial(printed) != a:
        report.findings.append(
            f"display 37!/(7!11!9!) is invalid: parts sum to {sum(printed)}, not 37; "
            "the first part should be 17"
        )
    for k, displays, claimed in ((3, K3_DISPLAYS, 30), (4, K4_DISPLAYS, 180)):
        cands = [verify_candidate(d, a, sum(d)) for d in displays]
        achieved = sum(c.orbit for c in cands if c.verified) + k * (k - 1)
        n = _exact_count(a, k, budget)
        report.details[f"k{k}"] = {
            "candidates": [c.as_dict() for c in cands],
            "claimed_bound": claimed,
            "achieved_bound": achieved,
            "exact_N": n,
        }
        for c in cands:
            if not c.verified:
                report.findings.append(f"k={k} candidate {list(c.parts)} rejected: {c.reason}")
        if achieved < claimed:
            report.status = PARTIAL
    return report


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_collision(i: int) -> dict:
    """C(F_{2i+2}F_{2i+3}, F_{2i}F_{2i+3}) against C(n - 1, r + 1), with F_1 = F_2 = 1."""
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    n = fibonacci(2 * i + 2) * fibonacci(2 * i + 3)
    r = fibonacci(2 * i) * fibonacci(2 * i + 3)
    lhs = math.comb(n, r)
    rhs = math.comb(n - 1, r + 1)
    return {"i": i, "n": n, "r": r, "value": lhs, "holds": lhs == rhs}


def fibonacci_audit(up_to: int = 4) -> AuditReport:
    rows = [fibonacci_collision(i) for i in range(1, up_to + 1)]
    report = AuditReport(
        "fibonacci",
        CONFIRMED if all(r["holds"] for r in rows) else REFUTED,
        details={"collisions": [{**r, "value": str(r["value"])} for r in rows]},
    )
    report.findings = [f"i={r['i']} fails" for r in rows if not r["holds"]]
    return report


def lemma1_property(parts: Sequence[int], j: int) -> bool:
    """m^{m_j} <= multinomial * m_j^{m_j}, the cross-multiplied lower bound (j is 1-based)."""
    mj = parts[j - 1]
    m = sum(parts)
    return m**mj <= multinomial(parts) * mj**mj


AUDITS = {
    "identities": identities_audit,
    "prop2": prop2_family,
    "prop3": prop3_audit,
    "prop4": prop4_audit,
    "large-values": known_large_values_audit,
    "fibonacci": fibonacci_audit,
}
