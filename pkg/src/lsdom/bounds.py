"""Closed-form bounds on γ and γ×k,t of latin square graphs.

Lower bounds that come out real-valued are rounded up; the unrounded value
stays visible in the source formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .constructions import cyclic_domination_size, ktds_size, qstep_1tds_size
from .errors import Infeasible, Mismatch
from .latin import LatinSquare, cyclic, q_step
from .solver import DOMINATING, DominationCertificate, DominationMode, ktuple

GENERAL = "general"
CYCLIC = "cyclic"
QSTEP = "qstep"


@dataclass(frozen=True)
class Structure:
    """Which family the square belongs to: general, cyclic or qstep(q, m)."""

    kind: str = GENERAL
    q: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (GENERAL, CYCLIC, QSTEP):
            raise ValueError(f"unknown structure {self.kind!r}")
        if self.kind == QSTEP and (self.q is None or self.m is None or self.q < 1 or self.m < 1):
            raise ValueError("qstep structure needs q >= 1 and m >= 1")

    def matches(self, square: LatinSquare) -> bool:
        if self.kind == CYCLIC:
            return square == cyclic(square.n)
        if self.kind == QSTEP:
            return square == q_step(self.q, self.m)
        return True

    def __str__(self) -> str:
        return f"qstep({self.q},{self.m})" if self.kind == QSTEP else self.kind


def as_structure(structure) -> Structure:
    if isinstance(structure, Structure):
        return structure
    if isinstance(structure, tuple):
        return Structure(*structure)
    return Structure(structure or GENERAL)


@dataclass(frozen=True)
class Bound:
    value: int
    label: str
    formula: str


@dataclass(frozen=True)
class BoundsReport:
    n: int
    mode: DominationMode
    structure: Structure
    lower: Bound
    upper: Bound
    exact: Optional[Bound] = None
    sources: Tuple[Bound, ...] = field(default=())

    def __post_init__(self):
        if self.lower.value > self.upper.value:
            raise AssertionError(f"lower {self.lower} above upper {self.upper}")
        if self.exact is not None and not self.lower.value <= self.exact.value <= self.upper.value:
            raise AssertionError(f"exact {self.exact} outside [{self.lower.value}, {self.upper.value}]")


def _best_lower(cands: List[Bound]) -> Bound:
    # first maximal candidate wins, so the label order is stable
    return max(cands, key=lambda b: b.value)


def _best_upper(cands: List[Bound]) -> Bound:
    return min(cands, key=lambda b: b.value)


def _gamma_parts(n: int, structure: Structure):
    lowers: List[Bound] = []
    uppers: List[Bound] = []
    exact = None
    if n <= 4:
        exact = Bound(n - 1, "gamma-small-order", f"n-1 = {n - 1} for 2 <= n <= 4")
    elif n == 5:
        exact = Bound(3, "gamma-order-5", "3 for n = 5")
    if n >= 5:
        raw = Fraction(n - 1, 2)
        lowers.append(Bound(math.ceil(raw), "gamma-lower", f"(n-1)/2 = {raw}"))
        uppers.append(Bound(n - 2, "gamma-upper", f"n-2 = {n - 2}"))
    if n >= 4:
        uppers.append(Bound(n - 1, "gamma-le-1tds", f"gamma <= 1TDS upper n-1 = {n - 1}"))
    if structure.kind == CYCLIC and n >= 3:
        f, g = divmod(n, 3)
        uppers.append(Bound(cyclic_domination_size(n), "cyclic-gamma-upper", f"2f+g = 2*{f}+{g} = {2 * f + g}"))
    if structure.kind == QSTEP and n >= 3:
        size = qstep_1tds_size(structure.q, structure.m)
        uppers.append(Bound(size, "gamma-le-qstep-1tds", f"gamma <= q-step 1TDS upper = {size}"))
    if exact is not None:
        # exact small-order values take precedence over general upper formulas
        uppers.insert(0, exact)
        if not lowers:
            lowers.append(exact)
    return lowers, uppers, exact


def gamma_bounds(n: int, structure=GENERAL) -> BoundsReport:
    """Bounds on the domination number of Γ(L) for an order-n square."""
    if n < 2:
        raise ValueError(f"bounds need n >= 2, got {n}")
    structure = as_structure(structure)
    _check_order(n, structure)
    lowers, uppers, exact = _gamma_parts(n, structure)
    return BoundsReport(
        n, DOMINATING, structure, _best_lower(lowers), _best_upper(uppers), exact, tuple(lowers + uppers)
    )


def _exact_ktds(n: int, k: int) -> Optional[Bound]:
    if k == 3 * (n - 1):
        return Bound(n * n, "ktds-full-degree", f"n^2 = {n * n} for k = 3(n-1)")
    if n == 2 and k in (1, 2):
        return Bound(k + 1, "ktds-order-2", f"{k + 1} for n = 2, k = {k}")
    if n == 3 and k == 1:
        return Bound(2, "ktds-order-3", "2 for n = 3, k = 1")
    if n >= 3 and k == 2:
        return Bound(n, "ktds-k2-exact", f"n = {n} for k = 2")
    return None


def ktds_bounds(n: int, k: int, structure=GENERAL) -> BoundsReport:
    """Bounds on the k-tuple total domination number of Γ(L)."""
    if n < 2:
        raise ValueError(f"bounds need n >= 2, got {n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    cap = 3 * (n - 1)
    if k > cap:
        raise Infeasible(k, cap)
    structure = as_structure(structure)
    _check_order(n, structure)

    lowers = [Bound(k + 1, "ktds-floor", f"k+1 = {k + 1}")]
    if k == 1:
        raw = Fraction(4 * n - 2, 7)
        lowers.append(Bound(math.ceil(raw), "1tds-lower", f"(4n-2)/7 = {raw}"))
    g_lowers, _, _ = _gamma_parts(n, Structure(GENERAL))
    g_low = _best_lower(g_lowers)
    lowers.append(Bound(g_low.value, "gamma-le-ktds", f"gamma >= {g_low.value} ({g_low.label})"))

    uppers = [Bound(n * n, "ktds-all-vertices", f"n^2 = {n * n}")]
    if n >= 3:
        a, odd = divmod(k, 2)
        size = ktds_size(n, k)
        if k == 1:
            uppers.append(Bound(size, "ktds-upper-k1", f"n-1 = {size}"))
        elif not odd and a <= n:
            uppers.append(Bound(size, "ktds-upper-even", f"a*n = {a}*{n} = {size}"))
        elif odd and a <= n - 2:
            uppers.append(Bound(size, "ktds-upper-odd", f"a*n+n-a = {a}*{n}+{n}-{a} = {size}"))
    if k == 1 and structure.kind == QSTEP and n >= 3:
        q, m = structure.q, structure.m
        size = qstep_1tds_size(q, m)
        formula = f"n-q = {size}" if m >= q + 1 else f"n-m+1 = {size}"
        uppers.append(Bound(size, "qstep-1tds-upper", formula))

    exact = _exact_ktds(n, k)
    if exact is not None:
        uppers.insert(0, exact)
    return BoundsReport(
        n, ktuple(k), structure, _best_lower(lowers), _best_upper(uppers), exact, tuple(lowers + uppers)
    )


def bounds_for(n: int, mode: DominationMode, structure=GENERAL) -> BoundsReport:
    if mode.is_total:
        return ktds_bounds(n, mode.k, structure)
    return gamma_bounds(n, structure)


def _check_order(n: int, structure: Structure) -> None:
    if structure.kind == QSTEP and structure.q * structure.m != n:
        raise ValueError(f"qstep({structure.q},{structure.m}) has order {structure.q * structure.m}, not {n}")


@dataclass(frozen=True)
class Consistency:
    contradictions: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.contradictions

    def __bool__(self) -> bool:
        return self.ok


def consistency_check(report: BoundsReport, cert: DominationCertificate) -> Consistency:
    """Hold a certificate against a bounds report.

    Any certificate must reach the lower bound; an optimal one must also
    respect the upper bound and equal the exact value when one is known.
    Each breach names the bound it contradicts.

    Raises:
        Mismatch: report and certificate are about different instances.
    """
    if report.n != cert.square.n or report.mode != cert.mode:
        raise Mismatch(
            f"report is for n={report.n}, {report.mode}; certificate for n={cert.square.n}, {cert.mode}"
        )
    if not report.structure.matches(cert.square):
        raise Mismatch(f"certificate square is not {report.structure}")
    size = cert.size
    bad = []
    if size < report.lower.value:
        bad.append(f"size {size} below lower bound {report.lower.value} [{report.lower.label}: {report.lower.formula}]")
    if cert.optimal:
        if size > report.upper.value:
            bad.append(
                f"optimum {size} above upper bound {report.upper.value} [{report.upper.label}: {report.upper.formula}]"
            )
        if report.exact is not None and size != report.exact.value:
            bad.append(f"optimum {size} differs from exact value {report.exact.value} [{report.exact.label}]")
    return Consistency(tuple(bad))
