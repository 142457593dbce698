"""Minimal graded free resolutions, Betti tables and regularity invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import DEFAULT_ORDER, OrderSpec, Presentation
from .groebner import (
    groebner,
    initial_quotient,
    minimal_generators,
    prune,
    saturation,
    syzygies,
)
from .hilbert import (
    HilbertSeries,
    MacaulayConstants,
    ZeroModuleError,
    hilbert_series,
    macaulay_constants,
)

NEG_INF = -math.inf


class ResolutionError(RuntimeError):
    pass


class BoundViolation(AssertionError):
    """A regularity bound failed; either a bug or a counterexample."""


@dataclass(frozen=True)
class BettiTable:
    entries: dict  # (i, j) -> beta_{i,j}
    num_vars: int

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def depth(self) -> int:
        return self.num_vars - self.pd

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    @property
    def regularity(self) -> int:
        return max(j - i for i, j in self.entries)

    def euler_series(self) -> HilbertSeries:
        """Alternating sum of the shifted free modules, as a Hilbert series."""
        lo = min(j for _, j in self.entries)
        hi = max(j for _, j in self.entries)
        num = [0] * (hi - lo + 1)
        for (i, j), v in self.entries.items():
            num[j - lo] += (-1) ** i * v
        return HilbertSeries(tuple(num), lo, self.num_vars)

    def rows(self) -> list[list[int]]:
        """Macaulay2-style layout: row r, column i holds beta_{i, i + r}."""
        r_lo = min(j - i for i, j in self.entries)
        r_hi = self.regularity
        return [[self.beta(i, i + r) for i in range(self.pd + 1)] for r in range(r_lo, r_hi + 1)]

    def to_text(self) -> str:
        r_lo = min(j - i for i, j in self.entries)
        width = max(len(str(v)) for v in self.entries.values()) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in range(self.pd + 1))
        lines = [head, "total:" + "".join(f"{self.total(i):>{width}}" for i in range(self.pd + 1))]
        for k, row in enumerate(self.rows()):
            cells = "".join(f"{v if v else '.':>{width}}" for v in row)
            lines.append(f"{r_lo + k:>5}:" + cells)
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.entries.items())}


def _as_presentation(obj, fm=None) -> Presentation:
    if isinstance(obj, Presentation):
        return obj
    gens = list(obj)
    if fm is None:
        fm = gens[0].fm
    return Presentation(fm, tuple(gens))


def minimal_free_resolution(pres, ord: OrderSpec = DEFAULT_ORDER) -> BettiTable:
    """Betti table of F/Q, built by iterating syzygies of minimal generators."""
    p = prune(_as_presentation(pres), ord)
    nv = p.ring.num_vars
    entries: dict = {}
    for d in p.fm.slot_degrees:
        entries[(0, d)] = entries.get((0, d), 0) + 1
    cur = list(p.gens)
    fm = p.fm
    i = 1
    while cur:
        if i > nv + 1:
            raise ResolutionError(f"resolution longer than {nv + 1} steps")
        for g in cur:
            d = g.homogeneous_degree
            entries[(i, d)] = entries.get((i, d), 0) + 1
        G, syz = syzygies(cur, ord, fm)
        cur = minimal_generators(syz, ord, G) if syz else []
        fm = G
        i += 1
    return BettiTable(entries, nv)


def cm_regularity(b: BettiTable) -> int:
    return b.regularity


def saturated_presentation(pres, ord: OrderSpec = DEFAULT_ORDER) -> Presentation | None:
    """F/Q^sat, or None when the saturation is all of F."""
    p = _as_presentation(pres)
    if not p.gens:
        return p
    sat = saturation(list(p.gens), ord, p.fm)
    q = Presentation(p.fm, sat.elements)
    try:
        return prune(q, ord)
    except ZeroModuleError:
        return None


def reg1(pres, ord: OrderSpec = DEFAULT_ORDER) -> float | int:
    """Regularity of the saturation quotient; -inf for finite-length modules."""
    sm = saturated_presentation(pres, ord)
    if sm is None:
        return NEG_INF
    return minimal_free_resolution(sm, ord).regularity


def series_of(pres, ord: OrderSpec = DEFAULT_ORDER) -> HilbertSeries:
    p = prune(_as_presentation(pres), ord)
    return hilbert_series(initial_quotient(groebner(list(p.gens), ord, p.fm)))


def euler_identity_holds(b: BettiTable, hs: HilbertSeries) -> bool:
    return b.euler_series() == HilbertSeries(hs.numerator, hs.low, b.num_vars)


@dataclass(frozen=True)
class RegularityReport:
    reg: int
    reg1: float | int
    depth: int
    dim: int
    constants: MacaulayConstants
    betti: BettiTable = field(repr=False)
    sheaf_b2: int | None = None

    def as_dict(self) -> dict:
        out = self.constants.as_dict()
        out["reg"] = self.reg
        out["reg1"] = None if self.reg1 == NEG_INF else int(self.reg1)
        out["depth"] = self.depth
        if self.sheaf_b2 is not None:
            out["sheaf_b2"] = self.sheaf_b2
        out["betti"] = self.betti.as_dict()
        return out


def regularity_report(pres, ord: OrderSpec = DEFAULT_ORDER) -> RegularityReport:
    p = prune(_as_presentation(pres), ord)
    gb = groebner(list(p.gens), ord, p.fm)
    iq = initial_quotient(gb)
    consts = macaulay_constants(iq)
    bt = minimal_free_resolution(p, ord)
    if not euler_identity_holds(bt, hilbert_series(iq)):
        raise ResolutionError("Betti numbers disagree with the Hilbert series")
    reg = bt.regularity
    r1 = reg1(p, ord)
    b = consts.b
    if not reg < b[0]:
        raise BoundViolation(f"reg = {reg} is not below b_0 = {b[0]}")
    if not r1 < b[1]:
        raise BoundViolation(f"reg_1 = {r1} is not below b_1 = {b[1]}")
    sheaf = b[2] if consts.dim >= 2 and consts.e_plus == 0 else None
    return RegularityReport(reg, r1, bt.depth, consts.dim, consts, bt, sheaf)
