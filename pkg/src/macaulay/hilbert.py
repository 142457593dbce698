"""Hilbert series, Hilbert polynomials and Macaulay constants of monomial quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import FreeModule, Monomial, check_exponents, minimalize, mono_divides

NEG_INF = -math.inf


class NotAdmissibleError(ValueError):
    """A polynomial is not the Hilbert polynomial of a module with the given data."""


class EnumerationGuardError(RuntimeError):
    pass


class ZeroModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact univariate polynomials in z


@dataclass(frozen=True)
class QPoly:
    """Polynomial in z with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls((Fraction(c),))

    @classmethod
    def binom(cls, shift: int, k: int) -> "QPoly":
        """The polynomial binom(z + shift, k) = (z+shift)(z+shift-1)...(z+shift-k+1)/k!."""
        out = cls.const(1)
        for i in range(k):
            out = out * cls((Fraction(shift - i), Fraction(1)))
        return out.scale(Fraction(1, math.factorial(k)))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(tuple(out))

    def scale(self, c) -> "QPoly":
        return QPoly(tuple(x * c for x in self.coeffs))

    def __call__(self, z) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def shift(self, k: int) -> "QPoly":
        """p(z + k)."""
        out = QPoly()
        for i, c in enumerate(self.coeffs):
            out = out + QPoly.const(c) * _power(QPoly((Fraction(k), Fraction(1))), i)
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            body = str(mag) if (mag != 1 or not mono) else ""
            if body and mono:
                body += "*"
            body += mono
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _power(p: QPoly, k: int) -> QPoly:
    out = QPoly.const(1)
    for _ in range(k):
        out = out * p
    return out


def binom_conv(m: int, k: int) -> int:
    """Binomial coefficient with the convention binom(m, k) = 0 whenever m < k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if m < k:
        return 0
    return comb(m, k)


# ---------------------------------------------------------------------------
# monomial quotients


@dataclass(frozen=True)
class MonomialSubmodule:
    """The monomial submodule ⊕ I_k e_k of a free module, one ideal per slot."""

    fm: FreeModule
    gens_per_slot: tuple[tuple[Monomial, ...], ...]

    def __post_init__(self):
        gps = tuple(tuple(tuple(check_exponents(tuple(g))) for g in slot)
                    for slot in self.gens_per_slot)
        if len(gps) != self.fm.rank:
            raise ValueError("need one generator list per slot")
        nv = self.fm.ring.num_vars
        for slot in gps:
            for g in slot:
                if len(g) != nv:
                    raise ValueError("generator length does not match the ring")
        object.__setattr__(self, "gens_per_slot", tuple(minimalize(s) for s in gps))

    @classmethod
    def zero(cls, fm: FreeModule) -> "MonomialSubmodule":
        return cls(fm, tuple(() for _ in range(fm.rank)))


@dataclass(frozen=True)
class QuotientPresentation:
    """M = F/Q for a monomial Q; its standard monomials model M as a graded vector space."""

    sub: MonomialSubmodule

    @classmethod
    def cyclic(cls, ring, gens: Iterable[Monomial], degree: int = 0) -> "QuotientPresentation":
        fm = FreeModule(ring, (degree,))
        return cls(MonomialSubmodule(fm, (tuple(gens),)))

    @property
    def fm(self) -> FreeModule:
        return self.sub.fm

    @property
    def ring(self):
        return self.sub.fm.ring

    @property
    def nvars(self) -> int:
        return self.sub.fm.ring.num_vars

    def slot_is_full(self, k: int) -> bool:
        """True when I_k is the unit ideal, so the slot contributes nothing."""
        return any(sum(g) == 0 for g in self.sub.gens_per_slot[k])

    @property
    def proper_slots(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.fm.rank) if not self.slot_is_full(k))

    def is_zero(self) -> bool:
        return not self.proper_slots

    @property
    def e_plus(self) -> int:
        if self.is_zero():
            raise ZeroModuleError("zero module has no generators")
        return max(self.fm.slot_degrees[k] for k in self.proper_slots)

    @property
    def initial_degree(self) -> int:
        if self.is_zero():
            raise ZeroModuleError("zero module")
        return min(self.fm.slot_degrees[k] for k in self.proper_slots)

    def shifted(self, k: int) -> "QuotientPresentation":
        """Presentation of M(k)."""
        return QuotientPresentation(MonomialSubmodule(self.fm.shifted(k), self.sub.gens_per_slot))

    def gens_array(self, k: int) -> np.ndarray:
        return _kernels.as_exponent_array(self.sub.gens_per_slot[k], self.nvars)


# ---------------------------------------------------------------------------
# Hilbert series


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^denominator_power with a Laurent numerator.

    ``numerator[i]`` is the coefficient of t^(low + i).
    """

    numerator: tuple[int, ...]
    low: int
    denominator_power: int

    def __post_init__(self):
        num = list(self.numerator)
        low = self.low
        while num and num[-1] == 0:
            num.pop()
        while num and num[0] == 0:
            num.pop(0)
            low += 1
        if not num:
            low = 0
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "low", low)

    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def high(self) -> int:
        return self.low + len(self.numerator) - 1

    def reduced(self) -> tuple[tuple[int, ...], int]:
        """Cancel (1 - t) factors: returns (numerator coefficients, dimension)."""
        num = list(self.numerator)
        d = self.denominator_power
        while num and d > 0 and sum(num) == 0:
            # synthetic division by (1 - t): q_i = sum_{k<=i} num_k
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
            d -= 1
        return tuple(num), d

    @property
    def dim(self) -> int:
        if self.is_zero():
            return 0
        return self.reduced()[1]

    def coefficient(self, j: int) -> int:
        n = self.denominator_power
        total = 0
        for i, c in enumerate(self.numerator):
            k = j - self.low - i
            if k < 0:
                break
            total += c * (comb(k + n - 1, n - 1) if n > 0 else int(k == 0))
        return total

    def numerator_text(self) -> str:
        parts = []
        for i, c in enumerate(self.numerator):
            e = self.low + i
            if c:
                parts.append(f"{c:+d}*t^{e}")
        return " ".join(parts) if parts else "0"


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    """a + t^shift * b."""
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, y in enumerate(b):
        out[i + shift] += y
    return out


def _coprime_product(gens: Sequence[Monomial]) -> list[int] | None:
    """Numerator of S/I when generators have pairwise disjoint supports."""
    seen = set()
    for g in gens:
        support = {i for i, e in enumerate(g) if e}
        if support & seen:
            return None
        seen |= support
    out = [1]
    for g in gens:
        d = sum(g)
        out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
    return out


def _ideal_numerator(gens: tuple[Monomial, ...], memo: dict) -> list[int]:
    """K-polynomial of S/I: HS(S/I) = result(t) / (1 - t)^nvars."""
    if not gens:
        return [1]
    if gens in memo:
        return memo[gens]
    if any(sum(g) == 0 for g in gens):
        res = [0]
    else:
        res = _coprime_product(gens)
        if res is None:
            res = _pivot(gens, memo)
    memo[gens] = res
    return res


def _pivot(gens: tuple[Monomial, ...], memo: dict) -> list[int]:
    nv = len(gens[0])
    counts = [sum(1 for g in gens if g[v]) for v in range(nv)]
    var = max(range(nv), key=lambda v: (counts[v], -v))
    powers = sorted(g[var] for g in gens if g[var])
    k = powers[(len(powers) - 1) // 2]
    p = tuple(k if v == var else 0 for v in range(nv))
    # HS(S/I) = HS(S/(I + p)) + t^deg(p) HS(S/(I : p))
    plus = minimalize([g for g in gens if not mono_divides(p, g)] + [p])
    colon = minimalize(tuple(max(e - f, 0) for e, f in zip(g, p)) for g in gens)
    return _poly_add(_ideal_numerator(plus, memo), _ideal_numerator(colon, memo), k)


def hilbert_series(q: QuotientPresentation) -> HilbertSeries:
    """Hilbert series of F/Q, summing the shifted K-polynomials of the slot ideals."""
    memo: dict = {}
    nv = q.nvars
    degs = q.fm.slot_degrees
    if q.is_zero():
        return HilbertSeries((), 0, nv)
    low = min(degs[k] for k in q.proper_slots)
    total = [0]
    for k in q.proper_slots:
        num = _ideal_numerator(q.sub.gens_per_slot[k], memo)
        total = _poly_add(total, num, degs[k] - low)
    return HilbertSeries(tuple(total), low, nv)


def hilbert_function(hs: HilbertSeries, j: int) -> int:
    return hs.coefficient(j)


def _check_guard(count: int, guard: int):
    if count > guard:
        raise EnumerationGuardError(f"enumeration of {count} monomials exceeds guard {guard}")


def hilbert_function_bruteforce(q: QuotientPresentation, j: int, guard: int = 10**7) -> int:
    """Count standard monomials of degree j by exhaustive enumeration."""
    nv = q.nvars
    total = 0
    for k in q.proper_slots:
        dk = j - q.fm.slot_degrees[k]
        if dk < 0:
            continue
        _check_guard(comb(dk + nv - 1, nv - 1) * q.fm.rank, guard)
        total += _kernels.count_standard(q.gens_array(k), nv, dk)
    return total


def standard_monomials(q: QuotientPresentation, j: int, guard: int = 10**7) -> list[tuple[int, Monomial]]:
    """Standard monomials (slot, exps) of degree j."""
    nv = q.nvars
    out = []
    for k in q.proper_slots:
        dk = j - q.fm.slot_degrees[k]
        if dk < 0:
            continue
        _check_guard(comb(dk + nv - 1, nv - 1), guard)
        monos = _kernels.monomials_of_degree(nv, dk)
        mask = _kernels.divisible_mask(q.gens_array(k), monos)
        out.extend((k, tuple(int(x) for x in row)) for row in monos[~mask])
    return out


# ---------------------------------------------------------------------------
# Hilbert polynomial and regularity index


def hilbert_polynomial(hs: HilbertSeries) -> QPoly:
    num, d = hs.reduced()
    if hs.is_zero() or d == 0:
        return QPoly()
    p = QPoly()
    for i, c in enumerate(num):
        if c:
            p = p + QPoly.binom(d - 1 - (hs.low + i), d - 1).scale(c)
    return p


def regularity_index(hs: HilbertSeries) -> float | int:
    """Least k with h(j) = p(j) for every j >= k; -inf for the zero module."""
    if hs.is_zero():
        return NEG_INF
    num, d = hs.reduced()
    p = hilbert_polynomial(hs)
    # agreement is certain above the top of the reduced numerator
    j = hs.low + len(num) - 1 - d
    floor = hs.low - d - 2
    while j >= floor:
        if hs.coefficient(j) != p(j):
            return j + 1
        j -= 1
    return NEG_INF


# ---------------------------------------------------------------------------
# Macaulay constants


@dataclass(frozen=True)
class MacaulayConstants:
    b: tuple[int, ...]
    dim: int
    e_plus: int
    reg_index: float | int
    multiplicity: int

    def __getitem__(self, i: int) -> int:
        return self.b[i]

    def as_dict(self) -> dict:
        return {
            "constants": list(self.b),
            "dim": self.dim,
            "e_plus": self.e_plus,
            "multiplicity": self.multiplicity,
            "reg_index": None if self.reg_index == NEG_INF else int(self.reg_index),
        }


def constants_polynomial(b: Sequence[int], e: int) -> QPoly:
    """Sum over j of [binom(z - e + j - 1, j) - binom(z - b_j + j - 1, j)], b = (b_1..b_d)."""
    p = QPoly()
    for j, bj in enumerate(b, start=1):
        p = p + QPoly.binom(j - 1 - e, j) - QPoly.binom(j - 1 - bj, j)
    return p


def constants_polynomial_value(b: Sequence[int], z: int) -> int:
    """Evaluate the cone-count double sum at an integer z >= b_1; b = (b_1..b_{d+1})."""
    d = len(b) - 1
    total = 0
    for j in range(1, d + 1):
        for k in range(b[j], b[j - 1]):
            total += binom_conv(z - k + j - 1, j - 1)
    return total


def peel_constants(p: QPoly, e: int) -> tuple[int, ...]:
    """Recover (b_1..b_d) with b_1 >= ... >= b_d > e from a Hilbert polynomial."""
    if p.is_zero():
        return ()
    d = p.degree + 1
    b = [0] * (d + 1)
    residual = p
    for j in range(d, 0, -1):
        if residual.degree > j - 1:
            raise NotAdmissibleError(f"residual {residual} has degree above {j - 1}")
        lead = residual.coeffs[j - 1] if residual.degree == j - 1 else Fraction(0)
        bj = e + lead * math.factorial(j - 1)
        if bj.denominator != 1:
            raise NotAdmissibleError(f"non-integral constant b_{j} = {bj}")
        b[j] = int(bj)
        residual = residual - (QPoly.binom(j - 1 - e, j) - QPoly.binom(j - 1 - b[j], j))
    if not residual.is_zero():
        raise NotAdmissibleError(f"nonzero residual {residual}")
    out = tuple(b[1:])
    if any(x < y for x, y in zip(out, out[1:])) or out[-1] <= e:
        raise NotAdmissibleError(f"constants {out} are not weakly decreasing above e = {e}")
    return out


def macaulay_constants_from_hilbert(hs: HilbertSeries, e_plus: int) -> MacaulayConstants:
    if hs.is_zero():
        raise ZeroModuleError("the zero module has no Macaulay constants")
    d = hs.dim
    r = regularity_index(hs)
    if d == 0:
        b = (int(r), e_plus)
        return MacaulayConstants(b, 0, e_plus, r, 0)
    p = hilbert_polynomial(hs)
    if p.degree != d - 1:
        raise NotAdmissibleError("polynomial degree does not match the dimension")
    tail = peel_constants(p, e_plus)
    b0 = max(int(r), tail[0])
    b = (b0,) + tail + (e_plus,)
    return MacaulayConstants(b, d, e_plus, r, tail[-1] - e_plus)


def macaulay_constants(q: QuotientPresentation) -> MacaulayConstants:
    return macaulay_constants_from_hilbert(hilbert_series(q), q.e_plus)


# ---------------------------------------------------------------------------
# Gotzmann form


@dataclass(frozen=True)
class GotzmannForm:
    a: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.a)

    def polynomial(self) -> QPoly:
        p = QPoly()
        for i, ai in enumerate(self.a):
            p = p + QPoly.binom(ai - i, ai)
        return p


def gotzmann_form(p: QPoly, max_steps: int = 10**6) -> GotzmannForm:
    """Greedy expansion p = sum_i binom(z + a_i - (i - 1), a_i) with a_1 >= a_2 >= ... >= 0."""
    if p.is_zero():
        raise NotAdmissibleError("the zero polynomial has no Gotzmann form")
    a: list[int] = []
    residual = p
    while not residual.is_zero():
        if len(a) >= max_steps:
            raise NotAdmissibleError("Gotzmann expansion did not terminate")
        deg = residual.degree
        if residual.leading <= 0 or (a and deg > a[-1]):
            raise NotAdmissibleError(f"not an admissible Hilbert polynomial: residual {residual}")
        i = len(a)
        residual = residual - QPoly.binom(deg - i, deg)
        a.append(deg)
    return GotzmannForm(tuple(a))
