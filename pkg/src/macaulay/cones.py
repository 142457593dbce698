"""Cone decompositions of standard-monomial spaces.

A cone ``h K[U]`` is stored as a module monomial ``h = mono * e_slot`` together
with the sorted variable indices in ``U``.  Decompositions are built slot by
slot with a splitting recursion, lifted to the generator degree ``e⁺(M)`` and
made exact by repeatedly replacing cones with their fan decompositions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .core import DEFAULT_ORDER, Monomial, Ring
from .hilbert import (
    EnumerationGuardError,
    HilbertSeries,
    MacaulayConstants,
    QuotientPresentation,
    ZeroModuleError,
    regularity_index,
    standard_monomials,
)


class ConstructionError(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


class NotExactError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Cone:
    mono: Monomial
    vars: tuple[int, ...] = ()
    slot: int = 0
    shift: int = 0  # degree of the basis element e_slot

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(set(self.vars))))

    @property
    def degree(self) -> int:
        return self.shift + sum(self.mono)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def monomials(self, degree: int) -> np.ndarray:
        """Exponent rows of the cone's monomials in the given degree."""
        k = degree - self.degree
        nv = len(self.mono)
        if k < 0 or (k > 0 and not self.vars):
            return np.zeros((0, nv), dtype=np.int64)
        if not self.vars:
            return np.array([self.mono], dtype=np.int64)
        sub = _kernels.monomials_of_degree(len(self.vars), k)
        out = np.tile(np.asarray(self.mono, dtype=np.int64), (sub.shape[0], 1))
        out[:, list(self.vars)] += sub
        return out

    def to_text(self, ring: Ring | None = None, show_slot: bool = False) -> str:
        names = ring.var_names if ring else tuple(f"x{i}" for i in range(len(self.mono)))
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, self.mono) if e]
        if show_slot:
            factors.append(f"e{self.slot + 1}")
        h = "*".join(factors) if factors else "1"
        return f"{h}*K[{','.join(names[v] for v in self.vars)}]"


class Check(NamedTuple):
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ConeDecomposition:
    cones: tuple[Cone, ...]
    ambient: QuotientPresentation | None = None
    q: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(self.cones))

    @property
    def positive(self) -> tuple[Cone, ...]:
        return tuple(c for c in self.cones if c.vars)

    @property
    def e_plus(self) -> int:
        if not self.cones:
            raise ZeroModuleError("empty decomposition")
        return max(c.degree for c in self.cones)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones), default=0)

    def hilbert_series(self, nvars: int) -> HilbertSeries:
        """Sum of t^deg(h) / (1 - t)^|U| over the cones, over (1 - t)^nvars."""
        if not self.cones:
            return HilbertSeries((), 0, nvars)
        low = min(c.degree for c in self.cones)
        num = [0] * (max(c.degree for c in self.cones) - low + nvars + 1)
        for c in self.cones:
            k = nvars - c.dim
            off = c.degree - low
            for i in range(k + 1):
                num[off + i] += (-1) ** i * comb(k, i)
        return HilbertSeries(tuple(num), low, nvars)

    def to_text(self, ring: Ring | None = None) -> list[str]:
        show = bool(self.ambient and self.ambient.fm.rank > 1)
        return [c.to_text(ring, show) for c in self.cones]


def _tie_key(c: Cone):
    """Smallest degrevlex generator first, then lowest slot."""
    k = DEFAULT_ORDER.mono_key(len(c.mono))
    return (k(c.mono), -c.slot)


def fan_decomposition(c: Cone) -> list[Cone]:
    """h K ⊕ x_{i_1} h K[x_{i_1}] ⊕ ... ⊕ x_{i_s} h K[x_{i_1}, ..., x_{i_s}]."""
    out = [Cone(c.mono, (), c.slot, c.shift)]
    for k, v in enumerate(c.vars):
        m = list(c.mono)
        m[v] += 1
        out.append(Cone(tuple(m), c.vars[:k + 1], c.slot, c.shift))
    return out


# ---------------------------------------------------------------------------
# standardness and exactness


def is_standard(p: ConeDecomposition, q: int) -> Check:
    pos = p.positive
    best_dim: dict[int, int] = {}
    for c in pos:
        best_dim[c.degree] = max(best_dim.get(c.degree, 0), c.dim)
    for c in pos:
        if c.degree < q:
            return Check(False, f"positive cone {c.to_text()} has degree {c.degree} < {q}")
    for c in pos:
        for d in range(q, c.degree):
            if best_dim.get(d, 0) < c.dim:
                return Check(False, f"cone {c.to_text()} of dimension {c.dim}: "
                                    f"no cone of dimension >= {c.dim} in degree {d}")
    return Check(True)


def is_exact(p: ConeDecomposition, q: int) -> Check:
    std = is_standard(p, q)
    if not std:
        return std
    seen: dict[int, Cone] = {}
    for c in p.positive:
        if c.degree in seen:
            return Check(False, f"cones {seen[c.degree].to_text()} and {c.to_text()} "
                                f"share degree {c.degree}")
        seen[c.degree] = c
    return Check(True)


def exactify(p: ConeDecomposition, q: int) -> ConeDecomposition:
    """Turn a q-standard decomposition into a q-exact one by fan replacements.

    Replaced cones stay in place in the output: each one expands, in order,
    into the cones of its fan.
    """
    chk = is_standard(p, q)
    if not chk:
        raise PreconditionError(f"decomposition is not {q}-standard: {chk.witness}")
    nodes = list(p.cones)
    children: dict[int, list[int]] = {}
    by_degree: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(nodes):
        if c.vars:
            by_degree[c.degree].append(i)
    j = q
    while by_degree:
        # fans land in degree j + 1, so T is fixed while degree j is processed
        T = sorted(by_degree.pop(j, []), key=lambda k: (nodes[k].dim, _tie_key(nodes[k])))
        for i in T[:-1]:
            kids = children[i] = []
            for f in fan_decomposition(nodes[i]):
                kids.append(len(nodes))
                nodes.append(f)
                if f.vars:
                    by_degree[f.degree].append(kids[-1])
        j += 1
    out: list[Cone] = []
    stack = list(range(len(p.cones)))[::-1]
    while stack:
        i = stack.pop()
        if i in children:
            stack.extend(reversed(children[i]))
        else:
            out.append(nodes[i])
    return ConeDecomposition(tuple(out), p.ambient, q)


# ---------------------------------------------------------------------------
# construction from a monomial quotient


def _independent(h: Monomial, W: Sequence[int], gens) -> bool:
    """True when h K[W] meets the monomial ideal only in 0."""
    outside = [v for v in range(len(h)) if v not in W]
    return not any(all(g[v] <= h[v] for v in outside) for g in gens)


def _max_independent(h: Monomial, U: tuple[int, ...], gens) -> tuple[int, ...]:
    from itertools import combinations
    for size in range(len(U), -1, -1):
        for W in combinations(U, size):
            if _independent(h, W, gens):
                return W
    return ()


def split_cones(gens: Sequence[Monomial], nvars: int, slot: int = 0, shift: int = 0) -> list[Cone]:
    """Cones partitioning the standard monomials of S/I, I = (gens), built top-down.

    Each non-leaf node ``h K[U]`` splits as ``h K[U - x] ⊕ x h K[U]`` along a
    variable missing from a maximum independent subset of U.  The pure left
    chain of every node then ends in a cone of maximal dimension, which keeps
    the result standard with respect to the initial degree of the slot.
    """
    gens = list(gens)
    out: list[Cone] = []
    stack = [((0,) * nvars, tuple(range(nvars)))]
    while stack:
        h, U = stack.pop()
        if any(all(g[v] <= h[v] for v in range(nvars)) for g in gens):
            continue  # h lies in the ideal
        if _independent(h, U, gens):
            out.append(Cone(h, U, slot, shift))
            continue
        W = _max_independent(h, U, gens)
        x = next(v for v in U if v not in W)
        hx = list(h)
        hx[x] += 1
        stack.append((tuple(hx), U))
        stack.append((h, tuple(v for v in U if v != x)))
    return out


def lift_degree(cones: list[Cone], q: int) -> list[Cone]:
    """Fan-split positive-dimensional cones until all of them start in degree >= q."""
    out = []
    work = list(cones)
    while work:
        c = work.pop()
        if c.vars and c.degree < q:
            work.extend(fan_decomposition(c))
        else:
            out.append(c)
    return out


def standard_decomposition(qp: QuotientPresentation) -> ConeDecomposition:
    """An e⁺(M)-standard cone decomposition of the standard monomials of F/Q."""
    if qp.is_zero():
        raise ZeroModuleError("cannot decompose the zero module")
    e = qp.e_plus
    nv = qp.nvars
    cones: list[Cone] = []
    for k in qp.proper_slots:
        shift = qp.fm.slot_degrees[k]
        slot_cones = split_cones(qp.sub.gens_per_slot[k], nv, k, shift)
        cones.extend(lift_degree(slot_cones, e))
    cones.sort(key=lambda c: (c.slot, c.degree, -c.dim, c.mono, c.vars))
    dec = ConeDecomposition(tuple(cones), qp, e)
    chk = is_standard(dec, e)
    if not chk:
        raise ConstructionError(f"decomposition is not {e}-standard: {chk.witness}")
    return dec


def exact_decomposition(qp: QuotientPresentation) -> ConeDecomposition:
    dec = standard_decomposition(qp)
    if not dec.positive:
        return dec
    return exactify(dec, dec.q)


# ---------------------------------------------------------------------------
# Macaulay constants from an exact decomposition


def macaulay_constants_from_decomposition(p: ConeDecomposition) -> MacaulayConstants:
    if not p.cones:
        raise ZeroModuleError("the zero module has no Macaulay constants")
    if p.q is None:
        raise PreconditionError("decomposition carries no q = e⁺(M)")
    e = p.q
    d = p.dim
    nv = len(p.cones[0].mono)
    r = regularity_index(p.hilbert_series(nv))
    b0 = 1 + p.e_plus
    if d == 0:
        return MacaulayConstants((b0, e), 0, e, r, 0)
    b = [0] * (d + 2)
    b[d + 1] = e
    for j in range(d, 0, -1):
        degs = sorted(c.degree for c in p.cones if c.dim == j)
        expected = list(range(b[j + 1], b[j + 1] + len(degs)))
        if degs != expected:
            raise NotExactError(f"{j}-dimensional cones sit in degrees {degs}, expected {expected}")
        b[j] = b[j + 1] + len(degs)
    b[0] = b0
    return MacaulayConstants(tuple(b), d, e, r, b[d] - e)


# ---------------------------------------------------------------------------
# partition check


def _rows_with_slot(slot: int, rows: np.ndarray) -> np.ndarray:
    return np.concatenate([np.full((rows.shape[0], 1), slot, dtype=np.int64), rows], axis=1)


def validate_partition(p: ConeDecomposition, qp: QuotientPresentation, up_to_degree: int,
                       guard: int = 10**7) -> bool:
    """Degree by degree, the cones' monomials are exactly the standard monomials, each once."""
    nv = qp.nvars
    lows = [c.degree for c in p.cones]
    if not qp.is_zero():
        lows.append(qp.initial_degree)
    if not lows:
        return True
    for D in range(min(lows), up_to_degree + 1):
        live = [c for c in p.cones if c.degree == D or (c.vars and c.degree < D)]
        budget = sum(comb(D - c.degree + c.dim - 1, c.dim - 1) if c.dim else 1 for c in live)
        if budget > guard:
            raise EnumerationGuardError(f"degree {D} needs {budget} monomials")
        pieces = [_rows_with_slot(c.slot, c.monomials(D)) for c in live]
        got = np.concatenate(pieces, axis=0) if pieces else np.zeros((0, nv + 1), dtype=np.int64)
        want_list = standard_monomials(qp, D, guard)
        want = (np.array([(s,) + m for s, m in want_list], dtype=np.int64)
                if want_list else np.zeros((0, nv + 1), dtype=np.int64))
        if got.shape[0] != want.shape[0]:
            return False
        if got.shape[0] == 0:
            continue
        uniq = np.unique(got, axis=0)
        if uniq.shape[0] != got.shape[0]:
            return False
        if not np.array_equal(uniq, np.unique(want, axis=0)):
            return False
    return True
