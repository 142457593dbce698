"""Gröbner bases of graded submodules of free modules over the rationals.

Internally a polynomial is a dict ``{(slot, exps): Fraction}``.  The engine is
parametrised by a plain sort key on module monomials, which lets the same code
run the user's order and the block orders used for syzygies and intersections.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from . import _kernels
from .core import (
    DEFAULT_ORDER,
    DimensionError,
    FreeModule,
    InhomogeneousError,
    ModuleElement,
    Monomial,
    OrderSpec,
    Presentation,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .hilbert import (
    EnumerationGuardError,
    MacaulayConstants,
    MonomialSubmodule,
    QuotientPresentation,
    ZeroModuleError,
    macaulay_constants,
)

Poly = dict  # {(slot, exps): Fraction}


def _poly_degree(p: Poly, degs: Sequence[int]) -> int:
    s, m = next(iter(p))
    return degs[s] + sum(m)


def _check_homogeneous(p: Poly, degs: Sequence[int]) -> int:
    ds = {degs[s] + sum(m) for s, m in p}
    if len(ds) != 1:
        raise InhomogeneousError(f"element with terms in degrees {sorted(ds)}")
    return ds.pop()


class _Engine:
    """Homogeneous Buchberger with the normal selection strategy.

    ``key`` maps ``(slot, exps)`` to a comparable value; larger means larger.
    """

    def __init__(self, degs: Sequence[int], key: Callable, product_criterion: bool = False):
        self.degs = tuple(degs)
        self._raw_key = key
        self._keys: dict = {}
        self.product_criterion = product_criterion
        self.basis: list[Poly] = []
        self.leads: list[tuple[int, Monomial]] = []
        self.by_slot: dict[int, list[int]] = {}
        self.pairs: list = []
        self.pending_pairs: set = set()
        self.inputs: list = []
        self._seq = itertools.count()

    def key(self, mm):
        k = self._keys.get(mm)
        if k is None:
            k = self._raw_key(*mm)
            self._keys[mm] = k
        return k

    def lead_of(self, p: Poly):
        return max(p, key=self.key)

    # reduction ----------------------------------------------------------
    def _divisor(self, slot: int, mono: Monomial):
        for i in self.by_slot.get(slot, ()):
            if mono_divides(self.leads[i][1], mono):
                return i
        return None

    def reduce(self, p: Poly, full: bool = True) -> Poly:
        """Normal form of p; with ``full=False`` only the leading term is cleared."""
        work = dict(p)
        rem: Poly = {}
        while work:
            lt = max(work, key=self.key)
            c = work.pop(lt)
            i = self._divisor(*lt)
            if i is None:
                rem[lt] = c
                if not full:
                    rem.update(work)
                    return rem
                continue
            g = self.basis[i]
            q = mono_div(lt[1], self.leads[i][1])
            for (s, m), gc in g.items():
                mm = (s, mono_mul(m, q))
                if mm == lt:
                    continue
                v = work.get(mm, 0) - c * gc
                if v:
                    work[mm] = v
                else:
                    work.pop(mm, None)
        return rem

    # basis growth -------------------------------------------------------
    def _insert(self, p: Poly):
        lt = self.lead_of(p)
        inv = 1 / p[lt]
        if inv != 1:
            p = {k: v * inv for k, v in p.items()}
        idx = len(self.basis)
        self.basis.append(p)
        self.leads.append(lt)
        slot, mono = lt
        for j in self.by_slot.get(slot, ()):
            other = self.leads[j][1]
            if self.product_criterion and all(a == 0 or b == 0 for a, b in zip(mono, other)):
                continue
            lcm = mono_lcm(mono, other)
            deg = self.degs[slot] + sum(lcm)
            heapq.heappush(self.pairs, (deg, next(self._seq), j, idx, lcm))
            self.pending_pairs.add((j, idx))
        self.by_slot.setdefault(slot, []).append(idx)

    def add_input(self, p: Poly):
        if p:
            deg = _check_homogeneous(p, self.degs)
            heapq.heappush(self.inputs, (deg, next(self._seq), p))

    def _chain_skip(self, i: int, j: int, lcm: Monomial) -> bool:
        slot = self.leads[i][0]
        for k in self.by_slot.get(slot, ()):
            if k == i or k == j:
                continue
            if not mono_divides(self.leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) in self.pending_pairs:
                continue
            if (min(j, k), max(j, k)) in self.pending_pairs:
                continue
            return True
        return False

    def _spoly(self, i: int, j: int, lcm: Monomial) -> Poly:
        out: Poly = {}
        for idx, sign in ((i, 1), (j, -1)):
            q = mono_div(lcm, self.leads[idx][1])
            for (s, m), c in self.basis[idx].items():
                mm = (s, mono_mul(m, q))
                v = out.get(mm, 0) + sign * c
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        return out

    def run(self, upto: int | None = None):
        """Complete the basis in all degrees <= upto (everything when None)."""
        while self.pairs or self.inputs:
            nxt = min(q[0] for q in (self.pairs[:1] + self.inputs[:1]))
            if upto is not None and nxt > upto:
                return
            cands = []
            while self.inputs and self.inputs[0][0] == nxt:
                cands.append(heapq.heappop(self.inputs)[2])
            while self.pairs and self.pairs[0][0] == nxt:
                _, _, i, j, lcm = heapq.heappop(self.pairs)
                self.pending_pairs.discard((i, j))
                if self._chain_skip(i, j, lcm):
                    continue
                cands.append(self._spoly(i, j, lcm))
            for c in cands:
                r = self.reduce(c)
                if r:
                    self._insert(r)

    def interreduced(self) -> list[Poly]:
        """The reduced basis: minimal leads, tails fully reduced, monic."""
        keep = []
        for i, (s, m) in enumerate(self.leads):
            if any(j != i and self.leads[j][0] == s and mono_divides(self.leads[j][1], m)
                   and (self.leads[j][1] != m or j < i) for j in self.by_slot[s]):
                continue
            keep.append(i)
        sub = _Engine(self.degs, self._raw_key)
        sub._keys = self._keys
        for i in keep:
            p = self.basis[i]
            sub.basis.append(p)
            sub.leads.append(self.leads[i])
            sub.by_slot.setdefault(self.leads[i][0], []).append(len(sub.basis) - 1)
        out = []
        for k, p in enumerate(sub.basis):
            lt = sub.leads[k]
            tail = {mm: c for mm, c in p.items() if mm != lt}
            red = sub.reduce(tail) if tail else {}
            red[lt] = p[lt]
            out.append(red)
        return sorted(out, key=lambda q: self.key(self.lead_of(q)))


# ---------------------------------------------------------------------------
# public wrappers


def _engine_for(fm: FreeModule, ord: OrderSpec) -> _Engine:
    return _Engine(fm.slot_degrees, ord.key(fm), product_criterion=fm.rank == 1)


def _polys(gens: Iterable[ModuleElement], fm: FreeModule | None = None):
    gens = list(gens)
    if fm is None:
        if not gens:
            raise ValueError("cannot infer the free module from an empty generator list")
        fm = gens[0].fm
    out = []
    for g in gens:
        if g.fm != fm:
            raise DimensionError("generators live in different free modules")
        if not g.is_zero():
            _check_homogeneous(g._coeffs, fm.slot_degrees)
            out.append(dict(g._coeffs))
    return fm, out


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[ModuleElement, ...]
    ord: OrderSpec
    reduced: bool
    fm: FreeModule
    _engine: _Engine = field(repr=False, compare=False, default=None)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def max_degree(self) -> int | None:
        return max((g.homogeneous_degree for g in self.elements), default=None)

    def contains(self, f: ModuleElement) -> bool:
        return normal_form(f, self).is_zero()


def _wrap(fm, ord, polys, reduced, eng) -> GroebnerBasis:
    elems = tuple(ModuleElement._raw(fm, p, ord) for p in polys)
    return GroebnerBasis(elems, ord, reduced, fm, eng)


def buchberger(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
               fm: FreeModule | None = None) -> GroebnerBasis:
    fm, polys = _polys(gens, fm)
    eng = _engine_for(fm, ord)
    for p in polys:
        eng.add_input(p)
    eng.run()
    return _wrap(fm, ord, eng.basis, False, eng)


def reduced_basis(gb: GroebnerBasis) -> GroebnerBasis:
    if gb.reduced:
        return gb
    eng = gb._engine
    if eng is None:
        return groebner(list(gb.elements), gb.ord, gb.fm)
    polys = eng.interreduced()
    fresh = _engine_for(gb.fm, gb.ord)
    for p in polys:
        fresh._insert(dict(p))
    fresh.pairs.clear()
    fresh.pending_pairs.clear()
    return _wrap(gb.fm, gb.ord, polys, True, fresh)


def groebner(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
             fm: FreeModule | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``."""
    return reduced_basis(buchberger(gens, ord, fm))


def normal_form(f: ModuleElement, gb: GroebnerBasis) -> ModuleElement:
    eng = gb._engine
    if eng is None:
        eng = _engine_for(gb.fm, gb.ord)
        for g in gb.elements:
            eng._insert(dict(g._coeffs))
    return ModuleElement._raw(gb.fm, eng.reduce(f._coeffs), gb.ord)


def initial_module(gb: GroebnerBasis) -> MonomialSubmodule:
    per = [[] for _ in range(gb.fm.rank)]
    for g in gb.elements:
        t = g.lead
        per[t.slot].append(t.mono)
    return MonomialSubmodule(gb.fm, tuple(tuple(p) for p in per))


def initial_quotient(gb: GroebnerBasis) -> QuotientPresentation:
    return QuotientPresentation(initial_module(gb))


# ---------------------------------------------------------------------------
# syzygies, minimal generators, intersections


def _block_key(k_first: Callable, k_second: Callable, split: int) -> Callable:
    """Block order on F ⊕ G: anything in F beats anything in G."""
    def key(s, m):
        if s < split:
            return (1, k_first(s, m))
        return (0, k_second(s - split, m))
    return key


def syzygies(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
             fm: FreeModule | None = None) -> tuple[FreeModule, list[ModuleElement]]:
    """Generators of the syzygy module of ``gens`` inside G = ⊕ S(-deg g_i)."""
    fm, polys = _polys(gens, fm)
    if len(polys) != len(list(gens)):
        raise ValueError("syzygies need nonzero generators")
    r = fm.rank
    gdegs = tuple(_poly_degree(p, fm.slot_degrees) for p in polys)
    G = FreeModule(fm.ring, gdegs)
    key = _block_key(ord.key(fm), ord.key(G), r)
    eng = _Engine(fm.slot_degrees + gdegs, key)
    one = fm.ring.one()
    for i, p in enumerate(polys):
        q = dict(p)
        q[(r + i, one)] = Fraction(1)
        eng.add_input(q)
    eng.run()
    out = []
    for p, (s, _) in zip(eng.basis, eng.leads):
        if s >= r:
            out.append(ModuleElement._raw(G, {(s2 - r, m): c for (s2, m), c in p.items()}, ord))
    return G, out


def minimal_generators(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
                       fm: FreeModule | None = None) -> list[ModuleElement]:
    """A minimal generating subset, chosen greedily in increasing degree."""
    fm, polys = _polys(gens, fm)
    eng = _engine_for(fm, ord)
    order = sorted(range(len(polys)), key=lambda i: _poly_degree(polys[i], fm.slot_degrees))
    kept = []
    for i in order:
        p = polys[i]
        eng.run(upto=_poly_degree(p, fm.slot_degrees))
        if eng.reduce(p):
            kept.append(i)
            eng.add_input(p)
    return [ModuleElement._raw(fm, polys[i], ord) for i in kept]


def intersect(a: Sequence[ModuleElement], b: Sequence[ModuleElement],
              ord: OrderSpec = DEFAULT_ORDER, fm: FreeModule | None = None) -> list[ModuleElement]:
    """Generators of (a) ∩ (b) inside the common free module."""
    fm, pa = _polys(a, fm)
    _, pb = _polys(b, fm)
    if not pa or not pb:
        return []
    r = fm.rank
    k = ord.key(fm)
    eng = _Engine(fm.slot_degrees * 2, _block_key(k, k, r))
    for p in pa:
        q = dict(p)
        q.update({(s + r, m): c for (s, m), c in p.items()})
        eng.add_input(q)
    for p in pb:
        eng.add_input(dict(p))
    eng.run()
    out = []
    for p, (s, _) in zip(eng.basis, eng.leads):
        if s >= r:
            out.append(ModuleElement._raw(fm, {(s2 - r, m): c for (s2, m), c in p.items()}, ord))
    return minimal_generators(out, ord, fm) if out else []


def variable_saturation(gens: Sequence[ModuleElement], var: int,
                        ord: OrderSpec = DEFAULT_ORDER, fm: FreeModule | None = None) -> list[ModuleElement]:
    """Generators of Q : x_var^∞.

    In a degree-compatible reverse-lex order with x_var last, x_var divides the
    leading term of a homogeneous element exactly when it divides the element,
    so dividing each basis element by its largest x_var power suffices.
    """
    fm, polys = _polys(gens, fm)
    nv = fm.ring.num_vars
    o = ord.with_last(var, nv)
    eng = _Engine(fm.slot_degrees, o.key(fm), product_criterion=fm.rank == 1)
    for p in polys:
        eng.add_input(p)
    eng.run()
    out = []
    for p in eng.interreduced():
        k = min(m[var] for (_, m) in p)
        if k:
            p = {(s, m[:var] + (m[var] - k,) + m[var + 1:]): c for (s, m), c in p.items()}
        out.append(ModuleElement._raw(fm, p, ord))
    return out


def _is_unit_submodule(polys: list[Poly], fm: FreeModule) -> bool:
    """True when every basis vector e_k lies in the submodule."""
    eng = _engine_for(fm, DEFAULT_ORDER)
    for p in polys:
        eng.add_input(p)
    eng.run()
    one = fm.ring.one()
    return all(eng._divisor(k, one) is not None for k in range(fm.rank))


def saturation(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
               fm: FreeModule | None = None) -> GroebnerBasis:
    """Reduced basis of Q^sat = ∩_i (Q : x_i^∞)."""
    fm, polys = _polys(gens, fm)
    if not polys:
        return groebner([], ord, fm)
    current = None
    for i in range(fm.ring.num_vars):
        sat_i = variable_saturation([ModuleElement._raw(fm, p, ord) for p in polys], i, ord, fm)
        current = sat_i if current is None else intersect(current, sat_i, ord, fm)
    return groebner(current, ord, fm)


def colon_variable(gens: Sequence[ModuleElement], var: int, ord: OrderSpec = DEFAULT_ORDER,
                   fm: FreeModule | None = None) -> list[ModuleElement]:
    """Generators of Q : x_var, via Q ∩ (x_var F) divided by x_var."""
    fm, polys = _polys(gens, fm)
    x = fm.ring.var(var)
    xF = [ModuleElement._raw(fm, {(k, x): Fraction(1)}, ord) for k in range(fm.rank)]
    meet = intersect([ModuleElement._raw(fm, p, ord) for p in polys], xF, ord, fm)
    out = []
    for g in meet:
        out.append(ModuleElement._raw(fm, {(s, mono_div(m, x)): c for (s, m), c in g._coeffs.items()}, ord))
    return out


# ---------------------------------------------------------------------------
# presentations


def prune(pres: Presentation, ord: OrderSpec = DEFAULT_ORDER) -> Presentation:
    """Minimal presentation of F/Q: drop basis vectors hit by a unit, then redundant relations."""
    fm = pres.fm
    polys = [dict(g._coeffs) for g in pres.gens]
    one = fm.ring.one()
    alive = list(range(fm.rank))
    while True:
        hit = None
        for idx, p in enumerate(polys):
            for (s, m), c in p.items():
                if m == one:
                    hit = (idx, s, c)
                    break
            if hit:
                break
        if hit is None:
            break
        idx, s, c = hit
        pivot = polys.pop(idx)
        # e_s = -(pivot - c e_s) / c
        repl = {mm: -v / c for mm, v in pivot.items() if mm != (s, one)}
        new_polys = []
        for p in polys:
            coef = {m: v for (t, m), v in p.items() if t == s}
            if not coef:
                new_polys.append(p)
                continue
            q = {mm: v for mm, v in p.items() if mm[0] != s}
            for m, v in coef.items():
                for (t, mr), vr in repl.items():
                    key = (t, mono_mul(mr, m))
                    w = q.get(key, 0) + v * vr
                    if w:
                        q[key] = w
                    else:
                        q.pop(key, None)
            if q:
                new_polys.append(q)
        polys = new_polys
        alive.remove(s)
    if not alive:
        raise ZeroModuleError("the module is zero")
    remap = {s: i for i, s in enumerate(alive)}
    nfm = FreeModule(fm.ring, tuple(fm.slot_degrees[s] for s in alive))
    gens = [ModuleElement._raw(nfm, {(remap[s], m): c for (s, m), c in p.items()}, ord)
            for p in polys]
    gens = minimal_generators(gens, ord, nfm) if gens else []
    return Presentation(nfm, tuple(gens))


def macaulay_constants_of(pres: Presentation, ord: OrderSpec = DEFAULT_ORDER) -> MacaulayConstants:
    """Constants of F/Q through the initial module of a minimal presentation."""
    p = prune(pres, ord)
    gb = groebner(list(p.gens), ord, p.fm)
    return macaulay_constants(initial_quotient(gb))


def initial_presentation(pres: Presentation, ord: OrderSpec = DEFAULT_ORDER) -> QuotientPresentation:
    p = prune(pres, ord)
    return initial_quotient(groebner(list(p.gens), ord, p.fm))


# ---------------------------------------------------------------------------
# linear-algebra oracle


def _rank(rows: list[dict]) -> int:
    """Rank of sparse rational row vectors by Gaussian elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = dict(row)
        while r:
            col = max(r)
            if col not in pivots:
                inv = 1 / r[col]
                pivots[col] = {k: v * inv for k, v in r.items()}
                rank += 1
                break
            pr = pivots[col]
            c = r[col]
            for k, v in pr.items():
                w = r.get(k, 0) - c * v
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
    return rank


def hilbert_function_linear_algebra(pres: Presentation, j: int, guard: int = 10**7) -> int:
    """dim_K (F/Q)_j from the span of all degree-j multiples of the relations."""
    fm = pres.fm
    nv = fm.ring.num_vars
    dim_f = sum(comb(j - d + nv - 1, nv - 1) for d in fm.slot_degrees if j >= d)
    rows = []
    for g in pres.gens:
        dg = g.homogeneous_degree
        if dg is None:
            raise InhomogeneousError("relation is not homogeneous")
        k = j - dg
        if k < 0:
            continue
        monos = _kernels.monomials_of_degree(nv, k)
        if len(rows) + monos.shape[0] > guard:
            raise EnumerationGuardError(f"degree {j} needs more than {guard} rows")
        for row in monos:
            mt = tuple(int(x) for x in row)
            rows.append({(s, mono_mul(m, mt)): c for (s, m), c in g._coeffs.items()})
    return dim_f - _rank(rows)
