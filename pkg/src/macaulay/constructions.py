"""Module combinators and extremal ideals with prescribed Macaulay constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _kernels
from .cones import Cone, ConeDecomposition
from .core import (
    DEFAULT_ORDER,
    DimensionError,
    FreeModule,
    ModuleElement,
    Monomial,
    OrderSpec,
    Presentation,
    Ring,
    mono_mul,
)
from .groebner import (
    groebner,
    initial_quotient,
    macaulay_constants_of,
    minimal_generators,
    prune,
    syzygies,
)
from .hilbert import (
    MacaulayConstants,
    NotAdmissibleError,
    QPoly,
    ZeroModuleError,
    hilbert_polynomial,
    hilbert_series,
    peel_constants,
    standard_monomials,
)
from .resolution import minimal_free_resolution


class ConstructionError(RuntimeError):
    pass


def _rehome(g: ModuleElement, fm: FreeModule, slot_offset: int = 0) -> ModuleElement:
    return ModuleElement._raw(fm, {(s + slot_offset, m): c for (s, m), c in g._coeffs.items()},
                              g.order)


# ---------------------------------------------------------------------------
# combinators


def quotient_ring(ring: Ring, gens: Sequence[ModuleElement] = ()) -> Presentation:
    fm = FreeModule(ring)
    return Presentation(fm, tuple(_rehome(g, fm) for g in gens))


def shift_module(pres: Presentation, k: int) -> Presentation:
    """M(k): every basis degree drops by k."""
    fm = pres.fm.shifted(k)
    return Presentation(fm, tuple(_rehome(g, fm) for g in pres.gens))


def direct_sum(a: Presentation, b: Presentation) -> Presentation:
    if a.ring != b.ring:
        raise DimensionError("direct sum of modules over different rings")
    fm = FreeModule(a.ring, a.fm.slot_degrees + b.fm.slot_degrees)
    gens = tuple(_rehome(g, fm) for g in a.gens) + tuple(_rehome(g, fm, a.fm.rank) for g in b.gens)
    return Presentation(fm, gens)


def _kernel_presentation(images: list[ModuleElement], relations: Sequence[ModuleElement],
                         ord: OrderSpec) -> Presentation:
    """Presentation of the submodule of F/Q generated by ``images``."""
    G, syz = syzygies(list(images) + list(relations), ord)
    s = len(images)
    H = FreeModule(G.ring, G.slot_degrees[:s])
    rels = []
    for z in syz:
        part = {(k, m): c for (k, m), c in z._coeffs.items() if k < s}
        if part:
            rels.append(ModuleElement._raw(H, part, ord))
    return prune(Presentation(H, tuple(rels)), ord)


def truncate_module(pres: Presentation, j: int, ord: OrderSpec = DEFAULT_ORDER) -> Presentation:
    """Presentation of M_{>=j}, generated by the standard monomials of degree j and
    the generators of M sitting above j."""
    p = prune(pres, ord)
    if j <= min(p.fm.slot_degrees):
        return p
    gb = groebner(list(p.gens), ord, p.fm)
    iq = initial_quotient(gb)
    images = []
    for slot, mono in standard_monomials(iq, j):
        images.append(ModuleElement._raw(p.fm, {(slot, mono): Fraction(1)}, ord))
    for k, d in enumerate(p.fm.slot_degrees):
        if d > j:
            images.append(ModuleElement.basis(p.fm, k, ord))
    if not images:
        raise ZeroModuleError(f"the module vanishes from degree {j} on")
    return _kernel_presentation(images, p.gens, ord)


def ideal_as_module(gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER) -> Presentation:
    """The ideal (gens) as a graded module G/Syz with G = ⊕ S(-deg g_i)."""
    mins = minimal_generators(gens, ord)
    G, syz = syzygies(mins, ord)
    return Presentation(G, tuple(syz))


def general_hyperplane_section(pres: Presentation, seed: int = 0, attempts: int = 20,
                               ord: OrderSpec = DEFAULT_ORDER):
    """M/ℓM for a random linear form ℓ whose section drops the dimension by one.

    Returns the presentation and the coefficient vector of ℓ.
    """
    rng = random.Random(seed)
    p = prune(pres, ord)
    fm = p.fm
    nv = fm.ring.num_vars
    dim = macaulay_constants_of(p, ord).dim
    if dim == 0:
        raise ValueError("a finite-length module has no general hyperplane section")
    choices = [c for c in range(-5, 6) if c]
    for _ in range(attempts):
        coeffs = [rng.choice(choices) for _ in range(nv)]
        extra = []
        for k in range(fm.rank):
            extra.append(ModuleElement._raw(
                fm, {(k, fm.ring.var(i)): Fraction(c) for i, c in enumerate(coeffs)}, ord))
        sec = Presentation(fm, p.gens + tuple(extra))
        if macaulay_constants_of(sec, ord).dim == dim - 1:
            return sec, tuple(coeffs)
    raise ConstructionError(f"no dimension-dropping linear form in {attempts} draws")


# ---------------------------------------------------------------------------
# extremal ideals


@dataclass(frozen=True)
class ExtremalSpec:
    """Target depth t, dimension d in K[x_0..x_n] and constants b = (b_t, ..., b_{d+1})."""

    n: int
    t: int
    d: int
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not 0 <= self.t <= self.d <= self.n:
            raise ValueError("need 0 <= t <= d <= n")
        if len(self.b) != self.d - self.t + 2:
            raise ValueError(f"expected {self.d - self.t + 2} constants b_{self.t}..b_{self.d + 1}")
        if any(x < y for x, y in zip(self.b, self.b[1:])):
            raise ValueError("constants must be weakly decreasing")
        if self.b[-2] <= self.b[-1]:
            raise ValueError("need b_d > b_{d+1}")

    def bval(self, i: int) -> int:
        return self.b[i - self.t]

    def a(self, i: int) -> int:
        """deg f_i = b_i - b_{i+1}."""
        return self.bval(i) - self.bval(i + 1)

    @property
    def t_eff(self) -> int:
        """Largest i with b_i = b_t; the construction runs from there."""
        return max(i for i in range(self.t, self.d + 1) if self.bval(i) == self.bval(self.t))


@dataclass(frozen=True)
class SharpnessCertificate:
    ideal: tuple[ModuleElement, ...]
    module: Presentation = field(repr=False)
    constants_requested: tuple[int, ...]
    constants_computed: MacaulayConstants
    reg_computed: int
    reg_k_closed_form: dict
    minimal_gen_count: int
    expected_gen_count: int
    t: int
    attempts: int

    @property
    def constants_match(self) -> bool:
        return tuple(self.constants_computed.b[self.t:]) == self.constants_requested

    @property
    def ok(self) -> bool:
        d = self.t + len(self.constants_requested) - 2
        return (self.constants_computed.dim == d
                and self.constants_match
                and self.minimal_gen_count == self.expected_gen_count
                and self.reg_computed == self.constants_requested[0] - 1)

    def as_dict(self) -> dict:
        return {
            "ideal": [g.to_text() for g in self.ideal],
            "constants_requested": list(self.constants_requested),
            "constants_computed": list(self.constants_computed.b),
            "reg": self.reg_computed,
            "reg_k": {str(k): v for k, v in sorted(self.reg_k_closed_form.items())},
            "minimal_generators": self.minimal_gen_count,
            "ok": self.ok,
        }


def _var_power(nv: int, i: int, a: int) -> Monomial:
    e = [0] * nv
    e[i] = a
    return tuple(e)


def _monomial_forms(spec: ExtremalSpec, t: int, nv: int):
    """ℓ_j = x_{t+1+j}; f_i a pure power of a variable among x_0..x_t."""
    one = (0,) * nv
    ells = [{_var_power(nv, t + 1 + j, 1): Fraction(1)} for j in range(spec.n - t)]
    fs = {}
    for i in range(t, spec.d + 1):
        a = spec.a(i)
        fs[i] = {_var_power(nv, (spec.d - i) % (t + 1), a): Fraction(1)} if a else {one: Fraction(1)}
    return ells, fs


def _random_form(rng: random.Random, nv: int, degree: int) -> dict:
    choices = [c for c in range(-5, 6) if c]
    monos = _kernels.monomials_of_degree(nv, degree)
    return {tuple(int(x) for x in row): Fraction(rng.choice(choices)) for row in monos}


def _random_forms(spec: ExtremalSpec, t: int, nv: int, rng: random.Random):
    ells = [_random_form(rng, nv, 1) for _ in range(spec.n - t)]
    fs = {i: _random_form(rng, nv, spec.a(i)) for i in range(t, spec.d + 1)}
    return ells, fs


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def extremal_generators(spec: ExtremalSpec, t: int, ells, fs, nv: int) -> list[dict]:
    """(ℓ_{d-t}, ..., ℓ_{n-t-1}, f_d ℓ_0, f_d f_{d-1} ℓ_1, ..., f_d ... f_{t+1} ℓ_{d-t-1}, f_d ... f_t)."""
    d = spec.d
    gens = [ells[j] for j in range(d - t, spec.n - t)]
    prod = {(0,) * nv: Fraction(1)}
    for k in range(d - t):
        prod = _pmul(prod, fs[d - k])
        gens.append(_pmul(prod, ells[k]))
    gens.append(_pmul(prod, fs[t]))
    return gens


def certify(spec: ExtremalSpec, gens: Sequence[ModuleElement], ord: OrderSpec = DEFAULT_ORDER,
            attempts: int = 1) -> SharpnessCertificate:
    """Recompute constants, generator count and regularity of (S/I)(-b_{d+1})."""
    ring = gens[0].fm.ring
    shift = spec.b[-1]
    fm = FreeModule(ring, (shift,))
    module = Presentation(fm, tuple(_rehome(g, fm) for g in gens))
    consts = macaulay_constants_of(module, ord)
    bt = minimal_free_resolution(module, ord)
    t_eff = spec.t_eff
    return SharpnessCertificate(
        ideal=tuple(gens),
        module=module,
        constants_requested=spec.b,
        constants_computed=consts,
        reg_computed=bt.regularity,
        reg_k_closed_form={k: spec.bval(k) - 1 for k in range(spec.t, spec.d + 1)},
        minimal_gen_count=bt.total(1),
        expected_gen_count=spec.n - t_eff + 1,
        t=spec.t,
        attempts=attempts,
    )


def extremal_ideal(spec: ExtremalSpec, seed: int = 0, ord: OrderSpec = DEFAULT_ORDER,
                   max_attempts: int = 50, ring: Ring | None = None):
    """Generators of the extremal ideal for ``spec`` together with a verified certificate."""
    nv = spec.n + 1
    ring = ring or Ring(nv)
    if ring.num_vars != nv:
        raise DimensionError("ring size does not match n")
    fm = FreeModule(ring)
    t = spec.t_eff
    rng = random.Random(seed)
    last = None
    for attempt in range(max_attempts + 1):
        if attempt == 0:
            ells, fs = _monomial_forms(spec, t, nv)
        else:
            ells, fs = _random_forms(spec, t, nv, rng)
        raw = extremal_generators(spec, t, ells, fs, nv)
        gens = [ModuleElement._raw(fm, {(0, m): c for m, c in p.items()}, ord) for p in raw if p]
        cert = certify(spec, gens, ord, attempt + 1)
        if cert.ok:
            return gens, cert
        last = cert
    raise ConstructionError(
        f"no verified extremal ideal after {max_attempts + 1} attempts; last certificate: "
        f"constants {last.constants_computed.b}, reg {last.reg_computed}, "
        f"{last.minimal_gen_count} generators")


def extremal_cone_model(spec: ExtremalSpec) -> ConeDecomposition:
    """Cones x_{d-j}^k K[x_{d-j+1}, ..., x_d] in degrees b_{j+1} <= k < b_j, for j = t..d."""
    nv = spec.n + 1
    base = spec.b[-1]
    cones = []
    for j in range(spec.t, spec.d + 1):
        v = spec.d - j
        for k in range(spec.bval(j + 1), spec.bval(j)):
            cones.append(Cone(_var_power(nv, v, k - base), tuple(range(v + 1, spec.d + 1)), 0, base))
    return ConeDecomposition(tuple(cones), None, base)


def realize_hilbert_polynomial(p: QPoly, e: int, n: int, seed: int = 0,
                               ord: OrderSpec = DEFAULT_ORDER) -> Presentation:
    """A cyclic module with generator degree e and Hilbert polynomial p in K[x_0..x_n]."""
    if p.is_zero():
        raise NotAdmissibleError("the zero polynomial is realized only by finite-length modules")
    tail = peel_constants(p, e)
    d = len(tail)
    if d > n:
        raise NotAdmissibleError(f"dimension {d} exceeds the ambient bound {n}")
    spec = ExtremalSpec(n, 1, d, tail + (e,))
    _, cert = extremal_ideal(spec, seed, ord)
    module = cert.module
    hp = hilbert_polynomial(hilbert_series(initial_quotient(groebner(list(module.gens), ord, module.fm))))
    for z in range(p.degree + 3):
        if hp(z) != p(z):
            raise ConstructionError(f"realized polynomial {hp} differs from {p}")
    return module
