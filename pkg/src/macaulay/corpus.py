"""A fixed, seeded collection of graded modules used for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ._kernels import monomials_of_degree
from .constructions import direct_sum, ideal_as_module, shift_module, truncate_module
from .core import FreeModule, ModuleElement, Presentation, Ring
from .groebner import prune
from .hilbert import QuotientPresentation, MonomialSubmodule, ZeroModuleError

CORPUS_SEED = 20240611


@dataclass(frozen=True)
class Entry:
    name: str
    module: Presentation
    kind: str  # monomial | homogeneous | derived

    @property
    def cyclic(self) -> bool:
        return self.module.fm.rank == 1 and self.module.fm.slot_degrees == (0,)


def random_monomial(rng: random.Random, nv: int, degree: int) -> tuple[int, ...]:
    e = [0] * nv
    for _ in range(degree):
        e[rng.randrange(nv)] += 1
    return tuple(e)


def random_form(rng: random.Random, nv: int, degree: int, terms: int) -> dict:
    out = {}
    for _ in range(terms):
        m = random_monomial(rng, nv, degree)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def random_monomial_ideal(rng: random.Random, nv: int, count: int, max_degree: int):
    return [random_monomial(rng, nv, rng.randint(1, max_degree)) for _ in range(count)]


def random_homogeneous_ideal(rng: random.Random, ring: Ring, count: int, max_degree: int):
    fm = FreeModule(ring)
    gens = []
    while len(gens) < count:
        f = random_form(rng, ring.num_vars, rng.randint(1, max_degree), rng.randint(1, 3))
        if f:
            gens.append(ModuleElement(fm, {(0, m): c for m, c in f.items()}))
    return gens


def monomial_presentation(ring: Ring, gens, degree: int = 0) -> Presentation:
    fm = FreeModule(ring, (degree,))
    return Presentation(fm, tuple(ModuleElement(fm, {(0, g): 1}) for g in gens))


def monomial_module(qp: QuotientPresentation) -> Presentation:
    fm = qp.fm
    gens = []
    for k, slot in enumerate(qp.sub.gens_per_slot):
        gens.extend(ModuleElement(fm, {(k, g): 1}) for g in slot)
    return Presentation(fm, tuple(gens))


def _all_monomials(nv: int, degree: int):
    return [tuple(int(x) for x in row) for row in monomials_of_degree(nv, degree)]


def build_corpus(seed: int = CORPUS_SEED) -> list[Entry]:
    rng = random.Random(seed)
    out: list[Entry] = []

    def add(name, make, kind):
        try:
            module = make() if callable(make) else make
            prune(module)
        except ZeroModuleError:
            return
        out.append(Entry(name, module, kind))

    # cyclic monomial quotients
    for i in range(30):
        nv = rng.randint(2, 4)
        ring = Ring(nv)
        gens = random_monomial_ideal(rng, nv, rng.randint(1, 4), 3)
        add(f"mono{i}", monomial_presentation(ring, gens), "monomial")

    # rank-two monomial quotients with shifted generators
    for i in range(10):
        nv = rng.randint(2, 3)
        ring = Ring(nv)
        degs = (0, rng.randint(0, 2))
        per = tuple(tuple(random_monomial_ideal(rng, nv, rng.randint(0, 3), 3)) for _ in degs)
        qp = QuotientPresentation(MonomialSubmodule(FreeModule(ring, degs), per))
        add(f"mono2_{i}", monomial_module(qp), "monomial")

    # cyclic quotients by random homogeneous ideals
    homog = []
    for i in range(25):
        nv = rng.randint(2, 3)
        ring = Ring(nv)
        gens = random_homogeneous_ideal(rng, ring, rng.randint(1, 3), 3)
        m = Presentation(FreeModule(ring), tuple(gens))
        homog.append(m)
        add(f"homog{i}", m, "homogeneous")

    # a few ideals regarded as modules
    for i in range(5):
        ring = Ring(3)
        gens = random_homogeneous_ideal(rng, ring, 2, 2)
        add(f"ideal{i}", ideal_as_module(gens), "derived")

    # finite-length quotients and the cone over three coordinate points
    for nv, k in ((2, 2), (3, 2), (2, 3)):
        ring = Ring(nv)
        powers = _all_monomials(nv, k)
        add(f"mpow{nv}_{k}", monomial_presentation(ring, powers), "monomial")
    add("cone3", monomial_presentation(Ring(4), [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0)]), "monomial")

    # shifts, truncations and direct sums of earlier entries
    base = [e.module for e in out[:40]]
    for i in range(6):
        m = rng.choice(base)
        add(f"shift{i}", shift_module(m, rng.randint(-2, 2)), "derived")
    for i in range(6):
        m = rng.choice(base)
        j = rng.randint(1, 3)
        add(f"trunc{i}", lambda: truncate_module(m, j), "derived")
    for i in range(6):
        a = rng.choice(base)
        partners = [b for b in base + homog if b.ring == a.ring]
        add(f"sum{i}", direct_sum(a, rng.choice(partners)), "derived")
    return out
