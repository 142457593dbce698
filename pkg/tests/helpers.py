from macaulay.core import FreeModule, Presentation, Ring, parse_element


def cyclic(names, *gens, degree=0):
    ring = Ring(len(names), tuple(names)) if not isinstance(names, int) else Ring(names)
    fm = FreeModule(ring, (degree,))
    return Presentation(fm, tuple(parse_element(g, fm) for g in gens))


def module(names, degrees, *gens):
    ring = Ring(len(names), tuple(names)) if not isinstance(names, int) else Ring(names)
    fm = FreeModule(ring, tuple(degrees))
    return Presentation(fm, tuple(parse_element(g, fm) for g in gens))
