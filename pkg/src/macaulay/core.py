"""Polynomial rings, graded free modules, monomial orders and module elements.

Monomials are plain tuples of nonnegative exponents.  A module monomial is a
pair ``(slot, exps)``; elements of a free module are sparse maps from module
monomials to exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]
ModMono = tuple  # (slot, Monomial)

EXPONENT_LIMIT = 2**31


class DimensionError(ValueError):
    """Objects live over rings or free modules of different shapes."""


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class InhomogeneousError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial helpers


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def check_exponents(m: Monomial) -> Monomial:
    """Reject exponents that do not fit the machine-width kernels."""
    for e in m:
        if e < 0:
            raise ValueError(f"negative exponent in {m}")
        if e >= EXPONENT_LIMIT:
            raise OverflowError(f"exponent {e} exceeds {EXPONENT_LIMIT - 1}")
    return m


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop generators divisible by another one; result sorted, duplicate free."""
    uniq = sorted(set(gens), key=lambda g: (sum(g), g))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(mono_divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


# ---------------------------------------------------------------------------
# rings and free modules


@dataclass(frozen=True)
class Ring:
    """Standard graded polynomial ring over the rationals in ``num_vars`` variables."""

    num_vars: int
    var_names: tuple[str, ...] = ()
    field_tag: str = "QQ"

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a ring needs at least one variable")
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x{i}" for i in range(self.num_vars)))
        else:
            object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(self.var_names) != self.num_vars:
            raise DimensionError("number of variable names does not match num_vars")
        if len(set(self.var_names)) != self.num_vars:
            raise ValueError("variable names must be distinct")
        if self.field_tag != "QQ":
            raise ValueError("only the rational field is supported")

    @property
    def n(self) -> int:
        """Index of the last variable; the ring is K[x_0..x_n]."""
        return self.num_vars - 1

    def one(self) -> Monomial:
        return (0,) * self.num_vars

    def var(self, i: int) -> Monomial:
        e = [0] * self.num_vars
        e[i] = 1
        return tuple(e)


@dataclass(frozen=True)
class FreeModule:
    """Graded free module with basis e_1..e_r of the given degrees."""

    ring: Ring
    slot_degrees: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "slot_degrees", tuple(int(d) for d in self.slot_degrees))
        if len(self.slot_degrees) < 1:
            raise ValueError("free module needs rank >= 1")

    @property
    def rank(self) -> int:
        return len(self.slot_degrees)

    def degree(self, slot: int, m: Monomial) -> int:
        return self.slot_degrees[slot] + sum(m)

    def shifted(self, k: int) -> "FreeModule":
        """Basis of F(k): every basis degree lowered by k."""
        return FreeModule(self.ring, tuple(d - k for d in self.slot_degrees))


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class OrderSpec:
    """Monomial order on module monomials.

    ``var_permutation[i]`` names the variable that is compared at rank ``i``
    (rank 0 is the most significant variable for lex and x_0-like for degrevlex).
    """

    base: str = "degrevlex"
    module_extension: str = "pot"
    var_permutation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.base not in ("lex", "degrevlex"):
            raise ValueError(f"unknown order {self.base!r}")
        if self.module_extension not in ("pot", "top"):
            raise ValueError(f"unknown module extension {self.module_extension!r}")
        if self.var_permutation is not None:
            perm = tuple(self.var_permutation)
            if sorted(perm) != list(range(len(perm))):
                raise ValueError("var_permutation must be a permutation of 0..n")
            object.__setattr__(self, "var_permutation", perm)

    def _check(self, fm: FreeModule):
        if self.var_permutation is not None and len(self.var_permutation) != fm.ring.num_vars:
            raise DimensionError("order permutation does not match the ring")

    def mono_key(self, nvars: int) -> Callable[[Monomial], tuple]:
        """Sort key for ring monomials (larger key = larger monomial)."""
        perm = self.var_permutation
        if perm is not None and perm == tuple(range(nvars)):
            perm = None
        if self.base == "lex":
            if perm is None:
                return lambda m: m
            return lambda m: tuple(m[p] for p in perm)
        if perm is None:
            return lambda m: (sum(m), tuple(-e for e in reversed(m)))
        rperm = tuple(reversed(perm))
        return lambda m: (sum(m), tuple(-m[p] for p in rperm))

    def key(self, fm: FreeModule) -> Callable[[int, Monomial], tuple]:
        """Sort key for module monomials ``(slot, exps)``."""
        self._check(fm)
        mk = self.mono_key(fm.ring.num_vars)
        degs = fm.slot_degrees
        if self.module_extension == "pot":
            return lambda s, m: (-s, mk(m))
        if self.base == "degrevlex":
            # total degree includes the basis shift
            return lambda s, m: (degs[s] + sum(m), mk(m)[1], -s)
        return lambda s, m: (mk(m), -s)

    def with_last(self, var: int, nvars: int) -> "OrderSpec":
        """Degrevlex/TOP order making ``var`` the revlex-smallest variable."""
        perm = tuple(i for i in range(nvars) if i != var) + (var,)
        return OrderSpec("degrevlex", "top", perm)


DEFAULT_ORDER = OrderSpec()


def monomial_cmp(a: ModMono, b: ModMono, ord: OrderSpec = DEFAULT_ORDER,
                 fm: FreeModule | None = None) -> int:
    """Three-way comparison of module monomials ``(slot, exps)``."""
    sa, ma = a
    sb, mb = b
    if len(ma) != len(mb):
        raise DimensionError(f"monomials of length {len(ma)} and {len(mb)}")
    if fm is None:
        rank = max(sa, sb) + 1
        fm = FreeModule(Ring(len(ma)), (0,) * rank)
    elif fm.ring.num_vars != len(ma):
        raise DimensionError("monomial length does not match the ring")
    key = ord.key(fm)
    ka, kb = key(sa, ma), key(sb, mb)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# module elements


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    mono: Monomial
    slot: int = 0


class ModuleElement:
    """Immutable element of a graded free module with exact rational coefficients."""

    __slots__ = ("fm", "order", "_coeffs", "_terms")

    def __init__(self, fm: FreeModule, coeffs: Mapping[ModMono, Fraction] | None = None,
                 order: OrderSpec = DEFAULT_ORDER):
        self.fm = fm
        self.order = order
        clean = {}
        for (s, m), c in (coeffs or {}).items():
            if not 0 <= s < fm.rank:
                raise DimensionError(f"slot {s} out of range for rank {fm.rank}")
            if len(m) != fm.ring.num_vars:
                raise DimensionError("monomial length does not match the ring")
            if c:
                clean[(s, tuple(m))] = Fraction(c)
        self._coeffs = clean
        self._terms = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, fm, coeffs, order=DEFAULT_ORDER):
        obj = cls.__new__(cls)
        obj.fm = fm
        obj.order = order
        obj._coeffs = coeffs
        obj._terms = None
        return obj

    @classmethod
    def basis(cls, fm: FreeModule, slot: int, order: OrderSpec = DEFAULT_ORDER):
        return cls(fm, {(slot, fm.ring.one()): Fraction(1)}, order)

    # access -------------------------------------------------------------
    @property
    def coeffs(self) -> Mapping[ModMono, Fraction]:
        return dict(self._coeffs)

    @property
    def terms(self) -> tuple[Term, ...]:
        if self._terms is None:
            key = self.order.key(self.fm)
            items = sorted(self._coeffs.items(), key=lambda kv: key(*kv[0]), reverse=True)
            self._terms = tuple(Term(c, m, s) for (s, m), c in items)
        return self._terms

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __len__(self):
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def lead(self) -> Term:
        if not self._coeffs:
            raise ValueError("zero element has no leading term")
        return self.terms[0]

    @property
    def degrees(self) -> set[int]:
        return {self.fm.degree(s, m) for (s, m) in self._coeffs}

    @property
    def homogeneous_degree(self) -> int | None:
        degs = self.degrees
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def with_order(self, order: OrderSpec) -> "ModuleElement":
        return ModuleElement._raw(self.fm, self._coeffs, order)

    # arithmetic ---------------------------------------------------------
    def _same(self, other: "ModuleElement"):
        if self.fm != other.fm:
            raise DimensionError("elements of different free modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ModuleElement._raw(self.fm, out, self.order)

    def __neg__(self):
        return ModuleElement._raw(self.fm, {k: -c for k, c in self._coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModuleElement":
        c = Fraction(c)
        if not c:
            return ModuleElement._raw(self.fm, {}, self.order)
        return ModuleElement._raw(self.fm, {k: v * c for k, v in self._coeffs.items()}, self.order)

    def times_monomial(self, m: Monomial) -> "ModuleElement":
        return ModuleElement._raw(
            self.fm, {(s, mono_mul(mm, m)): c for (s, mm), c in self._coeffs.items()}, self.order)

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.fm == other.fm and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.fm, frozenset(self._coeffs.items())))

    # text ---------------------------------------------------------------
    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        names = self.fm.ring.var_names
        show_slot = self.fm.rank > 1
        parts = []
        for t in self.terms:
            factors = []
            for name, e in zip(names, t.mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if show_slot:
                factors.append(f"e{t.slot + 1}")
            c = t.coeff
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            sign = "-" if c < 0 else "+"
            parts.append((sign, "*".join(factors)))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ModuleElement({self.to_text()!r})"


@dataclass(frozen=True)
class Presentation:
    """The module M = F/Q where Q is generated by ``gens``."""

    fm: FreeModule
    gens: tuple[ModuleElement, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        for g in gens:
            if g.fm != self.fm:
                raise DimensionError("generator lives in a different free module")
        object.__setattr__(self, "gens", gens)

    @property
    def ring(self) -> Ring:
        return self.fm.ring


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return toks


def parse_terms(text: str, var_names: Sequence[str],
                allow_slots: bool = True) -> dict[ModMono, Fraction]:
    """Parse ``c*x0^a*x1^b*ek + ...`` into a coefficient map (slots 0-based)."""
    index = {name: i for i, name in enumerate(var_names)}
    nv = len(var_names)
    toks = _tokenize(text)
    out: dict[ModMono, Fraction] = {}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else ("end", "", len(text))

    if not toks:
        raise ParseError("empty expression", 0, text)
    while i < len(toks):
        sign = 1
        while peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * nv
        slot = None
        expect_factor = True
        while expect_factor:
            kind, val, pos = peek()
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                i += 1
                if val in index:
                    e = 1
                    if peek()[1] == "^":
                        i += 1
                        k2, v2, p2 = peek()
                        if k2 != "num" or "/" in v2:
                            raise ParseError("expected integer exponent", p2, text)
                        e = int(v2)
                        i += 1
                    exps[index[val]] += e
                elif allow_slots and re.fullmatch(r"e\d+", val):
                    if slot is not None:
                        raise ParseError("two basis symbols in one term", pos, text)
                    slot = int(val[1:]) - 1
                    if slot < 0:
                        raise ParseError("basis symbols start at e1", pos, text)
                else:
                    raise ParseError(f"unknown variable {val!r}", pos, text)
            else:
                raise ParseError("expected a factor", pos, text)
            if peek()[1] == "*":
                i += 1
            else:
                expect_factor = False
        kind, val, pos = peek()
        if kind != "end" and val not in "+-":
            raise ParseError(f"unexpected {val!r}", pos, text)
        key = (slot if slot is not None else 0, check_exponents(tuple(exps)))
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def parse_element(text: str, fm: FreeModule, ord: OrderSpec = DEFAULT_ORDER) -> ModuleElement:
    """Parse an element of ``fm``; basis symbols ``e1..er`` may be omitted at rank 1."""
    coeffs = parse_terms(text, fm.ring.var_names)
    for (s, _), _c in coeffs.items():
        if s >= fm.rank:
            raise ParseError(f"basis symbol e{s + 1} out of range for rank {fm.rank}", 0, text)
    return ModuleElement._raw(fm, coeffs, ord)
