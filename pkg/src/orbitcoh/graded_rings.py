"""Finitely presented graded-commutative algebras over GF(2).

Signs disappear in characteristic two, so these are ordinary commutative
polynomial rings modulo a homogeneous ideal.  The ideal is handled one
degree at a time: in degree ``d`` it is the span of every relation times
every monomial of complementary degree, and the quotient is computed with
:mod:`orbitcoh.f2_linear`.  All work is truncated at an explicit
``degree_cap``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import DegreeOverflow, GateResult, InvalidParam
from .f2_linear import Subspace, bits

Monomial = tuple[int, ...]

__all__ = [
    "Monomial",
    "Presentation",
    "GradedBasis",
    "RingElement",
    "Unbounded",
    "UNBOUNDED",
    "standard_space",
    "sphere",
    "real_projective",
    "lens_mod2",
    "classifying_space_z2",
    "compute_basis",
    "cup",
    "poincare",
    "nilpotency_order",
    "euler_char",
    "free_involution_parity_gate",
    "integral_homology_lens",
    "parse_presentation",
]


class Unbounded(enum.Enum):
    UNBOUNDED = "Unbounded"

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = Unbounded.UNBOUNDED


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    """All exponent vectors of weighted degree ``d``, in ascending lex order."""
    if not degrees:
        return ((),) if d == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head + 1):
        for tail in _monomials(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Presentation:
    """Generators ``(name, degree)``, relations as sets of monomials, a degree cap."""

    generators: tuple[tuple[str, int], ...]
    relations: tuple[frozenset[Monomial], ...]
    degree_cap: int

    def __post_init__(self) -> None:
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise InvalidParam(f"duplicate generator names in {names}")
        for name, deg in self.generators:
            if deg < 1:
                raise InvalidParam(f"generator {name} must have degree >= 1, got {deg}")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise InvalidParam(f"bad generator name {name!r}")
        if self.degree_cap < 0:
            raise InvalidParam("degree_cap must be non-negative")
        n = len(self.generators)
        for rel in self.relations:
            if not rel:
                raise InvalidParam("empty relation")
            for mono in rel:
                if len(mono) != n or any(e < 0 for e in mono):
                    raise InvalidParam(f"monomial {mono} does not fit {n} generators")
            if len({self.degree(mono) for mono in rel}) != 1:
                raise InvalidParam(f"relation {sorted(rel)} is not homogeneous")

    @classmethod
    def build(
        cls,
        generators: Sequence[tuple[str, int]],
        relations: Iterable[Iterable[Sequence[int]]] = (),
        degree_cap: int = 0,
    ) -> Presentation:
        rels = []
        for rel in relations:
            terms: set[Monomial] = set()
            for mono in rel:
                terms ^= {tuple(mono)}
            if terms:
                rels.append(frozenset(terms))
        return cls(tuple((str(g), int(d)) for g, d in generators), tuple(rels), int(degree_cap))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    @property
    def gen_degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def degree(self, mono: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(mono, self.generators))

    def monomials(self, d: int) -> tuple[Monomial, ...]:
        return _monomials(self.gen_degrees, d)

    def with_cap(self, cap: int) -> Presentation:
        return Presentation(self.generators, self.relations, cap)

    def format_monomial(self, mono: Monomial, sep: str = "*") -> str:
        parts = []
        for (name, _), e in zip(self.generators, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return sep.join(parts) if parts else "1"

    def to_text(self) -> str:
        """Canonical text form, e.g. ``ring F2[v:1,w:2]/(v^2, w^3) cap 12``."""
        gens = ",".join(f"{g}:{d}" for g, d in self.generators)
        text = f"ring F2[{gens}]"
        if self.relations:
            rels = []
            for rel in self.relations:
                terms = sorted(rel, reverse=True)
                rels.append(" + ".join(self.format_monomial(t) for t in terms))
            text += "/(" + ", ".join(rels) + ")"
        return f"{text} cap {self.degree_cap}"

    def __str__(self) -> str:
        return self.to_text()


_RING_RE = re.compile(r"^\s*ring\s+F2\[(?P<gens>[^\]]*)\]\s*(?:/\s*\((?P<rels>[^)]*)\))?\s*cap\s+(?P<cap>\d+)\s*$")


def _parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    text = text.strip()
    exps = [0] * len(names)
    if text == "1":
        return tuple(exps)
    for factor in re.split(r"[*\s]+", text):
        if not factor:
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
        if not m or m.group(1) not in names:
            raise InvalidParam(f"cannot parse factor {factor!r}")
        exps[names.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exps)


def _parse_polynomial(text: str, names: Sequence[str]) -> set[Monomial]:
    terms: set[Monomial] = set()
    # '-' and '+' coincide over GF(2)
    for chunk in re.split(r"[+-]", text):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = 1
        m = re.match(r"^(\d+)\s*\*?\s*(.*)$", chunk)
        if m and m.group(2):
            coeff, chunk = int(m.group(1)), m.group(2)
        elif m:
            coeff, chunk = int(m.group(1)), "1"
        if coeff % 2:
            terms ^= {_parse_monomial(chunk, names)}
    return terms


def parse_presentation(text: str) -> Presentation:
    """Inverse of :meth:`Presentation.to_text`."""
    m = _RING_RE.match(text)
    if not m:
        raise InvalidParam(f"cannot parse presentation {text!r}")
    gens = []
    for item in filter(None, (s.strip() for s in m.group("gens").split(","))):
        name, _, deg = item.partition(":")
        if not deg.strip().isdigit():
            raise InvalidParam(f"generator {item!r} needs the form name:degree")
        gens.append((name.strip(), int(deg)))
    names = [g for g, _ in gens]
    rels = []
    if m.group("rels"):
        for chunk in m.group("rels").split(","):
            if chunk.strip():
                terms = _parse_polynomial(chunk, names)
                if terms:
                    rels.append(frozenset(terms))
    return Presentation(tuple(gens), tuple(rels), int(m.group("cap")))


# ----------------------------------------------------------------------------
# standard spaces


def sphere(n: int, cap: int | None = None) -> Presentation:
    if n < 1:
        raise InvalidParam(f"sphere dimension must be positive, got {n}")
    s = (2,)
    return Presentation.build([("s", n)], [[s]], n if cap is None else cap)


def real_projective(n: int, cap: int | None = None) -> Presentation:
    if n < 1:
        raise InvalidParam(f"projective dimension must be positive, got {n}")
    return Presentation.build([("a", 1)], [[(n + 1,)]], n if cap is None else cap)


def lens_mod2(m: int, cap: int | None = None) -> Presentation:
    """Mod-2 cohomology of a lens space ``L_p^{2m-1}`` with ``4 | p``."""
    if m < 1:
        raise InvalidParam(f"m must be positive, got {m}")
    return Presentation.build(
        [("v", 1), ("w", 2)], [[(2, 0)], [(0, m)]], 2 * m - 1 if cap is None else cap
    )


def classifying_space_z2(cap: int) -> Presentation:
    if cap < 1:
        raise InvalidParam(f"cap must be positive, got {cap}")
    return Presentation.build([("t", 1)], [], cap)


_KINDS = {
    "sphere": sphere,
    "rp": real_projective,
    "realprojective": real_projective,
    "lens": lens_mod2,
    "lensmod2": lens_mod2,
    "bz2": classifying_space_z2,
    "classifyingspacez2": classifying_space_z2,
}


def standard_space(kind: str, param: int, cap: int | None = None) -> Presentation:
    """One of ``sphere``, ``rp``, ``lens`` or ``bz2`` with its size parameter."""
    key = kind.lower().replace("_", "").replace("-", "")
    if key not in _KINDS:
        raise InvalidParam(f"unknown space kind {kind!r}")
    if key in ("bz2", "classifyingspacez2"):
        return classifying_space_z2(param if cap is None else cap)
    return _KINDS[key](param, cap)


# ----------------------------------------------------------------------------
# bases and arithmetic


class GradedBasis:
    """Monomial basis of a presentation in every degree ``0..degree_cap``.

    In each degree the relation ideal is a subspace of the span of all
    monomials; the basis consists of the monomials that are not pivots of
    its echelon form, and normal forms are residues modulo the ideal.
    """

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        p = presentation
        self._monos: list[tuple[Monomial, ...]] = []
        self._index: list[dict[Monomial, int]] = []
        self._ideal: list[Subspace] = []
        self.basis: list[tuple[Monomial, ...]] = []
        for d in range(p.degree_cap + 1):
            monos = p.monomials(d)
            index = {mono: i for i, mono in enumerate(monos)}
            spanning = []
            for rel in p.relations:
                rd = p.degree(next(iter(rel)))
                if rd > d:
                    continue
                for cofactor in p.monomials(d - rd):
                    vec = 0
                    for term in rel:
                        vec ^= 1 << index[_mono_mul(term, cofactor)]
                    spanning.append(vec)
            ideal = Subspace.span(spanning, len(monos))
            pivots = set(ideal.pivots)
            self._monos.append(monos)
            self._index.append(index)
            self._ideal.append(ideal)
            self.basis.append(tuple(mono for i, mono in enumerate(monos) if i not in pivots))
        self._basis_pos = [{mono: i for i, mono in enumerate(b)} for b in self.basis]

    @property
    def cap(self) -> int:
        return self.presentation.degree_cap

    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def normal_form(self, d: int, terms: Iterable[Monomial]) -> frozenset[Monomial]:
        """Reduce a sum of degree-``d`` monomials (with multiplicity mod 2)."""
        if d > self.cap:
            raise DegreeOverflow(f"degree {d} exceeds cap {self.cap}")
        index = self._index[d]
        vec = 0
        for mono in terms:
            vec ^= 1 << index[mono]
        vec = self._ideal[d].reduce(vec)
        monos = self._monos[d]
        return frozenset(monos[i] for i in bits(vec))

    def to_vector(self, d: int, terms: Iterable[Monomial]) -> int:
        """Bit vector over ``basis[d]`` of the normal form of ``terms``."""
        pos = self._basis_pos[d]
        out = 0
        for mono in self.normal_form(d, terms):
            out |= 1 << pos[mono]
        return out

    def from_vector(self, d: int, vec: int) -> RingElement:
        b = self.basis[d]
        return RingElement(self, d, frozenset(b[i] for i in bits(vec)))

    def element(self, text: str) -> RingElement:
        names = self.presentation.names
        terms = _parse_polynomial(text, names)
        degs = {self.presentation.degree(t) for t in terms}
        if len(degs) > 1:
            raise InvalidParam(f"{text!r} is not homogeneous")
        d = degs.pop() if degs else 0
        return RingElement(self, d, self.normal_form(d, terms))

    def one(self) -> RingElement:
        return RingElement(self, 0, self.normal_form(0, [(0,) * len(self.presentation.generators)]))

    def gen(self, name: str) -> RingElement:
        return self.element(name)

    def zero(self, d: int = 0) -> RingElement:
        return RingElement(self, d, frozenset())


@dataclass(frozen=True)
class RingElement:
    ring: GradedBasis
    degree: int
    terms: frozenset[Monomial]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: RingElement) -> RingElement:
        if other.ring is not self.ring:
            raise InvalidParam("elements of different rings")
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise InvalidParam("cannot add elements of different degrees")
        return RingElement(self.ring, self.degree, self.terms ^ other.terms)

    def __mul__(self, other: RingElement) -> RingElement:
        return cup(self, other)

    def __pow__(self, k: int) -> RingElement:
        out = self.ring.one()
        for _ in range(k):
            out = cup(out, self)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.ring), self.degree if self.terms else None, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        p = self.ring.presentation
        return " + ".join(p.format_monomial(t) for t in sorted(self.terms, reverse=True))

    __repr__ = __str__


@lru_cache(maxsize=256)
def compute_basis(p: Presentation) -> GradedBasis:
    return GradedBasis(p)


def cup(e1: RingElement, e2: RingElement) -> RingElement:
    if e1.ring is not e2.ring:
        raise InvalidParam("cup product of elements from different rings")
    d = e1.degree + e2.degree
    if d > e1.ring.cap:
        raise DegreeOverflow(f"product of degree {d} exceeds cap {e1.ring.cap}")
    terms: list[Monomial] = [_mono_mul(a, b) for a in e1.terms for b in e2.terms]
    return RingElement(e1.ring, d, e1.ring.normal_form(d, terms))


def poincare(p: Presentation) -> list[int]:
    return compute_basis(p).dims()


def nilpotency_order(e: RingElement) -> int | Unbounded:
    """Smallest ``k`` with ``e**k == 0``, or ``UNBOUNDED`` if not seen below the cap."""
    if e.degree < 1:
        raise InvalidParam("nilpotency is only defined for positive degree")
    if e.is_zero():
        return 1
    power = e
    k = 1
    while power.degree + e.degree <= e.ring.cap:
        power = cup(power, e)
        k += 1
        if power.is_zero():
            return k
    return UNBOUNDED


def euler_char(dims: Sequence[int]) -> int:
    return sum(d if i % 2 == 0 else -d for i, d in enumerate(dims))


def free_involution_parity_gate(dims: Sequence[int]) -> GateResult:
    """A free involution forces ``chi(X) = 2 chi(X/G)``, so ``chi(X)`` must be even."""
    chi = euler_char(dims)
    if chi % 2:
        return GateResult.fail(f"Euler characteristic {chi} is odd; no free involution exists")
    return GateResult.ok()


def integral_homology_lens(p: int, m: int) -> list[str]:
    """Integral homology of ``L_p^{2m-1}`` as symbols ``Z``, ``Z_p`` or ``0``."""
    if p < 2 or m < 1:
        raise InvalidParam(f"need p >= 2 and m >= 1, got p={p}, m={m}")
    top = 2 * m - 1
    out = []
    for i in range(top + 1):
        if i in (0, top):
            out.append("Z")
        elif i % 2 == 1:
            out.append(f"Z_{p}")
        else:
            out.append("0")
    return out
