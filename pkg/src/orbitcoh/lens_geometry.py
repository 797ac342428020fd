"""Exact model of the cyclic action defining a lens space and its involution.

A point of S^{2m-1} in C^m is recorded by which coordinates vanish and the
phases of the rest as fractions of a full turn.  Every map here rotates
coordinates, so moduli never change and equality of points reduces to
equality of supports and phases.  All arithmetic is exact.

Single points use :class:`fractions.Fraction`; grid checks use integer
numerators over a common denominator and numpy so that dense samples stay
cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParam

__all__ = [
    "PhasePoint",
    "ActionParams",
    "Counterexample",
    "parse_point",
    "zp_act",
    "alpha",
    "alpha_power",
    "orbit_equal",
    "alpha_is_free_on",
    "composite_is_z2p",
    "phase_grid",
    "PhaseGrid",
    "grid_checks",
    "odd_coprime_residues",
]


@dataclass(frozen=True)
class PhasePoint:
    """Coordinates are ``None`` (the coordinate is zero) or a phase in [0, 1)."""

    coords: tuple[Fraction | None, ...]

    def __post_init__(self) -> None:
        if not self.coords or all(c is None for c in self.coords):
            raise InvalidParam("a point on the sphere needs a nonzero coordinate")
        for c in self.coords:
            if c is not None and not (0 <= c < 1):
                raise InvalidParam(f"phase {c} is outside [0, 1)")

    @classmethod
    def of(cls, *coords: Fraction | int | str | None) -> PhasePoint:
        out = []
        for c in coords:
            if c is None or (isinstance(c, str) and c.strip().lower() == "zero"):
                out.append(None)
            else:
                out.append(Fraction(c) % 1)
        return cls(tuple(out))

    @property
    def m(self) -> int:
        return len(self.coords)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c is not None)

    def shifted(self, shifts: Sequence[Fraction]) -> PhasePoint:
        return PhasePoint(tuple(None if c is None else (c + s) % 1 for c, s in zip(self.coords, shifts)))

    def __str__(self) -> str:
        return ",".join("zero" if c is None else f"{c.numerator}/{c.denominator}" for c in self.coords)


def parse_point(text: str) -> PhasePoint:
    """Parse ``"zero,1/8"`` style text."""
    try:
        return PhasePoint.of(*[s.strip() for s in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParam(f"cannot parse point {text!r}: {exc}") from None


@dataclass(frozen=True)
class ActionParams:
    p: int
    q: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise InvalidParam(f"p must be >= 2, got {self.p}")
        if not self.q:
            raise InvalidParam("q must have at least one entry")
        for qj in self.q:
            if math.gcd(qj, self.p) != 1:
                raise InvalidParam(f"q entry {qj} is not coprime to p={self.p}")

    @property
    def m(self) -> int:
        return len(self.q)

    def check_alpha(self) -> None:
        for qj in self.q:
            if qj % 2 == 0:
                raise InvalidParam(f"the involution needs odd q entries; {qj} is even")


@dataclass(frozen=True)
class Counterexample:
    point: PhasePoint
    detail: str = ""

    def __bool__(self) -> bool:
        return False


class _Pass:
    def __bool__(self) -> bool:
        return True

    def __repr__(self) -> str:
        return "Pass"


Pass = _Pass()


def _check_point(pt: PhasePoint, a: ActionParams) -> None:
    if pt.m != a.m:
        raise InvalidParam(f"point has {pt.m} coordinates but q has {a.m}")


def zp_act(pt: PhasePoint, k: int, a: ActionParams) -> PhasePoint:
    """Apply the k-th power of the generator of Z_p."""
    _check_point(pt, a)
    return pt.shifted([Fraction(k * qj, a.p) for qj in a.q])


def alpha(pt: PhasePoint, a: ActionParams) -> PhasePoint:
    """Rotate coordinate ``j`` by ``q_j / 2p`` of a turn (a lift of the involution)."""
    a.check_alpha()
    _check_point(pt, a)
    return pt.shifted([Fraction(qj, 2 * a.p) for qj in a.q])


def alpha_power(pt: PhasePoint, n: int, a: ActionParams) -> PhasePoint:
    a.check_alpha()
    _check_point(pt, a)
    return pt.shifted([Fraction(n * qj, 2 * a.p) for qj in a.q])


def orbit_equal(p1: PhasePoint, p2: PhasePoint, a: ActionParams) -> bool:
    _check_point(p1, a)
    _check_point(p2, a)
    if p1.support != p2.support:
        return False
    return any(zp_act(p1, k, a) == p2 for k in range(a.p))


def alpha_is_free_on(samples: Iterable[PhasePoint], a: ActionParams) -> _Pass | Counterexample:
    a.check_alpha()
    for pt in samples:
        if orbit_equal(alpha(pt, a), pt, a):
            return Counterexample(pt, "alpha fixes the orbit of this point")
    return Pass


def composite_is_z2p(samples: Iterable[PhasePoint], a: ActionParams) -> _Pass | Counterexample:
    """Check that alpha is the generator of Z_2p and alpha^2 the generator of Z_p."""
    a.check_alpha()
    for pt in samples:
        standard = pt.shifted([Fraction(qj, 2 * a.p) for qj in a.q])
        if alpha(pt, a) != standard:
            return Counterexample(pt, "alpha differs from the Z_2p generator")
        if alpha_power(pt, 2, a) != zp_act(pt, 1, a):
            return Counterexample(pt, "alpha^2 differs from the Z_p generator")
        if alpha_power(pt, 2 * a.p, a) != pt:
            return Counterexample(pt, "alpha^(2p) is not the identity")
        for n in range(1, 2 * a.p):
            if alpha_power(pt, n, a) == pt:
                return Counterexample(pt, f"alpha^{n} already fixes the point")
    return Pass


def odd_coprime_residues(p: int) -> list[int]:
    """Odd residues modulo 2p that are coprime to p (all distinct lifts for alpha)."""
    return [q for q in range(1, 2 * p, 2) if math.gcd(q, p) == 1]


# ----------------------------------------------------------------------------
# vectorised grids


@dataclass(frozen=True)
class PhaseGrid:
    """Many points at once: integer phases over ``denominator``, ``-1`` for zero."""

    numerators: np.ndarray
    denominator: int

    @property
    def m(self) -> int:
        return self.numerators.shape[1]

    def __len__(self) -> int:
        return self.numerators.shape[0]

    def points(self) -> Iterable[PhasePoint]:
        den = self.denominator
        for row in self.numerators:
            yield PhasePoint(tuple(None if v < 0 else Fraction(int(v), den) for v in row))

    def rescaled(self, denominator: int) -> PhaseGrid:
        if denominator % self.denominator:
            raise InvalidParam("new denominator must be a multiple of the old one")
        f = denominator // self.denominator
        nums = np.where(self.numerators < 0, -1, self.numerators * f)
        return PhaseGrid(nums, denominator)


def phase_grid(m: int, denominator: int) -> PhaseGrid:
    """Every point with each coordinate zero or a phase ``j / denominator``."""
    if m < 1 or denominator < 1:
        raise InvalidParam("need m >= 1 and denominator >= 1")
    blocks = []
    for support in itertools.product((False, True), repeat=m):
        if not any(support):
            continue
        axes = [np.arange(denominator) if s else np.array([-1]) for s in support]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m)
        blocks.append(mesh)
    return PhaseGrid(np.concatenate(blocks).astype(np.int64), denominator)


def _shift(nums: np.ndarray, support: np.ndarray, shifts: np.ndarray, den: int) -> np.ndarray:
    # zero coordinates (-1) get no shift; phases and shifts lie in [0, den), so a
    # single conditional subtraction replaces the modulo
    out = nums + shifts * support
    out -= (out >= den) * out.dtype.type(den)
    return out


@dataclass(frozen=True)
class GridReport:
    points: int
    alpha_squared_is_generator: bool
    alpha_free: bool
    alpha_order_2p: bool
    first_fixed: PhasePoint | None = None

    @property
    def passed(self) -> bool:
        return self.alpha_squared_is_generator and self.alpha_free and self.alpha_order_2p


def grid_checks(grid: PhaseGrid, a: ActionParams) -> GridReport:
    """Vectorised version of the point checks over a whole grid."""
    a.check_alpha()
    if grid.m != a.m:
        raise InvalidParam(f"grid has {grid.m} coordinates but q has {a.m}")
    den = math.lcm(grid.denominator, 2 * a.p)
    dtype = next(t for t in (np.int8, np.int16, np.int64) if 2 * den <= np.iinfo(t).max)
    nums = grid.rescaled(den).numerators.astype(dtype)
    support = (nums >= 0).astype(dtype)
    q = np.array(a.q, dtype=np.int64)
    alpha_step = (q * (den // (2 * a.p)) % den).astype(dtype)
    zp_step = q * (den // a.p) % den

    def shift(v: np.ndarray, steps) -> np.ndarray:
        return _shift(v, support, np.asarray(steps, dtype=dtype), den)

    once = shift(nums, alpha_step)
    twice = shift(once, alpha_step)
    squared_ok = bool(np.array_equal(twice, shift(nums, zp_step)))

    full = shift(nums, (2 * a.p * alpha_step.astype(np.int64)) % den)
    order_ok = bool(np.array_equal(full, nums))

    fixed = np.zeros(len(nums), dtype=bool)
    for k in range(a.p):
        fixed |= np.all(once == shift(nums, (k * zp_step) % den), axis=1)
    first = None
    if fixed.any():
        row = nums[int(np.argmax(fixed))]
        first = PhasePoint(tuple(None if v < 0 else Fraction(int(v), den) for v in row))
    return GridReport(len(nums), squared_ok, not bool(fixed.any()), order_ok, first)
