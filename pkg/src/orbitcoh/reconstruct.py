"""From a stable page to an algebra: totals, x-nilpotency, candidate matching.

Matching uses two invariants, the Poincare vector and the nilpotency of the
class ``x = rho*(t)`` read off the bottom row.  The parameter ``lambda`` of
the third family only enters a multiplicative extension that the spectral
sequence does not see, so both values are always reported together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidParam, NoMatch
from .graded_rings import UNBOUNDED, Presentation, Unbounded, compute_basis, nilpotency_order, poincare
from .spectral import Page, total_dims

__all__ = [
    "CandidatePresentation",
    "MatchReport",
    "candidate_list",
    "candidates_for_top",
    "bottom_row_nilpotency",
    "match",
    "match_totals",
    "coindex",
    "borsuk_bound",
]


@dataclass(frozen=True)
class CandidatePresentation:
    family: int
    top: int  # top degree of the orbit space
    presentation: Presentation
    lam: int | None = None

    @property
    def m(self) -> int | None:
        """``top = 2m - 1``; ``None`` when the top degree is even."""
        return (self.top + 1) // 2 if self.top % 2 else None

    @property
    def name(self) -> str:
        tag = f"family {self.family}"
        if self.lam is not None:
            tag += f" (lambda={self.lam})"
        return tag

    def poincare(self) -> list[int]:
        dims = poincare(self.presentation)
        return dims[: self.top + 1] + [0] * max(0, self.top + 1 - len(dims))

    def x_nilpotency(self) -> int | Unbounded:
        ring = compute_basis(self.presentation)
        return nilpotency_order(ring.gen("x"))


def _family1(top: int) -> CandidatePresentation:
    # cap one past the top so that x^(top+1) = 0 is visible
    p = Presentation.build([("x", 1)], [[(top + 1,)]], top + 4)
    return CandidatePresentation(1, top, p)


def _family2(m: int) -> CandidatePresentation:
    p = Presentation.build([("x", 1), ("y", 2)], [[(2, 0)], [(0, m)]], 2 * m + 3)
    return CandidatePresentation(2, 2 * m - 1, p)


def _family3(m: int, lam: int) -> CandidatePresentation:
    mixed = [(2, 1, 0)] + ([(3, 0, 0)] if lam else [])
    rels = [[(4, 0, 0)], [(0, 2, 0)], [(0, 0, m // 2)], mixed]
    p = Presentation.build([("x", 1), ("y", 1), ("z", 4)], rels, 2 * m + 3)
    return CandidatePresentation(3, 2 * m - 1, p, lam)


def candidate_list(m: int) -> list[CandidatePresentation]:
    """The algebras a free involution on a lens-type space of dimension 2m-1 may have."""
    if m < 1:
        raise InvalidParam(f"m must be positive, got {m}")
    out = [_family1(2 * m - 1), _family2(m)]
    if m % 2 == 0 and m > 2:
        out += [_family3(m, 0), _family3(m, 1)]
    return out


def candidates_for_top(top: int) -> list[CandidatePresentation]:
    """Candidates by the top degree of the fibre; even tops only admit a truncated polynomial."""
    if top < 1:
        raise InvalidParam(f"top degree must be positive, got {top}")
    if top % 2:
        return candidate_list((top + 1) // 2)
    return [_family1(top)]


def bottom_row_nilpotency(einf: Page) -> int | Unbounded:
    """Smallest ``s`` with ``E_inf^{s,0} = 0``; then ``x^s = 0`` and ``x^(s-1) != 0``."""
    for s in range(einf.window.reliable_degree + 1):
        if einf.dim(s, 0) == 0:
            return s
    return UNBOUNDED


def coindex(c: CandidatePresentation) -> int:
    nil = c.x_nilpotency()
    if nil is UNBOUNDED:
        raise InvalidParam(f"x is not nilpotent below the cap of {c.presentation}")
    return nil - 1


def borsuk_bound(coindex_value: int) -> int:
    """Smallest ``n`` such that no equivariant map ``S^n -> X`` exists."""
    return coindex_value + 1


@dataclass
class MatchReport:
    totals: tuple[int, ...]
    nilpotency: int | Unbounded
    matches: list[CandidatePresentation] = field(default_factory=list)
    diagnostic: str | None = None

    @property
    def coindex(self) -> int | None:
        return self.nilpotency - 1 if isinstance(self.nilpotency, int) else None

    @property
    def borsuk_bound(self) -> int | None:
        c = self.coindex
        return None if c is None else borsuk_bound(c)

    def __bool__(self) -> bool:
        return bool(self.matches)


def match_totals(
    totals: Sequence[int],
    nilpotency: int | Unbounded,
    candidates: Sequence[CandidatePresentation],
) -> MatchReport:
    totals = tuple(totals)
    found = []
    for c in candidates:
        want = c.poincare()
        head, tail = totals[: len(want)], totals[len(want) :]
        if head == tuple(want) and not any(tail) and c.x_nilpotency() == nilpotency:
            found.append(c)
    report = MatchReport(totals, nilpotency, found)
    if not found:
        lines = [f"totals {list(totals)} with x-nilpotency {nilpotency} match no candidate"]
        for c in candidates:
            lines.append(f"  {c.name}: poincare {c.poincare()}, x-nilpotency {c.x_nilpotency()}")
        report.diagnostic = "\n".join(lines)
    return report


def match(einf: Page, m: int | None = None, strict: bool = True) -> MatchReport:
    """Compare a stable page with the candidate algebras.

    Without ``m`` the candidates come from the fibre's top degree.  With
    ``strict`` an empty match raises :class:`NoMatch` carrying the report.
    """
    top = einf.fiber.top
    candidates = candidate_list(m) if m is not None else candidates_for_top(top)
    totals = total_dims(einf, einf.window.reliable_degree)
    report = match_totals(totals, bottom_row_nilpotency(einf), candidates)
    if strict and not report:
        raise NoMatch(report)
    return report
