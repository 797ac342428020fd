"""Exhaustive search over the differentials of the Borel spectral sequence.

At each page that is not yet stable the search branches over every
bidegree-correct choice of images for the page's multiplicative generators,
extends each choice by the Leibniz rule and turns the page.  A branch is cut
as soon as one of four checks fails:

``IllDefined``         the Leibniz rule contradicts a relation on the page
``NotSquareZero``      the extended differential does not square to zero
``FreenessViolation``  the limit has cohomology above the fibre's dimension
``GysinInfeasible``    the limit's Betti numbers admit no exact Smith-Gysin ranks

Leaves are reported in depth-first order, so reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    DifferentialError,
    GateResult,
    InvalidCase,
    InvalidParam,
    SearchLimitExceeded,
    UnsupportedFiber,
)
from .exact_sequences import gysin_gate
from .graded_rings import Presentation, free_involution_parity_gate, lens_mod2
from .reconstruct import MatchReport, match
from .spectral import (
    DifferentialAssignment,
    Page,
    Window,
    branchable_generators,
    build_E2,
    enumerate_assignments,
    extend_leibniz,
    is_stable,
    total_dims,
    turn_page,
)

__all__ = [
    "Step",
    "Scenario",
    "SearchReport",
    "BranchReport",
    "freeness_gate",
    "classify",
    "replay_paper_case",
    "all_zero_scenario",
    "D2_CASES",
]

SURVIVED = "survived"
PRUNED = "pruned"

# Images of (1⊗v, 1⊗w) on the lens E_2 page, as coordinates in E_2^{2,0} and E_2^{2,1}.
D2_CASES = {"a": (1, 1), "b": (1, 0), "c": (0, 1)}


@dataclass(frozen=True)
class Step:
    r: int
    assignment: DifferentialAssignment
    images: tuple[tuple[str, str], ...]  # (generator, image) for branchable generators

    @property
    def label(self) -> str:
        nonzero = [f"{g}↦{img}" for g, img in self.images if img != "0"]
        if not nonzero:
            return f"d{self.r}=0"
        return f"d{self.r}(" + ", ".join(nonzero) + ")"


@dataclass
class Scenario:
    steps: tuple[Step, ...]
    status: str
    reason: str | None = None
    witness: str | None = None
    pages: tuple[Page, ...] = ()
    totals: tuple[int, ...] | None = None
    report: MatchReport | None = None

    @property
    def label(self) -> str:
        return " ; ".join(s.label for s in self.steps) if self.steps else "E2"

    @property
    def survived(self) -> bool:
        return self.status == SURVIVED

    @property
    def einf(self) -> Page | None:
        return self.pages[-1] if self.survived and self.pages else None

    @property
    def nilpotency(self):
        return self.report.nilpotency if self.report is not None else None

    @property
    def matches(self):
        return self.report.matches if self.report is not None else []


@dataclass
class SearchReport:
    fiber: Presentation
    n: int
    window: Window | None
    scenarios: list[Scenario] = field(default_factory=list)

    @property
    def survivors(self) -> list[Scenario]:
        return [s for s in self.scenarios if s.survived]

    @property
    def pruned(self) -> list[Scenario]:
        return [s for s in self.scenarios if not s.survived]

    def reasons(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.pruned:
            out[s.reason] = out.get(s.reason, 0) + 1
        return out

    @property
    def has_unmatched(self) -> bool:
        return any(not s.matches for s in self.survivors)


def freeness_gate(einf: Page, n: int) -> GateResult:
    """Fail at the first total degree in ``(n, kmax - lmax - 1]`` with nonzero cohomology."""
    hi = einf.window.reliable_degree
    totals = total_dims(einf, hi)
    for j in range(n + 1, hi + 1):
        if totals[j]:
            return GateResult.fail(f"H^{j} has dimension {totals[j]} above degree {n}", j)
    return GateResult.ok()


class _Search:
    def __init__(self, n: int, max_branches: int):
        self.n = n
        self.max_branches = max_branches
        self.leaves: list[Scenario] = []

    def _emit(self, sc: Scenario) -> None:
        self.leaves.append(sc)
        if len(self.leaves) > self.max_branches:
            raise SearchLimitExceeded(f"more than {self.max_branches} branches")

    def finish(self, page: Page, steps: tuple[Step, ...], pages: tuple[Page, ...]) -> None:
        totals = tuple(total_dims(page, page.window.reliable_degree))
        gate = freeness_gate(page, self.n)
        if not gate:
            self._emit(Scenario(steps, PRUNED, "FreenessViolation", gate.reason, pages, totals))
            return
        gate = gysin_gate(totals[: self.n + 1], page.fiber.dims)
        if not gate:
            self._emit(Scenario(steps, PRUNED, "GysinInfeasible", gate.reason, pages, totals))
            return
        report = match(page, strict=False)
        self._emit(Scenario(steps, SURVIVED, None, None, pages, totals[: self.n + 1], report))

    def descend(self, page: Page, steps: tuple[Step, ...], pages: tuple[Page, ...]) -> None:
        while not is_stable(page) and not branchable_generators(page):
            page = page.advanced()
            pages += (page,)
        if is_stable(page):
            self.finish(page, steps, pages)
            return
        for assign in enumerate_assignments(page):
            self.apply(page, assign, steps, pages)

    def apply(
        self, page: Page, assign: DifferentialAssignment, steps: tuple[Step, ...], pages: tuple[Page, ...]
    ) -> None:
        step = Step(page.r, assign, tuple(assign.describe(page)))
        steps = steps + (step,)
        try:
            if assign.is_zero():
                nxt = page.advanced()
            else:
                nxt = turn_page(page, extend_leibniz(page, assign))
        except DifferentialError as exc:
            self._emit(Scenario(steps, PRUNED, exc.reason, str(exc), pages))
            return
        self.descend(nxt, steps, pages + (nxt,))


def _check_shape(fiber: Presentation) -> None:
    if len(fiber.generators) > 3:
        raise UnsupportedFiber(f"{len(fiber.generators)} generators; at most 3 are supported")
    binomials = [r for r in fiber.relations if len(r) > 1]
    if len(binomials) > 1:
        raise UnsupportedFiber("at most one non-monomial relation is supported")


def _root(fiber: Presentation, window: Window | None, assume_trivial_action: bool) -> Page:
    _check_shape(fiber)
    return build_E2(fiber, window, assume_trivial_action)


def classify(
    fiber: Presentation,
    n: int | None = None,
    window: Window | None = None,
    max_branches: int = 10**6,
    assume_trivial_action: bool = False,
) -> SearchReport:
    """Every Leibniz-consistent differential pattern for a free involution on ``fiber``."""
    e2 = _root(fiber, window, assume_trivial_action)
    n = e2.fiber.top if n is None else n
    if n < e2.fiber.top:
        raise InvalidParam(f"n={n} is below the fibre's top degree {e2.fiber.top}")
    report = SearchReport(fiber, n, e2.window)
    parity = free_involution_parity_gate(e2.fiber.dims)
    if not parity:
        report.scenarios.append(Scenario((), PRUNED, "ParityObstruction", parity.reason, (e2,)))
        return report
    search = _Search(n, max_branches)
    search.descend(e2, (), (e2,))
    report.scenarios = search.leaves
    return report


@dataclass
class BranchReport:
    case: str
    m: int
    scenarios: list[Scenario]

    @property
    def status(self) -> str:
        return SURVIVED if any(s.survived for s in self.scenarios) else PRUNED

    @property
    def reasons(self) -> list[str]:
        return sorted({s.reason for s in self.scenarios if not s.survived})

    @property
    def reason(self) -> str | None:
        """The pruning reason when every leaf below the case was cut for the same reason."""
        if self.status == SURVIVED or len(self.reasons) != 1:
            return None
        return self.reasons[0]

    @property
    def survivors(self) -> list[Scenario]:
        return [s for s in self.scenarios if s.survived]


def replay_paper_case(case_id: str, m: int, window: Window | None = None) -> BranchReport:
    """Run one of the three nonzero ``d_2`` patterns on the lens fibre and search below it.

    ``a``: ``d_2(1⊗v) = t^2⊗1``, ``d_2(1⊗w) = t^2⊗v``;
    ``b``: ``d_2(1⊗v) = t^2⊗1``, ``d_2(1⊗w) = 0``;
    ``c``: ``d_2(1⊗v) = 0``, ``d_2(1⊗w) = t^2⊗v``.
    """
    key = str(case_id).strip().lower()
    if key not in D2_CASES:
        raise InvalidCase(f"unknown case {case_id!r}; expected one of a, b, c")
    e2 = _root(lens_mod2(m), window, False)
    by_label = {g.label: i for i, g in enumerate(e2.generators)}
    images = [0] * len(e2.generators)
    for name, img in zip(("1⊗v", "1⊗w"), D2_CASES[key]):
        images[by_label[name]] = img
    assign = DifferentialAssignment(2, tuple(images))
    search = _Search(e2.fiber.top, 10**6)
    search.apply(e2, assign, (), (e2,))
    return BranchReport(key, m, search.leaves)


def _zero_pages(page: Page) -> Iterator[Page]:
    yield page
    while not is_stable(page):
        page = page.advanced()
        yield page


def all_zero_scenario(fiber: Presentation, window: Window | None = None) -> Scenario:
    """The branch where every differential vanishes, judged by the freeness gate only."""
    e2 = build_E2(fiber, window, assume_trivial_action=True)
    pages = tuple(_zero_pages(e2))
    einf = pages[-1]
    totals = tuple(total_dims(einf, einf.window.reliable_degree))
    gate = freeness_gate(einf, e2.fiber.top)
    if gate:
        return Scenario((), SURVIVED, None, None, pages, totals)
    return Scenario((), PRUNED, "FreenessViolation", gate.reason, pages, totals)

