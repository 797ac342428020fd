"""Shared fixtures: a brute-force Poincare oracle and the acceptance summary."""

from __future__ import annotations

import itertools

import pytest
import sympy

from orbitcoh.graded_rings import Presentation

# Every presentation a test builds is registered here, so the oracle check can
# cover all of them.
USED_PRESENTATIONS: dict[str, Presentation] = {}

ACCEPTANCE_LINES: dict[int, str] = {}


def register(p: Presentation) -> Presentation:
    USED_PRESENTATIONS[p.to_text()] = p
    return p


def _monomials(degs, d):
    return [
        e
        for e in itertools.product(*[range(d // g + 1) for g in degs])
        if sum(x * g for x, g in zip(e, degs)) == d
    ]


def brute_force_poincare(p: Presentation, max_ideal_span: int = 1 << 16) -> list[int | None]:
    """Quotient dimensions by enumerating the whole span of the relation ideal.

    No elimination: the ideal in degree ``d`` is closed up under XOR as a set
    of monomial sets, and its size is ``2**dim``.  Degrees whose span would
    exceed ``max_ideal_span`` elements are reported as ``None``.
    """
    degs = p.gen_degrees
    out: list[int | None] = []
    for d in range(p.degree_cap + 1):
        monos = _monomials(degs, d)
        gens = set()
        for rel in p.relations:
            rd = p.degree(next(iter(rel)))
            if rd > d:
                continue
            for shift in _monomials(degs, d - rd):
                gens.add(frozenset(tuple(a + b for a, b in zip(term, shift)) for term in rel))
        span = {frozenset()}
        for g in gens:
            if g in span:
                continue
            if 2 * len(span) > max_ideal_span:
                span = None
                break
            span |= {s ^ g for s in span}
        out.append(None if span is None else len(monos) - (len(span).bit_length() - 1))
    return out


def groebner_poincare(p: Presentation) -> list[int]:
    """Quotient dimensions by counting standard monomials of a Groebner basis over GF(2)."""
    gens = sympy.symbols(" ".join(p.names) + " _pad")[: len(p.names)]
    polys = []
    for rel in p.relations:
        polys.append(sum(sympy.prod(g**e for g, e in zip(gens, term)) for term in rel))
    leads = []
    if polys:
        basis = sympy.groebner(polys, *gens, modulus=2, order="grevlex")
        for g in basis.exprs:
            lm = sympy.Poly(sympy.LM(g, *gens, order="grevlex"), *gens)
            leads.append(lm.monoms()[0])
    out = []
    for d in range(p.degree_cap + 1):
        standard = [
            e for e in _monomials(p.gen_degrees, d) if not any(all(a >= b for a, b in zip(e, lt)) for lt in leads)
        ]
        out.append(len(standard))
    return out


@pytest.fixture
def poincare_oracle():
    return groebner_poincare


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
