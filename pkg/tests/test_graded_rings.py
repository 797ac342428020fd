import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_poincare, register
from orbitcoh.errors import DegreeOverflow, InvalidParam
from orbitcoh.graded_rings import (
    UNBOUNDED,
    Presentation,
    classifying_space_z2,
    compute_basis,
    euler_char,
    free_involution_parity_gate,
    integral_homology_lens,
    lens_mod2,
    nilpotency_order,
    parse_presentation,
    poincare,
    real_projective,
    sphere,
    standard_space,
)

FAMILY3 = "ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^3 + x^2*y) cap 11"


def test_standard_space_dims():
    assert poincare(register(sphere(3))) == [1, 0, 0, 1]
    assert poincare(register(real_projective(4))) == [1] * 5
    assert poincare(register(lens_mod2(3))) == [1] * 6
    assert poincare(register(classifying_space_z2(5))) == [1] * 6
    assert standard_space("lens", 2) == lens_mod2(2)
    with pytest.raises(InvalidParam):
        standard_space("torus", 2)


def test_family3_poincare_and_relations():
    p = register(parse_presentation(FAMILY3))
    assert poincare(p) == [1, 2, 2, 1] * 3
    ring = compute_basis(p)
    x, y = ring.gen("x"), ring.gen("y")
    assert x * x * y == x**3
    assert nilpotency_order(x) == 4
    assert nilpotency_order(y) == 2


def test_text_round_trip():
    for p in (sphere(5), lens_mod2(4), parse_presentation(FAMILY3)):
        assert parse_presentation(p.to_text()) == p


def test_parse_rejects_garbage():
    with pytest.raises(InvalidParam):
        parse_presentation("ring F2[x:1]/(y^2) cap 3")
    with pytest.raises(InvalidParam):
        parse_presentation("polynomials please")


def test_inhomogeneous_relation_rejected():
    with pytest.raises(InvalidParam):
        Presentation.build([("x", 1), ("y", 2)], [[(2, 0), (0, 2)]], 4)


def test_cup_overflow():
    ring = compute_basis(lens_mod2(2))
    w = ring.gen("w")
    with pytest.raises(DegreeOverflow):
        w * w * w


def test_lens_ring_structure():
    ring = compute_basis(register(lens_mod2(4)))
    v, w = ring.gen("v"), ring.gen("w")
    assert (v * v).is_zero()
    assert not (v * w**3).is_zero()
    # w^4 sits in degree 8, beyond the default cap of 7
    assert nilpotency_order(w) is UNBOUNDED
    assert nilpotency_order(compute_basis(lens_mod2(4, cap=9)).gen("w")) == 4
    assert nilpotency_order(compute_basis(classifying_space_z2(6)).gen("t")) is UNBOUNDED


def test_parity_gate():
    assert not free_involution_parity_gate(poincare(real_projective(4)))
    assert free_involution_parity_gate(poincare(real_projective(5)))
    assert euler_char([1, 0, 1]) == 2
    for m in range(1, 6):
        assert not free_involution_parity_gate([1] * (2 * m + 1))


def test_integral_homology_lens():
    assert integral_homology_lens(4, 2) == ["Z", "Z_4", "0", "Z"]
    assert integral_homology_lens(3, 1) == ["Z", "Z"]


@st.composite
def presentations(draw):
    n = draw(st.integers(1, 3))
    degs = draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    names = ["a", "b", "c"][:n]
    rels = []
    for _ in range(draw(st.integers(0, 3))):
        exps = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
        if sum(exps) == 0:
            continue
        rel = [tuple(exps)]
        # optionally a second term of the same degree
        d = sum(e * g for e, g in zip(exps, degs))
        others = [
            e
            for e in itertools.product(range(4), repeat=n)
            if sum(x * g for x, g in zip(e, degs)) == d and e != tuple(exps)
        ]
        if others and draw(st.booleans()):
            rel.append(draw(st.sampled_from(others)))
        rels.append(rel)
    cap = draw(st.integers(0, 7))
    return Presentation.build(list(zip(names, degs)), rels, cap)


@settings(max_examples=120, deadline=None)
@given(presentations())
def test_poincare_matches_span_oracle(p):
    brute = brute_force_poincare(p)
    got = poincare(p)
    for d, b in enumerate(brute):
        if b is not None:
            assert got[d] == b, (p.to_text(), d)


@settings(max_examples=60, deadline=None)
@given(presentations())
def test_cup_is_commutative_and_associative(p):
    ring = compute_basis(p)
    elems = [ring.from_vector(d, 1 << i) for d in range(1, p.degree_cap + 1) for i in range(len(ring.basis[d]))][:6]
    for a in elems:
        for b in elems:
            if a.degree + b.degree > p.degree_cap:
                continue
            assert a * b == b * a
            for c in elems:
                if a.degree + b.degree + c.degree <= p.degree_cap:
                    assert (a * b) * c == a * (b * c)
