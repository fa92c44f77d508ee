import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3moduli import orders
from k3moduli.classgroup import class_group
from k3moduli.errors import BadConductor, BadDiscriminant, DegenerateLattice, FieldMismatch
from k3moduli.orders import (
    QuadOrder,
    compose_general,
    contains,
    form_to_ideal,
    ideal_lattice,
    ideal_to_form,
    multiply,
    order_of_disc,
    reduction_map,
)
from k3moduli.qforms import compose, form_class, inverse, principal_class

from conftest import valid_discs


@pytest.mark.parametrize(
    "d,d_k,f",
    [(-23, -23, 1), (-92, -23, 2), (-16, -4, 2), (-4, -4, 1), (-207, -23, 3), (-75, -3, 5)],
)
def test_order_of_disc(d, d_k, f):
    order = order_of_disc(d)
    assert (order.d_k, order.f) == (d_k, f)
    assert order.disc == d
    assert orders.is_fundamental(order.d_k)


@pytest.mark.parametrize("d", [-5, -6, 0, 9])
def test_order_of_disc_rejects(d):
    with pytest.raises(BadDiscriminant):
        order_of_disc(d)


def test_form_to_ideal_examples():
    # principal class of -4: the Gaussian integers up to scale
    l1 = form_to_ideal(form_class(1, 0, 1))
    assert l1.order == QuadOrder(-4, 1)
    assert ideal_to_form(l1) == form_class(1, 0, 1)

    l2 = form_to_ideal(form_class(2, 1, 3))
    assert l2.order == QuadOrder(-23, 1)
    assert ideal_to_form(l2) == form_class(2, 1, 3)

    l3 = form_to_ideal(form_class(3, 2, 5))
    assert l3.order == QuadOrder(-56, 1)
    assert ideal_to_form(l3) == form_class(3, 2, 5)


def test_ideal_to_form_examples():
    # <1, (1+sqrt(-23))/2> is the full maximal order: principal class
    full = ideal_lattice(-23, ((2, 0), (1, 1)), 2)
    assert full.order.f == 1
    assert ideal_to_form(full) == form_class(1, 1, 6)
    # <2, sqrt(-56)/2>
    half = ideal_lattice(-56, ((4, 0), (0, 1)), 2)
    assert ideal_to_form(half) == form_class(2, 0, 7)


def test_ideal_to_form_degenerate():
    with pytest.raises(DegenerateLattice):
        ideal_lattice(-23, ((2, 0), (4, 0)), 1)


def test_round_trip_all_classes_small():
    for d in valid_discs(400):
        for cls in class_group(d).classes:
            lattice = form_to_ideal(cls)
            assert lattice.order.disc == d
            assert ideal_to_form(lattice) == cls


def test_multiply_identity_with_maximal_order():
    ok = ideal_lattice(-23, ((2, 0), (1, 1)), 2)  # O_K for d_K = -23
    for cls in class_group(-23).classes:
        lattice = form_to_ideal(cls)
        assert ideal_to_form(multiply(lattice, ok)) == cls


def test_multiply_inverse_pair():
    l1 = form_to_ideal(form_class(2, 1, 3))
    l2 = form_to_ideal(form_class(2, -1, 3))
    assert ideal_to_form(multiply(l1, l2)) == form_class(1, 1, 6)


def test_multiply_conductor_gcd():
    # proper O_{K,2}-ideal times proper O_{K,3}-ideal for d_K = -23
    c92 = class_group(-92).classes[1]
    c207 = class_group(-207).classes[1]
    prod = multiply(form_to_ideal(c92), form_to_ideal(c207))
    assert prod.order == QuadOrder(-23, 1)


def test_multiplier_ring_is_exact():
    # f*w_K maps the lattice into itself, (f/p)*w_K does not
    for cls in [form_class(3, 2, 8), form_class(1, 0, 23), form_class(9, 6, 10)]:
        lattice = form_to_ideal(cls)
        f = lattice.order.f
        d_k = lattice.order.d_k
        for x, y in lattice.gens:
            # w_K*(x + y*sqrt(d)) over den 2: (d(x+y), x+dy)
            num = (d_k * (x + y) * f, (x + d_k * y) * f)
            assert contains(lattice, num, 2 * lattice.den)
        if f > 1:
            p = next(p for p in (2, 3, 5, 7) if f % p == 0)
            bad = f // p
            hits = [
                contains(
                    lattice,
                    (d_k * (x + y) * bad, (x + d_k * y) * bad),
                    2 * lattice.den,
                )
                for x, y in lattice.gens
            ]
            assert not all(hits)


def test_compose_general_identity():
    for d in (-23, -56, -92):
        for x in class_group(d).classes:
            assert compose_general(x, principal_class(d)) == x


def test_compose_general_matches_compose():
    for d in valid_discs(250):
        classes = class_group(d).classes
        for x in classes:
            for y in classes:
                assert compose_general(x, y) == compose(x, y)


def test_compose_general_cross_conductor():
    got = compose_general(form_class(3, 0, 5), form_class(1, 1, 4))
    assert got == form_class(2, 1, 2)
    assert got.disc == -15
    # agrees with same-discriminant composition after reduction
    assert compose_general(form_class(2, 1, 3), form_class(2, 1, 3)) == form_class(2, -1, 3)


def test_compose_general_field_mismatch():
    with pytest.raises(FieldMismatch):
        compose_general(form_class(1, 1, 6), form_class(1, 0, 1))


def test_reduction_map_examples():
    assert reduction_map(principal_class(-60), 1) == principal_class(-15)
    assert reduction_map(form_class(3, 0, 5), 1) == form_class(2, 1, 2)
    image = {reduction_map(c, 1) for c in class_group(-92).classes}
    assert image == set(class_group(-23).classes)  # surjective, h(-92) = 3
    assert reduction_map(form_class(3, 2, 8), 2) == form_class(3, 2, 8)  # identity at f' = f


def test_reduction_map_bad_conductor():
    with pytest.raises(BadConductor):
        reduction_map(form_class(3, 0, 5), 4)
    with pytest.raises(BadConductor):
        reduction_map(form_class(3, 0, 5), 0)


FUNDAMENTALS = (-3, -4, -7, -8, -15, -23)


def test_reduction_map_is_homomorphism_small():
    for d_k in FUNDAMENTALS:
        for f in (2, 3, 4):
            d = f * f * d_k
            classes = class_group(d).classes
            for f0 in (1, f):
                if f % f0:
                    continue
                for x in classes:
                    for y in classes:
                        lhs = reduction_map(compose(x, y), f0)
                        rhs = compose(reduction_map(x, f0), reduction_map(y, f0))
                        assert lhs == rhs


def test_reduction_compatibility_small():
    # acting through the reduction equals acting by generalized composition
    for d_k in (-3, -4, -23):
        for f in (2, 3):
            d = f * f * d_k
            for g in class_group(d).classes:
                for q in class_group(d_k).classes:
                    direct = compose_general(inverse(g), q)
                    through = compose(inverse(reduction_map(g, 1)), q)
                    assert direct == through


def test_multiply_commutative_associative_sampled():
    classes = class_group(-231).classes  # h = 12
    sample = classes[:4]
    for x, y in itertools.product(sample, repeat=2):
        lx, ly = form_to_ideal(x), form_to_ideal(y)
        assert ideal_to_form(multiply(lx, ly)) == ideal_to_form(multiply(ly, lx))
    for x, y, z in itertools.product(sample, repeat=3):
        lx, ly, lz = form_to_ideal(x), form_to_ideal(y), form_to_ideal(z)
        left = multiply(multiply(lx, ly), lz)
        right = multiply(lx, multiply(ly, lz))
        assert ideal_to_form(left) == ideal_to_form(right)


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(valid_discs(200)), st.data())
def test_round_trip_hypothesis(d, data):
    classes = class_group(d).classes
    cls = data.draw(st.sampled_from(list(classes)))
    assert ideal_to_form(form_to_ideal(cls)) == cls


def test_gens_linearly_independent():
    for cls in class_group(-84).classes:
        (x1, y1), (x2, y2) = form_to_ideal(cls).gens
        assert x1 * y2 - y1 * x2 != 0
