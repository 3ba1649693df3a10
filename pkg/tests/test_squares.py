import math
import random

import pytest

from quatram.localfield import indistinguishable
from quatram.squares import (class_dim, class_from_vector, decompose_against,
                             defect, is_square, one_plus_4lambda,
                             same_square_class, sqrt_element,
                             square_class_vector)

INF = math.inf


def test_q2_defects(Q2):
    # frozen against plain-integer brute force over Z/2^6
    expected = {1: INF, 3: 1, 5: 2, 7: 1, -1: 1, 17: INF, 2: 0, 6: 0, 9: INF}
    for n, want in expected.items():
        assert defect(Q2.from_int(n)).value == want, n


def test_defect_witness_attains(Q2i):
    rng = random.Random(5)
    R = Q2i.residue_field
    for _ in range(40):
        u = Q2i.one()
        for i in range(1, 7):
            if rng.randrange(2):
                u = u * (Q2i.one() + Q2i.teich(R.one()) * Q2i.pi_pow(i))
        d = defect(u)
        if d.value == INF:
            assert indistinguishable(sqrt_element(u) ** 2, u)
        else:
            assert (d.witness ** 2 * u - Q2i.one()).valuation() == d.value


def test_defect_level_shape(EF2I):
    """A unit's defect is 0, odd below 2e, exactly 2e, or infinite."""
    rng = random.Random(6)
    e = EF2I.e_abs
    R = EF2I.residue_field
    for _ in range(40):
        u = EF2I.teich(R.elem(rng.randrange(1, R.q)))
        for i in range(1, 8):
            bits = rng.randrange(R.q)
            if bits:
                u = u * (EF2I.one() + EF2I.teich(R.elem(bits)) * EF2I.pi_pow(i))
        d = defect(u).value
        assert d == INF or d == 2 * e or (0 < d < 2 * e and d % 2 == 1)


def test_class_vector_round_trip(EF2I):
    dim = class_dim(EF2I)
    assert dim == EF2I.e_abs * EF2I.f_abs + 2
    rng = random.Random(7)
    for _ in range(20):
        vec = [rng.randrange(2) for _ in range(dim)]
        u = class_from_vector(EF2I, vec)
        assert list(square_class_vector(u)) == vec


def test_class_vector_is_homomorphism(Q2i):
    dim = class_dim(Q2i)
    rng = random.Random(8)
    for _ in range(20):
        a = class_from_vector(Q2i, [rng.randrange(2) for _ in range(dim)])
        b = class_from_vector(Q2i, [rng.randrange(2) for _ in range(dim)])
        va, vb = square_class_vector(a), square_class_vector(b)
        vab = square_class_vector(a * b)
        assert all((x + y) % 2 == z for x, y, z in zip(va, vb, vab))
        assert same_square_class(a * b * b, a)


def test_square_class_of_squares(Q2):
    for n in (1, 9, 25, 4, 36):
        assert is_square(Q2.from_int(n))
        assert not any(square_class_vector(Q2.from_int(n)))
    assert not is_square(Q2.from_int(3))


def test_lambda_class(EF2I):
    lam = one_plus_4lambda(EF2I)
    assert defect(lam).value == 2 * EF2I.e_abs
    vec = square_class_vector(lam)
    assert vec[-1] == 1 and not any(vec[:-1])


def test_decompose_against_round_trip(EF2I):
    rng = random.Random(9)
    R = EF2I.residue_field
    e = EF2I.e_abs
    for _ in range(15):
        b = rng.choice([1, 3])
        beta = EF2I.teich(R.elem(rng.randrange(1, R.q))) * EF2I.pi_pow(2 * e - b)
        om = EF2I.teich(R.elem(rng.randrange(2, R.q)))
        v = EF2I.one() + om * om * beta
        if rng.randrange(2):
            v = v * one_plus_4lambda(EF2I)
        nf = decompose_against(v, beta)
        form = EF2I.one() + nf.mu * nf.mu * beta
        if nf.lam_bit:
            form = form * one_plus_4lambda(EF2I)
        assert same_square_class(form, v)
        assert nf.mu.residue().bits == om.residue().bits
