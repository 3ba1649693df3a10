import random

import pytest

from quatram.errors import NotANorm
from quatram.localfield import adjoin_sqrt, indistinguishable
from quatram.selftest import (Q2_CLASS_REPS, brute_defect_q2,
                              brute_isotropic_q2)
from quatram.squares import class_dim, class_from_vector, is_square
from quatram.symbols import hilbert_symbol, is_norm, solve_norm_equation

# classical multiplication table facts, frozen
Q2_SYMBOL_FACTS = [
    (2, 7, 1), (2, 3, -1), (5, 2, -1), (5, 5, 1), (3, 3, -1),
    (-1, -1, -1), (2, 2, 1), (6, 3, 1), (7, 7, -1), (5, 6, -1),
]


def test_frozen_table_entries(Q2):
    for a, b, want in Q2_SYMBOL_FACTS:
        assert hilbert_symbol(Q2.from_int(a), Q2.from_int(b)) == want, (a, b)


def test_full_table_against_brute_force(Q2):
    for a in Q2_CLASS_REPS:
        for b in Q2_CLASS_REPS:
            want = 1 if brute_isotropic_q2(a, b) else -1
            assert hilbert_symbol(Q2.from_int(a), Q2.from_int(b)) == want, (a, b)


def test_symmetry_and_bilinearity(EF2I):
    rng = random.Random(13)
    dim = class_dim(EF2I)
    draw = lambda: class_from_vector(
        EF2I, [rng.randrange(2) for _ in range(dim)])
    for _ in range(25):
        a, b, c = draw(), draw(), draw()
        assert hilbert_symbol(a, b) == hilbert_symbol(b, a)
        assert hilbert_symbol(a * b, c) == \
            hilbert_symbol(a, c) * hilbert_symbol(b, c)
        assert hilbert_symbol(a, a) == hilbert_symbol(a, EF2I.from_int(-1))


def test_nondegenerate(Q2i):
    """Every nontrivial class pairs to -1 with something."""
    dim = class_dim(Q2i)
    reps = [class_from_vector(Q2i, [(m >> i) & 1 for i in range(dim)])
            for m in range(1, 1 << dim)]
    for a in reps:
        assert any(hilbert_symbol(a, b) == -1 for b in reps)


def test_norm_group_index_two(Q2i):
    u = Q2i.one() + Q2i.pi()
    E = adjoin_sqrt(Q2i, u)
    dim = class_dim(Q2i)
    norms = sum(is_norm(E, class_from_vector(
        Q2i, [(m >> i) & 1 for i in range(dim)])) for m in range(1 << dim))
    assert norms == (1 << dim) // 2


def test_solve_norm_equation(EF2I):
    rng = random.Random(14)
    dim = class_dim(EF2I)
    u = EF2I.one() + EF2I.pi() ** 3
    E = adjoin_sqrt(EF2I, u)
    solved = refused = 0
    while solved < 6 or refused < 6:
        c = class_from_vector(EF2I, [rng.randrange(2) for _ in range(dim)])
        if is_square(c):
            continue
        if hilbert_symbol(u, c) == 1:
            eta = solve_norm_equation(E, c)
            assert indistinguishable(eta.norm_step(), c)
            solved += 1
        else:
            with pytest.raises(NotANorm):
                solve_norm_equation(E, c)
            refused += 1


def test_norms_have_symbol_one(Q2i):
    """(u, N(eta)) = 1 for any eta: the defining property of the pairing."""
    rng = random.Random(15)
    u = Q2i.one() + Q2i.pi()
    E = adjoin_sqrt(Q2i, u)
    R = E.residue_field
    for _ in range(15):
        s = E.one()
        for i in range(5):
            bits = rng.randrange(R.q)
            if bits:
                s = s + E.teich(R.elem(bits)) * E.pi_pow(i + 1)
        n = s.norm_step()
        if n.is_zero_data():
            continue
        assert hilbert_symbol(u, n) == 1
