import random

import pytest

from quatram.errors import (IsSquare, NotEisenstein, PrecisionExhausted,
                            UnramifiedSubextension)
from quatram.localfield import (adjoin_sqrt, galois_conjugate,
                                indistinguishable, make_base_field)


def test_make_base_field_shapes(Q2, Q2i, EF2I):
    assert (Q2.e_abs, Q2.f_abs) == (1, 1)
    assert (Q2i.e_abs, Q2i.f_abs) == (2, 1)
    assert (EF2I.e_abs, EF2I.f_abs) == (2, 2)


def test_not_eisenstein():
    with pytest.raises(NotEisenstein):
        make_base_field(1, 2, eis=(1, 2))      # unit constant term
    with pytest.raises(NotEisenstein):
        make_base_field(1, 2, eis=(4, 2))      # constant term v = 2


def test_basic_arithmetic_valuations(Q2i):
    pi = Q2i.pi()
    assert pi.valuation() == 1
    assert (pi * pi).valuation() == 2
    assert Q2i.from_int(2).valuation() == 2
    assert Q2i.from_int(6).valuation() == 2
    assert (pi + pi).valuation() == 3          # 2 pi
    assert (pi ** -3).valuation() == -3
    assert indistinguishable(pi * pi.inverse(), Q2i.one())


def test_random_ring_identities(EF2I):
    rng = random.Random(11)
    R = EF2I.residue_field
    def rand():
        s = EF2I.zero()
        for i in range(6):
            bits = rng.randrange(R.q)
            if bits:
                s = s + EF2I.teich(R.elem(bits)) * EF2I.pi_pow(i)
        return s
    for _ in range(25):
        a, b, c = rand(), rand(), rand()
        assert indistinguishable(a * (b + c), a * b + a * c)
        va, vb = a.val_or_inf(), b.val_or_inf()
        if va < EF2I.cap_abs / 2 and vb < EF2I.cap_abs / 2:
            assert (a * b).valuation() == va + vb
        if va == 0:
            assert indistinguishable(a * a.inverse(), EF2I.one())


def test_teichmuller_is_frobenius_fixed(EF2I):
    R = EF2I.residue_field
    for bits in range(1, R.q):
        t = EF2I.teich(R.elem(bits))
        assert indistinguishable(t ** R.q, t)
        assert t.residue().bits == bits


def test_embedding_tower(Q2i):
    L = adjoin_sqrt(Q2i, Q2i.one() + Q2i.pi())
    M = adjoin_sqrt(L, L.embed(Q2i.pi()))
    x = Q2i.from_int(7) + Q2i.pi_pow(3)
    assert M.embed(x).valuation() == 4 * x.valuation()
    assert L.embed(x).valuation() == 2 * x.valuation()


def test_galois_conjugation(Q2i):
    L = adjoin_sqrt(Q2i, Q2i.one() + Q2i.pi())
    g = L.gen()
    assert indistinguishable(galois_conjugate(g, L), -g)
    # conjugation preserves valuation and fixes the base
    rng = random.Random(3)
    for _ in range(10):
        s = L.embed(Q2i.from_int(rng.randrange(1, 50))) + \
            g * L.embed(Q2i.from_int(rng.randrange(1, 50)))
        assert galois_conjugate(s, L).valuation() == s.valuation()
    base = L.embed(Q2i.from_int(21))
    assert indistinguishable(galois_conjugate(base, L), base)


def test_norm_of_step_gen(Q2i):
    u = Q2i.one() + Q2i.pi()
    L = adjoin_sqrt(Q2i, u)
    n = L.gen().norm_step()
    assert indistinguishable(n, -L.kappa)


def test_adjoin_sqrt_rejections(Q2i):
    with pytest.raises(IsSquare):
        adjoin_sqrt(Q2i, Q2i.from_int(9))
    lam = Q2i.one() + Q2i.from_int(4)       # 5 = 1 + 4: trace-one class
    with pytest.raises(UnramifiedSubextension):
        adjoin_sqrt(Q2i, lam)


def test_precision_exhaustion(Q2i):
    tiny = Q2i.pi_pow(Q2i.cap_abs + 2)
    with pytest.raises(PrecisionExhausted):
        tiny.valuation()


def test_quadratic_step_break_parities(Q2i):
    # prime kind: odd-valuation kappa
    P = adjoin_sqrt(Q2i, Q2i.pi())
    assert P.e_abs == 2 * Q2i.e_abs
    assert P.pi().valuation() == 1
    assert indistinguishable(P.pi_pow(2), P.embed(Q2i.pi()) *
                             (P.pi_pow(2) * P.embed(Q2i.pi_inv())))
    # unit kind
    U = adjoin_sqrt(Q2i, Q2i.one() + Q2i.pi() ** 3)
    assert U.e_abs == 2 * Q2i.e_abs
    assert U.pi().valuation() == 1
