import pytest
from hypothesis import given, strategies as st

from quatram.errors import DomainError
from quatram.residue import ResidueField, default_modulus, trace


def field(f):
    return ResidueField(f, default_modulus(f))


def test_trace_examples():
    F1 = field(1)
    assert trace(F1.one()) == 1
    assert trace(F1.zero()) == 0
    F2 = field(2)
    assert trace(F2.gen()) == 1


def test_trace_counts_half():
    for f in (1, 2, 3, 4):
        F = field(f)
        assert sum(trace(a) for a in F.elements()) == F.q // 2


def test_cube_roots():
    F2 = field(2)
    t = F2.gen()
    assert t.is_cube_root_of_unity()
    assert (t + F2.one()).is_cube_root_of_unity()
    F3 = field(3)
    assert not any(a.is_cube_root_of_unity()
                   for a in F3.elements() if a.bits > 1)
    F4 = field(4)
    # an element of multiplicative order five
    fives = [a for a in F4.elements() if a.bits > 1 and a.order() == 5]
    assert fives and not fives[0].is_cube_root_of_unity()
    with pytest.raises(DomainError):
        F2.one().is_cube_root_of_unity()


def test_omega_class_partition():
    for f in (2, 3, 4):
        F = field(f)
        nontrivial = [a for a in F.elements() if a.bits > 1]
        reps = {a.omega_class_canonical().bits for a in nontrivial}
        assert len(reps) == (F.q - 2) // 2
        for a in nontrivial:
            assert a.omega_class_canonical() == \
                (a + F.one()).omega_class_canonical()
            assert a.omega_class_canonical() in (a, a + F.one())


def test_cube_root_invariant_under_shift():
    F = field(4)
    for a in F.elements():
        if a.bits <= 1 or (a + F.one()).bits <= 1:
            continue
        assert a.is_cube_root_of_unity() == \
            (a + F.one()).is_cube_root_of_unity()


@given(st.integers(1, 5), st.data())
def test_field_axioms(f, data):
    F = field(f)
    draw = lambda: F.elem(data.draw(st.integers(0, F.q - 1)))
    a, b, c = draw(), draw(), draw()
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a.bits:
        assert (a ** (F.q - 1)).bits == 1
        assert (a * a.inverse()).bits == 1
        assert (F.q - 1) % a.order() == 0


@given(st.integers(1, 5), st.data())
def test_trace_additive_and_sqrt(f, data):
    F = field(f)
    a = F.elem(data.draw(st.integers(0, F.q - 1)))
    b = F.elem(data.draw(st.integers(0, F.q - 1)))
    assert trace(a + b) == (trace(a) + trace(b)) % 2
    assert a.sqrt() * a.sqrt() == a


def test_artin_schreier_root():
    for f in (1, 2, 3, 4):
        F = field(f)
        for a in F.elements():
            if trace(a) == 0:
                z = F.artin_schreier_root(a)
                assert z * z + z == a
