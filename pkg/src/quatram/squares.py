"""Quadratic defect, square classes, and square roots.

For a unit u of a dyadic field F with e = e_abs(F), the quadratic defect is
the largest v_F(k^2 u - 1) over k in F*.  Its possible values are the odd
integers in (0, 2e), the value 2e (the 1 + 4*lambda class with lambda of
residue trace one), and infinity (squares).  Elements of odd valuation have
defect 0.

F*/(F*)^2 is an F_2-space of dimension e*f + 2 with basis
    pi,  1 + t^j pi^(2n-1) (n = 1..e, j = 0..f-1),  1 + 4*lambda
where t is the residue generator and lambda the canonical trace-one residue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, HypothesisViolation, PrecisionExhausted
from .localfield import FieldElem, TowerField

INF = math.inf


@dataclass
class Defect:
    """Defect value together with a maximizing witness k."""
    value: int | float
    witness: FieldElem


def _leading_residue(w: FieldElem, d: int):
    return (w * w.field.pi_inv() ** d).residue()


def _two_unit_residue(F: TowerField):
    """Residue of the unit part of 2."""
    return (F.from_int(2) * F.pi_inv() ** F.e_abs).residue()


def _canonical_lambda(F: TowerField) -> FieldElem:
    return F.teich(F.residue_field.trace_one())


def one_plus_4lambda(F: TowerField) -> FieldElem:
    """Canonical representative of the unramified square class."""
    return F.one() + 4 * _canonical_lambda(F)


def defect(u: FieldElem) -> Defect:
    """Quadratic defect of u with witness; Defect(INF, k) when u = k^-2."""
    F = u.field
    v = u.val_or_inf()
    if v == INF:
        raise DomainError("defect of zero")
    if v % 2 == 1:
        return Defect(0, F.one())
    k = F.pi_inv() ** (v // 2) if v else F.one()
    u = u * k * k if v else u
    e2 = 2 * F.e_abs
    rf = F.residue_field
    # kill the Teichmueller part: residues are squares since |k*| is odd
    r = u.residue()
    t = F.teich(r.sqrt().inverse())
    k = k * t
    u = u * t * t
    while True:
        w = u - 1
        if w.is_zero_data():
            return Defect(INF, k)
        try:
            d = w.valuation()
        except PrecisionExhausted:
            return Defect(INF, k)
        if d % 2 == 1 and d < e2:
            return Defect(d, k)
        if d < e2:  # even: strip the square factor (1 + c pi^{d/2})^2
            c = F.teich(_leading_residue(w, d).sqrt())
            g = (F.one() + c * F.pi() ** (d // 2)).inverse()
        elif d == e2:
            lam = _leading_residue(w, e2) * _two_unit_residue(F).inverse() ** 2
            if lam.trace() == 1:
                return Defect(e2, k)
            c = F.teich(rf.artin_schreier_root(lam))
            g = (F.one() + 2 * c).inverse()
        else:  # d > 2e: strip via the dominant 2z term of (1+z)^2
            c = F.teich(_leading_residue(w, d) * _two_unit_residue(F).inverse())
            g = (F.one() + c * F.pi() ** (d - F.e_abs)).inverse()
        k = k * g
        u = u * g * g


def is_square(u: FieldElem) -> bool:
    v = u.val_or_inf()
    if v == INF:
        raise DomainError("zero has no square class")
    return v % 2 == 0 and defect(u).value == INF


def sqrt_element(u: FieldElem) -> FieldElem:
    """Exact square root of a square element."""
    d = defect(u)
    if d.value != INF:
        raise DomainError("element is not a square")
    return d.witness.inverse()


def class_dim(F: TowerField) -> int:
    return F.e_abs * F.f_abs + 2


def basis_element(F: TowerField, idx: int) -> FieldElem:
    """The idx-th basis vector of F*/(F*)^2: pi first, then the one-units
    1 + t^j pi^(2n-1) ordered by (n, j), then 1 + 4*lambda last."""
    e, f = F.e_abs, F.f_abs
    if idx == 0:
        return F.pi()
    if idx == class_dim(F) - 1:
        return one_plus_4lambda(F)
    n, j = divmod(idx - 1, f)
    t = F.residue_field.gen() if f > 1 else F.residue_field.one()
    a = F.teich(t ** j) if f > 1 else F.teich(F.residue_field.one())
    return F.one() + a * F.pi() ** (2 * n + 1)


def _residue_basis_bits(r) -> list[int]:
    return [j for j in range(r.field.f) if (r.bits >> j) & 1]


def square_class_vector(u: FieldElem) -> tuple[int, ...]:
    """Coordinates of the square class of u over the Hasse basis."""
    F = u.field
    e, f = F.e_abs, F.f_abs
    e2 = 2 * e
    rf = F.residue_field
    v = u.val_or_inf()
    if v == INF:
        raise DomainError("zero has no square class")
    pi_bit = v % 2
    u = u * F.pi_inv() ** v
    vec = [0] * class_dim(F)
    vec[0] = pi_bit
    r = u.residue()
    t = F.teich(r.sqrt().inverse())
    u = u * t * t
    while True:
        w = u - 1
        if w.is_zero_data():
            return tuple(vec)
        try:
            d = w.valuation()
        except PrecisionExhausted:
            return tuple(vec)
        if d % 2 == 1 and d < e2:
            lr = _leading_residue(w, d)
            n = (d + 1) // 2
            g = F.one()
            for j in _residue_basis_bits(lr):
                vec[1 + (n - 1) * f + j] ^= 1
                tj = rf.elem(1 << j)
                g = g * (F.one() + F.teich(tj) * F.pi() ** d)
            u = u * g.inverse()
        elif d < e2:
            c = F.teich(_leading_residue(w, d).sqrt())
            g = (F.one() + c * F.pi() ** (d // 2)).inverse()
            u = u * g * g
        elif d == e2:
            lam = _leading_residue(w, e2) * _two_unit_residue(F).inverse() ** 2
            if lam.trace() == 1:
                vec[-1] ^= 1
                u = u * one_plus_4lambda(F).inverse()
            else:
                c = F.teich(rf.artin_schreier_root(lam))
                g = (F.one() + 2 * c).inverse()
                u = u * g * g
        else:
            c = F.teich(_leading_residue(w, d) * _two_unit_residue(F).inverse())
            g = (F.one() + c * F.pi() ** (d - F.e_abs)).inverse()
            u = u * g * g


def class_from_vector(F: TowerField, vec) -> FieldElem:
    s = F.one()
    for i, bit in enumerate(vec):
        if bit:
            s = s * basis_element(F, i)
    return s


def same_square_class(a: FieldElem, b: FieldElem) -> bool:
    return is_square(a * b.inverse())


@dataclass
class UnitNormalForm:
    """v ~ (1 + mu^2 * beta) * (1 + 4*lambda)^lam_bit modulo squares."""
    mu: FieldElem
    lam_bit: int
    witness: FieldElem  # square-strip accumulator: witness^2 * v = exact form


def decompose_against(v: FieldElem, beta: FieldElem) -> UnitNormalForm:
    """Write the class of the unit v as (1 + mu^2 beta)(1 + 4 lambda)^eps.

    Requires v_F(beta) odd and every odd defect level of v to sit at
    v(beta) + 2j for some j >= 0; otherwise HypothesisViolation.
    """
    F = v.field
    e2 = 2 * F.e_abs
    rf = F.residue_field
    if v.val_or_inf() != 0:
        raise DomainError("normal form needs a unit")
    vb = beta.valuation()
    if vb % 2 == 0 or vb <= 0 or vb >= e2:
        raise DomainError("beta must have odd valuation in (0, 2e)")
    rb = _leading_residue(beta, vb)
    mu = F.zero()
    lam_bit = 0
    witness = F.teich(v.residue().sqrt().inverse())
    while True:
        form = F.one() + mu * mu * beta
        if lam_bit:
            form = form * one_plus_4lambda(F)
        w = witness * witness * v * form.inverse() - 1
        if w.is_zero_data():
            return UnitNormalForm(mu, lam_bit, witness)
        try:
            d = w.valuation()
        except PrecisionExhausted:
            return UnitNormalForm(mu, lam_bit, witness)
        if d % 2 == 1 and d < e2:
            if d < vb:
                raise HypothesisViolation(
                    f"odd level {d} below v(beta) = {vb}")
            j = (d - vb) // 2
            c = (_leading_residue(w, d) * rb.inverse()).sqrt()
            mu = mu + F.teich(c) * F.pi() ** j
        elif d < e2:
            c = F.teich(_leading_residue(w, d).sqrt())
            g = (F.one() + c * F.pi() ** (d // 2)).inverse()
            witness = witness * g
        elif d == e2:
            lam = _leading_residue(w, e2) * _two_unit_residue(F).inverse() ** 2
            if lam.trace() == 1:
                if lam_bit:
                    raise AssertionError("lambda level revisited")
                lam_bit = 1
            else:
                c = F.teich(rf.artin_schreier_root(lam))
                witness = witness * (F.one() + 2 * c).inverse()
        else:
            c = F.teich(_leading_residue(w, d) * _two_unit_residue(F).inverse())
            g = (F.one() + c * F.pi() ** (d - F.e_abs)).inverse()
            witness = witness * g
