"""Ramification breaks of quadratic and biquadratic extensions.

For E = F(sqrt(kappa)) ramified quadratic, the break of E/F is
b = 2 e_abs(F) - def_F(kappa), equivalently v_E(s(pi_E) - pi_E) - 1 for the
nontrivial s in Gal(E/F); `break_of_step` computes the latter directly as a
cross-check.

A fully ramified biquadratic M = K(sqrt u, sqrt v) has quadratic
subextension breaks {b} (one-break) or {b1, h, h} with b2 = 2h - b1
(two-break; the minority break b1 belongs to a single subextension).  In
the one-break case the pair carries a refined invariant (r, omega): write
u ~ 1 + beta and v ~ (1 + (omega + mu)^2 beta)(1 + 4 lambda)^eps with
v_K(mu) = m > 0; then r = min(4e - b, b + 4m, 2b).  The residue omega is
well defined up to omega -> omega + 1, and omega is never 0 or 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotFullyRamified
from .localfield import (FieldElem, QuadraticField, TowerField, adjoin_sqrt,
                         indistinguishable)
from .residue import ResidueElem
from .squares import decompose_against, defect, is_square, one_plus_4lambda

INF = math.inf


def quad_break(kappa: FieldElem) -> int:
    """Lower break of F(sqrt(kappa))/F; requires a ramified extension."""
    F = kappa.field
    d = defect(kappa).value
    if d == INF:
        raise DomainError("kappa is a square")
    if d == 2 * F.e_abs:
        raise NotFullyRamified("kappa generates the unramified extension")
    return 2 * F.e_abs - d


def break_of_step(E: QuadraticField) -> int:
    """Break measured on the uniformizer: v_E(s(pi_E) - pi_E) - 1."""
    p = E.pi()
    return (p.conj_at(E) - p).valuation() - 1


def check_step_break(E: QuadraticField) -> bool:
    """Cross-check: the Galois-measured break equals 2 e_F - def_F(kappa)."""
    return break_of_step(E) == quad_break(E.kappa_given)


def defect_growth(e_F: int, b: int, x) -> int | float:
    """Defect of a non-square of F inside a ramified quadratic extension
    with break b, as a function of its defect x in F: min(2x + b, x + 2e_F).
    Exact except on the threshold x = 2 e_F - b (a lower bound there)."""
    return min(2 * x + b, x + 2 * e_F)


def check_defect_growth(E: QuadraticField, kappa: FieldElem) -> bool:
    """Verify the defect-growth law for kappa in F off the threshold.
    Returns True (vacuously) when kappa is a square in E or sits on the
    threshold, where only an inequality is asserted."""
    F = E.parent
    b = 2 * F.e_abs - defect(E.kappa_given).value
    dF = defect(kappa).value
    dE = defect(E.embed(kappa)).value
    if dE == INF:
        return True
    if dF == 2 * F.e_abs - b:
        return dE >= 4 * F.e_abs - b
    return dE == defect_growth(F.e_abs, b, dF)


@dataclass
class PairAnalysis:
    """Ramification data of M = K(sqrt u, sqrt v) over K."""
    one_break: bool
    sub_breaks: tuple[int, int, int]  # breaks of K(sqrt u), K(sqrt v), K(sqrt uv)
    breaks: tuple                     # (b,) or (b1, b2), lower numbering of M/K
    minority: str | None              # 'u', 'v' or 'uv' (two-break only)
    refined: int | None               # r (one-break only)
    omega: ResidueElem | None
    m: int | float | None
    lam_bit: int | None
    tag: str                          # '1', '1*' or '2'

    @property
    def omega_class(self):
        return self.omega.omega_class_canonical() if self.omega is not None else None


def analyze_pair(u: FieldElem, v: FieldElem) -> PairAnalysis:
    K = u.field
    v = K.embed(v)
    for s, name in ((u, "u"), (v, "v"), (u * v, "uv")):
        if s.is_zero_data():
            raise DomainError(f"{name} is zero")
        if is_square(s):
            raise DomainError(f"{name} is a square: the group is not (Z/2)^2")
    bu = quad_break(u)
    bv = quad_break(v)
    buv = quad_break(u * v)
    subs = (bu, bv, buv)
    if bu == bv == buv:
        r, omega, m, lam = _one_break_refined(u, v, bu)
        tag = "1*" if omega.is_cube_root_of_unity() else "1"
        return PairAnalysis(True, subs, (bu,), None, r, omega, m, lam, tag)
    vals = sorted(set(subs))
    if len(vals) != 2 or sorted(subs)[1] != sorted(subs)[2]:
        raise AssertionError(f"impossible break multiset {subs}")
    b1, h = vals
    minority = ("u", "v", "uv")[subs.index(b1)]
    return PairAnalysis(False, subs, (b1, 2 * h - b1), minority,
                        None, None, None, None, "2")


def _unit_class_rep(s: FieldElem) -> FieldElem:
    v = s.valuation()
    if v % 2:
        raise DomainError("not a unit class")
    return s * s.field.pi_inv() ** v if v else s


def _one_break_refined(u: FieldElem, v: FieldElem, b: int):
    K = u.field
    L = adjoin_sqrt(K, u)
    beta = L.kappa - 1  # u ~ 1 + beta exactly, v_K(beta) = 2e - b
    nf = decompose_against(_unit_class_rep(v), beta)
    omega = nf.mu.residue()
    if omega.bits in (0, 1):
        raise AssertionError("one-break pair produced omega in {0, 1}")
    rest = nf.mu - K.teich(omega)
    m = rest.val_or_inf()
    e = K.e_abs
    r = min(4 * e - b, 2 * b, b + 4 * m if m != INF else INF)
    return int(r), omega, m, nf.lam_bit


def refined_break_direct(u: FieldElem, v: FieldElem):
    """Galois-action computation of the refined one-break invariant.

    Builds M = K(x, y) with x^2 = 1 + beta and y^2 exactly the normal form
    of v, forms Y with x y Y = 1 + mu~ (x - 1) and rho = 2 / (Y - 1), and
    maximizes v_M((g (1 + a(s-1)) - 1) rho) over Teichmueller lifts a of
    the residues, where s flips x and g flips y.  Returns (r, argmax set).
    """
    K = u.field
    v = K.embed(v)
    L = adjoin_sqrt(K, u)
    beta = L.kappa - 1
    b = quad_break(u)
    nf = decompose_against(_unit_class_rep(v), beta)
    form = K.one() + nf.mu * nf.mu * beta
    if nf.lam_bit:
        form = form * one_plus_4lambda(K)
    M = adjoin_sqrt(L, L.embed(form))
    y = M.gen() * M.embed(M.scale.inverse())  # y^2 = form exactly
    x = M.embed(L.gen())
    mu_t = M.embed(K.embed(nf.mu))
    num = M.one() + mu_t * (x - 1)
    Y = num * y.inverse()
    e = K.e_abs
    if Y.residue().bits != 1:
        Y = -Y
    w = Y - 1
    if w.valuation() != 4 * e - b:
        raise AssertionError(f"v_M(Y - 1) = {w.valuation()} != {4 * e - b}")
    rho = 2 * w.inverse()
    rho_s = rho.conj_at(L)
    rho_g = rho.conj_at(M)
    rho_gs = rho_s.conj_at(M)
    diff_g = rho_g - rho
    diff_tw = rho_gs - rho_g
    best, arg = -1, []
    for a in K.residue_field.elements():
        s = diff_g + M.teich(a) * diff_tw
        val = s.val_or_inf()
        if val == INF:
            val = M.cap_abs
        if val > best:
            best, arg = val, [a]
        elif val == best:
            arg.append(a)
    return best - b, arg
