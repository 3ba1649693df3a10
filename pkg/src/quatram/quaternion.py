"""Quaternion (Q8) extensions N/K and their break triples.

K(sqrt u, sqrt v) embeds in a Q8-extension iff the quaternion algebra
(-u, -v) is isomorphic to (-1, -1), i.e. (-1, u)(-1, v)(u, v) = 1.  When it
does, the degree-8 fields containing M = K(sqrt u, sqrt v) are exactly
N = M(sqrt(alpha_k)) for k running over K*/(K*)^2, with

    alpha_k = k * sqrt(uv) * eta * tau,

where N_{K(sqrt u)/K}(eta) = v, and tau (needed only when i is not in K)
lies in K(sqrt(uv)) with norm -1.  The third break is
b3 = 8 e_K - def_M(alpha_k); the first two come from the biquadratic
analysis of (u, v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (HypothesisViolation, NotFullyRamified,
                     NoValidArrangement, TargetUnreachable)
from .localfield import (FieldElem, QuadraticField, TowerField, adjoin_sqrt,
                         indistinguishable)
from .ramify import PairAnalysis, analyze_pair, break_of_step
from .squares import (class_dim, class_from_vector, defect, is_square,
                      square_class_vector)
from .symbols import hilbert_symbol, solve_norm_equation

INF = math.inf


def embeds_in_quaternion(u: FieldElem, v: FieldElem) -> bool:
    """Witt condition: (-1, u)(-1, v)(u, v) = 1."""
    K = u.field
    m1 = K.from_int(-1)
    m1uv = hilbert_symbol(m1, u) * hilbert_symbol(m1, v) * hilbert_symbol(u, v)
    direct = hilbert_symbol(m1 * u, m1 * v) == hilbert_symbol(m1, m1)
    assert (m1uv == 1) == direct
    return direct


def normalize_uv(u: FieldElem, v: FieldElem) -> tuple[FieldElem, FieldElem]:
    """An arrangement (u', v') of {u, v, uv} with (u', v') = 1 and
    (u'v', -1) = 1, as the alpha_k construction requires.  The embedding
    condition guarantees one of the three arrangements qualifies."""
    K = u.field
    m1 = K.from_int(-1)
    for a, b in ((u, v), (u, u * v), (v, u * v)):
        if hilbert_symbol(a, b) == 1 and hilbert_symbol(a * b, m1) == 1:
            return a, b
    raise NoValidArrangement(
        "no arrangement of (u, v, uv) admits the norm construction")


@dataclass
class QuaternionData:
    u: FieldElem
    v: FieldElem
    k: FieldElem
    pair: PairAnalysis
    alpha: FieldElem          # element of M with N = M(sqrt alpha)
    defect_m: int             # def_M(alpha)
    b3: int
    tag: str                  # '1', '1*' or '2'
    triple: tuple[int, int, int]

    @property
    def field(self) -> TowerField:
        return self.u.field


class QuaternionFamily:
    """The Q8-extensions over a fixed biquadratic M = K(sqrt u, sqrt v).

    Construction work (norm equations, the biquadratic analysis) is done
    once; each k then only costs one defect computation.
    """

    def __init__(self, u: FieldElem, v: FieldElem):
        K = u.field
        v = K.embed(v)
        if not embeds_in_quaternion(u, v):
            raise HypothesisViolation(
                "(u, v) fails the embedding condition (-u,-v) ~ (-1,-1)")
        self.u, self.v = u, v
        self.K = K
        self.pair = analyze_pair(u, v)
        un, vn = normalize_uv(u, v)        # M is unchanged; alpha_k needs
        self._un, self._vn = un, vn        # (u', v') = 1 and (u'v', -1) = 1
        self.L = adjoin_sqrt(K, un)
        self.M = adjoin_sqrt(self.L, self.L.embed(vn))
        M = self.M
        # gen_L^2 = scale_L^2 u' and gen_M^2 = scale_M^2 v', so the exact
        # square roots are x = gen_L / scale_L and y = gen_M / scale_M.
        x = M.embed(self.L.gen() * self.L.scale.inverse())
        y = M.gen() * M.embed(self.M.scale.inverse())
        eta = solve_norm_equation(self.L, vn)
        base = x * y * M.embed(eta)        # sqrt(u'v') * eta exactly
        if not is_square(K.from_int(-1)):
            base = base * self._tau(x, y)
        self.base = base

    def _tau(self, x: FieldElem, y: FieldElem) -> FieldElem:
        """Norm -1 element of K(sqrt uv), re-embedded into M."""
        K, M = self.K, self.M
        J = adjoin_sqrt(K, self._un * self._vn)
        t = solve_norm_equation(J, K.from_int(-1))
        a, b = t.data
        # image of J's gen inside M: square root of scale_J^2 * u * v
        g = x * y * M.embed(K.embed(J.scale))
        if not indistinguishable(g * g, M.embed(K.embed(J.kappa))):
            raise AssertionError("sqrt(uv) embedding is inconsistent")
        return M.embed(K.embed(a)) + M.embed(K.embed(b)) * g

    def extension(self, k: FieldElem | int = 1) -> QuaternionData:
        K, M = self.K, self.M
        if isinstance(k, int):
            k = K.from_int(k)
        alpha = M.embed(K.embed(k)) * self.base
        d = defect(alpha).value
        e = K.e_abs
        if d == INF:
            raise AssertionError("alpha is a square of M")
        if d == 8 * e:
            raise NotFullyRamified("N/M is unramified for this k")
        b3 = 8 * e - int(d)
        pa = self.pair
        triple = pa.breaks + (b3,) if not pa.one_break \
            else (pa.breaks[0], pa.refined, b3)
        return QuaternionData(self.u, self.v, k, pa, alpha, int(d), b3,
                              pa.tag, triple)

    def all_k_classes(self):
        """One representative k per square class of K, with its extension
        (skipping the k that make N/M unramified)."""
        K = self.K
        out = []
        for mask in range(1 << class_dim(K)):
            vec = [(mask >> i) & 1 for i in range(class_dim(K))]
            k = class_from_vector(K, vec)
            try:
                out.append(self.extension(k))
            except NotFullyRamified:
                continue
        return out

    def tune_k(self, target_b3: int) -> QuaternionData:
        """A k realizing the given third break, if any class does."""
        K = self.K
        for mask in range(1 << class_dim(K)):
            vec = [(mask >> i) & 1 for i in range(class_dim(K))]
            k = class_from_vector(K, vec)
            try:
                q = self.extension(k)
            except NotFullyRamified:
                continue
            if q.b3 == target_b3:
                return q
        raise TargetUnreachable(f"no k gives b3 = {target_b3} over this pair")


def build_quaternion(u: FieldElem, v: FieldElem, k: FieldElem | int = 1) -> QuaternionData:
    return QuaternionFamily(u, v).extension(k)


def top_field(q: QuaternionData) -> QuadraticField:
    """N = M(sqrt alpha), for direct break measurement on uniformizers."""
    return adjoin_sqrt(q.alpha.field, q.alpha)


def measured_b3(q: QuaternionData) -> int:
    return break_of_step(top_field(q))


def upper_breaks(triple: tuple[int, int, int], tag: str) -> tuple[Fraction, ...]:
    """Upper-numbering jumps of the Q8 filtration from the break triple."""
    if tag in ("1", "1*"):
        b, _, b3 = triple
        return (Fraction(b), Fraction(b) + Fraction(b3 - b, 4))
    b1, b2, b3 = triple
    u2 = Fraction(b1) + Fraction(b2 - b1, 2)
    return (Fraction(b1), u2, u2 + Fraction(b3 - b2, 4))
