"""Exact truncated arithmetic in towers of dyadic local fields.

The tower is: unramified base T (inertia degree f, working precision 2^N on
coefficients), one Eisenstein step K/T of degree e, then relative quadratic
steps E = F(sqrt(kappa)).  Elements carry exact coefficients modulo 2^N in
the unramified base, with a power-of-two denominator shift, so every ring
operation (and unit inversion, and division by uniformizers) is exact below
the precision cap.

Valuations are normalized per field: v_F(pi_F) = 1, v_F(2) = e_abs(F).
Quadratic-step valuations descend through the relative norm,
v_E(s) = v_F(N_{E/F}(s)).
"""

from __future__ import annotations

import math

from . import residue as res_mod
from .errors import (DomainError, IsSquare, NotEisenstein, PrecisionExhausted,
                     PrecisionTooSmall, UnramifiedSubextension)
from .residue import ResidueElem, ResidueField

INF = math.inf

# valuations within GUARD bits (per unramified digit) of the cap are not trusted
GUARD_BITS = 6


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


class UnramifiedRing:
    """O_T / 2^N: polynomials of degree < f over Z/2^N modulo a lift of
    the residue modulus, together with a denominator shift 2^-s.

    Element data is a pair (coeffs, shift): a tuple of f ints mod 2^N and
    an int s >= 0, representing poly(t) / 2^s.  Data is normalized so that
    s > 0 only if some coefficient is odd.
    """

    def __init__(self, residue: ResidueField, N: int):
        if N < 8:
            raise PrecisionTooSmall(f"need at least 8 bits of 2-adic precision, got {N}")
        self.residue_field = residue
        self.f = residue.f
        self.N = N
        self.mask = (1 << N) - 1
        # monic lift of the residue modulus: coefficients of t^0..t^{f-1}
        self.mod_low = tuple((residue.modulus >> j) & 1 for j in range(self.f))
        self._teich_cache: dict[int, tuple] = {}

    # -- data constructors -------------------------------------------------

    def zero_data(self):
        return (0,) * self.f, 0

    def from_int(self, n: int):
        return ((n % (1 << self.N),) + (0,) * (self.f - 1), 0)

    def from_residue(self, r: ResidueElem):
        return (tuple((r.bits >> j) & 1 for j in range(self.f)), 0)

    def half_data(self):
        return self.from_int(1)[0], 1

    def normalize(self, coeffs, shift):
        coeffs = tuple(c & self.mask for c in coeffs)
        if all(c == 0 for c in coeffs):
            return coeffs, 0
        while shift > 0 and all(c & 1 == 0 for c in coeffs):
            coeffs = tuple(c >> 1 for c in coeffs)
            shift -= 1
        return coeffs, shift

    # -- ring operations ----------------------------------------------------

    def add(self, d1, d2):
        (c1, s1), (c2, s2) = d1, d2
        s = max(s1, s2)
        a = tuple((x << (s - s1)) & self.mask for x in c1)
        b = tuple((x << (s - s2)) & self.mask for x in c2)
        return self.normalize(tuple((x + y) & self.mask for x, y in zip(a, b)), s)

    def neg(self, d):
        c, s = d
        return tuple((-x) & self.mask for x in c), s

    def mul(self, d1, d2):
        (c1, s1), (c2, s2) = d1, d2
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(c1):
            if a:
                for j, b in enumerate(c2):
                    prod[i + j] += a * b
        # reduce modulo the monic modulus lift: t^f = -sum(mod_low[j] t^j)
        for i in range(2 * f - 2, f - 1, -1):
            top = prod[i]
            if top:
                prod[i] = 0
                for j, hj in enumerate(self.mod_low):
                    if hj:
                        prod[i - f + j] -= top
        return self.normalize(tuple(prod[:f]), s1 + s2)

    def val(self, d):
        """2-adic valuation v_T; None when zero to working precision."""
        c, s = d
        vs = [_v2(x) for x in c if x]
        if not vs:
            return None
        return min(vs) - s

    def is_zero(self, d) -> bool:
        return all(x == 0 for x in d[0])

    def residue_of(self, d) -> ResidueElem:
        c, s = d
        if s != 0:
            raise DomainError("element is not integral")
        bits = 0
        for j, x in enumerate(c):
            bits |= (x & 1) << j
        return ResidueElem(self.residue_field, bits)

    def inv(self, d):
        c, s = d
        vs = [_v2(x) for x in c if x]
        if not vs:
            raise DomainError("inverse of zero")
        w = min(vs)
        u = (tuple((x >> w) & self.mask for x in c), 0)
        z = (self.from_residue(self.residue_of(u).inverse())[0], 0)
        two = self.from_int(2)
        for _ in range(max(4, self.N.bit_length() + 2)):
            z = self.mul(z, self.add(two, self.neg(self.mul(u, z))))
        # d = 2^{w-s} * u, so 1/d = z * 2^{s} / 2^{w}
        zc, zs = z
        zc = tuple((x << s) & self.mask for x in zc)
        return self.normalize(zc, zs + w)

    def teichmuller(self, r: ResidueElem):
        """The (q-1)-root of unity lifting r (0 for r = 0)."""
        if r.bits == 0:
            return self.zero_data()
        if r.bits in self._teich_cache:
            return self._teich_cache[r.bits]
        s = self.from_residue(r)
        for _ in range(self.N + 2):
            t = s
            for _ in range(self.f):
                t = self.mul(t, t)
            if t == s:
                break
            s = t
        self._teich_cache[r.bits] = s
        return s


class FieldElem:
    """An element of a tower field; immutable, operator-overloaded."""

    __slots__ = ("field", "data")

    def __init__(self, field: "TowerField", data):
        self.field = field
        self.data = data

    # -- coercion -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, int):
            return self, self.field.from_int(other)
        if not isinstance(other, FieldElem):
            return NotImplemented, NotImplemented
        if other.field is self.field:
            return self, other
        if self.field.is_ancestor(other.field):
            return self, self.field.embed(other)
        if other.field.is_ancestor(self.field):
            return other.field.embed(self), other
        raise DomainError("elements from unrelated fields")

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a.field._add(a, b)

    __radd__ = __add__

    def __neg__(self):
        return self.field._neg(self)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a.field._add(a, -b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a.field._mul(a, b)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        base = self.inverse() if n < 0 else self
        n = abs(n)
        r = base.field.one()
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, FieldElem)):
            a, b = self._pair(other)
            return a.field is b.field and a.data == b.data
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), repr(self.data)))

    # -- queries ------------------------------------------------------------

    def is_zero_data(self) -> bool:
        return self.field._is_zero(self)

    def valuation(self) -> int:
        """Exact valuation in home-field units (v(pi) = 1)."""
        if self.is_zero_data():
            raise PrecisionExhausted("element vanishes to working precision")
        v = self.field._val(self)
        cap = self.field.cap_abs
        if v >= cap or v <= -cap:
            raise PrecisionExhausted(f"valuation {v} at or beyond cap {cap}")
        return v

    def val_or_inf(self):
        """Valuation, with all-zero data read as 'zero': +inf."""
        if self.is_zero_data():
            return INF
        return self.valuation()

    def residue(self) -> ResidueElem:
        rf = self.field.residue_field
        if self.is_zero_data():
            return rf.zero()
        v = self.valuation()
        if v > 0:
            return rf.zero()
        if v < 0:
            raise DomainError("residue of a non-integral element")
        return self.field._residue(self)

    def inverse(self) -> "FieldElem":
        return self.field._inv(self)

    def unit_part(self) -> "FieldElem":
        return self * self.field.pi_pow(-self.valuation())

    def conj_at(self, step: "TowerField") -> "FieldElem":
        """Galois conjugation flipping the square root adjoined at `step`."""
        return self.field._conj_at(self, step)

    def norm_step(self) -> "FieldElem":
        """Relative norm down one quadratic step."""
        return self.field._norm_step(self)

    def __repr__(self):
        return f"FieldElem({self.field!r}, {self.data!r})"


class TowerField:
    """Common behaviour for nodes of the field tower."""

    parent: "TowerField | None"
    e_abs: int
    f_abs: int

    def __init__(self):
        self._pi = None
        self._pi_inv = None

    # subclass hooks: _add _neg _mul _val _is_zero _residue _inv _embed_parent
    #                 uniformizer _conj_at _norm_step

    @property
    def ring(self) -> UnramifiedRing:
        f = self
        while f.parent is not None:
            f = f.parent
        return f._ring

    @property
    def residue_field(self) -> ResidueField:
        return self.ring.residue_field

    @property
    def cap_abs(self) -> int:
        return self.e_abs * (self.ring.N - GUARD_BITS)

    def is_ancestor(self, other: "TowerField") -> bool:
        f = self
        while f is not None:
            if f is other:
                return True
            f = f.parent
        return False

    def ancestors(self):
        f = self
        while f is not None:
            yield f
            f = f.parent

    def embed(self, s: FieldElem) -> FieldElem:
        if s.field is self:
            return s
        return self._embed_parent(self.parent.embed(s))

    def from_int(self, n: int) -> FieldElem:
        f = self
        chain = []
        while f.parent is not None:
            chain.append(f)
            f = f.parent
        s = FieldElem(f, f._ring.from_int(n))
        for g in reversed(chain):
            s = g._embed_parent(s)
        return s

    def zero(self) -> FieldElem:
        return self.from_int(0)

    def one(self) -> FieldElem:
        return self.from_int(1)

    def teich(self, r: ResidueElem) -> FieldElem:
        f = self
        while f.parent is not None:
            f = f.parent
        return self.embed(FieldElem(f, f._ring.teichmuller(r)))

    def uniformizer(self) -> FieldElem:
        raise NotImplementedError

    def pi(self) -> FieldElem:
        if self._pi is None:
            self._pi = self.uniformizer()
        return self._pi

    def pi_inv(self) -> FieldElem:
        if self._pi_inv is None:
            self._pi_inv = self.pi().inverse()
        return self._pi_inv

    def pi_pow(self, n: int) -> FieldElem:
        """pi^n for any sign of n, never inverting a non-unit."""
        return self.pi() ** n if n >= 0 else self.pi_inv() ** (-n)

    def _conj_at(self, s: FieldElem, step: "TowerField") -> FieldElem:
        if step is self:
            raise DomainError("conjugation level must be a quadratic step")
        return s  # below the step: identity


class UnramifiedField(TowerField):
    """The unramified base T (e_abs = 1, uniformizer 2)."""

    parent = None

    def __init__(self, ring: UnramifiedRing):
        super().__init__()
        self._ring = ring
        self.e_abs = 1
        self.f_abs = ring.f

    def _add(self, a, b):
        return FieldElem(self, self._ring.add(a.data, b.data))

    def _neg(self, a):
        return FieldElem(self, self._ring.neg(a.data))

    def _mul(self, a, b):
        return FieldElem(self, self._ring.mul(a.data, b.data))

    def _val(self, a):
        return self._ring.val(a.data)

    def _is_zero(self, a):
        return self._ring.is_zero(a.data)

    def _residue(self, a):
        return self._ring.residue_of(a.data)

    def _inv(self, a):
        return FieldElem(self, self._ring.inv(a.data))

    def uniformizer(self):
        return self.from_int(2)

    def _norm_step(self, a):
        raise DomainError("norm_step needs a quadratic step")

    def __repr__(self):
        return f"T(f={self.f_abs}, N={self._ring.N})"


class EisensteinField(TowerField):
    """Totally ramified step K = T[x]/(x^e + c_{e-1} x^{e-1} + ... + c_0)."""

    def __init__(self, parent: UnramifiedField, lower_coeffs: list[FieldElem]):
        super().__init__()
        self.parent = parent
        self.e = len(lower_coeffs)
        self.coeffs = tuple(parent.embed(c) for c in lower_coeffs)
        ring = parent._ring
        for j, c in enumerate(self.coeffs):
            v = ring.val(c.data)
            if v is not None and v < 1:
                raise NotEisenstein(f"coefficient {j} is a unit")
            if j == 0 and v != 1:
                raise NotEisenstein("constant term must have valuation exactly 1")
        self.e_abs = self.e * parent.e_abs
        self.f_abs = parent.f_abs
        self._two_over_pi = None

    def _wrap(self, comps):
        return FieldElem(self, tuple(comps))

    def _embed_parent(self, p: FieldElem) -> FieldElem:
        z = self.parent.zero()
        return self._wrap((p,) + (z,) * (self.e - 1))

    def _add(self, a, b):
        return self._wrap(x + y for x, y in zip(a.data, b.data))

    def _neg(self, a):
        return self._wrap(-x for x in a.data)

    def _mul(self, a, b):
        e = self.e
        z = self.parent.zero()
        prod = [z] * (2 * e - 1)
        for i, x in enumerate(a.data):
            if not x.is_zero_data():
                for j, y in enumerate(b.data):
                    prod[i + j] = prod[i + j] + x * y
        for i in range(2 * e - 2, e - 1, -1):
            top = prod[i]
            if not top.is_zero_data():
                prod[i] = z
                for j, c in enumerate(self.coeffs):
                    prod[i - e + j] = prod[i - e + j] - top * c
        return self._wrap(prod[:e])

    def _val(self, a):
        ring = self.parent._ring
        best = None
        for i, x in enumerate(a.data):
            v = ring.val(x.data)
            if v is not None:
                cand = self.e * v + i
                if best is None or cand < best:
                    best = cand
        return best

    def _is_zero(self, a):
        return all(x.is_zero_data() for x in a.data)

    def _residue(self, a):
        return a.data[0].residue()

    def two_over_pi(self) -> FieldElem:
        """The integral element 2/pi, from the Eisenstein relation."""
        if self._two_over_pi is None:
            half = FieldElem(self.parent, self.parent._ring.half_data())
            u0 = self.coeffs[0] * half  # c_0 = 2*u0 with u0 a unit
            u0_inv = u0.inverse()
            comps = []
            for j in range(1, self.e):
                comps.append(-self.coeffs[j] * u0_inv)
            comps.append(-u0_inv)  # coefficient of pi^{e-1}
            self._two_over_pi = self._wrap(comps)
        return self._two_over_pi

    def uniformizer(self):
        z = self.parent.zero()
        return self._wrap((z, self.parent.one()) + (z,) * (self.e - 2)) if self.e > 1 \
            else self._wrap((-self.coeffs[0],))

    def pi_inv(self):
        if self._pi_inv is None:
            half = self.embed(FieldElem(self.parent, self.parent._ring.half_data()))
            self._pi_inv = self.two_over_pi() * half
        return self._pi_inv

    def _inv(self, a):
        v = a.field._val(a)
        if v is None:
            raise DomainError("inverse of zero")
        u = a * self.pi_pow(-v)
        z = self.embed(u.data[0].inverse())
        two = self.from_int(2)
        n_iter = max(4, (self.e * self.ring.N).bit_length() + 2)
        for _ in range(n_iter):
            z = z * (two - u * z)
        return z * self.pi_pow(-v)

    def _norm_step(self, a):
        raise DomainError("norm_step needs a quadratic step")

    def __repr__(self):
        return f"K(e={self.e}, f={self.f_abs}, N={self.ring.N})"


class QuadraticField(TowerField):
    """Ramified quadratic step E = F(x), x^2 = kappa.

    kappa is stored normalized: either a uniformizer of F ("prime" kind) or
    a one-unit 1 + beta with v_F(beta) = def_F(kappa) odd ("unit" kind).
    `scale` records w with x^2 = w^2 * kappa_given.
    """

    def __init__(self, parent: TowerField, kappa: FieldElem, kind: str,
                 kappa_given: FieldElem, scale: FieldElem):
        super().__init__()
        self.parent = parent
        self.kappa = parent.embed(kappa)
        self.kind = kind
        self.kappa_given = kappa_given
        self.scale = scale
        self._conj_safe: set = set()
        self.e_abs = 2 * parent.e_abs
        self.f_abs = parent.f_abs
        if kind == "unit":
            self.d = (self.kappa - 1).valuation()  # odd, < 2*e_abs(parent)
        else:
            self.d = None

    def gen(self) -> FieldElem:
        """The adjoined square root x."""
        return FieldElem(self, (self.parent.zero(), self.parent.one()))

    def _embed_parent(self, p: FieldElem) -> FieldElem:
        return FieldElem(self, (p, self.parent.zero()))

    def _add(self, a, b):
        return FieldElem(self, (a.data[0] + b.data[0], a.data[1] + b.data[1]))

    def _neg(self, a):
        return FieldElem(self, (-a.data[0], -a.data[1]))

    def _mul(self, a, b):
        a0, a1 = a.data
        b0, b1 = b.data
        return FieldElem(self, (a0 * b0 + self.kappa * a1 * b1, a0 * b1 + a1 * b0))

    def _is_zero(self, a):
        return a.data[0].is_zero_data() and a.data[1].is_zero_data()

    def _norm_step(self, a):
        a0, a1 = a.data
        return a0 * a0 - self.kappa * a1 * a1

    def _val(self, a):
        n = self._norm_step(a)
        if n.is_zero_data():
            raise PrecisionExhausted("norm vanishes to working precision")
        return n.valuation()

    def _residue(self, a):
        if self.kind == "prime":
            return _residue_or_zero(a.data[0])
        # x = 1 mod P_E, and a0 + a1 is integral whenever a is (even if the
        # components individually are not)
        return _residue_or_zero(a.data[0] + a.data[1])

    def _inv(self, a):
        n = self._norm_step(a)
        return self.conj_own(a) * self.embed(n.inverse())

    def conj_own(self, a):
        return FieldElem(self, (a.data[0], -a.data[1]))

    def _conj_at(self, s, step):
        if step is self:
            return self.conj_own(s)
        # gen itself need not be fixed: conjugate in the basis
        # y = gen / scale, whose square is the step-invariant kappa_given
        if step not in self._conj_safe:
            if not indistinguishable(self.kappa_given.conj_at(step), self.kappa_given):
                raise DomainError("kappa is not invariant under this conjugation")
            self._conj_safe.add(step)
        m0, m1 = s.data
        sc = self.scale
        return FieldElem(self, (m0.conj_at(step),
                                (m1 * sc).conj_at(step) * sc.inverse()))

    def uniformizer(self):
        if self.kind == "prime":
            return self.gen()
        h = (self.d - 1) // 2
        return (self.gen() - 1) * self.embed(self.parent.pi_inv() ** h)

    def __repr__(self):
        return f"{self.parent!r}(sqrt:{self.kind})"


def _residue_or_zero(s: FieldElem) -> ResidueElem:
    rf = s.field.residue_field
    if s.is_zero_data():
        return rf.zero()
    v = s.valuation()
    if v > 0:
        return rf.zero()
    if v < 0:
        raise DomainError("non-integral component")
    return s.field._residue(s)


def default_precision(e: int) -> int:
    return 4 * e + 16


def make_base_field(f: int, e: int, eis: list[int] | None = None,
                    N: int | None = None) -> EisensteinField:
    """Base field K with inertia degree f and an Eisenstein step of degree e.

    `eis` gives the lower coefficients [c_0, ..., c_{e-1}] of the monic
    defining polynomial, as integers; default x^e - 2.
    """
    if N is None:
        N = default_precision(e)
    rf = res_mod.field(f)
    ring = UnramifiedRing(rf, N)
    T = UnramifiedField(ring)
    if eis is None:
        eis = [-2] + [0] * (e - 1)
    if len(eis) != e:
        raise NotEisenstein(f"need {e} lower coefficients, got {len(eis)}")
    return EisensteinField(T, [T.from_int(c) for c in eis])


def galois_conjugate(s: FieldElem, step: TowerField) -> FieldElem:
    """Apply x -> -x at the given quadratic step; identity elsewhere."""
    if not isinstance(step, QuadraticField):
        raise DomainError("conjugation level must be a quadratic step")
    return s.conj_at(step)


def norm_step(s: FieldElem) -> FieldElem:
    return s.norm_step()


def valuation(s: FieldElem):
    return s.val_or_inf()


def teichmuller(r: ResidueElem, F: TowerField) -> FieldElem:
    return F.teich(r)


def indistinguishable(a: FieldElem, b) -> bool:
    """True when a - b vanishes to working precision (valuation at cap)."""
    d = a - b
    if d.is_zero_data():
        return True
    try:
        d.valuation()
    except PrecisionExhausted:
        return True
    return False


def adjoin_sqrt(F: TowerField, kappa: FieldElem) -> QuadraticField:
    """Build E = F(sqrt(kappa)) for kappa a non-square generating a
    ramified extension; raises IsSquare / UnramifiedSubextension otherwise."""
    from .squares import defect  # late import: squares builds on this module

    kappa = F.embed(kappa)
    if kappa.is_zero_data():
        raise DomainError("cannot adjoin sqrt(0)")
    v = kappa.valuation()
    scale = F.one()
    if v % 2 == 1:
        scale = F.pi_inv() ** ((v - 1) // 2)
        k_norm = kappa * scale * scale
        return QuadraticField(F, k_norm, "prime", kappa, scale)
    if v != 0:
        # strip the even power of the uniformizer (a square)
        half_shift = F.pi_inv() ** (v // 2)
        kappa0 = kappa * half_shift * half_shift
        scale = half_shift
    else:
        kappa0 = kappa
    d = defect(kappa0)
    if d.value == INF:
        raise IsSquare("kappa is a square")
    if d.value == 2 * F.e_abs:
        raise UnramifiedSubextension("kappa lies in the 1+4*lambda class")
    if d.value == 0:
        raise AssertionError("unit with defect 0 is impossible")
    k_norm = d.witness * d.witness * kappa0
    return QuadraticField(F, k_norm, "unit", kappa, scale * d.witness)
