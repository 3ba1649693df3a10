"""The admissible break-triple sets and their constructive witnesses.

For each class tag i in {1, 1*, 2} and each ramification index e there is
an explicit set R_i^e of integer triples: (b, r, b3) for one-break
biquadratic subfields (tags 1 and 1*, r the refined second break) and
(b1, b2, b3) for two-break ones (tag 2).  The first two entries range
over simple arithmetic sets; the third is either forced ("stable") or
ranges over a bounded window ("unstable").

This module knows nothing about fields: it is pure integer combinatorics,
plus a recipe generator that turns a catalog triple into candidate (u, v)
pairs over a concrete field for the quaternion constructor to certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, NotInCatalog, RequiresI, TargetUnreachable
from .localfield import FieldElem, TowerField
from .squares import defect, is_square, one_plus_4lambda

TAGS = ("1", "1*", "2")


@dataclass(frozen=True, order=True)
class CatalogTriple:
    s1: int
    s2: int
    s3: int
    tag: str
    e: int
    stable: bool

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.s1, self.s2, self.s3)


def _check_tag(tag: str) -> None:
    if tag not in TAGS:
        raise DomainError(f"unknown class tag {tag!r}")


def s1_values(e: int) -> range:
    """First break numbers: odd, 0 < s1 < 2e."""
    return range(1, 2 * e, 2)


def s2_max(tag: str, s1: int, e: int) -> int:
    _check_tag(tag)
    return 4 * e - s1 if tag == "2" else min(2 * s1, 4 * e - s1)


def s2_values(tag: str, s1: int, e: int) -> list[int]:
    """Second entries for a given first break: s1 < n <= m, and n ≡ s1
    mod 4 strictly below the maximum m."""
    m = s2_max(tag, s1, e)
    return [n for n in range(s1 + 1, m + 1) if n == m or (n - s1) % 4 == 0]


def is_stable(tag: str, s1: int, s2: int, e: int) -> bool:
    _check_tag(tag)
    if tag == "1":
        return s1 >= e
    if tag == "1*":
        return 5 * s1 - s2 >= 4 * e
    return s1 + s2 >= 2 * e


def stable_s3(tag: str, s1: int, s2: int, e: int) -> int:
    _check_tag(tag)
    if tag == "1":
        return 4 * e + s1
    if tag == "1*":
        return 4 * e + 2 * s1 - s2
    return 4 * e + s2


def unstable_window(tag: str, s1: int, s2: int, e: int) -> list[int]:
    """Third breaks in the unstable case: both endpoints of the window,
    plus interior points congruent to the relevant lower break mod 8."""
    _check_tag(tag)
    if tag == "1":
        lo, hi, anchor = 5 * s1, 8 * e - 3 * s1, s1
    elif tag == "1*":
        lo, hi, anchor = 7 * s1 - 2 * s2, 8 * e - 3 * s1, s1
    else:
        lo, hi, anchor = 2 * s1 + 3 * s2, 8 * e - 2 * s1 - s2, s2
    return [lo] + [n for n in range(lo + 1, hi) if (n - anchor) % 8 == 0] + [hi]


def s3_values(tag: str, s1: int, s2: int, e: int) -> list[int]:
    if is_stable(tag, s1, s2, e):
        return [stable_s3(tag, s1, s2, e)]
    return unstable_window(tag, s1, s2, e)


def member(tag: str, e: int, s1: int, s2: int, s3: int) -> bool:
    _check_tag(tag)
    return (s1 in s1_values(e)
            and s2 in s2_values(tag, s1, e)
            and s3 in s3_values(tag, s1, s2, e))


def enumerate_triples(tag: str, e: int) -> list[CatalogTriple]:
    """All of R_tag^e, sorted lexicographically."""
    _check_tag(tag)
    out = []
    for s1 in s1_values(e):
        for s2 in s2_values(tag, s1, e):
            st = is_stable(tag, s1, s2, e)
            for s3 in s3_values(tag, s1, s2, e):
                out.append(CatalogTriple(s1, s2, s3, tag, e, st))
    return sorted(out)


def hasse_arf_exceptions(e: int) -> list[CatalogTriple]:
    """One-break triples with s3 = 3·s1, exactly the ones whose quaternion
    filtration has a non-integral jump in the upper numbering."""
    out = []
    for tag in ("1", "1*"):
        for t in enumerate_triples(tag, e):
            if t.s3 == 3 * t.s1:
                assert t.tag == "1*" and t.s2 == s2_max(t.tag, t.s1, e)
                out.append(t)
    return out


def feasible_tags(f: int) -> tuple[str, ...]:
    """Class tags that occur over a base with inertia degree f.  Tag 1*
    needs a cube root of unity in the residue field (f even); tag 1 needs
    a residue outside {0, 1} that is not a cube root of unity; tag 2 is
    unconstrained."""
    tags = ["2"]
    q = 1 << f
    cube_roots = 2 if f % 2 == 0 else 0
    if cube_roots:
        tags.append("1*")
    if q - 2 - cube_roots > 0:
        tags.append("1")
    return tuple(sorted(tags))


# ---------------------------------------------------------------------------
# Witness recipes: candidate (u, v) pairs realizing a catalog triple.


@dataclass
class WitnessRecipe:
    target: CatalogTriple
    field: TowerField

    def candidates(self) -> Iterator[tuple[FieldElem, FieldElem]]:
        if self.target.tag == "2":
            return _two_break_candidates(self.field, self.target)
        return _one_break_candidates(self.field, self.target)


def _unit_twists(K: TowerField, floor: int) -> Iterator[FieldElem]:
    """Unit multipliers supported strictly above the given valuation
    level, used to move within a square class family without touching
    the invariants certified downstream."""
    yield K.one()
    lam = one_plus_4lambda(K)
    yield lam
    R = K.residue_field
    e = K.e_abs
    for j in range(floor + 1, 2 * e + 1):
        for a in R.elements():
            if a.bits == 0:
                continue
            tw = K.one() + K.teich(a) * K.pi_pow(j)
            yield tw
            yield tw * lam


def _one_break_candidates(K: TowerField, t: CatalogTriple
                          ) -> Iterator[tuple[FieldElem, FieldElem]]:
    e, R = K.e_abs, K.residue_field
    b, r = t.s1, t.s2
    beta = K.pi_pow(2 * e - b)
    u0 = K.one() + beta
    omegas = []
    for a in R.elements():
        if a.bits in (0, 1):
            continue
        cube = (a * a + a + R.one()).bits == 0
        if cube == (t.tag == "1*"):
            omegas.append(a)
    if not omegas:
        raise RequiresI(f"tag {t.tag} needs a suitable residue class; "
                        f"none exists at f = {K.f_abs}")
    mus = [K.zero()]
    if r < s2_max(t.tag, b, K.e_abs):
        # interior r forces the exact depth m = (r - b)/4 of the unit
        # correction; at the maximum any deeper correction (or none) works
        m = (r - b) // 4
        mus = [K.teich(a) * K.pi_pow(m) for a in R.elements() if a.bits != 0]
    for om in omegas:
        w = K.teich(om)
        for mu in mus:
            v0 = K.one() + (w + mu) * (w + mu) * beta
            for tw in _unit_twists(K, (2 * e - b) + 2 * max((r - b) // 4, 1)):
                yield u0, v0 * tw


def _two_break_candidates(K: TowerField, t: CatalogTriple
                          ) -> Iterator[tuple[FieldElem, FieldElem]]:
    e, R = K.e_abs, K.residue_field
    b1, b2 = t.s1, t.s2
    h = (b1 + b2) // 2           # break of the third quadratic subfield
    u0 = K.one() + K.pi_pow(2 * e - b1)
    units = [a for a in R.elements() if a.bits != 0]
    seeds = []
    if h < 2 * e:
        seeds = [K.one() + K.teich(a) * K.pi_pow(2 * e - h) for a in units]
    else:                        # h = 2e: the prime classes
        seeds = [K.pi(), K.pi() * K.from_int(-1)]
        seeds += [K.pi() * (K.one() + K.teich(a) * K.pi()) for a in units]
    for v0 in seeds:
        for tw in _unit_twists(K, 2 * e - h):
            yield v0 * tw, u0    # v first: its break h exceeds b1
    # norm-corrected seeds: push v through the norm of K(sqrt u) to reach
    # classes the plain seeds miss near the boundary b2 + 3 b1 >= 4e
    from .localfield import adjoin_sqrt
    from .squares import same_square_class
    L = adjoin_sqrt(K, u0)
    for j in range(1, 4 * e):
        for a in units:
            nu = L.one() + L.embed(K.teich(a)) * L.pi_pow(j)
            vn = nu.norm_step()
            if defect(vn).value != 2 * e - h:
                continue
            for tw in _unit_twists(K, 2 * e - h):
                yield vn * tw, u0


def exhaustive_pairs(K: TowerField) -> Iterator[tuple[FieldElem, FieldElem]]:
    """Every ordered pair of square-class representatives (complete
    fallback search; also the engine of the f = 1 exclusion scan)."""
    from .squares import class_dim, class_from_vector
    dim = class_dim(K)
    reps = []
    for mask in range(1, 1 << dim):
        vec = [(mask >> i) & 1 for i in range(dim)]
        reps.append(class_from_vector(K, vec))
    for u in reps:
        for v in reps:
            if not is_square(u * v):
                yield u, v


def witness(tag: str, K: TowerField, t: CatalogTriple) -> WitnessRecipe:
    if not is_square(K.from_int(-1)):
        raise RequiresI("witness construction requires i in the base field")
    if t.tag != tag or t.e != K.e_abs or not member(tag, t.e, *t.triple):
        raise NotInCatalog(f"{t.triple} is not in R_{tag}^{t.e}")
    return WitnessRecipe(t, K)


def execute_witness(recipe: WitnessRecipe, max_candidates: int = 20000,
                    exhaustive: bool = True):
    """Search the recipe's candidates (then, optionally, all square-class
    pairs) for a certified realization of the target triple.  Returns the
    built extension whose re-measured triple equals the target."""
    from .errors import QuatramError
    from .quaternion import QuaternionFamily, embeds_in_quaternion
    from .ramify import analyze_pair
    t = recipe.target
    tried = set()

    def attempt(u, v):
        try:
            pa = analyze_pair(u, v)
        except QuatramError:
            return None
        if pa.tag != t.tag:
            return None
        want = (t.s1, t.s2)
        got = pa.breaks if not pa.one_break else (pa.breaks[0], pa.refined)
        if got != want or not embeds_in_quaternion(u, v):
            return None
        try:
            return QuaternionFamily(u, v).tune_k(t.s3)
        except QuatramError:
            return None

    n = 0
    for u, v in recipe.candidates():
        n += 1
        if n > max_candidates:
            break
        q = attempt(u, v)
        if q is not None:
            return q
    if exhaustive:
        from .squares import square_class_vector
        for u, v in exhaustive_pairs(recipe.field):
            key = (tuple(square_class_vector(u)), tuple(square_class_vector(v)))
            if key in tried:
                continue
            tried.add(key)
            q = attempt(u, v)
            if q is not None:
                return q
    raise TargetUnreachable(
        f"no (u, v, k) realizes {t.triple} with tag {t.tag} over this field")
