"""The genus-1 side: elliptic curves over F_q and their automorphisms.

A curve is short Weierstrass y^2 = x^3 + ax + b with p > 3, so the
automorphisms fixing the base point O are exactly the scalings
(x, y) -> (u^2 x, u^3 y) with u^4 a = a and u^6 b = b, and the full
automorphism group splits as translations semidirect base-point-fixing
automorphisms.  An automorphism is stored as a pair (P, u): translate by P
after scaling by u, so (P, u)(Q) = sigma_u(Q) + P and composition is
(P, u)(Q, v) = (P + sigma_u(Q), u v).

All point sets are exhausted at an explicit level r, i.e. over E(F_{q^r});
torsion, kernels and fixed-point fibres come from direct scans, never from
division polynomials.

Everything here powers exhaustive verification of the genus-1 finiteness
facts: an automorphism is fixed point free iff it is a nontrivial pure
translation; nonempty fixed sets of (P, u != 1) are cosets of ker(1 - sigma_u);
each point is fixed by exactly |Aut_0| automorphisms; and group actions with
stabilized locus inside a finite S admit a certified finite bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .gfq import (
    FieldSpec,
    FqElem,
    extension_field,
    field_elements,
    fq_add,
    fq_div,
    fq_embed,
    fq_from_int,
    fq_mul,
    fq_neg,
    fq_one,
    fq_pow,
    fq_sub,
    fq_zero,
    parse_element,
    parse_field_spec,
    render_element,
    render_field_spec,
)


@dataclass(frozen=True)
class ECurve:
    """y^2 = x^3 + ax + b over F_q with p > 3 and nonzero discriminant."""

    spec: FieldSpec
    a: FqElem
    b: FqElem

    def __post_init__(self):
        if self.spec.p <= 3:
            raise ValueError("short Weierstrass curves require characteristic > 3")
        if self.a.spec != self.spec or self.b.spec != self.spec:
            raise ValueError("coefficients live in the wrong field")
        four = fq_from_int(self.spec, 4)
        twenty_seven = fq_from_int(self.spec, 27)
        disc = fq_add(
            fq_mul(four, fq_mul(self.a, fq_mul(self.a, self.a))),
            fq_mul(twenty_seven, fq_mul(self.b, self.b)),
        )
        if disc.is_zero():
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    def __repr__(self) -> str:
        return f"ECurve({render_curve(self)})"


@dataclass(frozen=True)
class ECPoint:
    """A point of E(F_{q^r}): affine coordinates in the stated field, or the
    base point O (x = y = None)."""

    spec: FieldSpec
    x: Optional[FqElem]
    y: Optional[FqElem]

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return f"ECPoint({render_ec_point(self)})"


def ec_infinity(spec: FieldSpec) -> ECPoint:
    return ECPoint(spec, None, None)


def _curve_coeffs(E: ECurve, spec: FieldSpec) -> tuple[FqElem, FqElem]:
    return fq_embed(E.a, spec), fq_embed(E.b, spec)


def ec_point(E: ECurve, x: FqElem, y: FqElem) -> ECPoint:
    """An affine point, checked against the curve equation over its field."""
    if x.spec != y.spec:
        raise ValueError("coordinates live in different fields")
    a, b = _curve_coeffs(E, x.spec)
    lhs = fq_mul(y, y)
    rhs = fq_add(fq_add(fq_mul(x, fq_mul(x, x)), fq_mul(a, x)), b)
    if lhs != rhs:
        raise ValueError(f"({render_element(x)}, {render_element(y)}) is not on {render_curve(E)}")
    return ECPoint(x.spec, x, y)


def _check_on_curve(E: ECurve, P: ECPoint) -> None:
    if P.is_zero:
        return
    a, b = _curve_coeffs(E, P.spec)
    lhs = fq_mul(P.y, P.y)
    rhs = fq_add(fq_add(fq_mul(P.x, fq_mul(P.x, P.x)), fq_mul(a, P.x)), b)
    if lhs != rhs:
        raise ValueError(f"{render_ec_point(P)} is not on {render_curve(E)}")


def ec_point_sort_key(P: ECPoint):
    if P.is_zero:
        return (0, (), ())
    return (1, P.x.coeffs, P.y.coeffs)


def ec_point_embed(P: ECPoint, target: FieldSpec) -> ECPoint:
    if P.is_zero:
        return ec_infinity(target)
    return ECPoint(target, fq_embed(P.x, target), fq_embed(P.y, target))


def ec_neg(E: ECurve, P: ECPoint) -> ECPoint:
    if P.is_zero:
        return P
    return ECPoint(P.spec, P.x, fq_neg(P.y))


def ec_add(E: ECurve, P1: ECPoint, P2: ECPoint) -> ECPoint:
    """Chord-tangent group law with identity O."""
    if P1.is_zero:
        return P2
    if P2.is_zero:
        return P1
    if P1.spec != P2.spec:
        raise ValueError("points live in different fields")
    spec = P1.spec
    a, _ = _curve_coeffs(E, spec)
    if P1.x == P2.x:
        if P1.y != P2.y or P1.y.is_zero():
            return ec_infinity(spec)  # vertical line
        # tangent slope (3x^2 + a) / 2y
        three_x2 = fq_mul(fq_from_int(spec, 3), fq_mul(P1.x, P1.x))
        slope = fq_div(fq_add(three_x2, a), fq_mul(fq_from_int(spec, 2), P1.y))
    else:
        slope = fq_div(fq_sub(P2.y, P1.y), fq_sub(P2.x, P1.x))
    x3 = fq_sub(fq_sub(fq_mul(slope, slope), P1.x), P2.x)
    y3 = fq_sub(fq_mul(slope, fq_sub(P1.x, x3)), P1.y)
    return ECPoint(spec, x3, y3)


def ec_sub(E: ECurve, P1: ECPoint, P2: ECPoint) -> ECPoint:
    return ec_add(E, P1, ec_neg(E, P2))


def ec_scalar(E: ECurve, k: int, P: ECPoint) -> ECPoint:
    if k < 0:
        return ec_scalar(E, -k, ec_neg(E, P))
    acc = ec_infinity(P.spec)
    add = P
    while k:
        if k & 1:
            acc = ec_add(E, acc, add)
        add = ec_add(E, add, add)
        k >>= 1
    return acc


_POINT_CAP = 10_000


@lru_cache(maxsize=None)
def _sqrt_table(spec: FieldSpec) -> dict:
    table: dict = {}
    for y in field_elements(spec):
        table.setdefault(fq_mul(y, y).coeffs, []).append(y)
    return table


@lru_cache(maxsize=None)
def ec_points(E: ECurve, r: int = 1) -> tuple[ECPoint, ...]:
    """All points of E(F_{q^r}), by scanning x and solving for y.  Sorted
    canonically with O first."""
    ext = extension_field(E.spec, r)
    if ext.q > _POINT_CAP:
        raise ValueError(f"point enumeration capped at q^r <= {_POINT_CAP}, got {ext.q}")
    a, b = _curve_coeffs(E, ext)
    sqrt = _sqrt_table(ext)
    pts = [ec_infinity(ext)]
    for x in field_elements(ext):
        rhs = fq_add(fq_add(fq_mul(x, fq_mul(x, x)), fq_mul(a, x)), b)
        for y in sqrt.get(rhs.coeffs, ()):
            pts.append(ECPoint(ext, x, y))
    return tuple(sorted(pts, key=ec_point_sort_key))


def aut0(E: ECurve, r: int = 1) -> tuple[FqElem, ...]:
    """The base-point-fixing automorphisms over F_{q^r}, as their scaling
    factors u (u^4 a = a, u^6 b = b).  Contains 1 and -1; has 2, 4 or 6
    members depending on whether a or b vanishes and which roots of unity are
    present."""
    ext = extension_field(E.spec, r)
    a, b = _curve_coeffs(E, ext)
    out = []
    for u in field_elements(ext):
        if u.is_zero():
            continue
        if fq_mul(fq_pow(u, 4), a) == a and fq_mul(fq_pow(u, 6), b) == b:
            out.append(u)
    return tuple(out)


# ---------------------------------------------------------------------------
# automorphisms as pairs (translation point, scaling factor)


@dataclass(frozen=True)
class ECAut:
    """An automorphism (P, u): Q -> sigma_u(Q) + P, where sigma_u scales
    (x, y) to (u^2 x, u^3 y)."""

    curve: ECurve
    P: ECPoint
    u: FqElem

    def __post_init__(self):
        if self.u.is_zero():
            raise ValueError("scaling factor must be nonzero")
        if self.P.spec != self.u.spec:
            raise ValueError("translation point and scaling factor live in different fields")
        _check_on_curve(self.curve, self.P)
        a, b = _curve_coeffs(self.curve, self.u.spec)
        if fq_mul(fq_pow(self.u, 4), a) != a or fq_mul(fq_pow(self.u, 6), b) != b:
            raise ValueError("u is not an automorphism scaling factor for this curve")

    @property
    def is_identity(self) -> bool:
        return self.P.is_zero and self.u == fq_one(self.u.spec)

    def __repr__(self) -> str:
        return f"ECAut(P={render_ec_point(self.P)}, u={render_element(self.u)})"


def ec_aut_sort_key(phi: ECAut):
    return (ec_point_sort_key(phi.P), phi.u.coeffs)


def sigma_apply(u: FqElem, Q: ECPoint) -> ECPoint:
    if Q.is_zero:
        return Q
    u2 = fq_mul(u, u)
    return ECPoint(Q.spec, fq_mul(u2, Q.x), fq_mul(fq_mul(u2, u), Q.y))


def aut_apply(phi: ECAut, Q: ECPoint) -> ECPoint:
    return ec_add(phi.curve, sigma_apply(phi.u, Q), phi.P)


def aut_compose(phi1: ECAut, phi2: ECAut) -> ECAut:
    """(P1, u1) after (P2, u2) = (P1 + sigma_{u1}(P2), u1 u2)."""
    if phi1.curve != phi2.curve:
        raise ValueError("automorphisms of different curves")
    return ECAut(
        phi1.curve,
        ec_add(phi1.curve, sigma_apply(phi1.u, phi2.P), phi1.P),
        fq_mul(phi1.u, phi2.u),
    )


def aut_inverse(phi: ECAut) -> ECAut:
    from .gfq import fq_inv

    u_inv = fq_inv(phi.u)
    return ECAut(phi.curve, ec_neg(phi.curve, sigma_apply(u_inv, phi.P)), u_inv)


@lru_cache(maxsize=None)
def _one_minus_sigma_fibres(E: ECurve, u_coeffs: tuple[int, ...], r: int) -> dict:
    """Fibres of Q -> Q - sigma_u(Q) on E(F_{q^r}), keyed by image point."""
    ext = extension_field(E.spec, r)
    u = FqElem(ext, u_coeffs)
    fibres: dict = {}
    for Q in ec_points(E, r):
        img = ec_sub(E, Q, sigma_apply(u, Q))
        fibres.setdefault(img, []).append(Q)
    return fibres


def aut_fixed_points(E: ECurve, phi: ECAut, r: int = 1) -> tuple[ECPoint, ...]:
    """Fixed points of phi in E(F_{q^r}): the solutions of sigma_u(Q) + P = Q,
    i.e. the fibre of (1 - sigma_u) over P.  The identity is rejected (it
    fixes everything); a nontrivial pure translation is fixed point free."""
    if phi.is_identity:
        raise ValueError("the identity automorphism fixes every point")
    ext = extension_field(E.spec, r)
    P = ec_point_embed(phi.P, ext)
    u = fq_embed(phi.u, ext)
    if u == fq_one(ext):
        return ()  # translation by P != O
    fibre = _one_minus_sigma_fibres(E, u.coeffs, r).get(P, ())
    return tuple(sorted(fibre, key=ec_point_sort_key))


def kernel_one_minus_sigma(E: ECurve, u: FqElem, r: int = 1) -> tuple[ECPoint, ...]:
    """ker(1 - sigma_u) inside E(F_{q^r}): the points with Q - sigma_u(Q) = O.
    Undefined for u = 1 (the map is zero)."""
    if u == fq_one(u.spec):
        raise ValueError("1 - sigma is the zero map for u = 1")
    ext = extension_field(E.spec, r)
    uu = fq_embed(u, ext)
    fibre = _one_minus_sigma_fibres(E, uu.coeffs, r).get(ec_infinity(ext), ())
    return tuple(sorted(fibre, key=ec_point_sort_key))


@dataclass(frozen=True)
class FixingAutsReport:
    """Automorphisms fixing one point: the closed-form witnesses (one
    translation part per scaling factor, P = Q - sigma_u(Q)) cross-checked
    against a full scan of E(F_{q^r}) x Aut_0."""

    point: ECPoint
    count: int
    witnesses: tuple[ECAut, ...]
    scan_count: int


def count_auts_fixing(E: ECurve, Q: ECPoint, r: int = 1) -> FixingAutsReport:
    _check_on_curve(E, Q)
    ext = extension_field(E.spec, r)
    Q = ec_point_embed(Q, ext)
    us = aut0(E, r)
    witnesses = []
    for u in us:
        P = ec_sub(E, Q, sigma_apply(u, Q))
        witnesses.append(ECAut(E, P, u))
    scan = 0
    for u in us:
        for P in ec_points(E, r):
            if ec_add(E, sigma_apply(u, Q), P) == Q:
                scan += 1
    witnesses.sort(key=ec_aut_sort_key)
    if scan != len(witnesses):
        raise AssertionError(
            f"scan found {scan} automorphisms fixing {Q!r} but the closed form gives {len(witnesses)}"
        )
    return FixingAutsReport(point=Q, count=len(witnesses), witnesses=tuple(witnesses), scan_count=scan)


def torsion_invariant_factors(E: ECurve, n: int, r: int = 1) -> tuple[int, int]:
    """Invariant factors (d1, d2) of the n-torsion subgroup of E(F_{q^r}):
    d1 is the exponent, d1*d2 the order (the group has rank at most 2)."""
    pts = ec_points(E, r)
    O = ec_infinity(extension_field(E.spec, r))
    torsion = [Q for Q in pts if ec_scalar(E, n, Q) == O]
    exponent = 1
    for Q in torsion:
        k, acc = 1, Q
        while acc != O:
            acc = ec_add(E, acc, Q)
            k += 1
        exponent = exponent * k // math.gcd(exponent, k)
    return exponent, len(torsion) // exponent


def abelian_subgroup_count(invariants: tuple[int, int], n: int) -> int:
    """Subgroups of order n of Z/d1 x Z/d2, counted by closing generator
    pairs with plain integer arithmetic.  This is the independent cross-check
    for enum_spf_actions: it never touches curve points."""
    d1, d2 = invariants
    d2 = max(d2, 1)
    members = [(i, j) for i in range(d1) for j in range(d2)]

    def close(gens):
        out = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            fresh = []
            for g in gens:
                for x in frontier:
                    y = ((x[0] + g[0]) % d1, (x[1] + g[1]) % d2)
                    if y not in out:
                        out.add(y)
                        fresh.append(y)
            frontier = fresh
        return frozenset(out)

    subs = {close([a]) for a in members}
    subs |= {close([a, b]) for a in members for b in members}
    return sum(1 for s in subs if len(s) == n)


def enum_spf_actions(E: ECurve, n: int, r: int = 1) -> list[tuple[ECPoint, ...]]:
    """All order-n subgroups of the n-torsion of E(F_{q^r}).  These are the
    translation groups realizing the stabilized-point-free actions of order n
    visible at level r; enumerated by incremental closure, no structure theory."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    ext = extension_field(E.spec, r)
    O = ec_infinity(ext)
    torsion = [P for P in ec_points(E, r) if ec_scalar(E, n, P) == O]
    trivial = (O,)
    layer = {trivial}
    found = set()
    while layer:
        next_layer = set()
        for sub in layer:
            if len(sub) == n:
                found.add(sub)
                continue
            for P in torsion:
                if P in sub:
                    continue
                grown = set(sub)
                boundary = [P]
                grown.add(P)
                while boundary:
                    fresh = []
                    for A in list(grown):
                        for B in boundary:
                            C = ec_add(E, A, B)
                            if C not in grown:
                                grown.add(C)
                                fresh.append(C)
                    boundary = fresh
                    if len(grown) > n:
                        break
                if len(grown) <= n:
                    next_layer.add(tuple(sorted(grown, key=ec_point_sort_key)))
        layer = next_layer
    return sorted(found, key=lambda sub: tuple(ec_point_sort_key(P) for P in sub))


# ---------------------------------------------------------------------------
# exhaustive verification of the fixed-point dichotomy


@dataclass(frozen=True)
class FpfDichotomyReport:
    """Exhaustive check of: an automorphism (P, u) is fixed point free iff it
    is a nontrivial pure translation (u = 1 and P != O).

    Fibres of (1 - sigma_u) need not be rational at a fixed finite level, so
    "fixed point free" is tested across a set of levels: a pure translation
    must be free at every level, and every (P, u != 1) must acquire fixed
    points at some tested level.  At each level, a nonempty fixed set of
    (P, u != 1) must be a coset of ker(1 - sigma_u), i.e. have exactly the
    kernel's size.
    """

    curve: ECurve
    levels: tuple[int, ...]
    pairs_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_fpf_dichotomy(E: ECurve, levels: Sequence[int] = (1, 2, 3)) -> FpfDichotomyReport:
    levels = tuple(levels)
    one = fq_one(E.spec)
    base_pts = ec_points(E, 1)
    kernel_size = {
        (u.coeffs, r): len(kernel_one_minus_sigma(E, u, r))
        for u in aut0(E, 1)
        if u != one
        for r in levels
    }
    violations = []
    checked = 0
    for u in aut0(E, 1):
        for P in base_pts:
            if u == one and P.is_zero:
                continue  # identity
            checked += 1
            fibre_sizes = []
            for r in levels:
                ext = extension_field(E.spec, r)
                phi = ECAut(E, ec_point_embed(P, ext), fq_embed(u, ext))
                fibre = aut_fixed_points(E, phi, r)
                fibre_sizes.append(len(fibre))
                if u != one and fibre and len(fibre) != kernel_size[(u.coeffs, r)]:
                    violations.append(
                        f"(P={render_ec_point(P)}, u={render_element(u)}) at r={r}: "
                        f"fibre size {len(fibre)} != kernel size {kernel_size[(u.coeffs, r)]}"
                    )
            free_everywhere = all(s == 0 for s in fibre_sizes)
            expected_free = (u == one) and not P.is_zero
            if free_everywhere != expected_free:
                violations.append(
                    f"(P={render_ec_point(P)}, u={render_element(u)}): fibre sizes {fibre_sizes} "
                    f"across levels {levels}, expected {'free' if expected_free else 'fixed points'}"
                )
    return FpfDichotomyReport(E, levels, checked, tuple(violations))


# ---------------------------------------------------------------------------
# finiteness certificate for prescribed stabilized loci


@dataclass(frozen=True)
class Genus1FinitenessReport:
    """Certificate that only finitely many level-r group actions can have a
    nonempty stabilized locus inside S.

    fixing: the non-identity automorphisms whose (nonempty) fixed locus lies
    inside S.  compatible_translations: per such phi = (P, u), the
    translations psi = (Q, 1) whose composite with phi still has its fixed
    fibre inside S; an empty fibre at level r means the composite's fixed
    points live beyond level r, hence outside S, so such psi are excluded.
    Any admissible action is a subgroup of {identity} + fixing + those
    translations, which bounds the number of actions by 2^admissible_count.
    """

    curve: ECurve
    level: int
    locus: tuple[ECPoint, ...]
    fixing: tuple[tuple[ECAut, tuple[ECPoint, ...]], ...]
    compatible_translations: tuple[tuple[ECAut, tuple[ECPoint, ...]], ...]
    kernel_sizes: tuple[tuple[str, int], ...]
    admissible_count: int
    certified_bound: int


def verify_genus1_finiteness(E: ECurve, S: Sequence[ECPoint], r: int = 1) -> Genus1FinitenessReport:
    if not S:
        raise ValueError("the stabilized locus bound needs a nonempty point set")
    ext = extension_field(E.spec, r)
    S_pts = tuple(sorted({ec_point_embed(P, ext) for P in S}, key=ec_point_sort_key))
    S_set = set(S_pts)
    one = fq_one(ext)

    fixing = []
    seen = set()
    for Q in S_pts:
        for u in aut0(E, r):
            P = ec_sub(E, Q, sigma_apply(u, Q))
            phi = ECAut(E, P, u)
            if phi.is_identity or phi in seen:
                continue
            seen.add(phi)
            fixed = aut_fixed_points(E, phi, r)
            if fixed and set(fixed) <= S_set:
                fixing.append((phi, fixed))
    fixing.sort(key=lambda pair: ec_aut_sort_key(pair[0]))

    compatible = []
    for phi, _ in fixing:
        if phi.u == one:
            continue  # translations have no fixed points; cannot appear here
        good = []
        for Q in ec_points(E, r):
            if Q.is_zero:
                continue
            shifted = ECAut(E, ec_add(E, phi.P, Q), phi.u)
            fibre = aut_fixed_points(E, shifted, r)
            if fibre and set(fibre) <= S_set:
                good.append(Q)
        compatible.append((phi, tuple(sorted(good, key=ec_point_sort_key))))

    kernel_sizes = tuple(
        (render_element(u), len(kernel_one_minus_sigma(E, u, r)))
        for u in aut0(E, r)
        if u != one
    )
    translations = set()
    for _, qs in compatible:
        translations.update(qs)
    admissible = 1 + len(fixing) + len(translations)
    return Genus1FinitenessReport(
        curve=E,
        level=r,
        locus=S_pts,
        fixing=tuple(fixing),
        compatible_translations=tuple(compatible),
        kernel_sizes=kernel_sizes,
        admissible_count=admissible,
        certified_bound=2 ** admissible,
    )


# ---------------------------------------------------------------------------
# the versioned test-curve suite (covers all three Aut_0 sizes)


def standard_test_curves() -> tuple[tuple[str, ECurve], ...]:
    from .gfq import field_make

    F5 = field_make(5, 1)
    F7 = field_make(7, 1)
    F13 = field_make(13, 1)
    return (
        ("F5_j1728", ECurve(F5, fq_one(F5), fq_zero(F5))),
        ("F13_j1728", ECurve(F13, fq_one(F13), fq_zero(F13))),
        ("F7_j0", ECurve(F7, fq_zero(F7), fq_one(F7))),
        ("F5_generic", ECurve(F5, fq_one(F5), fq_one(F5))),
    )


# ---------------------------------------------------------------------------
# text formats


def render_curve(E: ECurve) -> str:
    return f"{render_field_spec(E.spec)}:a={render_element(E.a)},b={render_element(E.b)}"


def parse_curve(text: str) -> ECurve:
    """Parse "p^n:a=...,b=..." (coefficients in element format)."""
    head, _, tail = text.strip().partition(":")
    spec = parse_field_spec(head)
    if not tail.startswith("a="):
        raise ValueError(f"curve spec must look like p^n:a=...,b=..., got {text!r}")
    a_part, sep, b_part = tail[2:].partition(",b=")
    if not sep:
        raise ValueError(f"curve spec must look like p^n:a=...,b=..., got {text!r}")
    return ECurve(spec, parse_element(spec, a_part), parse_element(spec, b_part))


def render_ec_point(P: ECPoint) -> str:
    if P.is_zero:
        return "O"
    return f"({render_element(P.x)},{render_element(P.y)})"


def parse_ec_point(E: ECurve, spec: FieldSpec, text: str) -> ECPoint:
    text = text.strip()
    if text == "O":
        return ec_infinity(spec)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"point must be O or (x,y), got {text!r}")
    inner = text[1:-1]
    parts = [int(t) for t in inner.split(",")]
    if len(parts) != 2 * spec.n:
        raise ValueError(f"point {text!r} does not hold two elements of F_{spec.p}^{spec.n}")
    x = parse_element(spec, ",".join(str(v) for v in parts[: spec.n]))
    y = parse_element(spec, ",".join(str(v) for v in parts[spec.n :]))
    return ec_point(E, x, y)
