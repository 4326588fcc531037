"""The projective line over F_q and its fractional linear self-maps.

An element of PGL2(F_q) is stored as a normalized 2x2 matrix: the class
representative is scaled so that the first nonzero entry in scan order
(a, b, c, d) equals 1, which makes equality, hashing and sorted subgroup
listings well defined.

Points of P^1 are either affine, with a single field coordinate (projective
[x:1]), or the point at infinity [1:0].  Fixed points of a non-identity map
are eigen-directions of its matrix; since the characteristic polynomial is
quadratic, extension degree r = 2 always suffices to capture every fixed
point of the algebraic closure.

Text formats: a map is "[a,b;c,d]" where each row holds the 2n coefficients
of its two entries; a point is "inf" or an element in coefficient form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .gfq import (
    FieldSpec,
    FqElem,
    extension_field,
    field_elements,
    fq_add,
    fq_div,
    fq_embed,
    fq_inv,
    fq_mul,
    fq_neg,
    fq_one,
    fq_project,
    fq_sub,
    fq_zero,
    parse_element,
    poly_deriv,
    poly_embed,
    poly_eval,
    poly_is_zero,
    poly_roots,
    poly_trim,
    render_element,
    root_multiplicity,
)


@dataclass(frozen=True)
class PP1:
    """A point of P^1(F_q): affine with coordinate x, or infinity (x is None)."""

    spec: FieldSpec
    x: Optional[FqElem]

    def __post_init__(self):
        if self.x is not None and self.x.spec != self.spec:
            raise ValueError("point coordinate lives in the wrong field")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return f"PP1({render_point(self)})"


def pp1_affine(x: FqElem) -> PP1:
    return PP1(x.spec, x)


def pp1_infinity(spec: FieldSpec) -> PP1:
    return PP1(spec, None)


def pp1_sort_key(P: PP1):
    # affine points in coefficient order first, infinity last
    if P.is_infinity:
        return (1, ())
    return (0, P.x.coeffs)


def pp1_embed(P: PP1, target: FieldSpec) -> PP1:
    if P.is_infinity:
        return pp1_infinity(target)
    return pp1_affine(fq_embed(P.x, target))


def render_point(P: PP1) -> str:
    return "inf" if P.is_infinity else render_element(P.x)


def parse_point(spec: FieldSpec, text: str) -> PP1:
    text = text.strip()
    if text == "inf":
        return pp1_infinity(spec)
    return pp1_affine(parse_element(spec, text))


def parse_point_list(spec: FieldSpec, text: str) -> list[PP1]:
    """Parse a comma-separated point list.  The token "inf" is a point; any
    other run of spec.n consecutive integer tokens is one affine coordinate."""
    tokens = [t.strip() for t in text.split(",") if t.strip() != ""]
    points = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "inf":
            points.append(pp1_infinity(spec))
            i += 1
        else:
            chunk = tokens[i : i + spec.n]
            if len(chunk) < spec.n or any(t == "inf" for t in chunk):
                raise ValueError(f"point list {text!r} does not split into {spec.n}-coefficient points")
            points.append(pp1_affine(parse_element(spec, ",".join(chunk))))
            i += spec.n
    return points


@dataclass(frozen=True)
class Moebius:
    """Normalized representative of an element of PGL2(F_q)."""

    spec: FieldSpec
    a: FqElem
    b: FqElem
    c: FqElem
    d: FqElem

    def __repr__(self) -> str:
        return f"Moebius({render_moebius(self)})"


def mob_make(a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Moebius:
    """Build the PGL2 class of [[a,b],[c,d]]; rejects singular matrices."""
    spec = a.spec
    for entry in (b, c, d):
        if entry.spec != spec:
            raise ValueError("matrix entries live in different fields")
    det = fq_sub(fq_mul(a, d), fq_mul(b, c))
    if det.is_zero():
        raise ValueError("singular matrix does not define a Moebius map")
    for entry in (a, b, c, d):
        if not entry.is_zero():
            scale = fq_inv(entry)
            return Moebius(
                spec,
                fq_mul(a, scale),
                fq_mul(b, scale),
                fq_mul(c, scale),
                fq_mul(d, scale),
            )
    raise AssertionError("nonsingular matrix with all entries zero (unreachable)")


@lru_cache(maxsize=None)
def mob_identity(spec: FieldSpec) -> Moebius:
    one, zero = fq_one(spec), fq_zero(spec)
    return Moebius(spec, one, zero, zero, one)


def mob_is_identity(m: Moebius) -> bool:
    return m == mob_identity(m.spec)


def mob_embed(m: Moebius, target: FieldSpec) -> Moebius:
    return mob_make(
        fq_embed(m.a, target),
        fq_embed(m.b, target),
        fq_embed(m.c, target),
        fq_embed(m.d, target),
    )


def mob_project(m: Moebius, target: FieldSpec) -> Optional[Moebius]:
    """Pull the map back to a subfield when every entry is rational there."""
    entries = [fq_project(e, target) for e in (m.a, m.b, m.c, m.d)]
    if any(e is None for e in entries):
        return None
    return mob_make(*entries)


def mob_sort_key(m: Moebius):
    return (m.a.coeffs, m.b.coeffs, m.c.coeffs, m.d.coeffs)


def mob_apply(m: Moebius, P: PP1) -> PP1:
    """Matrix action on projective coordinates.  If the map and the point live
    in different but compatible fields, the smaller one is embedded."""
    if m.spec != P.spec:
        if P.spec.n % m.spec.n == 0 and P.spec.p == m.spec.p:
            m = mob_embed(m, P.spec)
        elif m.spec.n % P.spec.n == 0 and m.spec.p == P.spec.p:
            P = pp1_embed(P, m.spec)
        else:
            raise ValueError(f"incompatible fields: map over {m.spec!r}, point over {P.spec!r}")
    if P.is_infinity:
        # [1:0] -> [a:c]
        if m.c.is_zero():
            return pp1_infinity(m.spec)
        return pp1_affine(fq_div(m.a, m.c))
    num = fq_add(fq_mul(m.a, P.x), m.b)
    den = fq_add(fq_mul(m.c, P.x), m.d)
    if den.is_zero():
        return pp1_infinity(m.spec)
    return pp1_affine(fq_div(num, den))


@lru_cache(maxsize=1 << 18)
def mob_compose(m1: Moebius, m2: Moebius) -> Moebius:
    """Composition m1 after m2 (matrix product M1*M2).  Memoized: closure,
    order and conjugacy searches revisit the same products constantly."""
    if m1.spec != m2.spec:
        raise ValueError("cannot compose maps over different fields")
    return mob_make(
        fq_add(fq_mul(m1.a, m2.a), fq_mul(m1.b, m2.c)),
        fq_add(fq_mul(m1.a, m2.b), fq_mul(m1.b, m2.d)),
        fq_add(fq_mul(m1.c, m2.a), fq_mul(m1.d, m2.c)),
        fq_add(fq_mul(m1.c, m2.b), fq_mul(m1.d, m2.d)),
    )


def mob_inverse(m: Moebius) -> Moebius:
    return mob_make(m.d, fq_neg(m.b), fq_neg(m.c), m.a)


def mob_conjugate(g: Moebius, m: Moebius) -> Moebius:
    """g m g^{-1}."""
    return mob_compose(mob_compose(g, m), mob_inverse(g))


def mob_order(m: Moebius) -> int:
    """Order in PGL2(F_q); always at most q^3 - q."""
    ident = mob_identity(m.spec)
    cap = m.spec.q ** 3 - m.spec.q
    x = m
    k = 1
    while x != ident:
        x = mob_compose(x, m)
        k += 1
        if k > max(cap, 1):
            raise AssertionError("order exceeded |PGL2|, matrix arithmetic is broken")
    return k


def mob_fixed_points(m: Moebius, r: int) -> list[PP1]:
    """Fixed points of a non-identity map in P^1(F_{q^r}), canonically sorted.

    These are the eigen-directions of the matrix: affine solutions of
    c x^2 + (d-a) x - b = 0 plus infinity when c = 0.  Taking r >= 2 captures
    every fixed point of the algebraic closure; the result then has exactly
    one or two points.
    """
    if mob_is_identity(m):
        raise ValueError("the identity fixes every point of P^1")
    ext = extension_field(m.spec, r)
    pts = []
    if m.c.is_zero():
        pts.append(pp1_infinity(ext))
    quad = poly_trim([fq_neg(m.b), fq_sub(m.d, m.a), m.c])
    if not poly_is_zero(quad):
        for root, _ in poly_roots(quad, r):
            pts.append(pp1_affine(root))
    return sorted(pts, key=pp1_sort_key)


def _to_zero_one_inf(z1: PP1, z2: PP1, z3: PP1) -> Moebius:
    """The unique map sending (z1, z2, z3) to (0, 1, inf)."""
    spec = z1.spec
    one = fq_one(spec)
    zero = fq_zero(spec)
    if z1.is_infinity:
        # x -> (z2 - z3) / (x - z3)
        return mob_make(zero, fq_sub(z2.x, z3.x), one, fq_neg(z3.x))
    if z2.is_infinity:
        # x -> (x - z1) / (x - z3)
        return mob_make(one, fq_neg(z1.x), one, fq_neg(z3.x))
    if z3.is_infinity:
        # x -> (x - z1) / (z2 - z1)
        return mob_make(one, fq_neg(z1.x), zero, fq_sub(z2.x, z1.x))
    # x -> ((x - z1)(z2 - z3)) / ((x - z3)(z2 - z1))
    u = fq_sub(z2.x, z3.x)
    v = fq_sub(z2.x, z1.x)
    return mob_make(u, fq_neg(fq_mul(z1.x, u)), v, fq_neg(fq_mul(z3.x, v)))


def mob_from_three_points(src: Sequence[PP1], dst: Sequence[PP1]) -> Moebius:
    """The unique Moebius map sending the ordered triple src to dst."""
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("need exactly three source and three destination points")
    if len({pp1_sort_key(P) for P in src}) != 3:
        raise ValueError("source points must be pairwise distinct")
    if len({pp1_sort_key(P) for P in dst}) != 3:
        raise ValueError("destination points must be pairwise distinct")
    spec = src[0].spec
    for P in list(src) + list(dst):
        if P.spec != spec:
            raise ValueError("all six points must live in one field")
    return mob_compose(mob_inverse(_to_zero_one_inf(*dst)), _to_zero_one_inf(*src))


def pgl2_elements(spec: FieldSpec) -> Iterator[Moebius]:
    """All q^3 - q elements of PGL2(F_q) as normalized matrices, in canonical
    (lexicographic entry) order."""
    one = fq_one(spec)
    elems = field_elements(spec)
    # first nonzero entry is a: a = 1, d - bc != 0
    # first nonzero entry is b: a = 0, b = 1, c != 0
    zero = fq_zero(spec)
    for c in elems:
        if c.is_zero():
            continue
        for d in elems:
            yield Moebius(spec, zero, one, c, d)
    for b in elems:
        for c in elems:
            bc = fq_mul(b, c)
            for d in elems:
                if d != bc:
                    yield Moebius(spec, one, b, c, d)


def render_moebius(m: Moebius) -> str:
    row1 = ",".join([render_element(m.a), render_element(m.b)])
    row2 = ",".join([render_element(m.c), render_element(m.d)])
    return f"[{row1};{row2}]"


def parse_moebius(spec: FieldSpec, text: str) -> Moebius:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"Moebius map must look like [a,b;c,d], got {text!r}")
    rows = text[1:-1].split(";")
    if len(rows) != 2:
        raise ValueError(f"Moebius map needs two rows, got {text!r}")
    entries = []
    for row in rows:
        parts = [int(t) for t in row.split(",")]
        if len(parts) != 2 * spec.n:
            raise ValueError(f"row {row!r} does not hold two elements of F_{spec.p}^{spec.n}")
        entries.append(parse_element(spec, ",".join(str(x) for x in parts[: spec.n])))
        entries.append(parse_element(spec, ",".join(str(x) for x in parts[spec.n :])))
    return mob_make(*entries)


# ---------------------------------------------------------------------------
# ramification of polynomial self-maps of P^1


@dataclass(frozen=True)
class RamPoint:
    """A ramification point of a polynomial map: where it lives, its index e,
    and whether the ramification is tame (p does not divide e)."""

    point: PP1
    index: int
    tame: bool

    def __post_init__(self):
        if self.index < 2:
            raise ValueError("ramification index must be >= 2")


def poly_map_ramification(coeffs: Sequence[FqElem], r: int) -> list[RamPoint]:
    """Ramification locus in P^1(F_{q^r}) of the map x -> f(x), deg f >= 2.

    The index at x0 is the multiplicity of (x - x0) in f(x) - f(x0), which is
    correct in wild cases where the derivative count fails; the map totally
    ramifies at infinity with index deg f.  Inseparable maps (f' = 0) are
    rejected.
    """
    spec = coeffs[0].spec
    f = poly_trim(coeffs)
    deg = len(f) - 1
    if deg < 2:
        raise ValueError(f"polynomial map must have degree >= 2, got degree {deg}")
    fprime = poly_deriv(f)
    if poly_is_zero(fprime):
        raise ValueError("inseparable map: the derivative vanishes identically")
    ext = extension_field(spec, r)
    f_ext = poly_embed(f, ext)
    out = []
    # affine ramification points are exactly the zeros of f'
    for x0, _ in poly_roots(fprime, r):
        shifted = list(f_ext)
        shifted[0] = fq_sub(shifted[0], poly_eval(f_ext, x0))
        e = root_multiplicity(shifted, x0)
        if e < 2:
            raise AssertionError("zero of f' with multiplicity < 2 (unreachable)")
        out.append(RamPoint(pp1_affine(x0), e, e % spec.p != 0))
    out.append(RamPoint(pp1_infinity(ext), deg, deg % spec.p != 0))
    return sorted(out, key=lambda rp: pp1_sort_key(rp.point))


# ---------------------------------------------------------------------------
# exhaustive fixed-point census over one field


@dataclass(frozen=True)
class P1FPReport:
    """Result of scanning all of PGL2(F_q): every non-identity element must
    have one or two fixed points over F_{q^2}, with exactly one precisely for
    the elements of order p."""

    spec: FieldSpec
    group_order: int
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_p1fp(spec: FieldSpec) -> P1FPReport:
    ident = mob_identity(spec)
    checked = 0
    violations = []
    for m in pgl2_elements(spec):
        if m == ident:
            continue
        checked += 1
        fixed = mob_fixed_points(m, 2)
        order = mob_order(m)
        if len(fixed) not in (1, 2):
            violations.append(f"{render_moebius(m)}: {len(fixed)} fixed points")
        if (len(fixed) == 1) != (order == spec.p):
            violations.append(
                f"{render_moebius(m)}: order {order} with {len(fixed)} fixed points"
            )
    return P1FPReport(spec, spec.q ** 3 - spec.q, checked, tuple(violations))
