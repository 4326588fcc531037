"""Finite subgroups of PGL2(F_q): construction, invariants, conjugacy.

Constructors are provided for every group in the two classification lists of
finite subgroups of PGL2 over an algebraically closed field of characteristic
p: the p-regular list (cyclic, dihedral, A4, S4, A5 as explicit matrix
groups) and the p-irregular list (PSL2/PGL2 of a subfield, semidirect
products of an additive subgroup with a group of roots of unity, char-2
dihedral groups, char-3 A5).  Groups are stored as canonically sorted element
lists, so equality of subgroups is list equality.

Isomorphism types are discriminated by a cheap fingerprint (order,
element-order multiset, abelian flag) rather than abstract isomorphism
testing; the fingerprint separates all types occurring in the classification
lists at desk scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .gfq import (
    FieldSpec,
    FqElem,
    extension_field,
    field_elements,
    fp_echelon,
    fq_from_coeffs,
    fq_inv,
    fq_mul,
    fq_one,
    fq_pow,
    fq_zero,
    element_order,
    parse_field_spec,
    primitive_root_of_unity,
    render_field_spec,
    roots_of_unity,
)
from .moebius import (
    Moebius,
    PP1,
    mob_compose,
    mob_conjugate,
    mob_embed,
    mob_fixed_points,
    mob_from_three_points,
    mob_identity,
    mob_inverse,
    mob_is_identity,
    mob_make,
    mob_order,
    mob_project,
    mob_sort_key,
    parse_moebius,
    pgl2_elements,
    pp1_infinity,
    pp1_sort_key,
    render_moebius,
    render_point,
)

if TYPE_CHECKING:
    from .census import AdditiveSubgroup


@dataclass(frozen=True)
class SubgroupPGL2:
    """A finite subgroup of PGL2(F_q) as a sorted tuple of normalized maps."""

    spec: FieldSpec
    elements: tuple[Moebius, ...]
    tag: str

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m: Moebius) -> bool:
        cache = self.__dict__.get("_element_set")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_element_set", cache)
        return m in cache

    def __repr__(self) -> str:
        return f"SubgroupPGL2({self.tag}, order {self.order} over {render_field_spec(self.spec)})"


@dataclass(frozen=True)
class Fingerprint:
    order: int
    element_orders: tuple[tuple[int, int], ...]  # (order, count), sorted
    abelian: bool
    p_regular: bool


def _make_subgroup(spec: FieldSpec, elements: Iterable[Moebius], tag: str) -> SubgroupPGL2:
    elems = sorted(set(elements), key=mob_sort_key)
    if mob_identity(spec) not in elems:
        raise ValueError("a subgroup must contain the identity")
    return SubgroupPGL2(spec, tuple(elems), tag)


def close_generators(gens: Sequence[Moebius], cap: Optional[int] = None, tag: str = "unclassified") -> SubgroupPGL2:
    """Breadth-first closure of a generator list under composition."""
    if not gens:
        raise ValueError("need at least one generator")
    spec = gens[0].spec
    for g in gens:
        if g.spec != spec:
            raise ValueError("generators live in different fields")
    if cap is None:
        cap = spec.q ** 3 - spec.q
    seen = {mob_identity(spec)}
    boundary = [g for g in gens if g not in seen]
    seen.update(boundary)
    while boundary:
        fresh = []
        for g in gens:
            for h in boundary:
                prod = mob_compose(g, h)
                if prod not in seen:
                    seen.add(prod)
                    fresh.append(prod)
                    if len(seen) > cap:
                        raise ValueError(f"closure exceeded cap {cap}")
        boundary = fresh
    return _make_subgroup(spec, seen, tag)


def subgroup_embed(H: SubgroupPGL2, target: FieldSpec) -> SubgroupPGL2:
    return _make_subgroup(target, (mob_embed(m, target) for m in H.elements), H.tag)


def subgroup_project(H: SubgroupPGL2, target: FieldSpec) -> Optional[SubgroupPGL2]:
    """Pull the subgroup back to a subfield, or None if any entry is irrational."""
    out = []
    for m in H.elements:
        pm = mob_project(m, target)
        if pm is None:
            return None
        out.append(pm)
    return _make_subgroup(target, out, H.tag)


def conjugate_subgroup(H: SubgroupPGL2, g: Moebius, tag: Optional[str] = None) -> SubgroupPGL2:
    if g.spec != H.spec:
        raise ValueError("conjugator must live in the subgroup's field")
    return _make_subgroup(H.spec, (mob_conjugate(g, m) for m in H.elements), tag or H.tag)


# ---------------------------------------------------------------------------
# standard models


def _diag(spec: FieldSpec, u: FqElem) -> Moebius:
    return mob_make(u, fq_zero(spec), fq_zero(spec), fq_one(spec))


def _swap(spec: FieldSpec) -> Moebius:
    return mob_make(fq_zero(spec), fq_one(spec), fq_one(spec), fq_zero(spec))


def _require_unity(spec: FieldSpec, n: int) -> FqElem:
    """A primitive n-th root of unity, or an error naming the minimal
    sufficient extension degree (fields are never enlarged silently)."""
    return primitive_root_of_unity(spec, n)


def std_cyclic(spec: FieldSpec, n: int) -> SubgroupPGL2:
    """The diagonal group diag(mu_n, 1), cyclic of order n.  Needs p∤n and a
    primitive n-th root of unity in the field."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if n % spec.p == 0:
        raise ValueError(f"characteristic {spec.p} divides {n}: no such cyclic model")
    _require_unity(spec, n)
    mu, _ = roots_of_unity(spec, n)
    return _make_subgroup(spec, (_diag(spec, u) for u in mu), f"cyclic:{n}")


def std_dihedral(spec: FieldSpec, n: int) -> SubgroupPGL2:
    """diag(mu_n, 1) extended by the coordinate swap x -> 1/x: dihedral of
    order 2n.  Requires p != 2 (see std_dihedral_char2 for p = 2)."""
    if spec.p == 2:
        raise ValueError("use std_dihedral_char2 in characteristic 2")
    if n % spec.p == 0:
        raise ValueError(f"characteristic {spec.p} divides {n}")
    H = close_generators([_diag(spec, _require_unity(spec, n)), _swap(spec)])
    if H.order != 2 * n:
        raise AssertionError(f"dihedral closure has order {H.order}, expected {2 * n}")
    return _make_subgroup(spec, H.elements, f"dihedral:{n}")


def std_dihedral_char2(spec: FieldSpec, n: int) -> SubgroupPGL2:
    """The characteristic-2 dihedral model, for odd n > 1."""
    if spec.p != 2:
        raise ValueError("std_dihedral_char2 requires characteristic 2")
    if n % 2 == 0:
        raise ValueError(f"n must be odd, got {n}")
    if n <= 1:
        raise ValueError(f"n must be greater than one, got {n}")
    H = close_generators([_diag(spec, _require_unity(spec, n)), _swap(spec)])
    if H.order != 2 * n:
        raise AssertionError(f"dihedral closure has order {H.order}, expected {2 * n}")
    return _make_subgroup(spec, H.elements, f"dihedral:{n}")


def std_A4(spec: FieldSpec) -> SubgroupPGL2:
    """The tetrahedral group: the Klein group {x, -x, 1/x, -1/x} extended by
    (x + z4)/(x - z4) with z4 a primitive fourth root of unity.  Order 12."""
    if spec.p in (2, 3):
        raise ValueError(f"A4 model excluded in characteristic {spec.p}")
    z4 = _require_unity(spec, 4)
    one, zero = fq_one(spec), fq_zero(spec)
    n1 = mob_make(zero, -one, one, zero)
    n2 = _swap(spec)
    c = mob_make(one, z4, one, -z4)
    H = close_generators([n1, n2, c])
    if H.order != 12:
        raise AssertionError(f"A4 closure has order {H.order}, expected 12")
    return _make_subgroup(spec, H.elements, "A4")


def std_S4(spec: FieldSpec) -> SubgroupPGL2:
    """The octahedral group: the A4 model together with diag(z4, 1).  Order 24."""
    if spec.p in (2, 3):
        raise ValueError(f"S4 model excluded in characteristic {spec.p}")
    z4 = _require_unity(spec, 4)
    A4 = std_A4(spec)
    H = close_generators(list(A4.elements) + [_diag(spec, z4)])
    if H.order != 24:
        raise AssertionError(f"S4 closure has order {H.order}, expected 24")
    return _make_subgroup(spec, H.elements, "S4")


def _a5_generators(spec: FieldSpec) -> list[Moebius]:
    z5 = _require_unity(spec, 5)
    one = fq_one(spec)
    # 1 - z5 - z5^{-1}
    b = fq_one(spec) - z5 - fq_inv(z5)
    return [_diag(spec, z5), mob_make(one, b, one, -one)]


def std_A5(spec: FieldSpec) -> SubgroupPGL2:
    """The icosahedral group, generated by diag(z5, 1) and an involution
    built from 1 - z5 - z5^{-1}.  Order 60; excluded in characteristic 2, 3, 5."""
    if spec.p in (2, 3, 5):
        raise ValueError(f"A5 model excluded in characteristic {spec.p}")
    H = close_generators(_a5_generators(spec))
    if H.order != 60:
        raise AssertionError(f"A5 closure has order {H.order}, expected 60")
    return _make_subgroup(spec, H.elements, "A5")


def std_A5_char3(spec: FieldSpec) -> SubgroupPGL2:
    """The characteristic-3 icosahedral group (same generator shape as std_A5,
    but 3-irregular since 3 | 60).  Needs a primitive fifth root of unity."""
    if spec.p != 3:
        raise ValueError("std_A5_char3 requires characteristic 3")
    H = close_generators(_a5_generators(spec))
    if H.order != 60:
        raise AssertionError(f"A5 closure has order {H.order}, expected 60")
    return _make_subgroup(spec, H.elements, "A5")


def subfield_elements(spec: FieldSpec, sub_degree: int) -> list[FqElem]:
    """Elements of the subfield with p^sub_degree elements: the solutions of
    x^(p^d) = x."""
    if spec.n % sub_degree != 0:
        raise ValueError(f"subfield degree {sub_degree} does not divide {spec.n}")
    q0 = spec.p ** sub_degree
    return [x for x in field_elements(spec) if fq_pow(x, q0) == x]


def _subfield_fp_basis(spec: FieldSpec, sub_degree: int) -> list[FqElem]:
    vecs = [x.coeffs for x in subfield_elements(spec, sub_degree)]
    return [fq_from_coeffs(spec, v) for v in fp_echelon(vecs, spec.p)]


def std_PSL2(spec: FieldSpec, sub_degree: int) -> SubgroupPGL2:
    """PSL2 of the subfield F_{p^d}, generated by the elementary transvections
    over an F_p-basis of the subfield.  Order (q0^3 - q0)/gcd(2, q0 - 1)."""
    basis = _subfield_fp_basis(spec, sub_degree)
    one, zero = fq_one(spec), fq_zero(spec)
    gens = []
    for g in basis:
        gens.append(mob_make(one, g, zero, one))
        gens.append(mob_make(one, zero, g, one))
    H = close_generators(gens)
    return _make_subgroup(spec, H.elements, f"PSL2:{sub_degree}")


def std_PGL2(spec: FieldSpec, sub_degree: int) -> SubgroupPGL2:
    """PGL2 of the subfield F_{p^d}: the PSL2 generators plus diag(delta, 1)
    for delta a multiplicative generator of the subfield.  Order q0^3 - q0."""
    psl = std_PSL2(spec, sub_degree)
    q0 = spec.p ** sub_degree
    delta = None
    for x in subfield_elements(spec, sub_degree):
        if not x.is_zero() and element_order(x) == q0 - 1:
            delta = x
            break
    if delta is None:
        raise AssertionError("subfield has no multiplicative generator (unreachable)")
    H = close_generators(list(psl.elements) + [_diag(spec, delta)])
    return _make_subgroup(spec, H.elements, f"PGL2:{sub_degree}")


def std_gamma_semidirect(gamma: "AdditiveSubgroup", n: int) -> SubgroupPGL2:
    """The group of maps x -> zx + g with z an n-th root of unity and g in the
    additive subgroup gamma.  Requires p∤n, mu_n contained in gamma, and
    mu_n * gamma contained in gamma; the order is n * p^rank(gamma).

    With n = 1 this degenerates to the pure translation group, tagged Zp^m.
    """
    spec = gamma.spec
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n % spec.p == 0:
        raise ValueError(f"characteristic {spec.p} divides {n}")
    _require_unity(spec, n)
    mu, _ = roots_of_unity(spec, n)
    gamma_set = set(gamma.elements())
    for z in mu:
        if z not in gamma_set:
            raise ValueError(f"mu_{n} is not contained in the additive subgroup")
        for g in gamma_set:
            if fq_mul(z, g) not in gamma_set:
                raise ValueError(f"mu_{n} * gamma is not contained in gamma")
    tag = f"Zp^{gamma.rank}" if n == 1 else f"gamma:{gamma.rank}:{n}"
    elems = []
    for z in mu:
        for g in gamma_set:
            elems.append(mob_make(z, g, fq_zero(spec), fq_one(spec)))
    H = _make_subgroup(spec, elems, tag)
    if H.order != n * spec.p ** gamma.rank:
        raise AssertionError(f"semidirect product has order {H.order}, expected {n * spec.p ** gamma.rank}")
    return H


# ---------------------------------------------------------------------------
# invariants


def fingerprint(H: SubgroupPGL2) -> Fingerprint:
    """Order, element-order multiset, abelian flag and p-regularity flag."""
    counts: dict[int, int] = {}
    for m in H.elements:
        k = mob_order(m)
        counts[k] = counts.get(k, 0) + 1
    abelian = True
    elems = H.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if mob_compose(elems[i], elems[j]) != mob_compose(elems[j], elems[i]):
                abelian = False
                break
        if not abelian:
            break
    return Fingerprint(
        order=H.order,
        element_orders=tuple(sorted(counts.items())),
        abelian=abelian,
        p_regular=H.order % H.spec.p != 0,
    )


def stabilized_locus(H: SubgroupPGL2, r: int) -> tuple[PP1, ...]:
    """Points of P^1(F_{q^r}) with non-trivial stabilizer: the union of the
    fixed-point sets of the non-identity elements.  r >= 2 guarantees that
    every stabilized point of the algebraic closure is captured."""
    pts = set()
    for m in H.elements:
        if mob_is_identity(m):
            continue
        pts.update(mob_fixed_points(m, r))
    return tuple(sorted(pts, key=pp1_sort_key))


def _generating_set(H: SubgroupPGL2) -> tuple[Moebius, ...]:
    """A small deterministic generating set, grown greedily in canonical order."""
    ident = mob_identity(H.spec)
    gens: list[Moebius] = []
    span = {ident}
    for m in H.elements:
        if m in span:
            continue
        gens.append(m)
        span = set(close_generators(gens).elements)
        if len(span) == H.order:
            break
    if not gens:  # trivial group
        return (ident,)
    return tuple(gens)


# ---------------------------------------------------------------------------
# conjugacy


def _translation_parts(H: SubgroupPGL2) -> Optional[list[FqElem]]:
    """If every element is a translation x -> x + g, return the g's."""
    out = []
    one = fq_one(H.spec)
    for m in H.elements:
        if m.a == one and m.c.is_zero() and m.d == one:
            out.append(m.b)
        else:
            return None
    return out


def _send_to_infinity(P: PP1) -> Moebius:
    """A map carrying P to infinity: the identity for P = inf, else x -> 1/(x - a)."""
    spec = P.spec
    if P.is_infinity:
        return mob_identity(spec)
    return mob_make(fq_zero(spec), fq_one(spec), fq_one(spec), -P.x)


def _conjugates_onto(g: Moebius, H1: SubgroupPGL2, H2: SubgroupPGL2) -> bool:
    elems2 = set(H2.elements)
    return all(mob_conjugate(g, m) in elems2 for m in H1.elements)


def _simplify_witness(g: Optional[Moebius], base: FieldSpec) -> Optional[Moebius]:
    """Project a conjugator back down to the base field when its entries are
    rational there; otherwise return it over the search field."""
    if g is None or g.spec == base:
        return g
    down = mob_project(g, base)
    return down if down is not None else g


def is_conjugate(H1: SubgroupPGL2, H2: SubgroupPGL2, r: int) -> Optional[Moebius]:
    """Search for g in PGL2(F_{q^r}) with g H1 g^{-1} = H2; returns a verified
    witness (projected back to the base field whenever its entries are
    rational there) or None.

    The search space is cut down by transporter reasoning on stabilized loci:
    a conjugator must map locus onto locus, so for loci of size >= 3 it is
    determined by an ordered triple of images, for size 2 it lies in a
    one-parameter diagonal family, and for size 1 both groups reduce to
    translation groups where conjugacy is scalar scaling of the translation
    sets.  Loci are computed at level r; r >= 2 captures all of them.
    """
    if H1.spec != H2.spec:
        raise ValueError("subgroups must live over the same field")
    if H1.order != H2.order:
        return None
    base = H1.spec
    ext = extension_field(base, r)
    K1 = subgroup_embed(H1, ext)
    K2 = subgroup_embed(H2, ext)
    if H1.order == 1:
        return mob_identity(base)
    L1 = stabilized_locus(H1, r)
    L2 = stabilized_locus(H2, r)
    if len(L1) != len(L2):
        return None

    if len(L1) == 1:
        t1 = _send_to_infinity(L1[0])
        t2 = _send_to_infinity(L2[0])
        U1 = conjugate_subgroup(K1, t1)
        U2 = conjugate_subgroup(K2, t2)
        g1 = _translation_parts(U1)
        g2 = _translation_parts(U2)
        if g1 is None or g2 is None:
            return _simplify_witness(_conjugacy_fallback(K1, K2, ext), base)
        set2 = {x.coeffs for x in g2}
        for alpha in field_elements(ext):
            if alpha.is_zero():
                continue
            if {fq_mul(alpha, x).coeffs for x in g1} == set2:
                g = mob_compose(mob_inverse(t2), mob_compose(_diag(ext, alpha), t1))
                if _conjugates_onto(g, K1, K2):
                    return _simplify_witness(g, base)
        return None

    if len(L1) == 2:
        third1 = next(P for P in _pp1_points(ext) if P not in L1)
        A = mob_from_three_points((L1[0], L1[1], third1), _zero_one_inf_triple(ext))
        for arrangement in ((L2[0], L2[1]), (L2[1], L2[0])):
            third2 = next(P for P in _pp1_points(ext) if P not in L2)
            B = mob_from_three_points((arrangement[0], arrangement[1], third2), _zero_one_inf_triple(ext))
            for lam in field_elements(ext):
                if lam.is_zero():
                    continue
                g = mob_compose(mob_inverse(B), mob_compose(_diag(ext, lam), A))
                if _conjugates_onto(g, K1, K2):
                    return _simplify_witness(g, base)
        return None

    if len(L1) >= 3:
        src = L1[:3]
        for i, P in enumerate(L2):
            for j, Q in enumerate(L2):
                if j == i:
                    continue
                for k, R in enumerate(L2):
                    if k in (i, j):
                        continue
                    g = mob_from_three_points(src, (P, Q, R))
                    if _conjugates_onto(g, K1, K2):
                        return _simplify_witness(g, base)
        return None

    # empty loci at this level (all fixed points irrational): fall back
    return _simplify_witness(_conjugacy_fallback(K1, K2, ext), base)


def _zero_one_inf_triple(spec: FieldSpec):
    from .moebius import pp1_affine

    return (pp1_affine(fq_zero(spec)), pp1_affine(fq_one(spec)), pp1_infinity(spec))


def _pp1_points(spec: FieldSpec):
    from .moebius import pp1_affine

    for x in field_elements(spec):
        yield pp1_affine(x)
    yield pp1_infinity(spec)


_BRUTE_FORCE_CAP = 30


def _conjugacy_fallback(K1: SubgroupPGL2, K2: SubgroupPGL2, ext: FieldSpec) -> Optional[Moebius]:
    if ext.q > _BRUTE_FORCE_CAP:
        raise ValueError(
            f"conjugacy search degenerate at this level and q^r = {ext.q} exceeds "
            f"the brute-force cap {_BRUTE_FORCE_CAP}; raise r"
        )
    return _bruteforce_search(K1, K2)


def _bruteforce_search(K1: SubgroupPGL2, K2: SubgroupPGL2) -> Optional[Moebius]:
    gens = _generating_set(K1)
    elems2 = set(K2.elements)
    for g in pgl2_elements(K1.spec):
        if all(mob_conjugate(g, m) in elems2 for m in gens):
            if _conjugates_onto(g, K1, K2):
                return g
    return None


def is_conjugate_bruteforce(H1: SubgroupPGL2, H2: SubgroupPGL2, r: int) -> Optional[Moebius]:
    """Independent oracle: scan every element of PGL2(F_{q^r}) for a conjugator."""
    if H1.spec != H2.spec:
        raise ValueError("subgroups must live over the same field")
    if H1.order != H2.order:
        return None
    ext = extension_field(H1.spec, r)
    g = _bruteforce_search(subgroup_embed(H1, ext), subgroup_embed(H2, ext))
    return _simplify_witness(g, H1.spec)


# ---------------------------------------------------------------------------
# serialization


def subgroup_to_json(H: SubgroupPGL2, locus_ext: int = 2) -> dict:
    locus = stabilized_locus(H, locus_ext)
    locus_field = extension_field(H.spec, locus_ext)
    return {
        "field": render_field_spec(H.spec),
        "tag": H.tag,
        "generators": [render_moebius(m) for m in _generating_set(H)],
        "order": H.order,
        "locus": [render_point(P) for P in locus],
        "locus_field": render_field_spec(locus_field),
        "locus_ext": locus_ext,
    }


def subgroup_from_json(data: dict) -> SubgroupPGL2:
    spec = parse_field_spec(data["field"])
    gens = [parse_moebius(spec, g) for g in data["generators"]]
    H = close_generators(gens, tag=data["tag"])
    if H.order != data["order"]:
        raise ValueError(f"generator closure has order {H.order}, record says {data['order']}")
    return H


def subgroup_dumps(H: SubgroupPGL2, locus_ext: int = 2) -> str:
    return json.dumps(subgroup_to_json(H, locus_ext), sort_keys=True)
