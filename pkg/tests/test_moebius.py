import itertools
import random

import pytest

from pglcensus.gfq import (
    field_elements,
    field_make,
    fq_from_int,
    fq_gen,
    fq_one,
    fq_zero,
    render_element,
)
from pglcensus.moebius import (
    mob_apply,
    mob_compose,
    mob_conjugate,
    mob_fixed_points,
    mob_from_three_points,
    mob_identity,
    mob_inverse,
    mob_make,
    mob_order,
    parse_moebius,
    parse_point,
    parse_point_list,
    pgl2_elements,
    poly_map_ramification,
    pp1_affine,
    pp1_infinity,
    pp1_sort_key,
    render_moebius,
    render_point,
    verify_p1fp,
)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F4 = field_make(2, 2)
F5 = field_make(5, 1)


def mk(spec, a, b, c, d):
    return mob_make(*(fq_from_int(spec, v) for v in (a, b, c, d)))


def pt(spec, x):
    return pp1_affine(fq_from_int(spec, x))


class TestMake:
    def test_identity(self):
        m = mk(F5, 1, 0, 0, 1)
        assert m == mob_identity(F5)

    def test_normalization_scales_first_nonzero_to_one(self):
        assert render_moebius(mk(F5, 2, 0, 0, 1)) == "[1,0;0,3]"

    def test_singular_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            mk(F5, 1, 1, 1, 1)

    def test_normalization_soundness_random_scalars(self):
        rng = random.Random(11)
        elems = field_elements(F5)
        for m in itertools.islice(pgl2_elements(F5), 0, 120, 7):
            lam = elems[rng.randrange(1, 5)]
            rescaled = mob_make(*(x * lam for x in (m.a, m.b, m.c, m.d)))
            assert rescaled == m


class TestApply:
    def test_identity_everywhere(self):
        ident = mob_identity(F5)
        for x in field_elements(F5):
            assert mob_apply(ident, pp1_affine(x)) == pp1_affine(x)
        assert mob_apply(ident, pp1_infinity(F5)).is_infinity

    def test_translation_fixes_infinity(self):
        m = mk(F2, 1, 1, 0, 1)
        assert mob_apply(m, pp1_infinity(F2)).is_infinity

    def test_swap_exchanges_zero_and_infinity(self):
        m = mk(F5, 0, 1, 1, 0)
        assert mob_apply(m, pt(F5, 0)).is_infinity
        assert mob_apply(m, pp1_infinity(F5)) == pt(F5, 0)

    def test_point_in_extension_is_embedded(self):
        m = mk(F2, 1, 1, 0, 1)  # x -> x + 1 over F2
        t = fq_gen(F4)
        image = mob_apply(m, pp1_affine(t))
        assert render_element(image.x) == "1,1"  # t + 1


class TestGroupLaw:
    def test_compose_identity(self):
        for m in pgl2_elements(F3):
            assert mob_compose(mob_identity(F3), m) == m

    def test_translation_inverse(self):
        m = mk(F5, 1, 1, 0, 1)
        assert mob_inverse(m) == mk(F5, 1, 4, 0, 1)

    def test_diagonal_scalars_multiply(self):
        assert mob_compose(mk(F5, 1, 0, 0, 2), mk(F5, 1, 0, 0, 3)) == mob_identity(F5)

    def test_compose_matches_pointwise_action(self):
        pts = [pt(F5, k) for k in range(5)] + [pp1_infinity(F5)]
        sample = list(itertools.islice(pgl2_elements(F5), 0, 120, 11))
        for m1, m2 in itertools.product(sample, repeat=2):
            comp = mob_compose(m1, m2)
            for P in pts:
                assert mob_apply(comp, P) == mob_apply(m1, mob_apply(m2, P))

    def test_inverse_is_inverse(self):
        for m in pgl2_elements(F4):
            assert mob_compose(m, mob_inverse(m)) == mob_identity(F4)


class TestOrder:
    def test_identity_order_one(self):
        assert mob_order(mob_identity(F5)) == 1

    @pytest.mark.parametrize("spec", [F2, F3, F5])
    def test_translation_has_order_p(self, spec):
        assert mob_order(mk(spec, 1, 1, 0, 1)) == spec.p

    def test_diagonal_root_of_unity_order(self):
        # diag(zeta_4, 1) over F5 with zeta_4 = 2
        assert mob_order(mk(F5, 2, 0, 0, 1)) == 4


class TestFixedPoints:
    def test_diagonal_fixes_zero_and_infinity(self):
        fixed = mob_fixed_points(mk(F5, 2, 0, 0, 1), 2)
        keys = {render_point(P) for P in fixed}
        assert keys == {"0,0", "inf"}  # rendered over F25

    def test_translation_fixes_only_infinity(self):
        assert [P.is_infinity for P in mob_fixed_points(mk(F5, 1, 1, 0, 1), 2)] == [True]

    def test_inversion_fixes_square_roots_of_minus_one(self):
        fixed = mob_fixed_points(mk(F5, 0, 1, 4, 0), 1)
        assert {P.x.coeffs[0] for P in fixed} == {2, 3}

    def test_identity_signalled(self):
        with pytest.raises(ValueError, match="identity"):
            mob_fixed_points(mob_identity(F5), 2)

    @pytest.mark.parametrize("spec", [F2, F3, F4, F5])
    def test_one_or_two_fixed_points_iff_order_p(self, spec):
        rep = verify_p1fp(spec)
        assert rep.ok, rep.violations
        assert rep.checked == spec.q ** 3 - spec.q - 1

    @pytest.mark.parametrize("spec", [F2, F3, F4, F5])
    def test_conjugation_covariance(self, spec):
        ident = mob_identity(spec)
        all_elems = list(pgl2_elements(spec))
        fixed = {m: set(mob_fixed_points(m, 2)) for m in all_elems if m != ident}
        for g in all_elems:
            for m in all_elems:
                if m == ident:
                    continue
                conj = mob_conjugate(g, m)
                moved = {mob_apply(g, P) for P in fixed[m]}
                assert moved == fixed[conj]


class TestThreePoints:
    def triple(self, spec, *xs):
        return tuple(pp1_infinity(spec) if x == "inf" else pt(spec, x) for x in xs)

    def test_identity_from_same_triple(self):
        tri = self.triple(F5, 0, 1, "inf")
        assert mob_from_three_points(tri, tri) == mob_identity(F5)

    def test_zero_one_inf_to_inf_one_zero_is_inversion(self):
        m = mob_from_three_points(self.triple(F5, 0, 1, "inf"), self.triple(F5, "inf", 1, 0))
        assert mob_apply(m, pt(F5, 0)).is_infinity
        assert mob_apply(m, pt(F5, 1)) == pt(F5, 1)
        assert mob_apply(m, pp1_infinity(F5)) == pt(F5, 0)
        assert m == mk(F5, 0, 1, 1, 0)

    def test_repeated_point_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            mob_from_three_points(self.triple(F5, 0, 1, "inf"), self.triple(F5, 1, 1, "inf"))

    @pytest.mark.parametrize("spec", [F2, F3, F4, F5])
    def test_bijection_with_ordered_triples(self, spec):
        # the map m -> (m(0), m(1), m(inf)) is a bijection onto distinct triples
        base = self.triple(spec, 0, 1, "inf")
        images = {}
        for m in pgl2_elements(spec):
            img = tuple(mob_apply(m, P) for P in base)
            assert img not in images
            images[img] = m
            assert mob_from_three_points(base, img) == m
        points = [pp1_affine(x) for x in field_elements(spec)] + [pp1_infinity(spec)]
        n_triples = len(points) * (len(points) - 1) * (len(points) - 2)
        assert len(images) == n_triples == spec.q ** 3 - spec.q


class TestRamification:
    def poly(self, spec, *ints):
        return [fq_from_int(spec, k) for k in ints]

    def test_squaring_map(self):
        ram = poly_map_ramification(self.poly(F5, 0, 0, 1), 1)
        assert [(render_point(r.point), r.index, r.tame) for r in ram] == [
            ("0", 2, True),
            ("inf", 2, True),
        ]

    def test_frobenius_rejected(self):
        with pytest.raises(ValueError, match="[Ii]nseparable"):
            poly_map_ramification(self.poly(F3, 0, 0, 0, 1), 1)

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError, match="degree"):
            poly_map_ramification(self.poly(F5, 1, 1), 1)

    def test_family_member_over_F3(self):
        # x^5 + x at level 2: infinity with index 5, four points of index 2
        ram = poly_map_ramification(self.poly(F3, 0, 1, 0, 0, 0, 1), 2)
        inf = [r for r in ram if r.point.is_infinity]
        fin = [r for r in ram if not r.point.is_infinity]
        assert len(inf) == 1 and inf[0].index == 5 and inf[0].tame
        assert len(fin) == 4 and all(r.index == 2 and r.tame for r in fin)
        # the finite points are exactly the fourth roots of unity in F9
        ext = fin[0].point.x.spec
        for r in fin:
            x = r.point.x
            assert x * x * x * x == fq_one(ext)

    @pytest.mark.parametrize("p", [3, 5])
    def test_family_locus_independent_of_t(self, p):
        spec = field_make(p, 1)
        loci = []
        for t_val in range(p):
            coeffs = [fq_zero(spec)] * (p + 3)
            coeffs[1] = fq_one(spec)          # x
            coeffs[p] = fq_from_int(spec, t_val)  # t x^p
            coeffs[p + 2] = fq_one(spec)      # x^{p+2}
            ram = poly_map_ramification(coeffs, 2)
            loci.append(tuple((render_point(r.point), r.index, r.tame) for r in ram))
        assert len(set(loci)) == 1


class TestTextFormats:
    def test_moebius_round_trip_prime_field(self):
        for m in pgl2_elements(F5):
            assert parse_moebius(F5, render_moebius(m)) == m

    def test_moebius_round_trip_extension_field(self):
        for m in itertools.islice(pgl2_elements(F4), 0, 60, 7):
            assert parse_moebius(F4, render_moebius(m)) == m

    def test_point_list_mixed(self):
        pts = parse_point_list(F4, "0,1,1,1,inf")
        assert [render_point(P) for P in pts] == ["0,1", "1,1", "inf"]

    def test_point_round_trip(self):
        for x in field_elements(F9 := field_make(3, 2)):
            P = pp1_affine(x)
            assert parse_point(F9, render_point(P)) == P
        assert parse_point(F9, "inf").is_infinity

    def test_sorted_with_infinity_last(self):
        pts = [pp1_infinity(F5)] + [pt(F5, k) for k in (3, 1)]
        ordered = sorted(pts, key=pp1_sort_key)
        assert [render_point(P) for P in ordered] == ["1", "3", "inf"]
