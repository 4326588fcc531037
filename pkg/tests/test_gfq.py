import itertools
import math
import random

import pytest

from pglcensus.gfq import (
    FieldSpec,
    field_elements,
    field_make,
    fp_echelon,
    fq_add,
    fq_embed,
    fq_from_int,
    fq_gen,
    fq_inv,
    fq_mul,
    fq_one,
    fq_pow,
    fq_project,
    fq_sub,
    fq_zero,
    extension_field,
    minimal_extension_for_unity,
    parse_element,
    parse_field_spec,
    poly_eval,
    poly_roots,
    primitive_root_of_unity,
    render_element,
    render_field_spec,
    roots_of_unity,
)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F4 = field_make(2, 2)
F5 = field_make(5, 1)
F8 = field_make(2, 3)
F9 = field_make(3, 2)


def els(spec, *ints):
    return [fq_from_int(spec, k) for k in ints]


class TestFieldMake:
    def test_prime_field_auto_modulus_is_x(self):
        assert F2.modulus == (0, 1)

    def test_explicit_irreducible_modulus_accepted(self):
        spec = field_make(2, 2, [1, 1, 1])
        assert spec.modulus == (1, 1, 1)
        assert spec == F4  # auto picks the same polynomial

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError, match="reducible"):
            field_make(2, 2, [0, 0, 1])  # t^2 = t * t

    def test_nonprime_characteristic_rejected(self):
        with pytest.raises(ValueError, match="not prime"):
            field_make(6, 1)

    def test_q_derived(self):
        assert F9.q == 9 and F8.q == 8

    def test_auto_modulus_is_lexicographically_smallest(self):
        # oracle: filter the full candidate list
        for spec in (F4, F8, F9):
            p, n = spec.p, spec.n
            winner = None
            for tail in itertools.product(range(p), repeat=n):
                cand = tail + (1,)
                try:
                    FieldSpec(p, n, cand)
                except ValueError:
                    continue
                winner = cand
                break
            assert spec.modulus == winner


class TestArithmeticExamples:
    def test_add_char2(self):
        t = fq_gen(F4)
        assert fq_add(t, t) == fq_zero(F4)

    def test_add_mod5(self):
        a, b = els(F5, 3, 4)
        assert fq_add(a, b) == fq_from_int(F5, 2)

    def test_add_basis(self):
        t = fq_gen(F4)
        assert fq_add(t, fq_one(F4)).coeffs == (1, 1)

    def test_mul_reduction(self):
        t = fq_gen(F4)
        assert fq_mul(t, fq_add(t, fq_one(F4))) == fq_one(F4)
        assert fq_mul(t, t).coeffs == (1, 1)  # t^2 = t + 1

    def test_mul_identity(self):
        for x in field_elements(F9):
            assert fq_mul(x, fq_one(F9)) == x

    def test_inv(self):
        t = fq_gen(F4)
        assert fq_inv(fq_one(F4)) == fq_one(F4)
        assert fq_inv(t).coeffs == (1, 1)
        with pytest.raises(ZeroDivisionError):
            fq_inv(fq_zero(F4))

    def test_spec_mismatch_rejected(self):
        with pytest.raises(ValueError, match="mismatch"):
            fq_add(fq_one(F4), fq_one(F5))


class TestFieldAxioms:
    @pytest.mark.parametrize("spec", [F2, F3, F4, F5, F8, F9], ids=lambda s: f"q{s.q}")
    def test_axioms_exhaustive(self, spec):
        xs = field_elements(spec)
        zero, one = fq_zero(spec), fq_one(spec)
        for a in xs:
            assert fq_add(a, zero) == a
            assert fq_mul(a, one) == a
            if not a.is_zero():
                assert fq_mul(a, fq_inv(a)) == one
        for a, b in itertools.product(xs, repeat=2):
            assert fq_add(a, b) == fq_add(b, a)
            assert fq_mul(a, b) == fq_mul(b, a)
        for a, b, c in itertools.product(xs, repeat=3):
            assert fq_add(fq_add(a, b), c) == fq_add(a, fq_add(b, c))
            assert fq_mul(fq_mul(a, b), c) == fq_mul(a, fq_mul(b, c))
            assert fq_mul(a, fq_add(b, c)) == fq_add(fq_mul(a, b), fq_mul(a, c))

    @pytest.mark.parametrize(
        "spec", [F2, F3, F4, F5, F8, F9, field_make(2, 4), field_make(2, 6), field_make(7, 1)],
        ids=lambda s: f"q{s.q}",
    )
    def test_frobenius_and_xq(self, spec):
        p, q = spec.p, spec.q
        xs = field_elements(spec)
        for a in xs:
            assert fq_pow(a, q) == a
        for a, b in itertools.product(xs, repeat=2):
            assert fq_pow(fq_add(a, b), p) == fq_add(fq_pow(a, p), fq_pow(b, p))
            assert fq_pow(fq_mul(a, b), p) == fq_mul(fq_pow(a, p), fq_pow(b, p))


class TestEmbeddings:
    def test_prime_subfield(self):
        assert fq_embed(fq_one(F2), F4) == fq_one(F4)

    def test_generator_goes_to_first_root(self):
        F16 = field_make(2, 4)
        t = fq_gen(F4)
        img = fq_embed(t, F16)
        # oracle: scan F16 for roots of t^2 + t + 1 in canonical order
        roots = [
            x
            for x in field_elements(F16)
            if fq_add(fq_add(fq_mul(x, x), x), fq_one(F16)).is_zero()
        ]
        assert img == roots[0]

    def test_incompatible_degrees_rejected(self):
        with pytest.raises(ValueError, match="does not divide"):
            fq_embed(fq_gen(F4), F8)
        with pytest.raises(ValueError, match="characteristic"):
            fq_embed(fq_one(F4), F9)

    @pytest.mark.parametrize("src,dst", [(F2, F4), (F4, field_make(2, 4)), (F3, F9)])
    def test_embedding_is_a_homomorphism(self, src, dst):
        for a, b in itertools.product(field_elements(src), repeat=2):
            assert fq_embed(fq_add(a, b), dst) == fq_add(fq_embed(a, dst), fq_embed(b, dst))
            assert fq_embed(fq_mul(a, b), dst) == fq_mul(fq_embed(a, dst), fq_embed(b, dst))

    def test_project_inverts_embed(self):
        F16 = field_make(2, 4)
        for a in field_elements(F4):
            assert fq_project(fq_embed(a, F16), F4) == a
        # an element outside the subfield projects to None
        outside = next(
            x for x in field_elements(F16) if fq_project(x, F4) is None
        )
        assert fq_pow(outside, 4) != outside

    def test_extension_field_levels(self):
        assert extension_field(F5, 1) == F5
        assert extension_field(F4, 2) == field_make(2, 4)


class TestRootsOfUnity:
    def test_mu3_in_F4(self):
        roots, primitive = roots_of_unity(F4, 3)
        assert {render_element(x) for x in roots} == {"1,0", "0,1", "1,1"}
        assert primitive

    def test_mu4_in_F5(self):
        roots, primitive = roots_of_unity(F5, 4)
        assert [x.coeffs[0] for x in roots] == [1, 2, 3, 4]
        assert primitive

    def test_mu1(self):
        for spec in (F4, F5, F9):
            roots, primitive = roots_of_unity(spec, 1)
            assert roots == [fq_one(spec)] and primitive

    def test_zero_n_rejected(self):
        with pytest.raises(ValueError):
            roots_of_unity(F5, 0)

    @pytest.mark.parametrize("spec", [F3, F4, F5, F8, F9])
    def test_cardinality_is_gcd(self, spec):
        for n in range(1, 13):
            roots, _ = roots_of_unity(spec, n)
            assert len(roots) == math.gcd(n, spec.q - 1)

    def test_primitive_root_errors_name_minimal_extension(self):
        with pytest.raises(ValueError, match="extension degree is 2"):
            primitive_root_of_unity(F5, 3)  # 3 | 25 - 1 but not 5 - 1
        assert minimal_extension_for_unity(F5, 3) == 2
        with pytest.raises(ValueError, match="characteristic"):
            primitive_root_of_unity(F5, 5)


class TestPolyRoots:
    def test_quadratic_over_F5(self):
        f = els(F5, 1, 0, 1)  # x^2 + 1
        roots = poly_roots(f, 1)
        assert [(x.coeffs[0], m) for x, m in roots] == [(2, 1), (3, 1)]

    def test_double_root(self):
        f = [fq_zero(F5), fq_zero(F5), fq_one(F5)]  # x^2
        assert poly_roots(f, 1) == [(fq_zero(F5), 2)]

    def test_roots_appear_in_the_right_extension(self):
        f = els(F2, 1, 1, 1)  # x^2 + x + 1
        assert poly_roots(f, 1) == []
        roots = poly_roots(f, 2)
        assert {x.coeffs for x, _ in roots} == {(0, 1), (1, 1)}
        assert all(m == 1 for _, m in roots)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            poly_roots([fq_zero(F5)], 1)

    def test_multiplicities_sum_to_degree_when_split(self):
        # (x - 1)^2 (x - 2) over F5
        one, two = els(F5, 1, 2)
        f = els(F5, (-2) % 5, 5, (2 * 1 + 1 * 2 + 1 * 1) % 5, 1)
        # build honestly by multiplying out instead
        def polymul(a, b):
            out = [fq_zero(F5)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    out[i + j] = fq_add(out[i + j], fq_mul(ai, bj))
            return out

        lin1 = [fq_sub(fq_zero(F5), one), fq_one(F5)]
        lin2 = [fq_sub(fq_zero(F5), two), fq_one(F5)]
        f = polymul(polymul(lin1, lin1), lin2)
        roots = dict((x.coeffs[0], m) for x, m in poly_roots(f, 1))
        assert roots == {1: 2, 2: 1}


class TestEchelon:
    def test_canonical_form_is_span_invariant(self):
        rng = random.Random(7)
        p, n = 2, 4
        for _ in range(50):
            vecs = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(3)]
            base = fp_echelon(vecs, p)
            # a different spanning set: sums of pairs plus originals, shuffled
            alt = list(vecs) + [
                tuple((a + b) % p for a, b in zip(vecs[0], vecs[1])),
                tuple((a + b) % p for a, b in zip(vecs[1], vecs[2])),
            ]
            rng.shuffle(alt)
            assert fp_echelon(alt, p) == base

    def test_drops_zero_rows(self):
        assert fp_echelon([(0, 0), (1, 1)], 2) == ((1, 1),)


class TestTextFormats:
    @pytest.mark.parametrize("spec", [F2, F5, F4, F9, field_make(2, 2, [1, 1, 1])])
    def test_field_spec_round_trip(self, spec):
        assert parse_field_spec(render_field_spec(spec)) == spec

    def test_explicit_modulus_rendering(self):
        # a non-auto modulus must render explicitly
        spec = field_make(3, 2, [2, 1, 1])  # t^2 + t + 2 irreducible over F3
        text = render_field_spec(spec)
        assert "/" in text
        assert parse_field_spec(text) == spec

    @pytest.mark.parametrize("spec", [F5, F9])
    def test_element_round_trip(self, spec):
        for x in field_elements(spec):
            assert parse_element(spec, render_element(x)) == x

    def test_bad_element_width(self):
        with pytest.raises(ValueError):
            parse_element(F9, "1")
