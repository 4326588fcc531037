"""Exact arithmetic in finite fields F_{p^n}.

Elements are coefficient vectors (constant term first) modulo a fixed monic
irreducible polynomial over F_p.  All arithmetic is exact integer arithmetic;
fields stay at desk scale (q up to ~10^4), so irreducibility testing, root
finding and subfield embeddings are done by exhaustive methods rather than
probabilistic factorization.

Conventions used throughout the package:

* elements are ordered lexicographically by coefficient vector,
* the "auto" modulus of F_{p^n} is the lexicographically smallest monic
  irreducible polynomial of degree n over F_p,
* extension fields are never entered silently: any operation whose result may
  live outside the base field takes an explicit extension degree r, and the
  extension F_{q^r} is realized as the auto field of degree n*r over F_p.

Text formats (shared with the CLI): a field is "p^n" (auto modulus) or
"p^n/c0,c1,...,cn" (explicit modulus, constant term first); an element is
"c0,c1,...,c{n-1}".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomials over F_p, represented as int tuples with constant term first


def _pp_trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pp_add(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] + bi) % p
    return _pp_trim(out)


def _pp_sub(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    return _pp_add(a, [(-bi) % p for bi in b], p)


def _pp_scale(a: Sequence[int], c: int, p: int) -> tuple[int, ...]:
    return _pp_trim([(ai * c) % p for ai in a])


def _pp_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = list(_pp_trim(a))
    b = _pp_trim(b)
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(1, len(a) - db)
    da = len(a) - 1
    while da >= db and _pp_trim(a) != (0,):
        if a[da] == 0:
            da -= 1
            continue
        c = (a[da] * inv_lead) % p
        quot[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        da -= 1
    return _pp_trim(quot), _pp_trim(a)


def _pp_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    return _pp_divmod(a, m, p)[1]


def _pp_xgcd(a: Sequence[int], b: Sequence[int], p: int):
    """Extended gcd over F_p[x]: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _pp_trim(a), _pp_trim(b)
    s0, s1 = (1,), (0,)
    t0, t1 = (0,), (1,)
    while r1 != (0,):
        q, r = _pp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pp_sub(s0, _pp_mul(q, s1, p), p)
        t0, t1 = t1, _pp_sub(t0, _pp_mul(q, t1, p), p)
    if r0 != (0,) and r0[-1] != 1:
        c = pow(r0[-1], p - 2, p)
        r0, s0, t0 = _pp_scale(r0, c, p), _pp_scale(s0, c, p), _pp_scale(t0, c, p)
    return r0, s0, t0


def _pp_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg(f)/2."""
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if _pp_mod(f, g, p) == (0,):
                return False
    return True


# ---------------------------------------------------------------------------
# field specifications and elements


@dataclass(frozen=True)
class FieldSpec:
    """A concrete presentation of F_{p^n}: prime p, degree n, monic irreducible
    modulus of degree n over F_p (constant term first, length n+1)."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.n}")
        m = self.modulus
        if len(m) != self.n + 1:
            raise ValueError(f"modulus must have degree {self.n} (length {self.n + 1}), got {m}")
        if any(not (0 <= c < self.p) for c in m):
            raise ValueError(f"modulus coefficients must lie in [0, {self.p}), got {m}")
        if m[-1] != 1:
            raise ValueError(f"modulus must be monic, got {m}")
        if not _pp_is_irreducible(m, self.p):
            raise ValueError(f"modulus {m} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.n

    def __repr__(self) -> str:
        return f"FieldSpec({render_field_spec(self)})"


@dataclass(frozen=True)
class FqElem:
    """Element of F_{p^n} as a length-n coefficient vector, constant term first."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.n:
            raise ValueError(f"element needs {self.spec.n} coefficients, got {self.coeffs}")
        if any(not (0 <= c < self.spec.p) for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.spec.p}), got {self.coeffs}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: FqElem) -> FqElem:
        return fq_add(self, other)

    def __sub__(self, other: FqElem) -> FqElem:
        return fq_sub(self, other)

    def __mul__(self, other: FqElem) -> FqElem:
        return fq_mul(self, other)

    def __truediv__(self, other: FqElem) -> FqElem:
        return fq_mul(self, fq_inv(other))

    def __neg__(self) -> FqElem:
        return fq_neg(self)

    def __pow__(self, e: int) -> FqElem:
        return fq_pow(self, e)

    def __repr__(self) -> str:
        return f"Fq({render_element(self)} in {self.spec.p}^{self.spec.n})"


def _check_same_spec(a: FqElem, b: FqElem) -> None:
    if a.spec != b.spec:
        raise ValueError(f"field mismatch: {a.spec!r} vs {b.spec!r}")


@lru_cache(maxsize=None)
def _auto_modulus(p: int, n: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=n):
        cand = tuple(tail) + (1,)
        if _pp_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found (unreachable)")


@lru_cache(maxsize=None)
def _field_make_cached(p: int, n: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, n, modulus)


def field_make(p: int, n: int, modulus="auto") -> FieldSpec:
    """Construct F_{p^n}.  modulus is "auto" (lexicographically smallest monic
    irreducible of degree n) or an explicit coefficient list, constant first."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    if isinstance(modulus, str):
        if modulus != "auto":
            raise ValueError(f"unknown modulus selector {modulus!r}")
        mod = _auto_modulus(p, n)
    else:
        mod = tuple(int(c) % p for c in modulus)
    return _field_make_cached(p, n, mod)


def fq_zero(spec: FieldSpec) -> FqElem:
    return FqElem(spec, (0,) * spec.n)


def fq_one(spec: FieldSpec) -> FqElem:
    return FqElem(spec, (1,) + (0,) * (spec.n - 1))


def fq_gen(spec: FieldSpec) -> FqElem:
    """The residue of x, a root of the modulus (equals 0 when n = 1)."""
    if spec.n == 1:
        return fq_zero(spec)
    return FqElem(spec, (0, 1) + (0,) * (spec.n - 2))


def fq_from_int(spec: FieldSpec, k: int) -> FqElem:
    """Image of the integer k under Z -> F_p -> F_{p^n}."""
    return FqElem(spec, (k % spec.p,) + (0,) * (spec.n - 1))


def fq_from_coeffs(spec: FieldSpec, coeffs: Sequence[int]) -> FqElem:
    return FqElem(spec, tuple(int(c) % spec.p for c in coeffs))


def fq_add(a: FqElem, b: FqElem) -> FqElem:
    _check_same_spec(a, b)
    p = a.spec.p
    return FqElem(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def fq_sub(a: FqElem, b: FqElem) -> FqElem:
    _check_same_spec(a, b)
    p = a.spec.p
    return FqElem(a.spec, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))


def fq_neg(a: FqElem) -> FqElem:
    p = a.spec.p
    return FqElem(a.spec, tuple((-x) % p for x in a.coeffs))


@lru_cache(maxsize=None)
def _reduction_rows(spec: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """x^k mod modulus for k = n .. 2n-2, as length-n coefficient rows."""
    rows = []
    for k in range(spec.n, 2 * spec.n - 1):
        red = _pp_mod((0,) * k + (1,), spec.modulus, spec.p)
        rows.append(red + (0,) * (spec.n - len(red)))
    return tuple(rows)


def fq_mul(a: FqElem, b: FqElem) -> FqElem:
    _check_same_spec(a, b)
    spec = a.spec
    n, p = spec.n, spec.p
    if n == 1:
        return FqElem(spec, ((a.coeffs[0] * b.coeffs[0]) % p,))
    conv = [0] * (2 * n - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                conv[i + j] += ai * bj
    out = conv[:n]
    rows = _reduction_rows(spec)
    for k in range(n, 2 * n - 1):
        c = conv[k]
        if c:
            row = rows[k - n]
            for j in range(n):
                out[j] += c * row[j]
    return FqElem(spec, tuple(x % p for x in out))


@lru_cache(maxsize=None)
def _inverse_cache(spec: FieldSpec) -> dict:
    return {}


def fq_inv(a: FqElem) -> FqElem:
    """Multiplicative inverse by the extended euclidean algorithm on
    polynomials (memoized per field; fields are desk-scale)."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero")
    spec = a.spec
    cache = _inverse_cache(spec)
    hit = cache.get(a.coeffs)
    if hit is not None:
        return FqElem(spec, hit)
    g, s, _ = _pp_xgcd(a.coeffs, spec.modulus, spec.p)
    if g != (1,):
        raise AssertionError(f"gcd with irreducible modulus is not 1: {g}")
    red = _pp_mod(s, spec.modulus, spec.p)
    inv = red + (0,) * (spec.n - len(red))
    cache[a.coeffs] = inv
    cache[inv] = a.coeffs
    return FqElem(spec, inv)


def fq_div(a: FqElem, b: FqElem) -> FqElem:
    return fq_mul(a, fq_inv(b))


def fq_pow(a: FqElem, e: int) -> FqElem:
    if e < 0:
        return fq_pow(fq_inv(a), -e)
    result = fq_one(a.spec)
    base = a
    while e:
        if e & 1:
            result = fq_mul(result, base)
        base = fq_mul(base, base)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def field_elements(spec: FieldSpec) -> tuple[FqElem, ...]:
    """All q elements in canonical (lexicographic coefficient) order."""
    return tuple(FqElem(spec, t) for t in itertools.product(range(spec.p), repeat=spec.n))


def element_order(a: FqElem) -> int:
    """Multiplicative order of a nonzero element."""
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    one = fq_one(a.spec)
    x = a
    k = 1
    while x != one:
        x = fq_mul(x, a)
        k += 1
    return k


# ---------------------------------------------------------------------------
# embeddings between compatible fields


@lru_cache(maxsize=None)
def _embedding_powers(src: FieldSpec, dst: FieldSpec) -> tuple[FqElem, ...]:
    """Powers 0..src.n-1 of the image of the src generator in dst.

    The generator is sent to the first root (canonical element order) of the
    src modulus inside dst, which makes the embedding deterministic.
    """
    root = None
    for x in field_elements(dst):
        acc = fq_zero(dst)
        for c in reversed(src.modulus):
            acc = fq_add(fq_mul(acc, x), fq_from_int(dst, c))
        if acc.is_zero():
            root = x
            break
    if root is None:
        raise AssertionError(f"no root of {src.modulus} in {dst!r} (unreachable for m | n)")
    powers = [fq_one(dst)]
    for _ in range(src.n - 1):
        powers.append(fq_mul(powers[-1], root))
    return tuple(powers)


def fq_embed(a: FqElem, target: FieldSpec) -> FqElem:
    """Embed a into the target field.  Requires same p and source degree
    dividing target degree; the embedding is a fixed field homomorphism."""
    if a.spec == target:
        return a
    if a.spec.p != target.p:
        raise ValueError(f"cannot embed: characteristic {a.spec.p} != {target.p}")
    if target.n % a.spec.n != 0:
        raise ValueError(f"cannot embed: degree {a.spec.n} does not divide {target.n}")
    powers = _embedding_powers(a.spec, target)
    acc = fq_zero(target)
    for c, g in zip(a.coeffs, powers):
        if c:
            acc = fq_add(acc, fq_mul(fq_from_int(target, c), g))
    return acc


@lru_cache(maxsize=None)
def _projection_table(src: FieldSpec, sub: FieldSpec) -> dict:
    return {fq_embed(x, src).coeffs: x for x in field_elements(sub)}


def fq_project(a: FqElem, target: FieldSpec):
    """Inverse of fq_embed on its image: the element of the subfield `target`
    mapping to a, or None if a is not in the embedded subfield."""
    if a.spec == target:
        return a
    return _projection_table(a.spec, target).get(a.coeffs)


def extension_field(spec: FieldSpec, r: int) -> FieldSpec:
    """The degree-r extension F_{q^r}, realized as the auto field of degree n*r."""
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    if r == 1:
        return spec
    return field_make(spec.p, spec.n * r, "auto")


# ---------------------------------------------------------------------------
# roots of unity


def roots_of_unity(spec: FieldSpec, n: int):
    """All solutions of x^n = 1 in F_q, canonically sorted, plus a flag telling
    whether a primitive n-th root exists (equivalently n | q-1).  The root
    count is always gcd(n, q-1)."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    one = fq_one(spec)
    roots = [x for x in field_elements(spec) if not x.is_zero() and fq_pow(x, n) == one]
    has_primitive = (spec.q - 1) % n == 0
    return roots, has_primitive


def minimal_extension_for_unity(spec: FieldSpec, n: int) -> int:
    """Smallest r with n | q^r - 1, i.e. the least level where a primitive
    n-th root of unity appears.  Undefined when p | n."""
    if n % spec.p == 0:
        raise ValueError(f"no n-th roots of unity for p | n (p={spec.p}, n={n})")
    r = 1
    acc = spec.q % n
    while (acc - 1) % n != 0:
        acc = (acc * (spec.q % n)) % n
        r += 1
    return r


def primitive_root_of_unity(spec: FieldSpec, n: int) -> FqElem:
    """The canonically smallest element of exact multiplicative order n."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if n % spec.p == 0:
        raise ValueError(f"characteristic {spec.p} divides {n}: no primitive root exists")
    if (spec.q - 1) % n != 0:
        r = minimal_extension_for_unity(spec, n)
        raise ValueError(
            f"no primitive {n}-th root of unity in F_{spec.p}^{spec.n}; "
            f"minimal sufficient extension degree is {r}"
        )
    for x in field_elements(spec):
        if not x.is_zero() and element_order(x) == n:
            return x
    raise AssertionError("primitive root promised by n | q-1 but not found")


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficient lists of FqElem, constant term first)


def poly_trim(coeffs: Sequence[FqElem]) -> tuple[FqElem, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1].is_zero():
        c.pop()
    return tuple(c)


def poly_is_zero(coeffs: Sequence[FqElem]) -> bool:
    return all(c.is_zero() for c in coeffs)


def poly_degree(coeffs: Sequence[FqElem]) -> int:
    t = poly_trim(coeffs)
    if len(t) == 1 and t[0].is_zero():
        return -1
    return len(t) - 1


def poly_eval(coeffs: Sequence[FqElem], x: FqElem) -> FqElem:
    acc = fq_zero(x.spec)
    for c in reversed(coeffs):
        acc = fq_add(fq_mul(acc, x), c)
    return acc


def poly_deriv(coeffs: Sequence[FqElem]) -> tuple[FqElem, ...]:
    spec = coeffs[0].spec
    if len(coeffs) == 1:
        return (fq_zero(spec),)
    out = []
    for i in range(1, len(coeffs)):
        out.append(fq_mul(fq_from_int(spec, i), coeffs[i]))
    return poly_trim(out)


def poly_embed(coeffs: Sequence[FqElem], target: FieldSpec) -> tuple[FqElem, ...]:
    return tuple(fq_embed(c, target) for c in coeffs)


def root_multiplicity(coeffs: Sequence[FqElem], x0: FqElem) -> int:
    """Multiplicity of x0 as a root, by repeated synthetic division by (x - x0)."""
    f = list(poly_trim(coeffs))
    mult = 0
    while not poly_is_zero(f):
        # synthetic division: f = (x - x0) * q + rem, rem = f(x0)
        quot = [fq_zero(x0.spec)] * max(1, len(f) - 1)
        carry = fq_zero(x0.spec)
        for i in range(len(f) - 1, 0, -1):
            carry = fq_add(f[i], fq_mul(carry, x0))
            quot[i - 1] = carry
        rem = fq_add(f[0], fq_mul(carry, x0))
        if not rem.is_zero():
            break
        mult += 1
        f = quot
    return mult


def poly_roots(coeffs: Sequence[FqElem], r: int):
    """All roots of the polynomial in F_{q^r} with multiplicities, found by
    exhaustive evaluation after embedding the coefficients.

    Returns a canonically sorted list of (root, multiplicity) pairs.
    """
    if poly_is_zero(coeffs):
        raise ValueError("zero polynomial has every element as a root")
    spec = coeffs[0].spec
    ext = extension_field(spec, r)
    f = poly_embed(poly_trim(coeffs), ext)
    out = []
    for x in field_elements(ext):
        if poly_eval(f, x).is_zero():
            out.append((x, root_multiplicity(f, x)))
    return out


# ---------------------------------------------------------------------------
# F_p-linear algebra on coefficient vectors (shared by subfield bases and
# additive subgroup canonicalization)


def fp_echelon(vectors: Iterable[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over F_p; zero rows dropped.

    Two spanning sets of the same subspace yield identical output, so this is
    the canonical form used for every F_p-subspace in the package.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return ()
    ncols = len(rows[0])
    pivot_rows: list[list[int]] = []
    pivot_cols: list[int] = []
    for row in rows:
        for prow, pcol in zip(pivot_rows, pivot_cols):
            c = row[pcol]
            if c:
                for j in range(ncols):
                    row[j] = (row[j] - c * prow[j]) % p
        col = next((j for j, x in enumerate(row) if x % p), None)
        if col is None:
            continue
        inv = pow(row[col], p - 2, p)
        row = [(x * inv) % p for x in row]
        # clear the new pivot column in earlier rows
        for prow in pivot_rows:
            c = prow[col]
            if c:
                for j in range(ncols):
                    prow[j] = (prow[j] - c * row[j]) % p
        pivot_rows.append(row)
        pivot_cols.append(col)
    order = sorted(range(len(pivot_rows)), key=lambda i: pivot_cols[i])
    return tuple(tuple(pivot_rows[i]) for i in order)


# ---------------------------------------------------------------------------
# text formats


def render_field_spec(spec: FieldSpec) -> str:
    base = f"{spec.p}^{spec.n}"
    if spec.modulus == _auto_modulus(spec.p, spec.n):
        return base
    return base + "/" + ",".join(str(c) for c in spec.modulus)


def parse_field_spec(text: str) -> FieldSpec:
    """Parse "p^n" or "p^n/c0,c1,...,cn"."""
    text = text.strip()
    if "/" in text:
        head, _, tail = text.partition("/")
        mod = [int(t) for t in tail.split(",")]
    else:
        head, mod = text, "auto"
    if "^" not in head:
        raise ValueError(f"field spec must look like p^n, got {text!r}")
    p_str, _, n_str = head.partition("^")
    return field_make(int(p_str), int(n_str), mod)


def render_element(a: FqElem) -> str:
    return ",".join(str(c) for c in a.coeffs)


def parse_element(spec: FieldSpec, text: str) -> FqElem:
    parts = [int(t) for t in text.strip().split(",")]
    if len(parts) != spec.n:
        raise ValueError(f"element of F_{spec.p}^{spec.n} needs {spec.n} coefficients, got {text!r}")
    return fq_from_coeffs(spec, parts)
