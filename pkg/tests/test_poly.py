"""Polynomial arithmetic, factorization/root machinery, exact linear algebra."""

import random
from itertools import product as iproduct

import pytest

from p1covers import (FieldElement, FieldMatrix, InputError, Poly, PolyMatrix,
                      kernel_basis, make_field, poly_arith, poly_gcd,
                      rank_over_kX, roots_with_multiplicity)

F2 = make_field(2)
F3 = make_field(3)
F5 = make_field(5)
F9 = make_field(3, 2)


def rand_poly(spec, deg, rng, monic=False):
    c = [rng.randrange(spec.order) for _ in range(deg + 1)]
    if monic:
        c[-1] = 1
    elif all(v == 0 for v in c):
        c[-1] = 1
    return Poly(spec, c)


def test_gcd_examples():
    a = Poly.parse("x^2 + 2", F3)
    b = Poly.parse("x + 1", F3)
    assert poly_gcd(a, b) == b
    f = Poly.parse("2*x^3 + 1", F3)
    assert poly_gcd(f, Poly.zero(F3)) == f.monic()
    assert poly_arith(a, b, "gcd") == b


def test_mul_sub_example():
    lhs = Poly.parse("x^3 + x + 1", F3) * Poly.parse("x^3", F3) - Poly.parse("x^4", F3)
    assert lhs == Poly.parse("x^6 + x^3", F3)


def test_poly_arith_dispatch():
    a, b = Poly.parse("x^2 + 1", F3), Poly.parse("x + 2", F3)
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "sub") == a - b
    assert poly_arith(a, b, "mul") == a * b
    q, r = poly_arith(a, b, "divrem")
    assert q * b + r == a and r.degree() < b.degree()
    with pytest.raises(InputError):
        poly_arith(a, b, "pow")


def test_divrem_property():
    rng = random.Random(0)
    for spec in (F2, F3, F5, F9):
        for _ in range(60):
            a = rand_poly(spec, rng.randrange(8), rng)
            b = rand_poly(spec, rng.randrange(1, 5), rng)
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero() or r.degree() < b.degree()


def test_degree_multiplicativity_and_gcd_divides():
    rng = random.Random(1)
    for _ in range(60):
        a = rand_poly(F3, rng.randrange(6), rng)
        b = rand_poly(F3, rng.randrange(6), rng)
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).degree() == a.degree() + b.degree()
        g = poly_gcd(a, b)
        assert (a % g).is_zero() and (b % g).is_zero()


def test_divrem_zero_divisor():
    with pytest.raises(InputError):
        divmod(Poly.parse("x", F3), Poly.zero(F3))


def test_field_mismatch():
    with pytest.raises(InputError):
        Poly.parse("x", F3) + Poly.parse("x", F5)


def test_derivative_examples():
    assert Poly.parse("x^3", F3).derivative().is_zero()
    assert Poly.parse("x^5 + x", F3).derivative() == Poly.parse("2*x^4 + 1", F3)
    assert Poly.parse("x^3 + x^2 + 1", F2).derivative() == Poly.parse("x^2", F2)


def test_derivative_leibniz():
    rng = random.Random(2)
    for spec in (F2, F3, F9):
        for _ in range(40):
            a = rand_poly(spec, rng.randrange(6), rng)
            b = rand_poly(spec, rng.randrange(6), rng)
            assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_derivative_kills_pth_powers_exhaustive():
    for spec in (F2, F3):
        p = spec.p
        for tail in iproduct(range(spec.order), repeat=4):
            a = Poly(spec, tail)
            assert (a ** p).derivative().is_zero()


def test_monic_examples():
    assert Poly.parse("2*x^4 + 1", F3).monic() == Poly.parse("x^4 + 2", F3)
    x3 = Poly.parse("x^3", F3)
    assert x3.monic() == x3
    assert Poly.parse("2*x^6 + 1", F5).monic() == Poly.parse("x^6 + 3", F5)
    with pytest.raises(InputError):
        Poly.zero(F3).monic()


def test_roots_examples():
    roots, residual = roots_with_multiplicity(Poly.parse("x^4 + 2", F3), 4)
    assert residual == Poly.one(F3)
    assert [(str(r), m) for r, m in roots] == [("1", 1), ("2", 1), ("[u]", 1), ("[2*u]", 1)]

    roots, residual = roots_with_multiplicity(Poly.parse("x^6 + x^3", F3), 4)
    assert residual == Poly.one(F3)
    assert sorted((r.code, m) for r, m in roots) == [(0, 3), (2, 3)]

    roots, residual = roots_with_multiplicity(Poly.parse("x^2 + 1", F3), 4)
    assert [(str(r), m) for r, m in roots] == [("[u]", 1), ("[2*u]", 1)]


def test_roots_reconstruct_input():
    rng = random.Random(3)
    for spec in (F2, F3, F5):
        for _ in range(40):
            a = rand_poly(spec, rng.randrange(1, 7), rng)
            if a.is_zero() or a.degree() < 1:
                continue
            roots, residual = roots_with_multiplicity(a, 4)
            target = roots[0][0].spec if roots else spec
            prod = Poly.one(target)
            xv = Poly.x(target)
            for r, m in roots:
                prod = prod * (xv - Poly.constant(target, r.code)) ** m
            prod = prod * residual.embed(target) * a.leading_coefficient().code
            assert prod == a.embed(target)


def test_roots_residual_reporting():
    # x^2 + x + 2 is irreducible over F_3; with max_ext = 1 it stays unsplit
    a = Poly.parse("x^2 + x + 2", F3)
    roots, residual = roots_with_multiplicity(a, 1)
    assert roots == []
    assert residual == a.monic()
    roots2, residual2 = roots_with_multiplicity(a, 2)
    assert residual2 == Poly.one(F3) and len(roots2) == 2


def test_roots_multiplicity_with_unsplit_part():
    # (x^2+x+2)^2 * x^3 over F_3, max_ext 1: only the root 0 materializes
    a = (Poly.parse("x^2 + x + 2", F3) ** 2) * Poly.parse("x^3", F3)
    roots, residual = roots_with_multiplicity(a, 1)
    assert [(r.code, m) for r, m in roots] == [(0, 3)]
    assert residual == Poly.parse("x^2 + x + 2", F3) ** 2


def _trial_division_multiplicities(spec, poly):
    """Oracle: irreducible factors with multiplicity by trial division.

    Scanning divisors by increasing degree means every divisor found is
    irreducible (its proper factors were removed earlier).
    """
    from p1covers.poly import raw_divrem

    remaining = list(poly.monic().c)
    out = {}
    deg = 1
    while len(remaining) - 1 > 0:
        hit = False
        for tail in iproduct(range(spec.order), repeat=deg):
            cand = list(tail) + [1]
            q, r = raw_divrem(spec, remaining, cand)
            if not r:
                mult = 0
                while not r:
                    remaining = q
                    mult += 1
                    q, r = raw_divrem(spec, remaining, cand)
                out[tuple(cand)] = mult
                hit = True
                break
        if not hit:
            deg += 1
    return out


@pytest.mark.parametrize("spec,max_deg", [(F2, 4), (F3, 4)])
def test_squarefree_structure_against_trial_division(spec, max_deg):
    from p1covers.poly import raw_sqf_list
    for tail in iproduct(range(spec.order), repeat=max_deg):
        coeffs = list(tail) + [1]
        poly = Poly(spec, coeffs)
        oracle = _trial_division_multiplicities(spec, poly)
        sqf = dict()
        for fac, mult in raw_sqf_list(spec, coeffs):
            assert mult not in sqf      # multiplicity classes are merged
            sqf[mult] = Poly._raw(spec, fac)
        expected = {}
        for cand, m in oracle.items():
            expected[m] = expected.get(m, Poly.one(spec)) * Poly(spec, list(cand))
        assert sqf == expected


def test_roots_mixed_degrees_partial_split():
    # exact degrees 2 and 3 need F_9 and F_27; no single extension of
    # degree <= 4 holds both, so the smaller-mass factor stays residual
    quad = Poly.parse("x^2 + 1", F3)
    cubic = Poly.parse("x^3 + 2*x + 1", F3)          # irreducible over F_3
    a = quad * cubic
    roots, residual = roots_with_multiplicity(a, 4)
    assert residual == quad or residual == cubic
    target = roots[0][0].spec
    prod = Poly.one(target)
    for r, m in roots:
        prod = prod * (Poly.x(target) - Poly.constant(target, r.code)) ** m
    assert prod * residual.embed(target) == a.embed(target)
    # with max_ext = 6 everything fits in F_{3^6}
    roots6, residual6 = roots_with_multiplicity(a, 6)
    assert residual6 == Poly.one(F3) and len(roots6) == 5


def test_roots_zero_input():
    with pytest.raises(InputError):
        roots_with_multiplicity(Poly.zero(F3), 2)


def test_kernel_examples():
    eye = FieldMatrix(F3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert kernel_basis(eye) == []
    zero = FieldMatrix(F3, [[0, 0, 0], [0, 0, 0]], ncols=3)
    assert len(kernel_basis(zero)) == 3
    m = FieldMatrix(F3, [[1, 0, 0], [0, 0, 0], [0, 0, 2]])
    vecs = kernel_basis(m)
    assert len(vecs) == 1
    assert [e.code for e in vecs[0]] == [0, 1, 0]


def brute_nullity(spec, rows, ncols):
    count = 0
    for vec in iproduct(range(spec.order), repeat=ncols):
        if all(
            _dot(spec, row, vec) == 0 for row in rows
        ):
            count += 1
    dim = 0
    while spec.order ** dim < count:
        dim += 1
    assert spec.order ** dim == count
    return dim


def _dot(spec, row, vec):
    acc = 0
    for a, b in zip(row, vec):
        acc = spec.add(acc, spec.mul(a, b))
    return acc


@pytest.mark.parametrize("spec", [F2, F3, F9])
def test_kernel_matches_brute_force(spec):
    rng = random.Random(spec.order)
    for _ in range(15):
        nrows = rng.randrange(1, 5)
        ncols = rng.randrange(1, 5)
        rows = [[rng.randrange(spec.order) for _ in range(ncols)] for _ in range(nrows)]
        M = FieldMatrix(spec, rows, ncols=ncols)
        vecs = kernel_basis(M)
        assert len(vecs) == brute_nullity(spec, rows, ncols)
        for v in vecs:
            codes = [e.code for e in v]
            assert all(_dot(spec, row, codes) == 0 for row in rows)


def test_rank_over_kX_examples():
    X = Poly.parse("x", F3)     # the variable X, printed as x here
    zero, one = Poly.zero(F3), Poly.one(F3)
    M = PolyMatrix(F3, [[X, zero, zero], [zero, zero, zero], [zero, zero, one]])
    rank, kernel = rank_over_kX(M)
    assert rank == 2
    assert len(kernel) == 1
    assert [str(e) for e in kernel[0]] == ["0", "1", "0"]

    Z = PolyMatrix(F3, [[zero, zero], [zero, zero]])
    assert rank_over_kX(Z)[0] == 0

    # matrix of the twisted derivative for f = x over F_3
    two = Poly.constant(F3, 2)
    T = PolyMatrix(F3, [[one, zero, zero], [zero, zero, zero], [zero, zero, two]])
    rank, kernel = rank_over_kX(T)
    assert rank == 2 and [str(e) for e in kernel[0]] == ["0", "1", "0"]


def test_rank_over_kX_kernel_property():
    rng = random.Random(9)
    for _ in range(25):
        nrows, ncols = rng.randrange(1, 4), rng.randrange(1, 4)
        rows = [[rand_poly(F3, rng.randrange(3), rng) if rng.random() < 0.8 else Poly.zero(F3)
                 for _ in range(ncols)] for _ in range(nrows)]
        M = PolyMatrix(F3, rows)
        rank, kernel = rank_over_kX(M)
        assert rank + len(kernel) == ncols
        for v in kernel:
            assert any(not e.is_zero() for e in v)
            for row in rows:
                acc = Poly.zero(F3)
                for e, r in zip(v, row):
                    acc = acc + e * r
                assert acc.is_zero()


def test_parse_print_round_trip():
    cases = ["x^4 + 2", "2*x + 1", "x", "0", "2", "x^6 + x^3"]
    for s in cases:
        poly = Poly.parse(s, F3)
        assert str(poly) == s
        assert Poly.parse(str(poly), F3) == poly
    e = Poly.parse("[u+1]*x^2 + 2*x + 1", F9)
    assert Poly.parse(str(e), F9) == e
    assert Poly.parse("x ^ 4   +  2", F3) == Poly.parse("x^4+2", F3)
    assert Poly.parse("x^2 - 1", F3) == Poly.parse("x^2 + 2", F3)


def test_parse_round_trip_random():
    rng = random.Random(4)
    for spec in (F3, F9, F2):
        for _ in range(50):
            poly = rand_poly(spec, rng.randrange(7), rng)
            assert Poly.parse(str(poly), spec) == poly


def test_parse_errors():
    for bad in ["", "x^-2", "x^2 +", "y + 1", "2x", "[u+1]x"]:
        with pytest.raises(InputError):
            Poly.parse(bad, F9)


def test_poly_evaluate_and_embed():
    f = Poly.parse("x^2 + 1", F3)
    assert f.evaluate(F3.element(1)).code == 2
    u = F9.element(3)
    assert f.evaluate(u).code == 0          # u^2 + 1 = 0
    g = f.embed(F9)
    assert g.spec is F9 and g.degree() == 2
