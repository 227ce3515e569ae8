import io
import math

import numpy as np
import pytest

from relaxdisp import build_detpoly, coefficient, leading_roots
from relaxdisp.characteristics import horizontal_asymptotes
from relaxdisp.detpoly import BiPoly, direct_product, dump
from relaxdisp.errors import IndexOutOfRange, InvalidParams, ZeroPolynomial

from conftest import random_params
from oracles import det_D

# rows of the coefficient-order table: condition -> rows it zeroes
TABLE_ROWS = {
    "alpha1=0": dict(fixed={"alpha1": 0.0}, zero={9, 8}, nonzero=7),
    "alpha2=0": dict(fixed={"alpha2": 0.0}, zero={9}, nonzero=8),
    "alpha1=alpha2=0": dict(fixed={"alpha1": 0.0, "alpha2": 0.0}, zero={9, 8, 7, 6, 5}, nonzero=4),
    "all alpha=0": dict(fixed={"alpha1": 0.0, "alpha2": 0.0, "alpha3": 0.0}, zero={9, 8, 7, 6, 5, 4}, nonzero=3),
}


def test_table1_structure(table1):
    poly = build_detpoly(table1)
    for h in (10, 11, 12):
        assert not np.any(coefficient(poly, h))
    assert poly.leading_h() == 9
    assert poly.degree_k2 == 9
    assert all(np.any(coefficient(poly, h)) for h in range(10))


def test_coefficient_index_range(table1):
    poly = build_detpoly(table1)
    with pytest.raises(IndexOutOfRange):
        coefficient(poly, 13)
    with pytest.raises(IndexOutOfRange):
        coefficient(poly, -1)
    with pytest.raises(IndexError):
        coefficient(poly, 13)


def test_h0_vanishes_at_origin(table1):
    poly = build_detpoly(table1)
    row = coefficient(poly, 0)
    assert row[0] == 0.0
    assert np.any(row)


def test_leading_row_roots_table1(table1):
    poly = build_detpoly(table1)
    roots = leading_roots(poly)
    assert roots == pytest.approx(horizontal_asymptotes(table1, "relaxed"), rel=1e-6)
    assert roots == pytest.approx([1.0e5, 1.7321e5], rel=1e-4)
    # same from the full h=9 row
    full = np.polynomial.polynomial.polyroots(coefficient(poly, 9) / np.max(np.abs(coefficient(poly, 9))))
    real = sorted(math.sqrt(r.real) for r in full if abs(r.imag) < 1e-6 * abs(r) and r.real > 0)
    # omega = 1e5 comes from the squared transverse factor, so numpy splits it
    distinct = [v for i, v in enumerate(real) if i == 0 or v - real[i - 1] > 1e-6 * v]
    assert distinct == pytest.approx(roots, rel=1e-6)


def test_leading_roots_internal_variable(table1):
    p = table1.replace(alpha1=0.0, alpha2=0.0, alpha3=0.0)
    roots = leading_roots(build_detpoly(p))
    assert any(r == pytest.approx(2.9665e5, rel=1e-4) for r in roots)
    assert any(r == pytest.approx(math.sqrt(6e10), rel=1e-10) for r in roots)
    # sqrt(2(mu_e+mu_c)/eta1) is a printed candidate but not a root of the leading row
    assert all(abs(r - math.sqrt(1.28e11)) > 1e-3 * r for r in roots)


def test_leading_roots_include_zero_without_micro(table1):
    p = table1.replace(mu_micro=1e-300, lambda_micro=0.0)
    roots = leading_roots(build_detpoly(p))
    assert roots[0] < 1e-100


@pytest.mark.parametrize("name", sorted(TABLE_ROWS))
def test_coefficient_table_rows(name, rng):
    row = TABLE_ROWS[name]
    for _ in range(5):
        p = random_params(rng, **row["fixed"])
        poly = build_detpoly(p)
        for h in row["zero"]:
            assert np.max(np.abs(poly.normalized_row(h)), initial=0.0) <= 1e-12
        assert poly.leading_h() == row["nonzero"]
        assert np.max(np.abs(poly.normalized_row(row["nonzero"]))) > 1e-6


def test_alpha3_zero_alone_keeps_order(rng):
    for _ in range(5):
        assert build_detpoly(random_params(rng, alpha3=0.0)).leading_h() == 9


def test_evaluation_identity(rng):
    for _ in range(10):
        p = random_params(rng)
        poly = build_detpoly(p)
        for k in np.linspace(0, 1e4, 12):
            for w in np.linspace(0, 1e6, 12):
                mag = poly.magnitude(k, w)
                v = poly.evaluate(k, w)
                assert abs(v - direct_product(p, k, w)) <= 1e-8 * mag
                assert abs(v - det_D(p, k, w)) <= 1e-8 * mag


def test_only_even_powers(table1):
    poly = build_detpoly(table1)
    k, w = 777.0, 2.3e5
    assert poly.evaluate(k, w) == poly.evaluate(-k, -w)


def test_factors_multiply_to_whole(table1):
    poly = build_detpoly(table1)
    f1, f2, f4 = poly.factors
    assert poly.powers == (1, 2, 1)
    k, w = 500.0, 1.5e5
    prod = f1.evaluate(k, w) * f2.evaluate(k, w) ** 2 * f4.evaluate(k, w)
    assert prod == pytest.approx(poly.evaluate(k, w), rel=1e-9)


def test_at_omega(table1):
    poly = build_detpoly(table1)
    w = 1.2e5
    xs, mags = poly.at_omega(w)
    k = 400.0
    val = np.polynomial.polynomial.polyval(k * k, xs)
    assert val == pytest.approx(poly.evaluate(k, w), rel=1e-9)
    assert np.all(mags >= np.abs(xs))


def test_dump_format(table1):
    poly = build_detpoly(table1)
    buf = io.StringIO()
    dump(poly, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == poly.coeff.size
    h, q, c = lines[5].split()
    assert float(c) == poly.coeff[int(h), int(q)]


def test_zero_polynomial_errors():
    z = BiPoly(np.zeros((1, 1)), np.zeros((1, 1)))
    with pytest.raises(ZeroPolynomial):
        z.leading_h()
    with pytest.raises(ZeroPolynomial):
        leading_roots(z)


def test_invalid_params(table1):
    with pytest.raises(InvalidParams):
        build_detpoly(table1.replace(eta3=-1.0))
