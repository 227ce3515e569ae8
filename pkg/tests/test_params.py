import math

import numpy as np
import pytest

from relaxdisp import MaterialParams, beta_plus, macro_moduli, validate
from relaxdisp.errors import DegenerateDenominator

from conftest import random_params


def test_table1_values(table1):
    assert table1.mu_e == 200e6 and table1.lambda_e == 400e6
    assert table1.mu_micro == 100e6 and table1.lambda_micro == 100e6
    assert table1.mu_c == 440e6 and table1.L_c == 3e-3 and table1.rho == 2000
    assert table1.etas == (1e-2, 1e-2, 1e-2)
    assert table1.alphas == (1.0, 1.0, 1.0)


def test_table1_overrides_and_replace(table1):
    p = MaterialParams.table1(mu_c=0.0)
    assert p.mu_c == 0.0 and p.mu_e == table1.mu_e
    q = table1.replace(eta2=5.0)
    assert q.eta2 == 5.0 and table1.eta2 == 1e-2
    assert table1.as_dict()["L_c"] == 3e-3


def test_params_are_frozen(table1):
    with pytest.raises(Exception):
        table1.mu_e = 1.0


def test_table1_is_admissible(table1):
    rep = validate(table1)
    assert rep.ok and bool(rep) and rep.violations == ()
    assert "admissible" in rep.describe()


@pytest.mark.parametrize("field,value,condition", [
    ("mu_e", -1.0, "mu_e > 0"),
    ("mu_micro", 0.0, "mu_micro > 0"),
    ("lambda_e", -200e6, "3*lambda_e + 2*mu_e > 0"),
    ("lambda_micro", -100e6, "3*lambda_micro + 2*mu_micro > 0"),
    ("mu_c", -1.0, "mu_c >= 0"),
    ("alpha1", 0.0, "alpha1 > 0"),
    ("alpha2", -1.0, "alpha2 > 0"),
    ("alpha3", -0.5, "alpha3 >= 0"),
])
def test_strict_violations_demoted_in_exploratory(table1, field, value, condition):
    p = table1.replace(**{field: value})
    strict = validate(p, "strict")
    assert not strict.ok
    assert [v.condition for v in strict.violations] == [condition]
    loose = validate(p, "exploratory")
    assert loose.ok
    assert [w.condition for w in loose.warnings] == [condition]


@pytest.mark.parametrize("field,value", [("rho", 0.0), ("eta1", 0.0), ("eta3", -1.0), ("L_c", -1e-3), ("mu_e", math.nan)])
def test_basic_violations_in_both_modes(table1, field, value):
    p = table1.replace(**{field: value})
    assert not validate(p, "strict").ok
    assert not validate(p, "exploratory").ok


def test_mu_c_zero_is_admissible(table1):
    assert validate(table1.replace(mu_c=0.0)).ok


def test_violations_sorted_and_unique(table1):
    p = table1.replace(alpha2=-1.0, mu_e=-1.0, alpha1=-1.0)
    rep = validate(p)
    keys = [(v.field, v.condition) for v in rep.violations]
    assert keys == sorted(set(keys))


def test_unknown_mode(table1):
    with pytest.raises(ValueError):
        validate(table1, "lenient")


def test_macro_moduli_table1(table1):
    m = macro_moduli(table1)
    assert m.mu_macro == pytest.approx(200e6 * 100e6 / 300e6, rel=1e-14)
    # kappa_macro = (2 mu + 3 lambda)/3 must hold for the effective pair
    assert m.kappa_macro == pytest.approx((2 * m.mu_macro + 3 * m.lambda_macro) / 3, rel=1e-12)
    assert math.sqrt((2 * m.mu_macro + m.lambda_macro) / table1.rho) == pytest.approx(328.5, abs=0.05)
    assert math.sqrt(m.mu_macro / table1.rho) == pytest.approx(182.57, abs=0.01)


def test_macro_moduli_two_term_form(rng):
    for _ in range(200):
        p = random_params(rng)
        m = macro_moduli(p)
        be, bm = 2 * p.mu_e + 3 * p.lambda_e, 2 * p.mu_micro + 3 * p.lambda_micro
        mu = p.mu_e * p.mu_micro / (p.mu_e + p.mu_micro)
        lam = be * bm / (3 * (be + bm)) - 2 * mu / 3
        assert m.lambda_macro == pytest.approx(lam, rel=1e-9, abs=1e-9 * p.mu_e)


def test_macro_moduli_degenerate(table1):
    with pytest.raises(DegenerateDenominator):
        macro_moduli(table1.replace(mu_e=1.0, mu_micro=-1.0))
    with pytest.raises(DegenerateDenominator):
        beta_plus(table1.replace(mu_e=1.0, mu_micro=-1.0))


def test_beta_plus_balance(table1):
    b = beta_plus(table1)
    assert b == pytest.approx(2 / 3)
    # mu_e (1 - beta) = mu_micro beta
    assert table1.mu_e * (1 - b) == pytest.approx(table1.mu_micro * b)
    assert beta_plus(table1.replace(mu_micro=400e6)) < 0.5
