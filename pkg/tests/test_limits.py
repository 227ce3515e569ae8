import math

import numpy as np
import pytest

from relaxdisp import KGrid, compute_branches, cutoffs, macro_moduli, numeric_asymptote
from relaxdisp.branches import asymptote_grid
from relaxdisp.characteristics import internal_levels
from relaxdisp.errors import InvalidParams
from relaxdisp.limits import (
    LimitModel,
    cauchy_curves,
    cosserat_asymptotes,
    cosserat_branches,
    cosserat_transverse_block,
    couple_stress_branches,
    internal_variable_branches,
)

from conftest import random_params


# -- Cauchy ---------------------------------------------------------------

def test_cauchy_table1_k1000(table1):
    m = macro_moduli(table1)
    lo, tr = cauchy_curves(m, table1.rho, 1000.0)
    # hand values: mu_M = 2e8*1e8/3e8, lambda_M from the harmonic-type mean
    assert lo == pytest.approx(math.sqrt((2 * m.mu_macro + m.lambda_macro) / 2000.0) * 1000, rel=1e-12)
    assert lo == pytest.approx(3.285e5, rel=1e-3)
    assert tr == pytest.approx(1.8257e5, rel=1e-4)


def test_cauchy_zero_and_linear(table1):
    m = macro_moduli(table1)
    assert cauchy_curves(m, table1.rho, 0.0) == (0.0, 0.0)
    a = cauchy_curves(m, table1.rho, 1234.0)
    b = cauchy_curves(m, table1.rho, 2468.0)
    assert b[0] == pytest.approx(2 * a[0], rel=1e-14)
    assert b[1] == pytest.approx(2 * a[1], rel=1e-14)


def test_cauchy_array_input(table1):
    m = macro_moduli(table1)
    lo, tr = cauchy_curves(m, table1.rho, np.array([0.0, 1.0, 2.0]))
    assert lo.shape == (3,) and tr.shape == (3,)


def test_cauchy_bad_rho(table1):
    with pytest.raises(InvalidParams):
        cauchy_curves(macro_moduli(table1), 0.0, 1.0)


# -- Cosserat -------------------------------------------------------------

def test_cosserat_asymptotes_table1(table1):
    c1, c2, c3, c4 = cosserat_asymptotes(table1)
    p = table1
    curv = p.mu_e * p.L_c ** 2
    assert c1 == pytest.approx(math.sqrt((p.alpha1 + 2 * p.alpha3) * curv / (3 * p.eta2)), abs=1e-9)
    assert c2 == pytest.approx(math.sqrt((p.mu_c + p.mu_e) / p.rho), abs=1e-9)
    assert c3 == pytest.approx(0.5 * math.sqrt((p.alpha1 + p.alpha2) * curv / p.eta2), abs=1e-9)
    assert c4 == pytest.approx(math.sqrt((p.lambda_e + 2 * p.mu_e) / p.rho), abs=1e-9)
    assert (c1, c2, c3, c4) == pytest.approx((424.264, 565.685, 300.0, 632.456), abs=1e-3)


def test_cosserat_tail_slopes(table1):
    bs = cosserat_branches(table1, asymptote_grid(5e4))
    c1, c2, c3, c4 = cosserat_asymptotes(table1)
    got = {b.label: numeric_asymptote(b) for b in bs}
    assert all(a.kind == "oblique" for a in got.values())
    assert got["TRO"].value == pytest.approx(c1, rel=1e-2)
    assert got["LA"].value == pytest.approx(c4, rel=1e-2)
    # the transverse pair tends to the two slopes, in order
    lo, hi = sorted((c2, c3))
    assert got["TA"].value == pytest.approx(lo, rel=1e-2)
    assert got["TO"].value == pytest.approx(hi, rel=1e-2)


def test_cosserat_curve_count(table1):
    bs = cosserat_branches(table1, KGrid(0, 1e4, 20))
    assert bs.labels == ("LA", "TA", "TO", "TRO")
    assert bs.curve_count == 6


def test_cosserat_ta_matches_own_block(table1):
    # finite-difference tangent of TA against the 2x2 block eigenvalue
    k, h = 50.0, 1e-3
    def lo(kk):
        a11, a22, a12 = cosserat_transverse_block(table1, kk)
        return math.sqrt(0.5 * (a11 + a22) - math.hypot(0.5 * (a11 - a22), a12))
    bs = cosserat_branches(table1, KGrid(k - h, k + h, 3))
    fd = (bs["TA"].omega[2] - bs["TA"].omega[0]) / (2 * h)
    ref = (lo(k + h) - lo(k - h)) / (2 * h)
    assert fd == pytest.approx(ref, rel=1e-6)


def test_cosserat_block_eigs_vs_numpy(table1):
    for k in (0.0, 10.0, 1e3, 1e5):
        a11, a22, a12 = cosserat_transverse_block(table1, k)
        ref = np.sqrt(np.clip(np.linalg.eigvalsh([[a11, a12], [a12, a22]]), 0, None))
        bs = cosserat_branches(table1, KGrid(k, k + 1.0, 2))
        assert bs["TA"].omega[0] == pytest.approx(ref[0], rel=1e-9, abs=1e-6)
        assert bs["TO"].omega[0] == pytest.approx(ref[1], rel=1e-9)


def test_micro_stiff_surrogate_tracks_cosserat(table1):
    q = table1.replace(mu_micro=1e12, lambda_micro=1e12)
    k = 1e3
    full = compute_branches(q, KGrid(k, k + 1.0, 2))
    cos = cosserat_branches(table1, KGrid(k, k + 1.0, 2))
    assert full["LA"].omega[0] == pytest.approx(cos["LA"].omega[0], rel=2e-2)
    assert full["TA"].omega[0] == pytest.approx(cos["TA"].omega[0], rel=2e-2)


def test_cosserat_rejects_bad_eta(table1):
    with pytest.raises(InvalidParams):
        cosserat_asymptotes(table1.replace(eta2=0.0))
    with pytest.raises(InvalidParams):
        cosserat_branches(table1.replace(mu_c=-1.0), KGrid(0, 1, 2))


# -- internal variable ----------------------------------------------------

def test_internal_variable_flat_optics(table1):
    bs = internal_variable_branches(table1, KGrid(0, 1e5, 60))
    ws, wr, _ = cutoffs(table1)
    flat = [b for b in bs if np.ptp(b.omega) <= 1e-9 * b.omega[0]]
    for b in flat:
        assert min(abs(b.omega[0] - w) / w for w in (ws, wr)) < 1e-12
    assert len({b.omega[0] for b in flat}) == 2
    assert {b.label for b in flat} == {"TRO", "LSO", "TCVO"}


def test_internal_variable_plateaus(table1):
    bs = internal_variable_branches(table1, KGrid(0, 1e5, 60))
    lv = internal_levels(table1)
    tails = [float(b.omega[-1]) for b in bs]
    for target in (lv.omega_t, lv.omega_2):
        assert min(abs(t - target) / target for t in tails) < 1e-2


def test_internal_variable_k0_equals_full(table1):
    g = KGrid(0, 1.0, 2)
    a = internal_variable_branches(table1, g)
    b = compute_branches(table1, g)
    assert sorted(x.omega[0] for x in a) == pytest.approx(sorted(x.omega[0] for x in b), rel=1e-12)
    assert a.model == "internal_variable"


def test_internal_variable_ignores_alpha(table1):
    g = KGrid(0, 1e4, 10)
    a = internal_variable_branches(table1, g)
    b = internal_variable_branches(table1.replace(alpha1=7.0, alpha3=0.0), g)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.omega, y.omega)


# -- couple stress --------------------------------------------------------

def test_couple_stress_two_acoustic(table1):
    bs = couple_stress_branches(table1, KGrid(0, 1e4, 50))
    assert bs.labels == ("LA", "TA")
    assert all(b.omega[0] == 0.0 for b in bs)
    assert bs.curve_count == 3


def test_couple_stress_longitudinal_exact(table1):
    bs = couple_stress_branches(table1, KGrid(0, 1e4, 50))
    cp = math.sqrt((2 * table1.mu_e + table1.lambda_e) / table1.rho)
    np.testing.assert_allclose(bs["LA"].omega, cp * bs["LA"].k, rtol=1e-15)


def test_couple_stress_transverse_relation(table1):
    p = table1
    bs = couple_stress_branches(p, KGrid(0, 1e4, 50))
    k = bs["TA"].k
    lhs = p.rho * bs["TA"].omega ** 2
    rhs = p.mu_e * k ** 2 + p.mu_e * p.L_c ** 2 * (p.alpha1 + p.alpha2) / 8 * k ** 4
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_couple_stress_lc_zero_straight(table1):
    p = table1.replace(L_c=0.0)
    bs = couple_stress_branches(p, KGrid(0, 1e4, 50))
    cs = math.sqrt(p.mu_e / p.rho)
    np.testing.assert_allclose(bs["TA"].omega, cs * bs["TA"].k, rtol=1e-14)


def test_couple_stress_eta_free(table1):
    g = KGrid(0, 1e4, 20)
    a = couple_stress_branches(table1, g)
    b = couple_stress_branches(table1.replace(eta1=5.0, eta2=1e-4, eta3=3.0), g)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.omega, y.omega)


def test_couple_stress_errors(table1):
    with pytest.raises(InvalidParams):
        couple_stress_branches(table1.replace(rho=-1.0), KGrid(0, 1, 2))


# -- heavy-inertia surrogate ----------------------------------------------

def test_heavy_micro_inertia_surrogate(table1):
    p = table1.replace(eta1=1e5, eta2=1e5, eta3=1e5)
    k = 1000.0
    bs = compute_branches(p, KGrid(k / 10, k, 11))
    m = macro_moduli(table1)
    c_lo, c_tr = cauchy_curves(m, p.rho, k)
    # former acoustic branches collapse
    assert bs["LA"].omega[-1] < 1e-2 * c_lo
    assert bs["TA"].omega[-1] < 1e-2 * c_tr
    # two branches go straight through with slopes above the Cauchy ones
    slope = {b.label: b.omega[-1] / k for b in bs}
    cp = math.sqrt((2 * p.mu_e + p.lambda_e) / p.rho)
    cs = math.sqrt((p.mu_e + p.mu_c) / p.rho)
    lin = [lab for lab, s in slope.items() if any(abs(s - c) < 1e-2 * c for c in (cp, cs))]
    assert len(lin) == 2
    assert max(slope[lab] for lab in lin) > c_lo / k
    assert min(slope[lab] for lab in lin) > c_tr / k


# -- LimitModel -----------------------------------------------------------

def test_limit_model_from_params(table1):
    lm = LimitModel.from_params("cauchy", table1)
    assert set(lm.values) == {"mu_macro", "lambda_macro", "rho"}
    cs = LimitModel.from_params("couple_stress", table1)
    assert "eta1" not in cs.values and cs.values["L_c"] == table1.L_c


@pytest.mark.parametrize("seed", range(4))
def test_random_cosserat_slopes(seed):
    p = random_params(np.random.default_rng(seed))
    bs = cosserat_branches(p, asymptote_grid(100.0 / p.L_c))
    c1, c2, c3, c4 = cosserat_asymptotes(p)
    assert numeric_asymptote(bs["LA"]).value == pytest.approx(c4, rel=1e-9)
    assert numeric_asymptote(bs["TRO"]).value == pytest.approx(c1, rel=1e-2)
