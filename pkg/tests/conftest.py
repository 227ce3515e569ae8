import numpy as np
import pytest

from relaxdisp import MaterialParams


@pytest.fixture
def table1():
    return MaterialParams.table1()


def random_params(rng, **fixed):
    """One admissible parameter set; ranges cover a few decades around Table 1."""
    mu_e = rng.uniform(5e7, 5e8)
    mu_micro = rng.uniform(5e7, 5e8)
    vals = dict(
        mu_e=mu_e,
        lambda_e=rng.uniform(-0.6, 2.0) * mu_e,
        mu_micro=mu_micro,
        lambda_micro=rng.uniform(-0.6, 2.0) * mu_micro,
        mu_c=rng.uniform(0.0, 1e9),
        L_c=rng.uniform(1e-3, 1e-2),
        rho=rng.uniform(500.0, 5000.0),
        eta1=10 ** rng.uniform(-3, -1),
        eta2=10 ** rng.uniform(-3, -1),
        eta3=10 ** rng.uniform(-3, -1),
        alpha1=rng.uniform(0.1, 10.0),
        alpha2=rng.uniform(0.1, 10.0),
        alpha3=rng.uniform(0.0, 10.0),
    )
    vals.update(fixed)
    return MaterialParams(**vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import lines

    out = lines()
    if out:
        terminalreporter.section("acceptance criteria")
        for line in out:
            terminalreporter.write_line(line)
