import pathlib

import pytest

import planeperiods as pp
from planeperiods.gaussrat import QI
from planeperiods.monomials import Monomial
from planeperiods.periods import period_matrix

ROOT = pathlib.Path(__file__).resolve().parent.parent
CURVES = ROOT / "curves"


@pytest.fixture(scope="session")
def fermat5():
    return pp.fermat_curve(5, constant=1)


@pytest.fixture(scope="session")
def fermat6():
    return pp.fermat_curve(6)


@pytest.fixture(scope="session")
def elliptic():
    # y^2 = x^3 - x, the square-lattice elliptic curve
    return pp.PlaneCurve.from_terms(
        [
            (QI.of(1), Monomial(0, 2)),
            (QI.of(-1), Monomial(3, 0)),
            (QI.of(1), Monomial(1, 0)),
        ],
        d=3,
    )


@pytest.fixture(scope="session")
def quintic_pm(fermat5):
    return period_matrix(fermat5)


@pytest.fixture(scope="session")
def quintic_pm_tight(fermat5):
    return period_matrix(fermat5, quad_tol=1e-12)


@pytest.fixture(scope="session")
def sextic_pm(fermat6):
    return period_matrix(fermat6)


@pytest.fixture(scope="session")
def sextic_pm_tight(fermat6):
    return period_matrix(fermat6, quad_tol=1e-12)


@pytest.fixture(scope="session")
def curves_dir():
    return CURVES
