import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rotoflex import RotoflexSolver

CASE1_U = np.array([1.0, 0.0, 0.8, 0.0])
CASE2_I = np.array([1.5, 0.0, 0.0, 0.9, 0.5, 0.0])


def test_case1_fit_transform():
    est = RotoflexSolver("series", R=3.0, L=1.0, C=1.0, omega=1.0)
    out = est.fit_transform(CASE1_U)
    np.testing.assert_allclose(out, [[1 / 3, 0.0, 0.64 / 3, 0.32 / 3]], atol=1e-12)
    assert est.flextance_ == pytest.approx(0.3201, abs=1e-4)
    assert est.power_factor_ == pytest.approx(0.9602, abs=1e-4)
    assert est.n_harmonics_ == 2 and est.n_features_in_ == 4


def test_case2_inverse_round_trip():
    est = RotoflexSolver("parallel", G=0.5, L=3.0, C=0.5, omega=2.0).fit(CASE2_I.reshape(1, -1))
    u = est.transform(CASE2_I)
    np.testing.assert_allclose(est.inverse_transform(u), [CASE2_I], atol=1e-12)


def test_solve_builds_one_operator_per_row():
    est = RotoflexSolver("series", R=3.0, L=1.0, C=1.0, omega=1.0)
    X = np.vstack([CASE1_U, [0.0, 1.0, 0.0, 0.0]])
    out = est.solve(X)
    np.testing.assert_allclose(out[0], [1 / 3, 0.0, 0.64 / 3, 0.32 / 3], atol=1e-12)
    np.testing.assert_allclose(out[1], [0.0, 1 / 3, 0.0, 0.0], atol=1e-12)


def test_params_and_clone():
    est = RotoflexSolver("parallel", G=0.1, C=2.0, omega=5.0)
    assert est.get_params() == {"topology": "parallel", "R": None, "G": 0.1, "L": None, "C": 2.0, "omega": 5.0}
    twin = clone(est).set_params(G=0.2)
    assert twin.G == 0.2 and est.G == 0.1


def test_validation():
    with pytest.raises(NotFittedError):
        RotoflexSolver(R=1.0).transform(CASE1_U)
    with pytest.raises(ValueError, match="single source"):
        RotoflexSolver(R=1.0).fit(np.vstack([CASE1_U, CASE1_U]))
    with pytest.raises(ValueError, match="even"):
        RotoflexSolver(R=1.0).fit(np.ones(3))
    with pytest.raises(ValueError, match="not G"):
        RotoflexSolver("series", G=1.0).fit(CASE1_U)
    est = RotoflexSolver(R=1.0).fit(CASE1_U)
    with pytest.raises(ValueError, match="features"):
        est.transform(np.ones(6))
    with pytest.raises(ValueError):
        RotoflexSolver(R=1.0).fit(np.array([np.nan, 0.0]))
