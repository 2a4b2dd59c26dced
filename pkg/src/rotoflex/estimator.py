"""scikit-learn style wrapper around the rotoflex operator.

``fit`` receives the source vector (one row of 2N harmonic coefficients) and
builds the operator; ``transform`` applies it to rows, ``inverse_transform``
applies the inverse. Because the rotance depends on the source spectrum, the
fitted operator reproduces the circuit response exactly only for the fitted
source (and scalar multiples of it); use :meth:`RotoflexSolver.solve` to get
the per-row circuit response.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import core
from .circuit import Circuit, Topology
from .ga import Multivector


def check_harmonic_rows(X, n_features: int | None = None) -> np.ndarray:
    """Validate a 2-D float array whose rows are harmonic-space vectors."""
    X = check_array(X, dtype=np.float64, ensure_2d=False)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.shape[1] % 2:
        raise ValueError(f"expected an even number of columns (cos/sin pairs), got {X.shape[1]}")
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} features, but the operator was fitted with {n_features}")
    return X


class RotoflexSolver(TransformerMixin, BaseEstimator):
    """Solve a series or parallel RLC branch for a multi-harmonic source.

    Parameters
    ----------
    topology : {"series", "parallel"}
        Series branches are voltage driven (output is current), parallel
        branches are current driven (output is voltage).
    R : float, optional
        Series resistance in ohms.
    G : float, optional
        Parallel conductance in siemens.
    L, C : float, optional
        Inductance (H) and capacitance (F).
    omega : float
        Fundamental angular frequency in rad/s.

    Attributes
    ----------
    operator_ : Rotoflex
    flextance_ : float
    rotance_ : Multivector
    power_factor_ : float
    effective_angle_ : float
        In radians.
    n_harmonics_ : int
    n_features_in_ : int
    """

    def __init__(self, topology="series", R=None, G=None, L=None, C=None, omega=1.0):
        self.topology = topology
        self.R = R
        self.G = G
        self.L = L
        self.C = C
        self.omega = omega

    def _circuit(self) -> Circuit:
        topology = Topology(self.topology)
        if topology is Topology.SERIES:
            if self.G is not None:
                raise ValueError("series branches take R, not G")
            return Circuit.series(self.R, self.L, self.C)
        if self.R is not None:
            raise ValueError("parallel branches take G, not R")
        return Circuit.parallel(self.G, self.L, self.C)

    def fit(self, X, y=None):
        X = check_harmonic_rows(X)
        if X.shape[0] != 1:
            raise ValueError(f"fit expects a single source vector, got {X.shape[0]} rows")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive, got {self.omega}")
        self.circuit_ = self._circuit()
        x = Multivector.from_vector(X[0])
        self.operator_ = core.build_rotoflex(self.circuit_, x, self.omega)
        self.flextance_ = self.operator_.k
        self.rotance_ = self.operator_.R
        self.n_harmonics_ = self.operator_.n_harmonics
        self.n_features_in_ = X.shape[1]
        self.power_factor_ = self.rotance_[0]
        self.effective_angle_ = core.effective_angle(self.operator_)
        return self

    def _map_rows(self, theta, X) -> np.ndarray:
        return np.vstack([core.apply(theta, Multivector.from_vector(row)).vector_components() for row in X])

    def transform(self, X):
        check_is_fitted(self, "operator_")
        X = check_harmonic_rows(X, self.n_features_in_)
        return self._map_rows(self.operator_, X)

    def inverse_transform(self, X):
        check_is_fitted(self, "operator_")
        X = check_harmonic_rows(X, self.n_features_in_)
        return self._map_rows(core.invert(self.operator_), X)

    def solve(self, X):
        """Circuit response for each row, building a fresh operator per row."""
        X = check_harmonic_rows(X)
        circuit = self._circuit()
        rows = []
        for row in X:
            x = Multivector.from_vector(row)
            rows.append(core.construct_output(circuit, x, self.omega).vector_components())
        return np.vstack(rows)
