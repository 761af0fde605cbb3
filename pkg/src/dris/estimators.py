"""scikit-learn style wrappers.

``LcCellResponse`` is a stateless transformer from drive voltages to the
optical response of a cell, so it can sit in a ``Pipeline``.
``BeamSteerer`` fits a code grid to a set of target directions and predicts
the delivered power along arbitrary directions.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import materials as _mat
from . import panel, steering
from .codes import DrisSpec

__all__ = ["LcCellResponse", "BeamSteerer"]


class LcCellResponse(TransformerMixin, BaseEstimator):
    """Map voltages ``(n_samples, 1)`` to ``[psi, n, phi, phi_normalized]``.

    Parameters
    ----------
    material : str or LcMaterial, default="E7"
        Registry name or material instance.
    d : float, default=13.34e-6
        Cell thickness in meters.
    lam : float, default=633e-9
        Wavelength in meters.
    """

    def __init__(self, material="E7", d=13.34e-6, lam=633e-9):
        self.material = material
        self.d = d
        self.lam = lam

    def _cell(self):
        mat = self.material
        if isinstance(mat, str):
            mat = _mat.default_registry()[mat]
        return _mat.LcCell(mat, d=self.d, lam=self.lam)

    def fit(self, X, y=None):
        X = check_array(X, ensure_min_samples=1)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single voltage column, got {X.shape[1]}")
        self.cell_ = self._cell()
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "cell_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single voltage column, got {X.shape[1]}")
        rows = [r[1:] for r in _mat.voltage_sweep(self.cell_, X[:, 0].tolist())]
        return np.array(rows, dtype=float).reshape(len(rows), 4)

    def get_feature_names_out(self, input_features=None):
        return np.array(["psi_rad", "n", "phi_rad", "phi_normalized"], dtype=object)


class BeamSteerer(BaseEstimator):
    """Pick the code grid delivering the most power toward target directions.

    ``fit(X, sample_weight)`` takes target directions in radians as a single
    column; weights default to 1. After fitting, ``grid_``, ``bits_`` and
    ``objective_`` describe the solution and ``predict`` returns delivered
    power (mW) along new directions.
    """

    def __init__(self, spec: DrisSpec | None = None, lobe_order=1.0, theta_i=0.0, p_in=1.0, method="greedy", cap=steering.DEFAULT_CAP):
        self.spec = spec
        self.lobe_order = lobe_order
        self.theta_i = theta_i
        self.p_in = p_in
        self.method = method
        self.cap = cap

    def fit(self, X, y=None, sample_weight=None):
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("X must hold one column of target directions")
        w = np.ones(X.shape[0]) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        if w.shape != (X.shape[0],):
            raise ValueError("sample_weight must have one entry per target")
        spec = panel.reference_spec() if self.spec is None else self.spec
        self.problem_ = steering.SteeringProblem(
            targets=tuple(zip(X[:, 0].tolist(), w.tolist())),
            spec=spec,
            theta_i=self.theta_i,
            lobe_order=self.lobe_order,
            p_in=self.p_in,
        )
        if self.method == "greedy":
            grid = steering.greedy_steer(self.problem_)
        elif self.method == "exhaustive":
            grid = steering.exhaustive_steer(self.problem_, cap=self.cap)
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.grid_ = grid
        self.bits_ = grid.to_bits()
        self.objective_ = steering.objective(grid, self.problem_)
        self.beams_ = panel.aggregate_beams(grid, spec, p_in=self.p_in, theta_i=self.theta_i)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "grid_")
        X = check_array(X)
        return self.p_in * panel.pattern_sample(self.beams_, X[:, 0], self.lobe_order)

    def score(self, X, y=None, sample_weight=None):
        """Weighted delivered power toward ``X`` under the fitted grid."""
        gains = self.predict(X)
        w = np.ones(len(gains)) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        return float(np.dot(w, gains))
