import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from dris.codes import DrisSpec
from dris.estimators import BeamSteerer, LcCellResponse
from dris.materials import default_registry, tilt_angle
from dris.panel import reference_spec


def test_cell_response_columns():
    v = np.array([[0.5], [2.0], [4.0]])
    out = LcCellResponse("E7").fit_transform(v)
    assert out.shape == (3, 4)
    assert out[0, 0] == 0.0 and out[0, 3] == 1.0
    assert out[1, 0] == tilt_angle(2.0, default_registry()["E7"])


def test_cell_response_in_pipeline():
    pipe = make_pipeline(FunctionTransformer(lambda x: x * 2.0), LcCellResponse("A4907"))
    out = pipe.fit_transform(np.array([[0.5], [1.3]]))
    assert out[0, 0] == 0.0 and out[1, 0] > 0


def test_cell_response_params_and_shape_check():
    est = LcCellResponse("E63", d=5e-6)
    assert clone(est).get_params()["d"] == 5e-6
    with pytest.raises(ValueError):
        est.fit(np.ones((3, 2)))


def test_steerer_fit_predict():
    est = BeamSteerer(spec=reference_spec(), lobe_order=2).fit(np.array([[math.pi]]))
    assert est.bits_ == "11" * 4
    assert est.objective_ == pytest.approx(0.45)
    assert est.predict(np.array([[math.pi], [0.0]])) == pytest.approx([0.45, 0.0], abs=1e-15)
    assert est.score(np.array([[math.pi]])) == pytest.approx(est.objective_)


def test_steerer_methods_agree():
    X = np.array([[0.4], [2.5]])
    w = np.array([1.0, 3.0])
    spec = DrisSpec(2, 2, 2, 0.8)
    g = BeamSteerer(spec=spec).fit(X, sample_weight=w)
    e = BeamSteerer(spec=spec, method="exhaustive").fit(X, sample_weight=w)
    assert g.objective_ == pytest.approx(e.objective_, rel=1e-12)


def test_steerer_clone_and_errors():
    est = BeamSteerer(method="nope")
    assert clone(est).get_params()["method"] == "nope"
    with pytest.raises(ValueError):
        est.fit(np.array([[0.0]]))
    with pytest.raises(ValueError):
        BeamSteerer().fit(np.array([[0.0]]), sample_weight=[1.0, 2.0])
