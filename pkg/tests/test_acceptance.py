"""Exit criteria for the simulator, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import itertools
import math
import random
import time

import numpy as np
import pytest

from dris.codes import DrisSpec, decode_sequence, default_types, distinct_types, stc_schedule
from dris.materials import (
    LcCell,
    default_registry,
    index_at_tilt,
    required_birefringence,
    retardation,
    tilt_angle,
)
from dris.optics import (
    Evanescent,
    GratingSpec,
    InterfaceConfig,
    LayerStack,
    blazed_reflection_angle,
    generalized_snell,
    grating_orders,
    stack_reflectance,
)
from dris.panel import element_response, power_dbm, reference_spec
from dris.steering import SteeringProblem, exhaustive_search, greedy_steer, objective

DEG = math.pi / 180
criterion = pytest.mark.criterion


@criterion(1, "reference panel gammas exact, dBm within 1e-3")
def test_c1_reference_example():
    t0 = time.perf_counter()
    spec = reference_spec()
    gammas = tuple(element_response(t, spec)[1] for t in spec.types)
    assert gammas == (0.81, 0.63, 0.45, 0.27)
    dbm = [power_dbm(g, 1.0) for g in gammas]
    for got, want in zip(dbm, (-0.9151, -2.0066, -3.4679, -5.6864)):
        assert abs(got - want) < 1e-3
    assert time.perf_counter() - t0 < 0.1


@criterion(2, "control sequences 00000000 and 01000111")
def test_c2_control_sequences():
    spec = DrisSpec(2, 2, 2, 0.9)
    assert len(distinct_types(decode_sequence("00000000", spec))) == 1
    types = distinct_types(decode_sequence("01000111", spec))
    assert len(types) == 3
    assert sorted(t.theta for t in types) == [0.0, math.pi / 2, math.pi]


@criterion(3, "generalized Snell with q = 0 reduces to classical Snell")
def test_c3_snell_reduction():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        th = rng.uniform(0, math.pi / 2 * 0.999)
        n1, n2 = rng.uniform(1, 3, 2)
        res = generalized_snell(th, InterfaceConfig(n1, n2))
        assert res.theta_re == th
        s = n1 * math.sin(th) / n2
        if s > 1:
            assert isinstance(res.theta_ra, Evanescent)
        else:
            assert abs(res.theta_ra - math.asin(s)) < 1e-12


@criterion(4, "zero blaze angle is the identity")
def test_c4_blazed_identity():
    pairs = itertools.product(np.linspace(0, 80 * DEG, 10), np.linspace(1.0, 2.5, 10))
    count = 0
    for th, n in pairs:
        assert abs(blazed_reflection_angle(th, n, 0.0) - th) < 1e-12
        count += 1
    assert count == 100


@criterion(5, "grating orders satisfy the grating equation, m = 0 is specular")
def test_c5_grating_residuals():
    rng = np.random.default_rng(5)
    for _ in range(500):
        lam = rng.uniform(400e-9, 1600e-9)
        g = GratingSpec(a=rng.uniform(0.3e-6, 20e-6), alpha=rng.uniform(-0.7, 0.7), n=rng.uniform(1, 2.5))
        phi_i = rng.uniform(-1.5, 1.5)
        orders = grating_orders(phi_i, g, lam)
        assert [m for m, _ in orders] == sorted(m for m, _ in orders)
        for m, phi_r in orders:
            assert abs(g.n * g.a * (math.sin(phi_r) + math.sin(phi_i)) - m * lam) < 1e-9 * lam
        assert dict(orders)[0] == -phi_i


@criterion(6, "LC tilt, index and retardation properties for every registry material")
def test_c6_lc_properties():
    for mat in default_registry().values():
        v = np.linspace(0, mat.v_c + 20 * mat.v_scale, 4001)
        psi = np.array([tilt_angle(x, mat) for x in v])
        above = v > mat.v_c
        assert np.all(psi[~above] == 0)
        assert np.all(np.diff(psi[above]) > 0)
        assert np.all(psi < math.pi / 2)
        assert index_at_tilt(0.0, mat) == pytest.approx(mat.n_e, rel=1e-15)
        assert index_at_tilt(math.pi / 2, mat) == pytest.approx(mat.n_o, rel=1e-15)
        cell = LcCell(mat, 13.34e-6, 633e-9)
        norm = [retardation(p, cell).phi_normalized for p in np.linspace(0, math.pi / 2, 1001)]
        assert all(0.0 <= x <= 1.0 for x in norm)
        assert norm[0] == 1.0 and norm[-1] == 0.0


@criterion(7, "TE stack reflectance falls with incidence angle and with layer index")
def test_c7_reflectance_trends():
    rng = np.random.default_rng(7)
    angles = np.arange(0, 90) * DEG
    for _ in range(50):
        layers = tuple((n, d) for n, d in zip(rng.uniform(1.3, 2.5, rng.integers(1, 7)), rng.uniform(1e-7, 1e-3, 6)))
        stack = LayerStack(layers, n_amb=1.0, back_mirror_reflectance=rng.uniform(0.5, 1.0))
        te = np.array([stack_reflectance(stack, a, "TE") for a in angles])
        assert np.all(np.diff(te) <= 0)
        scaled = stack.scaled(rng.uniform(1.05, 1.5))
        for a in (0.0, 20 * DEG, 45 * DEG, 70 * DEG, 89 * DEG):
            assert stack_reflectance(scaled, a, "TE") < stack_reflectance(stack, a, "TE")


@criterion(8, "greedy steering matches exhaustive search")
def test_c8_steering_oracle():
    t0 = time.perf_counter()
    rng = random.Random(8)
    shapes = [(m, n) for m in range(1, 5) for n in range(1, 5) if m * n <= 4]
    for i in range(120):
        m, n = shapes[i % len(shapes)]
        k = 1 + (i // len(shapes)) % 2
        L = 2**k
        spec = DrisSpec(m, n, k, rng.uniform(0.1, 1.0), types=default_types(k, [rng.uniform(0.05, 1.0) for _ in range(L)]))
        targets = tuple((rng.uniform(0, 2 * math.pi), rng.uniform(0.1, 2.0)) for _ in range(rng.randint(1, 3)))
        prob = SteeringProblem(targets, spec, lobe_order=rng.choice([1, 2, 3]))
        res = exhaustive_search(prob)
        assert res.evaluations == L ** (m * n)
        assert objective(greedy_steer(prob), prob) == pytest.approx(res.objective, rel=1e-12, abs=1e-15)
    assert time.perf_counter() - t0 < 60


@criterion(9, "space-time schedule round-trips bit for bit")
def test_c9_stc_round_trip():
    rng = random.Random(9)
    spec = DrisSpec(8, 8, 2, 0.9)
    for t in range(0, 11):
        bits = "".join(rng.choice("01") for _ in range(t * spec.bits_per_frame))
        frame = stc_schedule(bits, spec, t)
        assert len(frame) == t
        rebuilt = "".join(w for grid in frame.slots for row in grid.words for w in row)
        assert rebuilt == bits


@criterion(10, "birefringence for a full-wave cell equals lambda / d")
def test_c10_calibration():
    d = 13.34e-6
    for lam in (450e-9, 532e-9, 633e-9, 850e-9, 1550e-9):
        assert abs(required_birefringence(d, lam) - lam / d) < 1e-12
    a4907 = default_registry()["A4907"]
    assert abs(abs(a4907.n_e - a4907.n_o) - 633e-9 / d) < 1e-12
    assert retardation(0.0, LcCell(a4907, d, 633e-9)).phi_max == pytest.approx(2 * math.pi, rel=1e-12)
