import cmath
import math

import numpy as np
import pytest

import ellqpy

TAU = 0.8j


def product_theta(z, tau=TAU, terms=80):
    q = cmath.exp(1j * math.pi * tau)
    r = 2 * cmath.exp(1j * math.pi * tau / 4) * cmath.sin(math.pi * z)
    for n in range(1, terms + 1):
        q2n = q ** (2 * n)
        r *= (1 - q2n) * (1 - 2 * q2n * cmath.cos(2 * math.pi * z) + q2n * q2n)
    return r


def test_theta_matches_triple_product():
    for z in (0.1 + 0.05j, -0.37 + 0.2j, 0.44 - 0.3j):
        assert abs(ellqpy.theta(z) - product_theta(z)) < 1e-12


def test_theta_is_odd_and_quasi_periodic():
    z = 0.21 + 0.13j
    assert abs(ellqpy.theta(-z) + ellqpy.theta(z)) < 1e-12
    assert abs(ellqpy.theta(z + 1) + ellqpy.theta(z)) < 1e-12
    want = -cmath.exp(-1j * math.pi * TAU - 2j * math.pi * z) * ellqpy.theta(z)
    assert abs(ellqpy.theta(z + TAU) - want) < 1e-11


def test_r_matrix_at_zero_is_the_flip():
    N = 3
    R = np.asarray(ellqpy.r_matrix(N, 0.0, [0.41 + 0.02j, -0.13, 0.22 - 0.01j]))
    P = np.zeros((N * N, N * N))
    for i in range(N):
        for j in range(N):
            P[j * N + i, i * N + j] = 1
    assert np.abs(R - P).max() < 1e-12


def test_dybe_small():
    r = ellqpy.dybe_residual(2, 0.31 + 0.05j, -0.17 + 0.02j, [0.37 + 0.05j, -0.2])
    assert r < 1e-10


def test_tableaux_and_qchar():
    tabs = ellqpy.tableaux([2, 1, 0], 3)
    assert len(tabs) == 8
    q = ellqpy.qchar([2, 1, 0], 3, "1/2")
    assert q["N"] == 3
    assert sum(t["coeff"] for t in q["terms"]) == 8


def test_reports_are_json_and_deterministic():
    a = ellqpy.dybe_report(N=2, samples=5, seed=7)
    b = ellqpy.dybe_report(N=2, samples=5, seed=7)
    assert a == b
    assert a["pass"] is True
    assert a["schema_version"] == 1


def test_bad_input_raises():
    with pytest.raises(ValueError):
        ellqpy.theta(0.1, tau=-1j)
    with pytest.raises(ValueError):
        ellqpy.r_matrix(3, 0.1, [0.1, 0.2])
