import math

import numpy as np
import pytest

import pairgf


def rho_f0(E):
    return E * E / (16 * math.pi**3)


def test_version():
    assert pairgf.__version__ == "0.1.0"


def test_gamma_and_hyp1f1():
    assert abs(pairgf.gamma(5) - 24) < 1e-12
    assert abs(pairgf.hyp1f1(1, 1, 0.5) - math.exp(0.5)) < 1e-12
    assert pairgf.whittaker_wronskian_residual(1.0, 2.0) < 1e-8


def test_coulomb_free_reduction():
    r1, r2, E = (0.3, -1.0, 0.5), (1.2, 0.4, -0.2), 2.5
    d = math.dist(r1, r2)
    expect = -np.exp(1j * math.sqrt(E) * d) / (4 * math.pi * d)
    assert abs(pairgf.coulomb_gf(r1, r2, E, free=True) - expect) < 1e-10 * abs(expect)


def test_partial_waves_match_closed_form():
    g = 1.1
    closed = pairgf.coulomb_gf((1.0, 0, 0), (3.0 * math.cos(g), 3.0 * math.sin(g), 0), 4.0)
    pw = pairgf.coulomb_gf_partial_waves(1.0, 3.0, math.cos(g), 4.0)
    assert abs(pw - closed) < 1e-6 * abs(closed)


def test_classification_and_divergence():
    x = (1.0, 0.0, 0.0)
    assert pairgf.classify_args(x, (0, 0, 0), x, (0, 0, 0)).startswith("Group1")
    with pytest.raises(pairgf.DivergentArguments):
        pairgf.pair_gf(x, (0, 0, 0), x, (0, 0, 0), 1.0)
    with pytest.raises(pairgf.DomainError):
        pairgf.pair_gf(x, (0, 0, 0), x, (0, 0, 0), 1.0)


def test_pair_gf_channels():
    a1, b1, a2, b2 = (0.4, 0.1, -0.3), (-0.8, 0.5, 0.2), (0.9, -0.6, 0.1), (0.2, 0.7, -0.5)
    E = -1.0
    g = pairgf.pair_gf(a1, b1, a2, b2, E)
    assert g.imag == 0
    s = pairgf.pair_gf(a1, b1, a2, b2, E, channel="singlet")
    t = pairgf.pair_gf(a1, b1, a2, b2, E, channel="triplet")
    assert abs(s - pairgf.pair_gf(b1, a1, a2, b2, E, channel="singlet")) < 1e-10 * abs(s)
    assert abs(t + pairgf.pair_gf(b1, a1, a2, b2, E, channel="triplet")) < 1e-10 * abs(t)


def test_origin_density():
    assert pairgf.g0_dos(-1.0) == 0.0
    assert pairgf.g0_dos(2.0) > pairgf.g0_dos(1.0) > 0
    with pytest.raises(pairgf.CutoffRequired):
        pairgf.g0_real(1.0)
    assert math.isfinite(pairgf.g0_real(1.0, cutoff=20.0))
    c0, e0 = pairgf.single_refs(1.0)
    assert c0 == pytest.approx(2.978e-4, rel=1e-3)
    assert e0 == pytest.approx(1 / (4 * math.pi**2))


def test_ldos_point_and_grid():
    p = pairgf.ldos(1e-2, 4.0)
    assert p["rho_odd"] < 1e-3 * p["rho_even"]
    assert p["rho_total"] == pytest.approx(2 * p["rho_plus"] - p["rho_minus"])
    assert pairgf.ldos(2.0, -1.0)["rho_total"] == 0.0
    free = pairgf.ldos(1.3, 4.0, free=True)
    assert free["rho_plus"] == pytest.approx(rho_f0(4.0), rel=1e-6)
    plus, minus = pairgf.ldos_grid([0.5, 2.0], [1.0, 4.0], threads=2)
    assert plus.shape == (2, 2) and minus.shape == (2, 2)
    assert plus[1, 1] == pytest.approx(pairgf.ldos(2.0, 4.0)["rho_plus"], rel=1e-12)
    assert pairgf.ldos_free(0, 0, 4.0) == rho_f0(4.0)


def test_dyson():
    pts = [((1.0, 0.2, 0.0), (-0.5, 0.8, 0.3)), ((0.4, -1.1, 0.6), (0.9, 0.5, -0.7))]
    w = [0.3, 0.2]
    full_pts, full_w = pairgf.grid_points(pts, w)
    assert len(full_pts) == 4 and len(full_w) == 4
    g = pairgf.bare_kernel(pts, w, -1.0)
    assert g.shape == (4, 4)
    assert np.array_equal(pairgf.dyson_solve(pts, w, -1.0), g)
    lam = 1e-3
    G = pairgf.dyson_solve(pts, w, -1.0, u_pair=lambda a, b: lam)
    born = g + lam * g @ np.diag(full_w) @ g
    assert np.max(np.abs(G - born)) < 1e-4 * np.max(np.abs(g))
