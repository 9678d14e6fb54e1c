import math

import numpy as np
import pytest

from conftest import scipy_offcut, scipy_pv, trapezoid_pv
from pvspline.densities import CORPUS
from pvspline.errors import BranchError, ConvergenceError, DomainError
from pvspline.grid import make_custom
from pvspline.oracle import (
    OracleConfig,
    hat_density,
    hat_oracle,
    integrate_adaptive,
    offcut_oracle,
    pv_oracle,
)
from pvspline.spline import DensityFunction


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(tolerance=0)
    with pytest.raises(ValueError):
        OracleConfig(max_refinement_depth=61)
    assert OracleConfig() == OracleConfig(1e-10, 48)


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("PVSPLINE_TOL", "1e-7")
    assert OracleConfig.from_env().tolerance == 1e-7


def test_constant_density_gives_zero():
    assert pv_oracle(CORPUS["const1"], 0.3) == 0.0


@pytest.mark.parametrize(
    "label, x, expected",
    [
        ("linear", 0.7, math.sqrt(1 - 0.49)),
        ("cheb2", -0.4, math.sqrt(1 - 0.16) * -0.8),
    ],
)
def test_pv_known_values(label, x, expected):
    f = CORPUS[label]
    value = pv_oracle(f, x)
    # second discretisation: periodic trapezoid rule in theta
    assert trapezoid_pv(f, x) == pytest.approx(value, abs=1e-10)
    assert value == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("x", [-0.93, -0.2, 0.0, 0.51, 0.999])
def test_pv_exp_against_two_references(x):
    f = CORPUS["expn"]
    value = pv_oracle(f, x)
    assert value == pytest.approx(trapezoid_pv(f, x), abs=1e-11)
    assert value == pytest.approx(scipy_pv(math.exp, x), abs=1e-10)


@pytest.mark.parametrize(
    "label, z, expected",
    [
        ("const1", 2, 1.0),
        ("linear", 2, 2 - math.sqrt(3)),
        ("linear", 1j, -(math.sqrt(2) - 1) * 1j),
    ],
)
def test_offcut_known_values(label, z, expected):
    value = offcut_oracle(CORPUS[label], z)
    f = CORPUS[label].evaluator
    assert scipy_offcut(lambda t: float(f(np.array(t))), complex(z)) == pytest.approx(value, abs=1e-10)
    assert value == pytest.approx(expected, abs=1e-12)


def test_offcut_rejects_cut():
    with pytest.raises(BranchError):
        offcut_oracle(CORPUS["linear"], 0.5)


def test_pv_rejects_endpoint():
    with pytest.raises(DomainError):
        pv_oracle(CORPUS["linear"], 1.0)


def test_hat_oracle_examples(grid3):
    assert hat_oracle(grid3, 0, 0.0) == pytest.approx(-0.5, abs=1e-13)
    assert hat_oracle(grid3, 2, 0.0) == pytest.approx(0.5, abs=1e-13)
    assert hat_oracle(grid3, 1, 2) == pytest.approx(1 / 3, abs=1e-13)
    assert hat_oracle(grid3, 1, 2 + 0j) == pytest.approx(1 / 3, abs=1e-13)


def test_hat_density_is_nodal_basis():
    g = make_custom([-1, -0.3, 0.4, 1])
    for k in range(4):
        vals = hat_density(g, k)(g.nodes)
        assert vals.tolist() == [1.0 if j == k else 0.0 for j in range(4)]


def test_holder_density_relaxed_tolerance():
    f = CORPUS["holder-sqrt"]
    cfg = OracleConfig(tolerance=1e-8)
    # odd integrand at x = 0
    assert abs(pv_oracle(f, 0.0, cfg)) < 1e-8
    for x in (0.3, -1e-5, 0.8):
        v = pv_oracle(f, x, cfg)
        assert v == pytest.approx(scipy_pv(lambda t: math.sqrt(abs(t)), x, breaks=[0.0]), abs=1e-8)


@pytest.mark.parametrize("label", ["expn", "holder-sqrt", "kink", "c1half"])
def test_self_consistency(label):
    f = CORPUS[label]
    for x in (-0.6, 0.05, 0.71):
        coarse = pv_oracle(f, x, OracleConfig(1e-8), full_output=True)
        fine = pv_oracle(f, x, OracleConfig(5e-9), full_output=True)
        assert abs(coarse.value - fine.value) <= coarse.error


@pytest.mark.parametrize("x", [0.2, 0.45, 0.8])
def test_reflection(x):
    # f(t) -> f(-t), x -> -x flips the sign of J
    f = CORPUS["expn"]
    g = DensityFunction(lambda t: np.exp(-np.asarray(t)), None)
    assert pv_oracle(g, -x) == pytest.approx(-pv_oracle(f, x), abs=1e-12)


def test_convergence_failure_carries_estimate():
    # 1/sqrt singularity needs many bisections; depth 3 cannot reach 1e-12
    with pytest.raises(ConvergenceError) as info:
        integrate_adaptive(lambda s: 1 / np.sqrt(s), [0.0, 1.0], OracleConfig(1e-12, 3))
    assert info.value.estimate == pytest.approx(2.0, abs=0.2)
    assert info.value.error > 1e-12


def test_integrate_adaptive_smooth():
    res = integrate_adaptive(np.cos, [0, 1, math.pi / 2], OracleConfig(1e-14))
    assert res.value == pytest.approx(1.0, abs=1e-14)
