# Copyright 2026 The hamest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import hamest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([-1.0, 1.0]).astype(complex)


def test_direction_field_matrices():
    fam = hamest.HamiltonianFamily.direction_field(1.0)
    assert fam.dim == 2
    x = 0.3
    np.testing.assert_allclose(fam.evaluate(x), math.cos(x) * SX + math.sin(x) * SZ, atol=1e-14)
    np.testing.assert_allclose(fam.derivative(x), -math.sin(x) * SX + math.cos(x) * SZ, atol=1e-14)
    u = fam.unitary_at(x, 1.0)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_channel_qfi_closed_form():
    fam = hamest.HamiltonianFamily.direction_field(1.0)
    expected = 4 * math.sin(1.0) ** 2
    assert hamest.channel_qfi(fam, 1.0) == pytest.approx(expected, rel=1e-5)
    assert hamest.channel_qfi(fam, 1.0, method="generator") == pytest.approx(expected, rel=1e-5)


def test_multiplicative_qfi_is_spread_squared():
    fam = hamest.HamiltonianFamily.multiplicative(np.diag([1.0, -1.0]).astype(complex))
    assert hamest.channel_qfi(fam, 0.4, T=1.0) == pytest.approx(4.0, rel=1e-6)
    assert hamest.precision_bound(4.0, 100) == pytest.approx(0.05)


def test_eigen_angles_and_spread():
    u = np.diag(np.exp(-1j * np.array([0.5, -0.25])))
    np.testing.assert_allclose(hamest.eigen_angles(u), [0.5, -0.25], atol=1e-12)
    r = hamest.c_te(u)
    assert r["spread"] == pytest.approx(0.75)
    assert r["c_te"] == pytest.approx(0.375)
    assert not r["wraparound"]
    assert hamest.min_fidelity_over_inputs(u) == pytest.approx(math.cos(0.375))


def test_feedback_saturates_at_m5():
    fam = hamest.HamiltonianFamily.direction_field(1.0)
    q = hamest.controlled_qfi(fam, 1.0, m=5, T=1.0, x_hat=1.0)
    assert q == pytest.approx(3.9469503, abs=1e-5)
    assert q <= hamest.universal_qfi(fam, 1.0, 1.0) + 1e-6
    curve = dict(hamest.scaling_curve(fam, 1.0, 1.0, [1, 200]))
    assert curve[200] == pytest.approx(3.99996667, abs=1e-4)


def test_gain_interval_noiseless():
    fam = hamest.HamiltonianFamily.direction_field(1.0)
    gi = hamest.gain_interval(fam, 1.0, 5, 1.0)
    assert gi["lo"] == pytest.approx(-1.66, abs=0.05)
    assert gi["hi"] == pytest.approx(1.66, abs=0.05)
    sweep = hamest.beta_sweep(fam, betas=[-1.0, 0.0, 1.0], threads=1)
    assert len(sweep["qfi_controlled"]) == 3
    assert sweep["qfi_controlled"][1] > sweep["qfi_uncontrolled"]


def test_noisy_reduces_to_unitary_at_eta_one():
    fam = hamest.HamiltonianFamily.direction_field(1.0)
    best = hamest.max_noisy_qfi(fam, 1.0, 5, x_hat=1.0, eta=1.0, azimuth_points=16, polar_points=8)
    assert best["qfi"] == pytest.approx(3.9469503, abs=1e-4)
    noisy = hamest.noisy_qfi(fam, 1.0, 5, x_hat=1.0, eta=0.9, probe=best["probe"])
    assert 0.0 < noisy < best["qfi"]


def test_trig_family_and_json_round_trip():
    fam = hamest.HamiltonianFamily.trig_matrix(SX, [(2 * SZ, SY)])
    np.testing.assert_allclose(fam.evaluate(0.7), SX + 2 * math.cos(0.7) * SZ + math.sin(0.7) * SY, atol=1e-14)
    again = hamest.HamiltonianFamily.from_json(fam.to_json())
    np.testing.assert_allclose(again.evaluate(0.7), fam.evaluate(0.7), atol=0)


def test_errors_carry_kind():
    with pytest.raises(hamest.HamestError) as info:
        hamest.HamiltonianFamily.multiplicative(np.array([[0, 1], [0, 0]], dtype=complex))
    assert info.value.kind == "NotHermitian"
    fam = hamest.HamiltonianFamily.multiplicative(SZ)
    with pytest.raises(hamest.HamestError) as info:
        hamest.channel_qfi(fam, 0.0, dx=2.0)
    assert info.value.kind == "StepTooLarge"
    with pytest.raises(hamest.HamestError):
        hamest.noisy_beta_sweep(fam, [0.0], eta=1.5)


def test_density_helpers():
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.full((2, 2), 0.5, dtype=complex)
    assert hamest.fidelity(rho, sigma) == pytest.approx(math.sqrt(0.5))
    assert hamest.sld_qfi(rho, np.zeros((2, 2), dtype=complex)) == pytest.approx(0.0)
