# Copyright 2026 The nlbound Authors
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

import nlbound

HEMI = (0.0, math.pi / 2)


def test_states_are_physical_matrices():
    rho = nlbound.werner(0.5)
    assert rho.shape == (4, 4)
    assert np.allclose(rho, rho.conj().T)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert nlbound.isotropic(3, 0.2).shape == (9, 9)
    assert nlbound.sigma_mixture(0.0, 1.0).shape == (9, 9)


def test_invalid_state_raises_value_error():
    with pytest.raises(ValueError, match="positive-semidefinite"):
        nlbound.bell_diagonal(1.0, 1.0, -1.0)
    with pytest.raises(ValueError):
        nlbound.pauli_correlation(np.eye(3) / 3)


def test_correlation_matrices():
    t = nlbound.pauli_correlation(nlbound.werner(1.0))
    assert np.allclose(t, -0.25 * np.eye(3))
    g = nlbound.gamma_correlation(nlbound.isotropic(3, 0.0))
    assert g[0, 0] == pytest.approx(1 / 9)
    assert np.allclose(g.flatten()[1:], 0.0)


def test_chsh_and_band_measure():
    t = nlbound.pauli_correlation(nlbound.werner(0.5))
    assert nlbound.chsh_bound(t) == pytest.approx(0.5 * math.sqrt(2), abs=1e-12)
    assert nlbound.band_measure(0.0, math.pi / 3) == pytest.approx(math.pi, abs=1e-12)


def test_fixed_region_values():
    t = nlbound.pauli_correlation(nlbound.werner(0.9))
    g = nlbound.gamma_correlation(nlbound.werner(0.9))
    v1 = nlbound.theorem1_value(t, HEMI, HEMI)
    assert nlbound.theorem2_value(g, HEMI, HEMI) == pytest.approx(v1, abs=1e-9)
    mixed = nlbound.gamma_correlation(nlbound.isotropic(3, 0.0))
    assert nlbound.theorem2_value(mixed, (0.1, 0.9), (0.2, 1.3)) == pytest.approx(1 / 9, abs=1e-12)
    assert nlbound.finite_n_value(t, 200, HEMI, HEMI, seed=3) == pytest.approx(v1, rel=0.05)


def test_maximisation_and_detection():
    rep = nlbound.theorem1_max(nlbound.pauli_correlation(nlbound.werner(1.0)), fast=True)
    assert rep["nonlocal"]
    assert rep["bound"] > 1.38
    ab, cd = rep["best_region"]
    assert 0 <= ab[0] < ab[1] <= math.pi / 2
    det = nlbound.detect_nonlocality(nlbound.isotropic(3, 1.0), fast=True)
    assert det["d"] == 3 and det["nonlocal"]
    assert det["kernel_variant"] in ("as-written", "affine")
    assert det["chsh"] is None


def test_threshold():
    r = nlbound.find_threshold("werner", 0.6, 0.8, 1e-3, fast=True)
    assert r["threshold"] == pytest.approx(0.7054, abs=0.01)
    with pytest.raises(nlbound.DomainError):
        nlbound.find_threshold("werner", 0.8, 0.9, fast=True)
