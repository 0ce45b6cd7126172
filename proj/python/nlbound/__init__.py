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

"""Lower bounds on the maximal Bell-inequality violation of bipartite states."""

from ._nlbound import (
    DomainError,
    band_measure,
    bell_diagonal,
    chsh_bound,
    detect_nonlocality,
    finite_n_value,
    find_threshold,
    gamma_correlation,
    isotropic,
    pauli_correlation,
    sigma_mixture,
    theorem1_max,
    theorem1_value,
    theorem2_max,
    theorem2_value,
    werner,
)

__all__ = [
    "DomainError",
    "band_measure",
    "bell_diagonal",
    "chsh_bound",
    "detect_nonlocality",
    "finite_n_value",
    "find_threshold",
    "gamma_correlation",
    "isotropic",
    "pauli_correlation",
    "sigma_mixture",
    "theorem1_max",
    "theorem1_value",
    "theorem2_max",
    "theorem2_value",
    "werner",
]
