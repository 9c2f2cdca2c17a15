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

"""Fisher information of parametrised Hamiltonians, with and without feedback control."""

from ._core import (
    HamestError,
    HamiltonianFamily,
    beta_sweep,
    bures_distance,
    c_te,
    channel_qfi,
    controlled_qfi,
    eigen_angles,
    expm_i,
    fidelity,
    gain_interval,
    hermitian_eigenvalues,
    linspace,
    max_noisy_qfi,
    min_fidelity_over_inputs,
    noisy_beta_sweep,
    noisy_qfi,
    optimal_probe,
    precision_bound,
    pure_state_qfi,
    scaling_curve,
    sld_qfi,
    total_unitary,
    universal_qfi,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
