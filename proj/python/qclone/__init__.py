# Copyright 2026 The qclone Authors
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

"""Quantum cloning machine workbench."""

from ._core import (
    QcloneError,
    __version__,
    anf,
    average_fidelity,
    circuit_images,
    clone,
    equatorial_qubit,
    orthogonal_decomposition,
    parse_affine_forms,
    pc_optimize,
    pointwise_fidelities,
    reconstruct_coeffs,
    run_cli,
    solve_prep_angles,
    synthesize,
    verify_table2,
)

__all__ = [
    "QcloneError",
    "__version__",
    "anf",
    "average_fidelity",
    "circuit_images",
    "clone",
    "equatorial_qubit",
    "orthogonal_decomposition",
    "parse_affine_forms",
    "pc_optimize",
    "pointwise_fidelities",
    "reconstruct_coeffs",
    "run_cli",
    "solve_prep_angles",
    "synthesize",
    "verify_table2",
]
