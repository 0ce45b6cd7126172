// Copyright 2026 The nlbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nlb/states.hpp"

namespace nlb {

// Density-matrix files are JSON objects
//
//   {"dim_a": 2, "dim_b": 2, "entries": [[re, im], ...]}
//
// with (dim_a * dim_b)^2 entries in row-major order.

/// Parses a density matrix document. `source` is used in error messages.
DensityMatrix parse_density_json(std::string_view text, const std::string& source);

DensityMatrix read_density_file(const std::filesystem::path& path);

/// Serialises in the file format above; round-trips exactly through
/// parse_density_json.
std::string density_to_json(const DensityMatrix& rho);

}  // namespace nlb
