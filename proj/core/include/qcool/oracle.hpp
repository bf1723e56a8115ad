// Copyright 2026 The qcool Authors
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

#include "qcool/model.hpp"
#include "qcool/protocol.hpp"

namespace qcool {

inline constexpr int kOracleMaxSites = 4;
inline constexpr std::size_t kOracleMaxRounds = 5;

/// Independent reference for run_protocol on small chains.
///
/// Builds H_ev from explicit matrix elements, U by Pade exponentiation and
/// forms (Pi U)^n rho(0) (U^dag Pi)^n with full-matrix products for every n.
/// Nothing is shared with the runner beyond ChainSpec and the result types.
/// Throws CapacityError when L > 4 or N > 5.
ProtocolTrace brute_force_oracle(const ChainSpec& spec);

} // namespace qcool
