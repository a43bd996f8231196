// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <json.hpp>
#include <vector>

#include "stabpair/param.hpp"
#include "stabpair/pencil.hpp"
#include "stabpair/solver.hpp"

namespace stabpair {

using json = nlohmann::json;

json matrix_to_json(const Matrix& M);  ///< nested row-major arrays
Matrix matrix_from_json(const json& j);

// ADL hooks so nlohmann can convert these types implicitly.
void to_json(json& j, const SpectrumEntry& entry);
void to_json(json& j, const AdmissibilityReport& report);
void to_json(json& j, const ParamState& state);
void from_json(const json& j, ParamState& state);
void to_json(json& j, const SweepEntry& entry);
void to_json(json& j, const SolverConfig& cfg);

/// Trace CSV with header: iter,error,elapsed_s,err_after_W,err_after_T,err_after_UB
void write_trace_csv(std::ostream& out,
                     const std::vector<IterationTrace>& trace);

}  // namespace stabpair
