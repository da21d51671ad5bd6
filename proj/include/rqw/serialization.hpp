// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rqw/ising.hpp"
#include "rqw/pipeline.hpp"
#include "rqw/qaoa.hpp"
#include "rqw/rqaoa.hpp"
#include "rqw/statevector.hpp"
#include "rqw/wireless.hpp"

namespace rqw {

using Json = nlohmann::ordered_json;

/// {"offset", "active", "fields": [[i, h]], "couplings": [[i, j, J]]}
Json to_json(const IsingInstance& ising);
IsingInstance ising_from_json(const Json& j);

/// Weights are "weights": [[u, v, w]] or "per_channel_weights": [[u, v, c, w]].
Json to_json(const ChannelAssignmentInstance& inst);
ChannelAssignmentInstance instance_from_json(const Json& j);

/// {"assignment": channel per user (null when unassigned), "objective", "feasible"}
Json assignment_json(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst);

Json to_json(const EliminationEntry& entry);
Json to_json(const RoundTrace& round);
/// One JSON object per round, newline separated.
void write_trace_jsonl(std::ostream& out, const RqaoaTrace& trace);

Json to_json(const PresolveSummary& summary);
Json to_json(const RunMetrics& metrics);

/// Amplitudes keyed by bitstring; refused above ten qubits.
Json statevector_json(const StateVector& psi);

void write_optimizer_trace_header(std::ostream& out, std::size_t depth);
void write_optimizer_trace_row(std::ostream& out, const EvaluationRecord& record);

/// Reads config keys over `base`; unknown keys raise ConfigError.
PipelineConfig pipeline_config_from_json(const Json& j, PipelineConfig base = {});
Json to_json(const PipelineConfig& config);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Shortest text that reads back to the same double.
std::string format_double(double value);

}  // namespace rqw
