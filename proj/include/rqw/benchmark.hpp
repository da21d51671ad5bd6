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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rqw/baselines.hpp"
#include "rqw/pipeline.hpp"
#include "rqw/serialization.hpp"
#include "rqw/wireless.hpp"

namespace rqw {

enum class SolverKind { greedy, sa, exact, pipeline };

const char* to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

struct SolverSpec {
    /// Label written to the solver column.
    std::string name;
    SolverKind kind = SolverKind::greedy;
    /// Used by `pipeline`; its seed is replaced per run.
    PipelineConfig pipeline;
    /// Used by `sa`; its seed is replaced per run.
    AnnealConfig anneal;
    /// Only settings given in the spec file, for the manifest.
    Json config = Json::object();
};

enum class Generator { hotspot, uniform, demo };

struct BenchmarkSpec {
    Generator generator = Generator::hotspot;
    std::vector<std::size_t> sizes;
    /// Sizes count qubits (U * C) instead of users.
    bool sizes_in_qubits = false;
    std::size_t channels = 2;
    /// Largest integer weight of the uniform generator.
    int max_weight = 5;
    HotspotParams hotspot;
    /// One topology per seed and size.
    std::vector<std::uint64_t> seeds;
    /// Solver runs per topology, seeded seed * repetitions + r.
    std::size_t repetitions = 1;
    std::vector<SolverSpec> solvers;
    /// 0 means the RQW_WORKERS default.
    std::size_t workers = 0;

    void validate() const;
};

BenchmarkSpec benchmark_spec_from_json(const Json& j);
Json to_json(const BenchmarkSpec& spec);

/// RQW_WORKERS when set to a positive integer, else 1.
std::size_t default_worker_count();

struct BenchmarkRow {
    std::string instance_id;
    std::uint64_t seed = 0;
    std::size_t num_users = 0;
    std::size_t num_channels = 0;
    std::string solver;
    RunMetrics metrics;
    /// "ok" or an error code.
    std::string status = "ok";
    std::string message;
};

using RowKey = std::tuple<std::string, std::uint64_t, std::string>;

inline RowKey key_of(const BenchmarkRow& row) { return {row.instance_id, row.seed, row.solver}; }

/// Users for one size entry.
std::size_t users_for_size(const BenchmarkSpec& spec, std::size_t size);

std::string instance_id(const BenchmarkSpec& spec, std::size_t num_users, std::uint64_t topology_seed);

ChannelAssignmentInstance make_instance(const BenchmarkSpec& spec, std::size_t num_users,
                                        std::uint64_t topology_seed);

/// One solver on one instance; errors become rows with a status code.
BenchmarkRow run_solver(const SolverSpec& solver, const ChannelAssignmentInstance& inst, const std::string& id,
                        std::uint64_t seed);

using RowSink = std::function<void(const BenchmarkRow&)>;

/// Runs the sizes x seeds x repetitions x solvers cross-product over a worker
/// pool, skipping keys in `done`. Rows reach `sink` and the return value in
/// task order whatever the pool width.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec, const std::set<RowKey>& done = {},
                                        const RowSink& sink = {});

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchmarkRow& row);
std::vector<BenchmarkRow> read_csv(std::istream& in);

struct CsvRunStats {
    std::size_t skipped = 0;
    std::size_t written = 0;
    std::size_t failed = 0;
};

/// Streams rows to `path`, resuming after rows already present, and writes
/// `path + ".manifest.json"`.
CsvRunStats run_benchmark_to_csv(const BenchmarkSpec& spec, const std::string& path);

}  // namespace rqw
