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

#include "rqw/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "rqw/errors.hpp"

namespace rqw {

const char* to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::greedy: return "greedy";
        case SolverKind::sa: return "sa";
        case SolverKind::exact: return "exact";
        case SolverKind::pipeline: return "pipeline";
    }
    return "unknown";
}

SolverKind solver_kind_from_string(const std::string& name) {
    for (auto k : {SolverKind::greedy, SolverKind::sa, SolverKind::exact, SolverKind::pipeline}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("unknown solver kind '" + name + "'");
}

namespace {

const char* generator_name(Generator g) {
    switch (g) {
        case Generator::hotspot: return "hotspot";
        case Generator::uniform: return "uniform";
        case Generator::demo: return "demo";
    }
    return "unknown";
}

Generator generator_from_string(const std::string& name) {
    for (auto g : {Generator::hotspot, Generator::uniform, Generator::demo}) {
        if (name == generator_name(g)) return g;
    }
    throw ConfigError("unknown generator '" + name + "'");
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void reject_unknown(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

HotspotParams hotspot_from_json(const Json& j) {
    reject_unknown(j, "hotspot", {"reference_distance", "min_distance", "pathloss_exponent", "shadowing_db",
                                  "area_side", "num_hotspots", "position_spread", "weight_floor"});
    HotspotParams p;
    p.reference_distance = j.value("reference_distance", p.reference_distance);
    p.min_distance = j.value("min_distance", p.min_distance);
    p.pathloss_exponent = j.value("pathloss_exponent", p.pathloss_exponent);
    p.shadowing_db = j.value("shadowing_db", p.shadowing_db);
    p.area_side = j.value("area_side", p.area_side);
    p.num_hotspots = j.value("num_hotspots", p.num_hotspots);
    p.position_spread = j.value("position_spread", p.position_spread);
    p.weight_floor = j.value("weight_floor", p.weight_floor);
    p.validate();
    return p;
}

Json to_json(const HotspotParams& p) {
    return {{"reference_distance", p.reference_distance}, {"min_distance", p.min_distance},
            {"pathloss_exponent", p.pathloss_exponent},   {"shadowing_db", p.shadowing_db},
            {"area_side", p.area_side},                   {"num_hotspots", p.num_hotspots},
            {"position_spread", p.position_spread},       {"weight_floor", p.weight_floor}};
}

std::string status_of(const std::exception& e) {
    if (dynamic_cast<const TooLargeError*>(&e)) return "too_large";
    if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    return "error";
}

std::string csv_safe(std::string s) {
    for (auto& ch : s) {
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ' ';
    }
    return s;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void BenchmarkSpec::validate() const {
    if (sizes.empty()) throw ConfigError("benchmark needs at least one size");
    if (seeds.empty()) throw ConfigError("benchmark needs at least one seed");
    if (solvers.empty()) throw ConfigError("benchmark needs at least one solver");
    if (channels < 1) throw ConfigError("benchmark needs at least one channel");
    if (repetitions < 1) throw ConfigError("repetitions must be at least one");
    for (std::size_t s : sizes) users_for_size(*this, s);
    std::set<std::string> names;
    for (const auto& s : solvers) {
        if (s.name.empty()) throw ConfigError("solver entries need a name");
        if (!names.insert(s.name).second) throw ConfigError("duplicate solver name '" + s.name + "'");
    }
    if (generator == Generator::demo && channels != 4) throw ConfigError("the demo generator has four channels");
    hotspot.validate();
}

std::size_t users_for_size(const BenchmarkSpec& spec, std::size_t size) {
    if (spec.generator == Generator::demo) {
        if ((spec.sizes_in_qubits ? size != 16 : size != 4)) throw ConfigError("the demo generator has four users");
        return 4;
    }
    if (!spec.sizes_in_qubits) {
        if (size < 1) throw ConfigError("sizes must be positive");
        return size;
    }
    if (size == 0 || size % spec.channels != 0) {
        throw ConfigError("qubit size " + std::to_string(size) + " is not a multiple of the channel count");
    }
    return size / spec.channels;
}

BenchmarkSpec benchmark_spec_from_json(const Json& j) {
    reject_unknown(j, "benchmark", {"generator", "sizes", "size_unit", "channels", "max_weight", "hotspot", "seeds",
                                    "repetitions", "solvers", "workers"});
    BenchmarkSpec spec;
    try {
        if (j.contains("generator")) spec.generator = generator_from_string(j.at("generator").get<std::string>());
        spec.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        const auto unit = j.value("size_unit", std::string("users"));
        if (unit != "users" && unit != "qubits") throw ConfigError("size_unit must be \"users\" or \"qubits\"");
        spec.sizes_in_qubits = unit == "qubits";
        spec.channels = j.value("channels", spec.channels);
        spec.max_weight = j.value("max_weight", spec.max_weight);
        if (j.contains("hotspot")) spec.hotspot = hotspot_from_json(j.at("hotspot"));
        const auto& seeds = j.at("seeds");
        if (seeds.is_number_integer()) {
            for (std::uint64_t s = 0; s < seeds.get<std::uint64_t>(); ++s) spec.seeds.push_back(s);
        } else {
            spec.seeds = seeds.get<std::vector<std::uint64_t>>();
        }
        spec.repetitions = j.value("repetitions", spec.repetitions);
        spec.workers = j.value("workers", spec.workers);
        for (const auto& s : j.at("solvers")) {
            reject_unknown(s, "solver", {"name", "kind", "config"});
            SolverSpec solver;
            solver.kind = solver_kind_from_string(s.at("kind").get<std::string>());
            solver.name = s.value("name", std::string(to_string(solver.kind)));
            solver.config = s.value("config", Json::object());
            Json pipeline = solver.config;
            if (pipeline.contains("anneal")) {
                const auto& a = pipeline.at("anneal");
                reject_unknown(a, "anneal", {"sweeps", "t_initial", "t_final_ratio"});
                solver.anneal.sweeps = a.value("sweeps", solver.anneal.sweeps);
                if (a.contains("t_initial")) solver.anneal.t_initial = a.at("t_initial").get<double>();
                solver.anneal.t_final_ratio = a.value("t_final_ratio", solver.anneal.t_final_ratio);
                solver.anneal.validate();
                pipeline.erase("anneal");
            }
            solver.pipeline = pipeline_config_from_json(pipeline);
            spec.solvers.push_back(std::move(solver));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("benchmark spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

Json to_json(const BenchmarkSpec& spec) {
    Json out;
    out["generator"] = generator_name(spec.generator);
    out["sizes"] = spec.sizes;
    out["size_unit"] = spec.sizes_in_qubits ? "qubits" : "users";
    out["channels"] = spec.channels;
    out["max_weight"] = spec.max_weight;
    out["hotspot"] = to_json(spec.hotspot);
    out["seeds"] = spec.seeds;
    out["repetitions"] = spec.repetitions;
    out["solvers"] = Json::array();
    for (const auto& s : spec.solvers) {
        out["solvers"].push_back({{"name", s.name}, {"kind", to_string(s.kind)}, {"config", s.config}});
    }
    out["workers"] = spec.workers;
    return out;
}

std::size_t default_worker_count() {
    if (const char* env = std::getenv("RQW_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    }
    return 1;
}

std::string instance_id(const BenchmarkSpec& spec, std::size_t num_users, std::uint64_t topology_seed) {
    return std::string(generator_name(spec.generator)) + "-U" + std::to_string(num_users) + "-C" +
           std::to_string(spec.channels) + "-s" + std::to_string(topology_seed);
}

ChannelAssignmentInstance make_instance(const BenchmarkSpec& spec, std::size_t num_users,
                                        std::uint64_t topology_seed) {
    const std::uint64_t seed = mix(mix(topology_seed, num_users), spec.channels);
    switch (spec.generator) {
        case Generator::hotspot: return generate_hotspot(num_users, spec.channels, spec.hotspot, seed);
        case Generator::uniform: return generate_uniform(num_users, spec.channels, spec.max_weight, seed);
        case Generator::demo: return generate_demo(topology_seed);
    }
    throw ConfigError("unknown generator");
}

BenchmarkRow run_solver(const SolverSpec& solver, const ChannelAssignmentInstance& inst, const std::string& id,
                        std::uint64_t seed) {
    BenchmarkRow row;
    row.instance_id = id;
    row.seed = seed;
    row.num_users = inst.num_users();
    row.num_channels = inst.num_channels();
    row.solver = solver.name;
    auto& m = row.metrics;
    try {
        if (solver.kind == SolverKind::pipeline) {
            PipelineConfig cfg = solver.pipeline;
            cfg.seed = seed;
            m = run_pipeline(inst, cfg).metrics;
            return row;
        }
        const auto start = std::chrono::steady_clock::now();
        AssignmentMatrix x(inst.num_users(), inst.num_channels());
        switch (solver.kind) {
            case SolverKind::greedy: x = greedy_assign(inst, solver.pipeline.greedy); break;
            case SolverKind::sa: {
                AnnealConfig anneal = solver.anneal;
                anneal.seed = seed;
                x = anneal_assign(inst, solver.pipeline.penalty.value_or(auto_penalty(inst)), anneal);
                break;
            }
            case SolverKind::exact: x = brute_force(inst).best; break;
            case SolverKind::pipeline: break;
        }
        m.t_total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        m.t_core_ms = m.t_total_ms;
        m.feasible = check_feasibility(x, inst).feasible();
        m.objective = objective_value(x, inst);
        attach_reference_metrics(m, inst, solver.pipeline.greedy, solver.pipeline.scaled_ratio);
    } catch (const std::exception& e) {
        row.status = status_of(e);
        row.message = e.what();
        row.metrics = {};
    }
    return row;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec, const std::set<RowKey>& done,
                                        const RowSink& sink) {
    spec.validate();
    struct Job {
        std::size_t users;
        std::uint64_t topology;
    };
    std::vector<Job> jobs;
    for (std::size_t size : spec.sizes) {
        for (std::uint64_t t : spec.seeds) jobs.push_back({users_for_size(spec, size), t});
    }

    auto run_job = [&](const Job& job) {
        std::vector<BenchmarkRow> rows;
        const std::string id = instance_id(spec, job.users, job.topology);
        std::optional<ChannelAssignmentInstance> inst;
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            const std::uint64_t seed = job.topology * spec.repetitions + r;
            for (const auto& solver : spec.solvers) {
                if (done.count({id, seed, solver.name})) continue;
                if (!inst) inst = make_instance(spec, job.users, job.topology);
                rows.push_back(run_solver(solver, *inst, id, seed));
            }
        }
        return rows;
    };

    std::vector<BenchmarkRow> all;
    auto commit = [&](std::vector<BenchmarkRow>& rows) {
        for (auto& row : rows) {
            if (sink) sink(row);
            all.push_back(std::move(row));
        }
    };

    const std::size_t width = std::min(spec.workers ? spec.workers : default_worker_count(), jobs.size());
    if (width <= 1) {
        for (const auto& job : jobs) {
            auto rows = run_job(job);
            commit(rows);
        }
        return all;
    }

    std::vector<std::optional<std::vector<BenchmarkRow>>> results(jobs.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < width; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                auto rows = run_job(jobs[i]);
                std::lock_guard lock(mutex);
                results[i] = std::move(rows);
                ready.notify_all();
            }
        });
    }
    // Commit in job order so output does not depend on scheduling.
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::vector<BenchmarkRow> rows;
        {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return results[i].has_value(); });
            rows = std::move(*results[i]);
            results[i].reset();
        }
        commit(rows);
    }
    return all;
}

namespace {

const char* kColumns[] = {"instance_id", "seed",         "U",           "C",           "solver",
                          "objective",   "feasible",     "repaired",    "delta_norm",  "scaled_ratio",
                          "t_presolve_ms", "t_core_ms",  "t_extend_ms", "t_total_ms",  "n_qubits_core",
                          "status",      "message"};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_csv_header(std::ostream& out) {
    bool first = true;
    for (const char* c : kColumns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, const BenchmarkRow& row) {
    const auto& m = row.metrics;
    const bool ok = row.status == "ok";
    auto num = [&](double v) { return ok ? format_double(v) : std::string(); };
    out << row.instance_id << ',' << row.seed << ',' << row.num_users << ',' << row.num_channels << ',' << row.solver
        << ',' << num(m.objective) << ',' << (ok ? (m.feasible ? "true" : "false") : "") << ','
        << (ok ? (m.repaired ? "true" : "false") : "") << ',' << num(m.delta_norm) << ','
        << (ok && m.scaled_ratio ? format_double(*m.scaled_ratio) : "") << ',' << num(m.t_presolve_ms) << ','
        << num(m.t_core_ms) << ',' << num(m.t_extend_ms) << ',' << num(m.t_total_ms) << ','
        << (ok ? std::to_string(m.n_qubits_core) : "") << ',' << row.status << ',' << csv_safe(row.message) << '\n';
}

std::vector<BenchmarkRow> read_csv(std::istream& in) {
    std::vector<BenchmarkRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    const auto header = split(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* c : kColumns) {
        if (!col.count(c)) throw ConfigError(std::string("results CSV lacks column ") + c);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw ConfigError("malformed results CSV row: " + line);
        auto at = [&](const char* name) -> const std::string& { return cells[col.at(name)]; };
        auto real = [&](const char* name) { return at(name).empty() ? 0.0 : std::stod(at(name)); };
        BenchmarkRow row;
        row.instance_id = at("instance_id");
        row.seed = std::stoull(at("seed"));
        row.num_users = std::stoull(at("U"));
        row.num_channels = std::stoull(at("C"));
        row.solver = at("solver");
        row.status = at("status");
        row.message = at("message");
        auto& m = row.metrics;
        m.objective = real("objective");
        m.feasible = at("feasible") == "true";
        m.repaired = at("repaired") == "true";
        m.delta_norm = real("delta_norm");
        if (!at("scaled_ratio").empty()) m.scaled_ratio = std::stod(at("scaled_ratio"));
        m.t_presolve_ms = real("t_presolve_ms");
        m.t_core_ms = real("t_core_ms");
        m.t_extend_ms = real("t_extend_ms");
        m.t_total_ms = real("t_total_ms");
        m.n_qubits_core = at("n_qubits_core").empty() ? 0 : std::stoull(at("n_qubits_core"));
        rows.push_back(std::move(row));
    }
    return rows;
}

CsvRunStats run_benchmark_to_csv(const BenchmarkSpec& spec, const std::string& path) {
    CsvRunStats stats;
    std::set<RowKey> done;
    const bool resume = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
    if (resume) {
        std::ifstream in(path);
        for (const auto& row : read_csv(in)) done.insert(key_of(row));
    }
    std::ofstream out(path, resume ? std::ios::app : std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path);
    if (!resume) write_csv_header(out);

    Json manifest;
    manifest["version"] = RQW_VERSION;
    manifest["results"] = std::filesystem::path(path).filename().string();
    manifest["started"] = iso_now();
    manifest["workers"] = spec.workers ? spec.workers : default_worker_count();
    manifest["spec"] = to_json(spec);

    run_benchmark(spec, done, [&](const BenchmarkRow& row) {
        write_csv_row(out, row);
        out.flush();
        ++stats.written;
        if (row.status != "ok") ++stats.failed;
    });
    stats.skipped = done.size();
    manifest["finished"] = iso_now();
    manifest["rows_written"] = stats.written;
    manifest["rows_skipped"] = stats.skipped;
    write_json_file(path + ".manifest.json", manifest);
    return stats;
}

}  // namespace rqw
