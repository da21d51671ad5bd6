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

// rqaoa-wireless: generate channel-assignment instances, solve them, and run
// benchmark sweeps.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rqw/baselines.hpp"
#include "rqw/benchmark.hpp"
#include "rqw/errors.hpp"
#include "rqw/log.hpp"
#include "rqw/pipeline.hpp"
#include "rqw/serialization.hpp"
#include "rqw/wireless.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct GenerateOptions {
    std::string kind = "demo";
    std::size_t users = 16;
    std::size_t channels = 2;
    int max_weight = 5;
    std::uint64_t seed = 0;
    std::string hotspot_config;
    std::string out;
};

struct SolveOptions {
    std::string instance;
    std::string solver = "pipeline";
    std::string config;
    std::string out;
    std::string trace;
    std::string optimizer_trace;
    std::string presolve_summary;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> depth;
    std::optional<std::string> mixer;
    std::optional<std::string> init;
    std::optional<std::size_t> n_cutoff;
    std::optional<double> penalty;
    std::optional<std::size_t> core_size;
    std::optional<std::size_t> shots;
    std::optional<std::size_t> restarts;
    std::optional<std::size_t> max_evaluations;
};

struct BenchmarkOptions {
    std::string spec;
    std::string out;
    std::optional<std::size_t> workers;
};

void emit(const std::string& path, const rqw::Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        rqw::write_json_file(path, j);
    }
}

int cmd_generate(const GenerateOptions& o) {
    std::optional<rqw::ChannelAssignmentInstance> inst;
    if (o.kind == "demo") {
        inst = rqw::generate_demo(o.seed);
    } else if (o.kind == "uniform") {
        if (o.users < 1 || o.channels < 1) throw rqw::ConfigError("users and channels must be positive");
        inst = rqw::generate_uniform(o.users, o.channels, o.max_weight, o.seed);
    } else if (o.kind == "hotspot") {
        if (o.users < 1 || o.channels < 1) throw rqw::ConfigError("users and channels must be positive");
        rqw::HotspotParams params;
        if (!o.hotspot_config.empty()) {
            rqw::Json spec = {{"sizes", {o.users}}, {"seeds", {0}}, {"solvers", {{{"kind", "greedy"}}}}};
            spec["hotspot"] = rqw::read_json_file(o.hotspot_config);
            params = rqw::benchmark_spec_from_json(spec).hotspot;
        }
        inst = rqw::generate_hotspot(o.users, o.channels, params, o.seed);
    } else {
        throw rqw::ConfigError("unknown instance kind '" + o.kind + "'");
    }
    emit(o.out, rqw::to_json(*inst));
    return kExitOk;
}

rqw::PipelineConfig solve_config(const SolveOptions& o) {
    rqw::PipelineConfig cfg;
    if (!o.config.empty()) cfg = rqw::pipeline_config_from_json(rqw::read_json_file(o.config));
    if (o.seed) cfg.seed = *o.seed;
    auto& q = cfg.rqaoa.qaoa;
    if (o.depth) q.depth = *o.depth;
    if (o.mixer) q.mixer = rqw::mixer_kind_from_string(*o.mixer);
    if (o.init) q.init = rqw::init_state_from_string(*o.init);
    if (o.restarts) q.restarts = *o.restarts;
    if (o.max_evaluations) q.max_evaluations = *o.max_evaluations;
    if (o.n_cutoff) cfg.rqaoa.n_cutoff = *o.n_cutoff;
    if (o.penalty) cfg.penalty = rqw::PenaltyConfig{*o.penalty, cfg.penalty ? cfg.penalty->capacity : 0.0};
    if (o.core_size) cfg.core_size = *o.core_size;
    if (o.shots) cfg.sample_shots = *o.shots;
    cfg.validate();
    return cfg;
}

int cmd_solve(const SolveOptions& o) {
    const auto inst = rqw::instance_from_json(rqw::read_json_file(o.instance));
    rqw::PipelineConfig cfg = solve_config(o);
    const auto start = std::chrono::steady_clock::now();

    rqw::AssignmentMatrix x(inst.num_users(), inst.num_channels());
    std::optional<rqw::PipelineResult> pipeline;
    if (o.solver == "greedy") {
        x = rqw::greedy_assign(inst, cfg.greedy);
    } else if (o.solver == "sa") {
        rqw::AnnealConfig anneal;
        anneal.seed = cfg.seed;
        x = rqw::anneal_assign(inst, cfg.penalty.value_or(rqw::auto_penalty(inst)), anneal);
    } else if (o.solver == "exact") {
        x = rqw::brute_force(inst).best;
    } else if (o.solver == "qaoa" || o.solver == "rqaoa" || o.solver == "pipeline") {
        if (o.solver != "pipeline") {
            cfg.core_size = inst.num_users();
            cfg.solver = o.solver == "qaoa" ? rqw::CoreSolver::qaoa_sample_best : rqw::CoreSolver::rqaoa;
        }
        pipeline = rqw::run_pipeline(inst, cfg);
        x = pipeline->assignment;
    } else {
        throw rqw::ConfigError("unknown solver '" + o.solver + "'");
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rqw::log_info("solve took " + rqw::format_double(ms) + " ms");

    rqw::Json out = rqw::assignment_json(x, inst);
    out["solver"] = o.solver;
    rqw::Json manifest;
    manifest["version"] = RQW_VERSION;
    manifest["instance"] = o.instance;
    manifest["seed"] = cfg.seed;
    manifest["config"] = rqw::to_json(cfg);
    if (pipeline) {
        out["core_users"] = pipeline->core_users;
        out["repaired"] = pipeline->metrics.repaired;
        out["presolve"] = rqw::to_json(pipeline->presolve);
        if (pipeline->trace) {
            out["rounds"] = pipeline->trace->rounds.size();
            out["core_size"] = pipeline->trace->core_size;
        }
    }
    out["manifest"] = manifest;
    emit(o.out, out);

    if (!o.trace.empty()) {
        std::ofstream trace(o.trace);
        if (!trace) throw rqw::ConfigError("cannot write " + o.trace);
        if (pipeline && pipeline->trace) rqw::write_trace_jsonl(trace, *pipeline->trace);
    }
    if (!o.presolve_summary.empty() && pipeline) rqw::write_json_file(o.presolve_summary, rqw::to_json(pipeline->presolve));
    if (!o.optimizer_trace.empty()) {
        // Replays the first QAOA of the core so the optimizer path can be inspected.
        const auto core = rqw::select_core(inst, std::min(cfg.core_size, inst.num_users()));
        const auto sub = rqw::restrict_instance(inst, core);
        const auto model = rqw::build_qubo(sub.instance, cfg.penalty.value_or(rqw::auto_penalty(sub.instance)));
        const auto ising = rqw::qubo_to_ising(model.qubo);
        auto qc = cfg.rqaoa.qaoa;
        qc.seed = cfg.seed;
        if (rqw::is_xy(qc.mixer) || qc.init != rqw::InitState::plus) qc.blocks = rqw::one_hot_blocks(model.layout);
        std::ofstream csv(o.optimizer_trace);
        if (!csv) throw rqw::ConfigError("cannot write " + o.optimizer_trace);
        rqw::write_optimizer_trace_header(csv, qc.depth);
        rqw::optimize(ising, rqw::QubitLayout::of(ising), qc,
                      [&](const rqw::EvaluationRecord& r) { rqw::write_optimizer_trace_row(csv, r); });
    }
    return rqw::check_feasibility(x, inst).feasible() ? kExitOk : kExitInfeasible;
}

int cmd_benchmark(const BenchmarkOptions& o) {
    auto spec = rqw::benchmark_spec_from_json(rqw::read_json_file(o.spec));
    if (o.workers) spec.workers = *o.workers;
    const auto stats = rqw::run_benchmark_to_csv(spec, o.out);

    std::ifstream in(o.out);
    const auto rows = rqw::read_csv(in);
    std::map<std::pair<std::size_t, std::string>, std::vector<const rqw::BenchmarkRow*>> groups;
    for (const auto& row : rows) groups[{row.num_users, row.solver}].push_back(&row);
    std::cout << "U,solver,runs,feasibility_rate,delta_norm_mean,delta_norm_std,scaled_ratio_mean,t_core_ms_mean\n";
    for (const auto& [key, group] : groups) {
        std::vector<double> delta, ratio, core;
        std::vector<bool> feasible;
        for (const auto* row : group) {
            feasible.push_back(row->status == "ok" && row->metrics.feasible);
            if (row->status != "ok") continue;
            delta.push_back(row->metrics.delta_norm);
            core.push_back(row->metrics.t_core_ms);
            if (row->metrics.scaled_ratio) ratio.push_back(*row->metrics.scaled_ratio);
        }
        const auto d = rqw::summarize(delta);
        std::cout << key.first << ',' << key.second << ',' << group.size() << ','
                  << rqw::format_double(rqw::feasibility_rate(feasible)) << ',' << rqw::format_double(d.mean) << ','
                  << rqw::format_double(d.stddev) << ','
                  << (ratio.empty() ? std::string() : rqw::format_double(rqw::summarize(ratio).mean)) << ','
                  << rqw::format_double(rqw::summarize(core).mean) << '\n';
    }
    std::cerr << "rows written " << stats.written << ", skipped " << stats.skipped << ", failed " << stats.failed
              << '\n';
    return stats.failed == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid recursive QAOA solver for interference-aware channel assignment"};
    app.set_version_flag("--version", std::string(RQW_VERSION));
    app.require_subcommand(1);
    bool verbose = false;
    bool quiet = false;
    app.add_flag("-v,--verbose", verbose, "Log progress to stderr");
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Write an instance JSON");
    generate->add_option("--kind", gen.kind, "demo, uniform or hotspot")->check(CLI::IsMember({"demo", "uniform", "hotspot"}));
    generate->add_option("-U,--users", gen.users, "Number of users");
    generate->add_option("-C,--channels", gen.channels, "Number of channels");
    generate->add_option("--max-weight", gen.max_weight, "Largest integer weight (uniform)");
    generate->add_option("--hotspot-config", gen.hotspot_config, "JSON file with hotspot parameters");
    generate->add_option("-s,--seed", gen.seed, "Generator seed");
    generate->add_option("-o,--out", gen.out, "Output path (stdout when omitted)");

    SolveOptions sol;
    auto* solve = app.add_subcommand("solve", "Solve an instance and write the assignment JSON");
    solve->add_option("instance", sol.instance, "Instance JSON")->required();
    solve->add_option("--solver", sol.solver, "greedy, sa, exact, qaoa, rqaoa or pipeline")
        ->check(CLI::IsMember({"greedy", "sa", "exact", "qaoa", "rqaoa", "pipeline"}));
    solve->add_option("-c,--config", sol.config, "Config JSON; flags override its keys");
    solve->add_option("-s,--seed", sol.seed, "Seed");
    solve->add_option("-p,--depth", sol.depth, "QAOA depth");
    solve->add_option("--mixer", sol.mixer, "x, y, ring_xy, clique_xy, matching_xy or star_xy");
    solve->add_option("--init", sol.init, "plus, basis or superposition");
    solve->add_option("--n-cutoff", sol.n_cutoff, "RQAOA cutoff");
    solve->add_option("-A,--penalty", sol.penalty, "One-hot penalty (default: automatic)");
    solve->add_option("--core-size", sol.core_size, "Users in the quantum core");
    solve->add_option("--shots", sol.shots, "Samples for the qaoa solver");
    solve->add_option("--restarts", sol.restarts, "Optimizer restarts");
    solve->add_option("--max-evaluations", sol.max_evaluations, "Objective evaluations per restart");
    solve->add_option("-o,--out", sol.out, "Output path (stdout when omitted)");
    solve->add_option("--trace", sol.trace, "RQAOA round trace (JSON lines)");
    solve->add_option("--optimizer-trace", sol.optimizer_trace, "Optimizer evaluations of the first QAOA (CSV)");
    solve->add_option("--presolve-summary", sol.presolve_summary, "Presolve counts (JSON)");

    BenchmarkOptions bench;
    auto* benchmark = app.add_subcommand("benchmark", "Run a benchmark spec and write a results CSV");
    benchmark->add_option("spec", bench.spec, "Benchmark spec JSON")->required();
    benchmark->add_option("-o,--out", bench.out, "Results CSV")->required();
    benchmark->add_option("-j,--workers", bench.workers, "Worker threads (default: RQW_WORKERS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    if (verbose) rqw::set_log_level(rqw::LogLevel::info);
    if (quiet) rqw::set_log_level(rqw::LogLevel::quiet);

    try {
        if (*generate) return cmd_generate(gen);
        if (*solve) return cmd_solve(sol);
        if (*benchmark) return cmd_benchmark(bench);
    } catch (const rqw::InfeasibleError& e) {
        // Proven infeasibility of the input is a result, not a failure.
        std::cerr << "infeasible: " << e.what() << '\n';
        return *solve ? kExitInfeasible : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
