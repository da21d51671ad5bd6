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

#include "rqw/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "rqw/errors.hpp"

namespace rqw {

namespace {

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
void maybe(const Json& j, const char* key, T& out, const std::string& where) {
    if (j.contains(key)) out = get<T>(j, key, where);
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json term_json(const Term& t) {
    Json out = Json::array({t.i});
    if (t.j) out.push_back(*t.j);
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

Json to_json(const IsingInstance& ising) {
    Json out;
    out["offset"] = ising.offset();
    out["active"] = Json::array();
    for (Index i : ising.active()) out["active"].push_back(i);
    out["fields"] = Json::array();
    for (const auto& [i, h] : ising.fields()) out["fields"].push_back(Json::array({i, h}));
    out["couplings"] = Json::array();
    for (const auto& [key, v] : ising.couplings()) out["couplings"].push_back(Json::array({key.first, key.second, v}));
    return out;
}

IsingInstance ising_from_json(const Json& j) {
    const std::string where = "ising";
    check_keys(j, where, {"offset", "active", "fields", "couplings"});
    IsingInstance out;
    try {
        if (j.contains("active")) {
            for (const auto& i : j.at("active")) out.add_active(i.get<Index>());
        }
        for (const auto& f : j.value("fields", Json::array())) out.add_active(f.at(0).get<Index>());
        for (const auto& c : j.value("couplings", Json::array())) {
            out.add_active(c.at(0).get<Index>());
            out.add_active(c.at(1).get<Index>());
        }
        for (const auto& f : j.value("fields", Json::array())) out.add_field(f.at(0).get<Index>(), f.at(1).get<double>());
        for (const auto& c : j.value("couplings", Json::array())) {
            const auto a = c.at(0).get<Index>();
            const auto b = c.at(1).get<Index>();
            if (a == b) throw ConfigError("coupling of a spin with itself");
            out.add_coupling(a, b, c.at(2).get<double>());
        }
        out.add_offset(j.value("offset", 0.0));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return out;
}

Json to_json(const ChannelAssignmentInstance& inst) {
    Json out;
    out["num_users"] = inst.num_users();
    out["num_channels"] = inst.num_channels();
    if (inst.capacities()) out["capacities"] = *inst.capacities();
    if (inst.per_channel()) {
        out["per_channel_weights"] = Json::array();
        for (const auto& e : inst.edges()) {
            for (Index c = 0; c < inst.num_channels(); ++c) {
                if (e.weights[c] != 0.0) out["per_channel_weights"].push_back(Json::array({e.u, e.v, c, e.weights[c]}));
            }
        }
    } else {
        out["weights"] = Json::array();
        for (const auto& e : inst.edges()) out["weights"].push_back(Json::array({e.u, e.v, e.weights[0]}));
    }
    out["seed"] = inst.seed;
    out["metadata"] = inst.metadata;
    return out;
}

ChannelAssignmentInstance instance_from_json(const Json& j) {
    const std::string where = "instance";
    check_keys(j, where, {"num_users", "num_channels", "capacities", "weights", "per_channel_weights", "seed",
                          "metadata"});
    const auto U = get<std::size_t>(j, "num_users", where);
    const auto C = get<std::size_t>(j, "num_channels", where);
    if (j.contains("weights") && j.contains("per_channel_weights")) {
        throw ConfigError("instance gives both weights and per_channel_weights");
    }
    ChannelAssignmentInstance inst(U, C);
    try {
        inst.seed = j.value("seed", std::uint64_t{0});
        inst.metadata = j.value("metadata", std::string());
        for (const auto& e : j.value("weights", Json::array())) {
            if (!e.is_array() || e.size() != 3) throw ConfigError("weights entries are [u, v, w]");
            inst.set_weight(e[0].get<Index>(), e[1].get<Index>(), e[2].get<double>());
        }
        for (const auto& e : j.value("per_channel_weights", Json::array())) {
            if (!e.is_array() || e.size() != 4) throw ConfigError("per_channel_weights entries are [u, v, c, w]");
            inst.set_channel_weight(e[0].get<Index>(), e[1].get<Index>(), e[2].get<Index>(), e[3].get<double>());
        }
        if (j.contains("capacities") && !j.at("capacities").is_null()) {
            auto caps = j.at("capacities").get<std::vector<std::size_t>>();
            if (caps.size() != C) throw ConfigError("capacities must have one entry per channel");
            inst.set_capacities(std::move(caps));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return inst;
}

Json assignment_json(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst) {
    Json out;
    out["assignment"] = Json::array();
    for (Index c : x.channels()) {
        if (c == kUnassigned) {
            out["assignment"].push_back(nullptr);
        } else {
            out["assignment"].push_back(c);
        }
    }
    out["objective"] = objective_value(x, inst);
    out["feasible"] = check_feasibility(x, inst).feasible();
    return out;
}

Json to_json(const EliminationEntry& entry) {
    Json out;
    if (const auto* f = std::get_if<Fix>(&entry.relation)) {
        out["kind"] = "fix";
        out["index"] = f->index;
        out["sign"] = f->sign;
    } else {
        const auto& m = std::get<Merge>(entry.relation);
        out["kind"] = "merge";
        out["kept"] = m.kept;
        out["removed"] = m.removed;
        out["sign"] = m.sign;
    }
    out["origin"] = to_string(entry.origin);
    out["exact"] = entry.exact();
    return out;
}

Json to_json(const RoundTrace& round) {
    Json out;
    out["round"] = round.round;
    out["n_active"] = round.n_active;
    out["term"] = term_json(round.term);
    out["score"] = round.score;
    out["sign"] = round.sign;
    out["fp"] = number_or_null(round.fp);
    out["evaluations"] = round.evaluations;
    out["feasible_mass"] = number_or_null(round.feasible_mass);
    out["degenerate"] = round.degenerate;
    out["gammas"] = round.params.gammas;
    out["betas"] = round.params.betas;
    out["entry"] = to_json(round.entry);
    return out;
}

void write_trace_jsonl(std::ostream& out, const RqaoaTrace& trace) {
    for (const auto& r : trace.rounds) out << to_json(r).dump() << '\n';
}

Json to_json(const PresolveSummary& summary) {
    Json out;
    out["isolated"] = summary.isolated;
    out["persistency"] = summary.persistency;
    out["wireless"] = summary.wireless;
    out["frozen"] = summary.frozen;
    out["residual"] = summary.residual;
    return out;
}

Json to_json(const RunMetrics& m) {
    Json out;
    out["objective"] = m.objective;
    out["feasible"] = m.feasible;
    out["repaired"] = m.repaired;
    out["reference"] = m.reference;
    out["delta_norm"] = m.delta_norm;
    out["delta_is_absolute"] = m.delta_is_absolute;
    out["scaled_ratio"] = m.scaled_ratio ? Json(*m.scaled_ratio) : Json(nullptr);
    out["n_qubits_core"] = m.n_qubits_core;
    return out;
}

Json statevector_json(const StateVector& psi) {
    if (psi.num_qubits() > 10) throw TooLargeError("state dumps are limited to ten qubits");
    Json out = Json::object();
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        out[bitstring(b, psi.num_qubits())] = Json::array({psi[b].real(), psi[b].imag()});
    }
    return out;
}

void write_optimizer_trace_header(std::ostream& out, std::size_t depth) {
    out << "restart,index";
    for (std::size_t l = 0; l < depth; ++l) out << ",gamma" << l;
    for (std::size_t l = 0; l < depth; ++l) out << ",beta" << l;
    out << ",value\n";
}

void write_optimizer_trace_row(std::ostream& out, const EvaluationRecord& r) {
    out << r.restart << ',' << r.index;
    for (double g : r.params.gammas) out << ',' << format_double(g);
    for (double b : r.params.betas) out << ',' << format_double(b);
    out << ',' << format_double(r.value) << '\n';
}

PipelineConfig pipeline_config_from_json(const Json& j, PipelineConfig cfg) {
    check_keys(j, "config", {"core_size", "solver", "seed", "rqaoa", "qaoa", "presolve", "penalty", "greedy",
                             "forbidden", "sample_shots", "scaled_ratio"});
    maybe(j, "core_size", cfg.core_size, "config");
    if (j.contains("solver")) cfg.solver = core_solver_from_string(get<std::string>(j, "solver", "config"));
    maybe(j, "seed", cfg.seed, "config");
    maybe(j, "sample_shots", cfg.sample_shots, "config");
    maybe(j, "scaled_ratio", cfg.scaled_ratio, "config");

    if (j.contains("rqaoa")) {
        const auto& r = j.at("rqaoa");
        const std::string where = "rqaoa";
        check_keys(r, where, {"n_cutoff", "threshold", "shots", "policy", "exact_limit"});
        maybe(r, "n_cutoff", cfg.rqaoa.n_cutoff, where);
        maybe(r, "threshold", cfg.rqaoa.threshold, where);
        maybe(r, "exact_limit", cfg.rqaoa.exact_limit, where);
        if (r.contains("shots")) {
            if (r.at("shots").is_null()) {
                cfg.rqaoa.shots.reset();
            } else {
                cfg.rqaoa.shots = get<std::size_t>(r, "shots", where);
            }
        }
        if (r.contains("policy")) cfg.rqaoa.policy = candidate_policy_from_string(get<std::string>(r, "policy", where));
    }
    if (j.contains("qaoa")) {
        const auto& q = j.at("qaoa");
        const std::string where = "qaoa";
        check_keys(q, where, {"depth", "mixer", "init", "restarts", "max_evaluations", "gamma_range", "beta_range",
                              "normalize_cost"});
        auto& o = cfg.rqaoa.qaoa;
        maybe(q, "depth", o.depth, where);
        if (q.contains("mixer")) o.mixer = mixer_kind_from_string(get<std::string>(q, "mixer", where));
        if (q.contains("init")) o.init = init_state_from_string(get<std::string>(q, "init", where));
        maybe(q, "restarts", o.restarts, where);
        maybe(q, "max_evaluations", o.max_evaluations, where);
        maybe(q, "gamma_range", o.gamma_range, where);
        maybe(q, "beta_range", o.beta_range, where);
        maybe(q, "normalize_cost", o.normalize_cost, where);
    }
    if (j.contains("presolve")) {
        const auto& p = j.at("presolve");
        const std::string where = "presolve";
        check_keys(p, where, {"isolated", "persistency", "wireless_prune", "freeze"});
        maybe(p, "isolated", cfg.presolve.enable_isolated, where);
        maybe(p, "persistency", cfg.presolve.enable_persistency, where);
        maybe(p, "wireless_prune", cfg.presolve.enable_wireless_prune, where);
        if (p.contains("freeze")) {
            const auto& f = p.at("freeze");
            if (f.is_null() || (f.is_boolean() && !f.get<bool>())) {
                cfg.presolve.freeze.reset();
            } else {
                FreezeConfig fc = cfg.presolve.freeze.value_or(FreezeConfig{});
                if (!f.is_boolean()) {
                    check_keys(f, "presolve.freeze", {"runs", "threshold", "sweeps", "seed"});
                    maybe(f, "runs", fc.runs, "presolve.freeze");
                    maybe(f, "threshold", fc.threshold, "presolve.freeze");
                    maybe(f, "sweeps", fc.sweeps, "presolve.freeze");
                    maybe(f, "seed", fc.seed, "presolve.freeze");
                }
                cfg.presolve.freeze = fc;
            }
        }
    }
    if (j.contains("penalty")) {
        const auto& p = j.at("penalty");
        if (p.is_string()) {
            if (p.get<std::string>() != "auto") throw ConfigError("penalty must be \"auto\" or an object");
            cfg.penalty.reset();
        } else {
            check_keys(p, "penalty", {"one_hot", "capacity"});
            PenaltyConfig pc;
            maybe(p, "one_hot", pc.one_hot, "penalty");
            maybe(p, "capacity", pc.capacity, "penalty");
            cfg.penalty = pc;
        }
    }
    if (j.contains("greedy")) {
        const auto& g = j.at("greedy");
        check_keys(g, "greedy", {"order", "tie_break"});
        if (g.contains("order")) cfg.greedy.order = user_order_from_string(get<std::string>(g, "order", "greedy"));
        if (g.contains("tie_break")) {
            cfg.greedy.tie_break = channel_tie_break_from_string(get<std::string>(g, "tie_break", "greedy"));
        }
    }
    if (j.contains("forbidden")) {
        cfg.constraints.forbidden = get<std::vector<std::pair<Index, Index>>>(j, "forbidden", "config");
    }
    cfg.validate();
    return cfg;
}

Json to_json(const PipelineConfig& cfg) {
    Json out;
    out["core_size"] = cfg.core_size;
    out["solver"] = to_string(cfg.solver);
    out["seed"] = cfg.seed;
    out["sample_shots"] = cfg.sample_shots;
    out["scaled_ratio"] = cfg.scaled_ratio;
    Json r;
    r["n_cutoff"] = cfg.rqaoa.n_cutoff;
    r["threshold"] = cfg.rqaoa.threshold;
    r["shots"] = cfg.rqaoa.shots ? Json(*cfg.rqaoa.shots) : Json(nullptr);
    r["policy"] = to_string(cfg.rqaoa.policy);
    r["exact_limit"] = cfg.rqaoa.exact_limit;
    out["rqaoa"] = r;
    const auto& o = cfg.rqaoa.qaoa;
    Json q;
    q["depth"] = o.depth;
    q["mixer"] = to_string(o.mixer);
    q["init"] = to_string(o.init);
    q["restarts"] = o.restarts;
    q["max_evaluations"] = o.max_evaluations;
    q["gamma_range"] = o.gamma_range;
    q["beta_range"] = o.beta_range;
    q["normalize_cost"] = o.normalize_cost;
    out["qaoa"] = q;
    Json p;
    p["isolated"] = cfg.presolve.enable_isolated;
    p["persistency"] = cfg.presolve.enable_persistency;
    p["wireless_prune"] = cfg.presolve.enable_wireless_prune;
    if (cfg.presolve.freeze) {
        const auto& f = *cfg.presolve.freeze;
        p["freeze"] = {{"runs", f.runs}, {"threshold", f.threshold}, {"sweeps", f.sweeps}, {"seed", f.seed}};
    } else {
        p["freeze"] = nullptr;
    }
    out["presolve"] = p;
    if (cfg.penalty) {
        out["penalty"] = {{"one_hot", cfg.penalty->one_hot}, {"capacity", cfg.penalty->capacity}};
    } else {
        out["penalty"] = "auto";
    }
    out["greedy"] = {{"order", to_string(cfg.greedy.order)}, {"tie_break", to_string(cfg.greedy.tie_break)}};
    out["forbidden"] = cfg.constraints.forbidden;
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace rqw
