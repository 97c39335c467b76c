#pragma once

// Run configurations, CSV rows and JSON reports shared by the npc tool and its tests.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "npc/npc.hpp"

namespace npc::run {

using json = nlohmann::json;

struct RunConfig {
    std::string id;  // defaults to the instance name
    std::string instance_path;
    std::optional<Format> format;
    std::string schedule_spec = "file+2";
    Objective objective = Objective::absolute;
    Setting setting = Setting::PH;
    Engine engine = Engine::radius;
    double time_limit_s = default_time_limit();
    int constrained_bound_depth = 1;
    std::string csv_path;
    std::string json_path;
};

inline const char* csv_header = "id,|V|,p,t_s,UB,gap_pct,nodes,status,rc,ri";

inline Format parse_format(const std::string& s) {
    if (s == "pmed") return Format::pmed;
    if (s == "tsplib") return Format::tsplib;
    throw std::invalid_argument("unknown format: " + s);
}

inline Objective parse_objective(const std::string& s) {
    if (s == "absolute" || s == "abs") return Objective::absolute;
    if (s == "relative" || s == "rel") return Objective::relative;
    throw std::invalid_argument("unknown objective: " + s);
}

inline Setting parse_setting(const std::string& s) {
    if (s == "B") return Setting::B;
    if (s == "P") return Setting::P;
    if (s == "PH") return Setting::PH;
    throw std::invalid_argument("unknown setting: " + s);
}

inline Engine parse_engine(const std::string& s) {
    if (s == "radius") return Engine::radius;
    if (s == "chain") return Engine::chain;
    throw std::invalid_argument("unknown engine: " + s);
}

inline Schedule resolve_schedule(const std::string& spec, const LoadedInstance& li) {
    Schedule s;
    if (spec == "file+2") {
        if (li.format != Format::pmed || !li.p_file) throw std::invalid_argument("schedule file+2 needs a pmed instance");
        int p = *li.p_file;
        s.p = {p, p + 1, p + 2};
    } else {
        s = parse_schedule(spec);
    }
    validate_schedule(s, li.inst.n);
    return s;
}

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline std::string fmt_metric(double v, const char* f = "%.4f") { return std::isfinite(v) ? fmt(f, v) : ""; }

struct RunOutcome {
    int exit_code = 1;
    std::string csv_row;
    std::optional<SolveReport> report;
    std::string error;
    int n = 0;
    Schedule schedule;
};

inline std::string csv_row(const std::string& id, int n, int p1, const SolveReport& r) {
    std::ostringstream o;
    o << id << ',' << n << ',' << p1 << ',' << fmt("%.3f", r.time_s) << ',';
    if (r.kind == Objective::absolute)
        o << static_cast<long long>(r.objective);
    else
        o << fmt("%.2f", r.objective);
    o << ',' << fmt("%.2f", r.gap_percent) << ',' << r.nodes << ',' << to_string(r.status) << ','
      << fmt_metric(r.rc) << ',' << fmt_metric(r.ri);
    return o.str();
}

inline std::string csv_error_row(const std::string& id, int n, int p1) {
    std::ostringstream o;
    o << id << ',';
    if (n > 0) o << n;
    o << ',';
    if (p1 > 0) o << p1;
    o << ",,,,,error,,";
    return o.str();
}

inline json chain_json(const Chain& c) {
    json sets = json::array();
    for (const auto& s : c.sets) {
        json one = json::array();
        for (int j : s) one.push_back(j + 1);
        sets.push_back(one);
    }
    return sets;
}

inline json report_json(const RunConfig& cfg, const Schedule& s, const SolveReport& r) {
    json j;
    j["id"] = cfg.id;
    j["instance"] = cfg.instance_path;
    j["schedule"] = s.p;
    j["objective_kind"] = to_string(r.kind);
    j["setting"] = to_string(cfg.setting);
    j["engine"] = to_string(cfg.engine);
    j["status"] = to_string(r.status);
    j["objective"] = r.objective;
    if (r.objective_exact) j["objective_exact"] = {r.objective_exact->num, r.objective_exact->den};
    j["dual_bound"] = r.dual_bound;
    j["gap_pct"] = r.gap_percent;
    j["nodes"] = r.nodes;
    j["time_s"] = r.time_s;
    j["chain"] = chain_json(r.chain);  // 1-based vertex ids
    j["radii"] = r.chain.radii;
    j["d_star"] = r.d_star;
    j["regret_abs"] = r.regrets.abs;
    j["regret_abs_sum"] = r.regrets.abs_sum;
    if (r.regrets.rel_defined) j["regret_rel"] = r.regrets.rel;
    j["rc"] = std::isfinite(r.rc) ? json(r.rc) : json(nullptr);
    j["ri"] = std::isfinite(r.ri) ? json(r.ri) : json(nullptr);
    j["first_incumbent"] = r.first_source;
    json tr = json::array();
    for (const auto& e : r.trace) {
        json ev;
        ev["t"] = e.t;
        ev["incumbent"] = std::isfinite(e.incumbent) ? json(e.incumbent) : json(nullptr);
        ev["dual"] = e.dual;
        ev["what"] = e.what;
        tr.push_back(ev);
    }
    j["trace"] = tr;
    return j;
}

// Exit code 0 on optimal, 2 on time limit, 1 on error.
inline RunOutcome run_solve(RunConfig cfg) {
    RunOutcome out;
    int p1 = 0;
    try {
        LoadedInstance li = load_instance(cfg.instance_path, cfg.format);
        out.n = li.inst.n;
        if (cfg.id.empty()) cfg.id = li.inst.name;
        out.schedule = resolve_schedule(cfg.schedule_spec, li);
        p1 = out.schedule.p.front();
        SolveOptions opts;
        opts.setting = cfg.setting;
        opts.engine = cfg.engine;
        opts.time_limit_s = cfg.time_limit_s;
        opts.constrained_depth = cfg.constrained_bound_depth;
        opts.constrained_bound = cfg.constrained_bound_depth > 0;
        SolveReport r = solve(li.inst, out.schedule, cfg.objective, opts);
        out.csv_row = csv_row(cfg.id, li.inst.n, p1, r);
        out.exit_code = r.status == Status::optimal ? 0 : 2;
        if (!cfg.json_path.empty()) {
            std::ofstream f(cfg.json_path);
            if (!f) throw std::runtime_error("cannot write " + cfg.json_path);
            f << report_json(cfg, out.schedule, r).dump(2) << '\n';
        }
        out.report = std::move(r);
    } catch (const std::exception& e) {
        if (cfg.id.empty()) cfg.id = stem_of(cfg.instance_path);
        out.error = e.what();
        out.exit_code = 1;
        out.csv_row = csv_error_row(cfg.id, out.n, p1);
    }
    return out;
}

inline RunConfig config_from_json(const json& j, const std::filesystem::path& base) {
    RunConfig c;
    if (!j.is_object()) throw std::invalid_argument("manifest entries must be objects");
    std::filesystem::path p = j.at("instance").get<std::string>();
    if (p.is_relative()) p = base / p;
    c.instance_path = p.string();
    if (j.contains("id")) c.id = j["id"].get<std::string>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    if (j.contains("schedule")) c.schedule_spec = j["schedule"].get<std::string>();
    if (j.contains("objective")) c.objective = parse_objective(j["objective"].get<std::string>());
    if (j.contains("setting")) c.setting = parse_setting(j["setting"].get<std::string>());
    if (j.contains("engine")) c.engine = parse_engine(j["engine"].get<std::string>());
    if (j.contains("time_limit")) c.time_limit_s = j["time_limit"].get<double>();
    if (j.contains("depth")) c.constrained_bound_depth = j["depth"].get<int>();
    return c;
}

// Rows come back in manifest order whatever the number of workers.
inline std::vector<RunOutcome> run_batch(const std::vector<RunConfig>& configs, int jobs = 1) {
    std::vector<RunOutcome> out(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < configs.size();) out[k] = run_solve(configs[k]);
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

inline std::vector<RunConfig> read_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest " + path);
    json j = json::parse(f);
    if (!j.is_array()) throw std::invalid_argument("manifest must be a JSON array");
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<RunConfig> out;
    for (const auto& e : j) out.push_back(config_from_json(e, base));
    return out;
}

inline std::string batch_csv(const std::vector<RunOutcome>& rows) {
    std::string s = std::string(csv_header) + "\n";
    for (const auto& r : rows) s += r.csv_row + "\n";
    return s;
}

}  // namespace npc::run
