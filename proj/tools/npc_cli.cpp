#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "npc_run.hpp"

namespace fs = std::filesystem;
using namespace npc;
using namespace npc::run;

namespace {

std::string ids(const std::vector<int>& s) {
    std::string out;
    for (int j : s) out += (out.empty() ? "" : " ") + std::to_string(j + 1);
    return out;
}

void write_csv(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

struct Common {
    std::string instance;
    std::string format;
    std::string schedule = "file+2";

    void attach(CLI::App* app) {
        app->add_option("instance", instance, "pmed or TSPLIB file")->required();
        app->add_option("--format", format, "pmed|tsplib (guessed when omitted)");
        app->add_option("--schedule,-P", schedule, "facility counts, e.g. 4,5,6, or file+2 for pmed");
    }

    LoadedInstance load() const {
        std::optional<Format> f;
        if (!format.empty()) f = parse_format(format);
        return load_instance(instance, f);
    }
};

int cmd_solve(const RunConfig& cfg) {
    RunOutcome r = run_solve(cfg);
    if (!r.error.empty()) std::cerr << "error: " << r.error << '\n';
    std::string text = std::string(csv_header) + "\n" + r.csv_row + "\n";
    std::cout << text;
    write_csv(cfg.csv_path, text);
    return r.exit_code;
}

int cmd_pcenter(const Common& c) {
    LoadedInstance li = c.load();
    Schedule s = resolve_schedule(c.schedule, li);
    auto res = solve_pcenter_sequence(li.inst, s);
    std::cout << "p,d_star,exact,nodes,witness\n";
    for (std::size_t h = 0; h < res.size(); ++h)
        std::cout << s.p[h] << ',' << res[h].d_star << ',' << (res[h].exact ? "yes" : "no") << ',' << res[h].nodes
                  << ',' << ids(res[h].witness) << '\n';
    return 0;
}

int cmd_export(const Common& c, std::vector<std::string> forms, bool lift, bool fix, const std::string& dir) {
    LoadedInstance li = c.load();
    Schedule s = resolve_schedule(c.schedule, li);
    Preprocessing pre = preprocess(li.inst, s);
    HeuristicResult hs = best_start(li.inst, s, pre.pc);
    BoundSet bounds = make_bounds(pre.d_star, std::min(pre.bounds.UB_global, hs.objective_abs));
    if (forms.empty()) forms = {"A1", "A2", "A3", "R1", "R2"};
    fs::create_directories(dir);
    std::cout << "file,variables,binaries,constraints\n";
    for (const auto& name : forms) {
        ModelSpec spec;
        spec.formulation = parse_formulation(name);
        spec.lift = lift;
        spec.fix = fix && spec.formulation == Formulation::A3;
        if (fix && spec.formulation != Formulation::A3) throw std::invalid_argument("fix requires formulation A3");
        spec.bounds = bounds;
        ModelDocument doc = emit_model(li.inst, s, spec);
        fs::path out = fs::path(dir) / model_file_name(li.inst.name, s, spec);
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out.string());
        f << to_lp(doc);
        int bin = 0;
        for (const auto& v : doc.vars) bin += v.binary;
        std::cout << out.string() << ',' << doc.vars.size() << ',' << bin << ',' << doc.rows.size() << '\n';
    }
    return 0;
}

int cmd_oracle(const Common& c, bool check) {
    LoadedInstance li = c.load();
    Schedule s = resolve_schedule(c.schedule, li);
    OracleResult o = enumerate_nested(li.inst, s);
    std::cout << "chains," << o.chain_count << "\noptimum_abs," << o.optimum_abs << "\noptimal_chains_abs,"
              << o.all_optimal_chains_abs.size() << '\n';
    if (o.optimum_rel)
        std::cout << "optimum_rel," << o.optimum_rel->num << '/' << o.optimum_rel->den << "\noptimal_chains_rel,"
                  << o.all_optimal_chains_rel.size() << '\n';
    for (const auto& ch : o.all_optimal_chains_abs) {
        std::cout << "chain";
        for (const auto& set : ch.sets) std::cout << ",{" << ids(set) << '}';
        std::cout << '\n';
    }
    if (!check) return 0;
    int bad = 0;
    SolveReport a = solve_absolute(li.inst, s);
    if (static_cast<dist_t>(a.objective) != o.optimum_abs) {
        std::cerr << "absolute mismatch: solver " << a.objective << '\n';
        ++bad;
    }
    if (o.optimum_rel) {
        SolveReport r = solve_relative(li.inst, s);
        if (!(r.objective_exact && *r.objective_exact == *o.optimum_rel)) {
            std::cerr << "relative mismatch: solver " << r.objective << '\n';
            ++bad;
        }
    }
    std::cout << "check," << (bad ? "FAIL" : "PASS") << '\n';
    return bad ? 1 : 0;
}

int cmd_batch(const std::string& manifest, const std::string& csv, int jobs) {
    auto configs = read_manifest(manifest);
    auto rows = run_batch(configs, jobs);
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (!rows[k].error.empty()) std::cerr << "row " << k + 1 << ": " << rows[k].error << '\n';
    std::string text = batch_csv(rows);
    std::cout << text;
    write_csv(csv, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nested p-center solver"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format, objective = "absolute", setting = "PH", engine = "radius";
    auto* solve_cmd = app.add_subcommand("solve", "exact solve, one CSV row");
    solve_cmd->add_option("instance", cfg.instance_path, "pmed or TSPLIB file")->required();
    solve_cmd->add_option("--format", format, "pmed|tsplib");
    solve_cmd->add_option("--schedule,-P", cfg.schedule_spec, "e.g. 4,5,6 or file+2");
    solve_cmd->add_option("--objective", objective, "absolute|relative");
    solve_cmd->add_option("--setting", setting, "B|P|PH");
    solve_cmd->add_option("--engine", engine, "radius|chain");
    solve_cmd->add_option("--time-limit", cfg.time_limit_s, std::string("seconds; default from ") + time_limit_env);
    solve_cmd->add_option("--depth", cfg.constrained_bound_depth, "constrained bound depth, chain engine; 0 disables");
    solve_cmd->add_option("--id", cfg.id, "row id");
    solve_cmd->add_option("--csv", cfg.csv_path, "also write the CSV here");
    solve_cmd->add_option("--json", cfg.json_path, "write a JSON report");

    Common pc, ex, orc;
    auto* pc_cmd = app.add_subcommand("pcenter", "p-center optima for each period");
    pc.attach(pc_cmd);

    std::vector<std::string> forms;
    bool lift = false, fix = false;
    std::string out_dir = ".";
    auto* ex_cmd = app.add_subcommand("export", "write LP models");
    ex.attach(ex_cmd);
    ex_cmd->add_option("--formulation,-f", forms, "A1 A2 A3 R1 R2 (default all)");
    ex_cmd->add_flag("--lift", lift, "lifted inequalities");
    ex_cmd->add_flag("--fix", fix, "variable fixing (A3)");
    ex_cmd->add_option("--out", out_dir, "output directory");

    bool check = false;
    auto* or_cmd = app.add_subcommand("oracle", "exhaustive enumeration on tiny instances");
    orc.attach(or_cmd);
    or_cmd->add_flag("--check", check, "compare against the solver");

    std::string manifest, batch_csv_path;
    int jobs = 1;
    auto* b_cmd = app.add_subcommand("batch", "run a JSON manifest of solve configs");
    b_cmd->add_option("manifest", manifest, "JSON array of configs")->required();
    b_cmd->add_option("--csv", batch_csv_path, "also write the CSV here");
    b_cmd->add_option("--jobs,-j", jobs, "concurrent runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            if (!format.empty()) cfg.format = parse_format(format);
            cfg.objective = parse_objective(objective);
            cfg.setting = parse_setting(setting);
            cfg.engine = parse_engine(engine);
            return cmd_solve(cfg);
        }
        if (*pc_cmd) return cmd_pcenter(pc);
        if (*ex_cmd) return cmd_export(ex, forms, lift, fix, out_dir);
        if (*or_cmd) return cmd_oracle(orc, check);
        if (*b_cmd) return cmd_batch(manifest, batch_csv_path, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
