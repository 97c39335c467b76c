#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "instance.hpp"

namespace npc {

enum class Formulation { A1, A2, A3, R1, R2 };

inline const char* to_string(Formulation f) {
    switch (f) {
        case Formulation::A1: return "A1";
        case Formulation::A2: return "A2";
        case Formulation::A3: return "A3";
        case Formulation::R1: return "R1";
        case Formulation::R2: return "R2";
    }
    return "?";
}

inline Formulation parse_formulation(const std::string& s) {
    for (Formulation f : {Formulation::A1, Formulation::A2, Formulation::A3, Formulation::R1, Formulation::R2})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown formulation: " + s);
}

inline bool is_relative(Formulation f) { return f == Formulation::R1 || f == Formulation::R2; }

struct ModelSpec {
    Formulation formulation = Formulation::A2;
    bool lift = false;
    bool fix = false;  // A3 only
    BoundSet bounds;   // LB for lifting, UB for fixing, d_star for R1/R2
    double rel_lb = 0; // lower bound on the relative objective, R2 lifting
};

enum class VarKind { y, x, u, z, w };

struct Variable {
    std::string name;
    VarKind kind = VarKind::z;
    int a = 0;  // j for y, i for x, k for u
    int b = 0;  // j for x
    int h = 0;
    bool binary = false;
    double lb = 0;
    double ub = std::numeric_limits<double>::infinity();
};

struct Term {
    int var = 0;
    double coef = 0;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    char sense = '>';  // '<', '>' or '='
    double rhs = 0;
};

struct ModelDocument {
    std::string name;
    Formulation formulation = Formulation::A2;
    std::vector<Variable> vars;
    std::vector<Term> objective;
    std::vector<Constraint> rows;
    std::vector<dist_t> distinct;  // D_1..D_K, for u-variables
    std::vector<dist_t> d_star;

    int count_rows(const std::string& prefix) const {
        int c = 0;
        for (const auto& r : rows) c += r.name.rfind(prefix, 0) == 0;
        return c;
    }
    int count_vars(VarKind k) const {
        int c = 0;
        for (const auto& v : vars) c += v.kind == k;
        return c;
    }
    const Variable* find_var(const std::string& n) const {
        for (const auto& v : vars)
            if (v.name == n) return &v;
        return nullptr;
    }
};

namespace detail {

class ModelBuilder {
  public:
    ModelDocument doc;

    int add(std::string name, VarKind kind, int a, int b, int h, bool binary) {
        Variable v;
        v.name = std::move(name);
        v.kind = kind;
        v.a = a;
        v.b = b;
        v.h = h;
        v.binary = binary;
        if (binary) v.ub = 1;
        doc.vars.push_back(std::move(v));
        return static_cast<int>(doc.vars.size()) - 1;
    }

    void row(std::string name, std::vector<Term> t, char sense, double rhs) {
        std::erase_if(t, [](const Term& x) { return x.coef == 0; });
        doc.rows.push_back({std::move(name), std::move(t), sense, rhs});
    }
};

inline std::string nm(const char* base, std::initializer_list<int> idx) {
    std::string s = base;
    for (int v : idx) s += "_" + std::to_string(v + 1);
    return s;
}

}  // namespace detail

inline ModelDocument emit_model(const Instance& inst, const Schedule& s, const ModelSpec& spec) {
    validate_schedule(s, inst.n);
    const int H = s.H(), m = inst.m, n = inst.n;
    const Formulation f = spec.formulation;
    if (spec.fix && f != Formulation::A3) throw std::invalid_argument("fix requires formulation A3");
    if (spec.fix && (spec.bounds.UB.size() != static_cast<std::size_t>(H) || spec.bounds.LB.size() != static_cast<std::size_t>(H)))
        throw std::invalid_argument("fix requires per-period lower and upper bounds");
    if (spec.lift && f != Formulation::A3 && f != Formulation::R2 && spec.bounds.LB.size() != static_cast<std::size_t>(H))
        throw std::invalid_argument("lift requires per-period lower bounds");
    if (is_relative(f)) {
        if (spec.bounds.d_star.size() != static_cast<std::size_t>(H))
            throw std::invalid_argument("relative formulations need d_star per period");
        for (dist_t d : spec.bounds.d_star)
            if (d <= 0) throw std::domain_error("relative regret undefined: some p-center optimum is zero");
    }

    detail::ModelBuilder B;
    B.doc.name = inst.name;
    B.doc.formulation = f;
    B.doc.distinct = inst.distinct;
    B.doc.d_star = spec.bounds.d_star;
    using detail::nm;

    std::vector<std::vector<int>> y(n, std::vector<int>(H));
    for (int h = 0; h < H; ++h)
        for (int j = 0; j < n; ++j) y[j][h] = B.add(nm("y", {j, h}), VarKind::y, j, 0, h, true);
    std::vector<std::vector<std::vector<int>>> x;
    if (f == Formulation::A1) {
        x.assign(m, std::vector<std::vector<int>>(n, std::vector<int>(H)));
        for (int h = 0; h < H; ++h)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) x[i][j][h] = B.add(nm("x", {i, j, h}), VarKind::x, i, j, h, true);
    }
    const auto& D = inst.distinct;
    const int K = static_cast<int>(D.size());
    std::vector<std::vector<int>> u;
    if (f == Formulation::A3) {
        u.assign(K, std::vector<int>(H));
        for (int h = 0; h < H; ++h)
            for (int k = 0; k < K; ++k) u[k][h] = B.add(nm("u", {k, h}), VarKind::u, k, 0, h, true);
    }
    std::vector<int> z(H, -1);
    if (f != Formulation::R2)
        for (int h = 0; h < H; ++h) z[h] = B.add(nm("z", {h}), VarKind::z, 0, 0, h, false);
    int w = -1;
    if (is_relative(f)) w = B.add("w", VarKind::w, 0, 0, 0, false);

    if (is_relative(f))
        B.doc.objective = {{w, 1.0}};
    else
        for (int h = 0; h < H; ++h) B.doc.objective.push_back({z[h], 1.0});

    for (int h = 0; h < H; ++h) {
        std::vector<Term> t;
        for (int j = 0; j < n; ++j) t.push_back({y[j][h], 1.0});
        B.row(nm("card", {h}), std::move(t), '=', s.p[h]);
    }

    auto nesting = [&] {
        for (int h = 1; h < H; ++h)
            for (int j = 0; j < n; ++j) B.row(nm("nest", {j, h}), {{y[j][h], 1.0}, {y[j][h - 1], -1.0}}, '>', 0);
    };
    auto LBh = [&](int h) { return static_cast<double>(spec.bounds.LB[h]); };

    // z + sum_{d_ij' < d_ij} (a - b_j') y_j' >= a, with a and b thresholded at T
    auto ypush = [&](const char* base, int h, int var, double scale, double T, double shift) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                double a = std::max(T, static_cast<double>(inst(i, j)));
                std::vector<Term> t{{var, 1.0}};
                for (int j2 = 0; j2 < n; ++j2)
                    if (inst(i, j2) < inst(i, j))
                        t.push_back({y[j2][h], (a - std::max(T, static_cast<double>(inst(i, j2)))) / scale});
                B.row(nm(base, {i, j, h}), std::move(t), '>', a / scale + shift);
            }
    };

    switch (f) {
        case Formulation::A1: {
            for (int h = 0; h < H; ++h)
                for (int i = 0; i < m; ++i) {
                    std::vector<Term> t;
                    for (int j = 0; j < n; ++j) t.push_back({x[i][j][h], 1.0});
                    B.row(nm("assign", {i, h}), std::move(t), '=', 1);
                }
            for (int h = 0; h < H; ++h)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        B.row(nm("open", {i, j, h}), {{x[i][j][h], 1.0}, {y[j][h], -1.0}}, '<', 0);
            auto zrows = [&](const char* base, bool lifted) {
                for (int h = 0; h < H; ++h)
                    for (int i = 0; i < m; ++i) {
                        std::vector<Term> t;
                        for (int j = 0; j < n; ++j) {
                            double d = static_cast<double>(inst(i, j));
                            t.push_back({x[i][j][h], lifted ? std::max(LBh(h), d) : d});
                        }
                        t.push_back({z[h], -1.0});
                        B.row(nm(base, {i, h}), std::move(t), '<', 0);
                    }
            };
            if (!spec.lift) zrows("zpush", false);
            nesting();
            if (spec.lift) zrows("zlift", true);
            break;
        }
        case Formulation::A2:
        case Formulation::R1: {
            if (!spec.lift)
                for (int h = 0; h < H; ++h) ypush("zpush", h, z[h], 1.0, 0.0, 0.0);
            if (f == Formulation::R1)
                for (int h = 0; h < H; ++h) {
                    double ds = static_cast<double>(spec.bounds.d_star[h]);
                    B.row(nm("regret", {h}), {{w, 1.0}, {z[h], -1.0 / ds}}, '>', -1.0);
                }
            nesting();
            if (spec.lift)
                for (int h = 0; h < H; ++h) ypush("zlift", h, z[h], 1.0, LBh(h), 0.0);
            break;
        }
        case Formulation::R2: {
            auto T = [&](int h) {
                return spec.lift ? (1.0 + spec.rel_lb) * static_cast<double>(spec.bounds.d_star[h]) : 0.0;
            };
            if (!spec.lift)
                for (int h = 0; h < H; ++h)
                    ypush("wpush", h, w, static_cast<double>(spec.bounds.d_star[h]), 0.0, -1.0);
            nesting();
            if (spec.lift)
                for (int h = 0; h < H; ++h)
                    ypush("wlift", h, w, static_cast<double>(spec.bounds.d_star[h]), T(h), -1.0);
            break;
        }
        case Formulation::A3: {
            std::vector<int> klo(H, 0), khi(H, K - 1);  // fixed to 1 below klo, to 0 above khi
            if (spec.fix)
                for (int h = 0; h < H; ++h) {
                    klo[h] = static_cast<int>(std::lower_bound(D.begin(), D.end(), spec.bounds.LB[h]) - D.begin());
                    khi[h] = static_cast<int>(std::upper_bound(D.begin(), D.end(), spec.bounds.UB[h]) - D.begin()) - 1;
                    for (int k = 0; k < K; ++k) {
                        Variable& v = B.doc.vars[u[k][h]];
                        if (k < klo[h]) v.lb = v.ub = 1;
                        if (k > khi[h]) v.lb = v.ub = 0;
                    }
                }
            const double D0 = static_cast<double>(D.front());
            for (int h = 0; h < H; ++h) {
                std::vector<Term> t;
                double anchor = D0;
                int from = 0;
                if (spec.fix && klo[h] < K) {
                    anchor = static_cast<double>(D[klo[h]]);
                    from = klo[h] + 1;
                }
                for (int k = from; k <= khi[h] && k < K; ++k)
                    t.push_back({u[k][h], static_cast<double>(D[k] - (k ? D[k - 1] : D.front()))});
                t.push_back({z[h], -1.0});
                B.row(nm("zpush", {h}), std::move(t), '<', -anchor);
            }
            for (int h = 0; h < H; ++h)
                for (int i = 0; i < m; ++i) {
                    std::vector<char> inS(K, 0);
                    for (int j = 0; j < n; ++j) inS[inst.index_of(inst(i, j))] = 1;
                    inS[K - 1] = 1;
                    for (int k = 0; k < K; ++k) {
                        if (!inS[k]) continue;
                        if (spec.fix && k < klo[h]) continue;
                        std::vector<Term> t{{u[k][h], 1.0}};
                        for (int j = 0; j < n; ++j)
                            if (inst(i, j) < D[k]) t.push_back({y[j][h], 1.0});
                        B.row(nm("upush", {i, k, h}), std::move(t), '>', 1);
                    }
                }
            for (int h = 0; h < H; ++h)
                for (int k = 0; k + 1 < K; ++k) {
                    if (spec.fix && (k < klo[h] || k + 1 > khi[h])) continue;
                    B.row(nm("unest", {k, h}), {{u[k][h], 1.0}, {u[k + 1][h], -1.0}}, '>', 0);
                }
            nesting();
            break;
        }
    }
    return B.doc;
}

namespace detail {

inline std::string num(double v) {
    char buf[64];
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15)
        std::snprintf(buf, sizeof buf, "%.0f", v);
    else
        std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_terms(std::string& out, const ModelDocument& doc, const std::vector<Term>& terms) {
    int on_line = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        double c = terms[t].coef;
        if (t) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "- ";
        double a = std::fabs(c);
        if (a != 1) out += num(a) + " ";
        out += doc.vars[terms[t].var].name;
        if (++on_line == 10 && t + 1 < terms.size()) {
            out += "\n   ";
            on_line = 0;
        }
    }
    if (terms.empty()) out += "0 " + doc.vars.front().name;
}

}  // namespace detail

inline std::string to_lp(const ModelDocument& doc) {
    std::string out;
    out += "\\ " + doc.name + " " + to_string(doc.formulation) + "\n";
    out += "Minimize\n obj: ";
    detail::write_terms(out, doc, doc.objective);
    out += "\nSubject To\n";
    for (const auto& r : doc.rows) {
        out += " " + r.name + ": ";
        detail::write_terms(out, doc, r.terms);
        out += r.sense == '<' ? " <= " : r.sense == '>' ? " >= " : " = ";
        out += detail::num(r.rhs) + "\n";
    }
    out += "Bounds\n";
    for (const auto& v : doc.vars) {
        if (v.lb == v.ub)
            out += " " + v.name + " = " + detail::num(v.lb) + "\n";
        else if (!v.binary)
            out += " " + v.name + " >= " + detail::num(v.lb) + "\n";
    }
    out += "Binaries\n";
    int col = 0;
    for (const auto& v : doc.vars) {
        if (!v.binary) continue;
        out += " " + v.name;
        if (++col == 10) out += "\n", col = 0;
    }
    if (col) out += "\n";
    out += "End\n";
    return out;
}

inline std::string model_file_name(const std::string& instance, const Schedule& s, const ModelSpec& spec) {
    std::string n = instance + "_" + schedule_string(s, '-') + "_" + to_string(spec.formulation);
    if (spec.lift) n += "_lift";
    if (spec.fix) n += "_fix";
    return n + ".lp";
}

struct ModelCheck {
    bool ok = true;
    std::vector<std::string> violated;  // rows, bounds or integrality, by name
    double model_objective = 0;
    double chain_objective = 0;
    bool objective_matches = true;
};

// Canonical assignment of a chain: y from the sets, x to the nearest open
// facility (lowest index on ties), u_k = [D_k <= radius], z = radius, w =
// max relative regret.
inline std::vector<double> canonical_assignment(const ModelDocument& doc, const Instance& inst, const Chain& chain) {
    int H = static_cast<int>(chain.sets.size());
    std::vector<std::vector<char>> open(H, std::vector<char>(inst.n, 0));
    for (int h = 0; h < H; ++h)
        for (int j : chain.sets[h]) open[h][j] = 1;
    double wv = 0;
    if (doc.d_star.size() == static_cast<std::size_t>(H)) {
        bool first = true;
        for (int h = 0; h < H; ++h) {
            if (doc.d_star[h] <= 0) continue;
            double r = static_cast<double>(chain.radii[h] - doc.d_star[h]) / static_cast<double>(doc.d_star[h]);
            if (first || r > wv) wv = r, first = false;
        }
    }
    std::vector<double> val(doc.vars.size(), 0.0);
    for (std::size_t v = 0; v < doc.vars.size(); ++v) {
        const Variable& var = doc.vars[v];
        switch (var.kind) {
            case VarKind::y: val[v] = open[var.h][var.a] ? 1 : 0; break;
            case VarKind::x: {
                int best = -1;
                for (int j = 0; j < inst.n; ++j)
                    if (open[var.h][j] && (best < 0 || inst(var.a, j) < inst(var.a, best))) best = j;
                val[v] = best == var.b ? 1 : 0;
                break;
            }
            case VarKind::u: val[v] = doc.distinct[var.a] <= chain.radii[var.h] ? 1 : 0; break;
            case VarKind::z: val[v] = static_cast<double>(chain.radii[var.h]); break;
            case VarKind::w: val[v] = wv; break;
        }
    }
    return val;
}

inline ModelCheck validate_chain_against_model(const ModelDocument& doc, const Instance& inst, const Chain& chain) {
    ModelCheck res;
    std::vector<double> val = canonical_assignment(doc, inst, chain);
    auto tol = [](double x) { return 1e-9 * std::max(1.0, std::fabs(x)); };
    for (const auto& r : doc.rows) {
        double act = 0;
        double scale = std::fabs(r.rhs);
        for (const auto& t : r.terms) {
            act += t.coef * val[t.var];
            scale = std::max(scale, std::fabs(t.coef * val[t.var]));
        }
        double e = tol(scale);
        bool ok = r.sense == '<' ? act <= r.rhs + e : r.sense == '>' ? act >= r.rhs - e : std::fabs(act - r.rhs) <= e;
        if (!ok) res.violated.push_back(r.name);
    }
    for (std::size_t v = 0; v < doc.vars.size(); ++v) {
        const Variable& var = doc.vars[v];
        if (val[v] < var.lb - tol(var.lb) || val[v] > var.ub + tol(var.ub)) res.violated.push_back("bound:" + var.name);
        if (var.binary && val[v] != 0 && val[v] != 1) res.violated.push_back("binary:" + var.name);
    }
    for (const auto& t : doc.objective) res.model_objective += t.coef * val[t.var];
    if (is_relative(doc.formulation)) {
        res.chain_objective = static_cast<double>(relative_objective(chain.radii, doc.d_star).value());
    } else {
        res.chain_objective = static_cast<double>(chain.sum());
    }
    res.objective_matches = std::fabs(res.model_objective - res.chain_objective) <= tol(res.chain_objective);
    res.ok = res.violated.empty() && res.objective_matches;
    return res;
}

}  // namespace npc
