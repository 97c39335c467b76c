#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cover.hpp"
#include "instance.hpp"

namespace npc {

struct CoverProblem {
    dist_t radius = 0;
    std::optional<std::vector<int>> universe;  // customers; all when unset
    std::optional<std::vector<int>> allowed;   // facilities; all when unset
    std::vector<int> forced;
    int budget = 1;
};

namespace detail {

inline std::vector<char> mask_of(const std::optional<std::vector<int>>& ids, int size) {
    if (!ids) return {};
    std::vector<char> m(size, 0);
    for (int v : *ids) {
        if (v < 0 || v >= size) throw std::invalid_argument("index out of range");
        m[v] = 1;
    }
    return m;
}

inline std::vector<int> open_set(const std::vector<int>& open_period, int upto) {
    std::vector<int> s;
    for (int j = 0; j < static_cast<int>(open_period.size()); ++j)
        if (open_period[j] > 0 && open_period[j] <= upto) s.push_back(j);
    return s;
}

}  // namespace detail

// Exact; a deadline hit returns nullopt with budget->expired set.
inline std::optional<std::vector<int>> cover_feasible(const Instance& inst, const CoverProblem& prob,
                                                      SearchBudget* budget = nullptr) {
    std::vector<int> forced = prob.forced;
    std::sort(forced.begin(), forced.end());
    forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
    if (static_cast<int>(forced.size()) > prob.budget) return std::nullopt;

    CoverQuery q;
    q.radius = {prob.radius};
    q.limit = {prob.budget};
    q.allowed = detail::mask_of(prob.allowed, inst.n);
    q.universe = detail::mask_of(prob.universe, inst.m);
    q.forced.assign(inst.n, 0);
    for (int j : forced) {
        if (j < 0 || j >= inst.n) throw std::invalid_argument("forced facility out of range");
        q.forced[j] = 1;
    }
    SearchBudget local;
    NestedCover engine(inst);
    CoverAnswer a = engine.solve(q, budget ? *budget : local);
    if (a.verdict != Verdict::feasible) return std::nullopt;
    return detail::open_set(a.open_period, 1);
}

struct PCenterResult {
    dist_t d_star = 0;
    std::vector<int> witness;  // exactly p facilities, sorted
    dist_t lower = 0;          // equals d_star unless the search was cut short
    bool exact = true;
    std::uint64_t nodes = 0;
};

namespace detail {

// fill up to p with the lowest unused ids
inline std::vector<int> pad_to(std::vector<int> s, int p, int n) {
    std::vector<char> in(n, 0);
    for (int j : s) in[j] = 1;
    for (int j = 0; j < n && static_cast<int>(s.size()) < p; ++j)
        if (!in[j]) s.push_back(j);
    std::sort(s.begin(), s.end());
    return s;
}

// start at the best 1-center, then repeatedly serve the farthest customer
inline std::vector<int> farthest_first(const Instance& inst, int p) {
    std::vector<int> s;
    dist_t best = dist_inf;
    int b = 0;
    for (int j = 0; j < inst.n; ++j) {
        dist_t r = 0;
        for (int i = 0; i < inst.m; ++i) r = std::max(r, inst(i, j));
        if (r < best) best = r, b = j;
    }
    s.push_back(b);
    std::vector<char> in(inst.n, 0);
    in[b] = 1;
    std::vector<dist_t> near(inst.m);
    for (int i = 0; i < inst.m; ++i) near[i] = inst(i, b);
    while (static_cast<int>(s.size()) < p) {
        int far = static_cast<int>(std::max_element(near.begin(), near.end()) - near.begin());
        if (near[far] == 0) break;
        const int* ord = inst.sorted_facilities(far);
        int add = -1;
        for (int k = 0; k < inst.n; ++k)
            if (!in[ord[k]]) {
                add = ord[k];
                break;
            }
        if (add < 0) break;
        in[add] = 1;
        s.push_back(add);
        for (int i = 0; i < inst.m; ++i) near[i] = std::min(near[i], inst(i, add));
    }
    return s;
}

}  // namespace detail

// Binary search over the distinct distances with the exact cover decision.
inline PCenterResult solve_pcenter(const Instance& inst, int p, dist_t lb_hint = 0, dist_t ub_hint = dist_inf,
                                   SearchBudget* budget = nullptr) {
    if (p < 1 || p > inst.n) throw std::invalid_argument("p out of range");
    SearchBudget local;
    SearchBudget& b = budget ? *budget : local;
    std::uint64_t nodes0 = b.nodes;

    NestedCover engine(inst);
    auto decide = [&](int k) {
        CoverQuery q;
        q.radius = {inst.distinct[k]};
        q.limit = {p};
        return engine.solve(q, b);
    };

    std::vector<int> start = detail::farthest_first(inst, p);
    PCenterResult res;
    res.witness = start;
    res.d_star = eval_radius(inst, start);
    const auto& D = inst.distinct;
    int lo = static_cast<int>(std::lower_bound(D.begin(), D.end(), lb_hint) - D.begin());
    int hi = inst.index_of(res.d_star);  // known feasible
    if (ub_hint < res.d_star) {
        int k = static_cast<int>(std::upper_bound(D.begin(), D.end(), ub_hint) - D.begin()) - 1;
        if (k >= lo) {
            CoverAnswer a = decide(k);
            if (a.verdict == Verdict::feasible) {
                hi = k;
                res.witness = detail::open_set(a.open_period, 1);
            } else if (a.verdict == Verdict::infeasible) {
                lo = k + 1;
            }
        }
    }
    lo = std::min(lo, hi);
    while (lo < hi && !b.expired) {
        int mid = lo + (hi - lo) / 2;
        CoverAnswer a = decide(mid);
        if (a.verdict == Verdict::aborted) break;
        if (a.verdict == Verdict::feasible) {
            hi = mid;
            res.witness = detail::open_set(a.open_period, 1);
        } else {
            lo = mid + 1;
        }
    }
    res.witness = detail::pad_to(res.witness, p, inst.n);
    res.d_star = eval_radius(inst, res.witness);
    res.exact = lo >= hi;
    res.lower = res.exact ? res.d_star : D[lo];
    res.nodes = b.nodes - nodes0;
    return res;
}

// Periods are solved from the largest p down; each optimum seeds the next lower bound.
inline std::vector<PCenterResult> solve_pcenter_sequence(const Instance& inst, const Schedule& s,
                                                         SearchBudget* budget = nullptr) {
    validate_schedule(s, inst.n);
    std::vector<PCenterResult> out(s.H());
    std::map<int, PCenterResult> done;
    dist_t lb = 0;
    for (int h = s.H() - 1; h >= 0; --h) {
        auto it = done.find(s.p[h]);
        if (it == done.end()) {
            it = done.emplace(s.p[h], solve_pcenter(inst, s.p[h], lb, dist_inf, budget)).first;
        }
        out[h] = it->second;
        lb = out[h].lower;
    }
    return out;
}

// Distance at which the cumulative score, scanned in ascending distance, reaches one.
inline dist_t critical_radius(const Instance& inst, int i, const std::vector<double>& scores) {
    if (i < 0 || i >= inst.m) throw std::invalid_argument("customer out of range");
    if (static_cast<int>(scores.size()) != inst.n) throw std::invalid_argument("one score per facility expected");
    constexpr double eps = 1e-9;
    double acc = 0;
    const int* ord = inst.sorted_facilities(i);
    for (int k = 0; k < inst.n; ++k) {
        double s = scores[ord[k]];
        if (s < 0) throw std::invalid_argument("negative score");
        acc += s;
        if (acc >= 1.0 - eps) return inst(i, ord[k]);
    }
    throw std::invalid_argument("scores sum to less than one: no critical facility");
}

}  // namespace npc
