#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "instance.hpp"
#include "pcenter.hpp"

namespace npc {

struct HeuristicResult {
    Chain chain;
    dist_t objective_abs = 0;
    double objective_rel = std::numeric_limits<double>::quiet_NaN();
    std::optional<Ratio> objective_rel_exact;
    std::string source;
};

inline HeuristicResult rate_chain(Chain chain, const std::vector<dist_t>& d_star, std::string source) {
    HeuristicResult r;
    r.objective_abs = chain.sum();
    if (d_star.size() == chain.radii.size()) {
        Regrets g = compute_regrets(chain.radii, d_star);
        if (g.rel_defined) {
            r.objective_rel = g.rel_max;
            r.objective_rel_exact = g.rel_max_exact;
        }
    }
    r.chain = std::move(chain);
    r.source = std::move(source);
    return r;
}

namespace detail {

// Lexicographic on (radius, customers at that radius, sorted facility set).
struct SetKey {
    dist_t radius = dist_inf;
    int at_radius = 0;
    std::vector<int> set;

    bool better_than(const SetKey& o) const {
        if (radius != o.radius) return radius < o.radius;
        if (at_radius != o.at_radius) return at_radius < o.at_radius;
        return set < o.set;
    }
};

inline SetKey key_of(const Instance& inst, std::vector<int> set) {
    std::sort(set.begin(), set.end());
    SetKey k;
    k.radius = 0;
    std::vector<dist_t> near(inst.m, dist_inf);
    for (int i = 0; i < inst.m; ++i) {
        for (int j : set) near[i] = std::min(near[i], inst(i, j));
        k.radius = std::max(k.radius, near[i]);
    }
    for (int i = 0; i < inst.m; ++i) k.at_radius += near[i] == k.radius;
    k.set = std::move(set);
    return k;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline constexpr double max_step_subsets = 2e6;

template <class F>
void for_each_subset(const std::vector<int>& pool, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> pick(k);
    int n = static_cast<int>(pool.size());
    if (k > n) return;
    while (true) {
        for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
        f(pick);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

// best set obtained from base by adding delta members of pool
inline std::vector<int> best_addition(const Instance& inst, const std::vector<int>& base, const std::vector<int>& pool,
                                      int delta) {
    if (delta == 0) return base;
    if (binomial(static_cast<int>(pool.size()), delta) > max_step_subsets) {
        // too many subsets: add one facility at a time
        std::vector<int> cur = base;
        std::vector<int> rest = pool;
        for (int t = 0; t < delta; ++t) {
            cur = best_addition(inst, cur, rest, 1);
            std::erase_if(rest, [&](int j) { return std::binary_search(cur.begin(), cur.end(), j); });
        }
        return cur;
    }
    SetKey best;
    std::vector<int> cand;
    for_each_subset(pool, delta, [&](const std::vector<int>& add) {
        cand = base;
        cand.insert(cand.end(), add.begin(), add.end());
        SetKey k = key_of(inst, cand);
        if (best.set.empty() || k.better_than(best)) best = std::move(k);
    });
    return best.set;
}

inline std::vector<int> best_removal(const Instance& inst, const std::vector<int>& base, int delta) {
    if (delta == 0) return base;
    if (binomial(static_cast<int>(base.size()), delta) > max_step_subsets) {
        std::vector<int> cur = base;
        for (int t = 0; t < delta; ++t) cur = best_removal(inst, cur, 1);
        return cur;
    }
    SetKey best;
    std::vector<int> cand;
    for_each_subset(base, delta, [&](const std::vector<int>& drop) {
        cand.clear();
        std::set_difference(base.begin(), base.end(), drop.begin(), drop.end(), std::back_inserter(cand));
        SetKey k = key_of(inst, cand);
        if (best.set.empty() || k.better_than(best)) best = std::move(k);
    });
    return best.set;
}

inline std::vector<int> complement(const std::vector<int>& sorted_set, int n) {
    std::vector<int> out;
    for (int j = 0, k = 0; j < n; ++j) {
        if (k < static_cast<int>(sorted_set.size()) && sorted_set[k] == j) {
            ++k;
            continue;
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace detail

// Start from a p^H set and drop delta_h facilities per step, last period first.
inline HeuristicResult heuristic_shrink(const Instance& inst, const Schedule& s, std::vector<int> jH,
                                        const std::vector<dist_t>& d_star = {}) {
    validate_schedule(s, inst.n);
    std::sort(jH.begin(), jH.end());
    if (static_cast<int>(jH.size()) != s.p.back()) throw std::invalid_argument("shrink: |jH| must equal p^H");
    std::vector<std::vector<int>> sets(s.H());
    sets.back() = jH;
    for (int h = s.H() - 1; h > 0; --h) sets[h - 1] = detail::best_removal(inst, sets[h], s.p[h] - s.p[h - 1]);
    return rate_chain(make_chain(inst, std::move(sets)), d_star, "shrink");
}

// Start from a p^1 set and add delta_h facilities per step.
inline HeuristicResult heuristic_grow(const Instance& inst, const Schedule& s, std::vector<int> j1,
                                      const std::vector<dist_t>& d_star = {}) {
    validate_schedule(s, inst.n);
    std::sort(j1.begin(), j1.end());
    if (static_cast<int>(j1.size()) != s.p.front()) throw std::invalid_argument("grow: |j1| must equal p^1");
    std::vector<std::vector<int>> sets(s.H());
    sets[0] = j1;
    for (int h = 1; h < s.H(); ++h)
        sets[h] = detail::best_addition(inst, sets[h - 1], detail::complement(sets[h - 1], inst.n), s.p[h] - s.p[h - 1]);
    return rate_chain(make_chain(inst, std::move(sets)), d_star, "grow");
}

// Most frequently opened facilities form J^1; then single greedy additions
// drawn from the union of all p-center solutions, falling back to every facility.
inline HeuristicResult heuristic_count(const Instance& inst, const Schedule& s,
                                       const std::vector<std::vector<int>>& pc_solutions,
                                       const std::vector<dist_t>& d_star = {}) {
    validate_schedule(s, inst.n);
    if (static_cast<int>(pc_solutions.size()) != s.H()) throw std::invalid_argument("count: one solution per period");
    std::vector<int> cnt(inst.n, 0);
    std::vector<char> in_union(inst.n, 0);
    for (const auto& sol : pc_solutions)
        for (int j : sol) ++cnt[j], in_union[j] = 1;
    std::vector<int> ids(inst.n);
    for (int j = 0; j < inst.n; ++j) ids[j] = j;
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return cnt[a] > cnt[b]; });

    std::vector<int> cur(ids.begin(), ids.begin() + s.p[0]);
    std::sort(cur.begin(), cur.end());
    std::vector<std::vector<int>> sets(s.H());
    int h = 0;
    while (true) {
        while (h < s.H() && static_cast<int>(cur.size()) == s.p[h]) sets[h++] = cur;
        if (h == s.H()) break;
        std::vector<int> pool;
        for (int j = 0; j < inst.n; ++j)
            if (in_union[j] && !std::binary_search(cur.begin(), cur.end(), j)) pool.push_back(j);
        if (pool.empty()) pool = detail::complement(cur, inst.n);
        cur = detail::best_addition(inst, cur, pool, 1);
    }
    return rate_chain(make_chain(inst, std::move(sets)), d_star, "count");
}

// Facilities ranked by total score over periods; period h takes the first p^h.
inline Chain primal_from_scores(const Instance& inst, const Schedule& s, const std::vector<std::vector<double>>& scores) {
    validate_schedule(s, inst.n);
    if (static_cast<int>(scores.size()) != inst.n) throw std::invalid_argument("one score row per facility expected");
    std::vector<double> total(inst.n, 0.0);
    for (int j = 0; j < inst.n; ++j)
        for (double v : scores[j]) total[j] += v;
    std::vector<int> ids(inst.n);
    for (int j = 0; j < inst.n; ++j) ids[j] = j;
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return total[a] > total[b]; });
    std::vector<std::vector<int>> sets;
    for (int p : s.p) sets.emplace_back(ids.begin(), ids.begin() + p);
    return make_chain(inst, std::move(sets));
}

// true when a beats b under the objective
inline bool heuristic_better(const HeuristicResult& a, const HeuristicResult& b, Objective obj) {
    if (obj == Objective::relative && a.objective_rel_exact && b.objective_rel_exact)
        return *a.objective_rel_exact < *b.objective_rel_exact;
    return a.objective_abs < b.objective_abs;
}

// Runs shrink, count and grow; earlier heuristics win ties.
inline HeuristicResult best_start(const Instance& inst, const Schedule& s, const std::vector<PCenterResult>& pc,
                                  Objective obj = Objective::absolute) {
    validate_schedule(s, inst.n);
    std::vector<dist_t> d_star;
    std::vector<std::vector<int>> sols;
    for (const auto& r : pc) d_star.push_back(r.d_star), sols.push_back(r.witness);
    HeuristicResult best = heuristic_shrink(inst, s, sols.back(), d_star);
    HeuristicResult c = heuristic_count(inst, s, sols, d_star);
    if (heuristic_better(c, best, obj)) best = std::move(c);
    HeuristicResult g = heuristic_grow(inst, s, sols.front(), d_star);
    if (heuristic_better(g, best, obj)) best = std::move(g);
    return best;
}

}  // namespace npc
