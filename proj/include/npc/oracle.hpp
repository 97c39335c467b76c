#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "instance.hpp"

namespace npc {

inline constexpr double nested_oracle_guard = 1e8;
inline constexpr double pcenter_oracle_guard = 1e7;

inline double binomial_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// prod_h C(n - p^{h-1}, p^h - p^{h-1}), p^0 = 0
inline double nested_chain_count(int n, const Schedule& s) {
    double c = 1;
    int prev = 0;
    for (int p : s.p) {
        c *= binomial_count(n - prev, p - prev);
        prev = p;
    }
    return c;
}

struct PCenterOracle {
    dist_t optimum = dist_inf;
    std::vector<std::vector<int>> optimal_sets;
};

struct OracleResult {
    dist_t optimum_abs = dist_inf;
    std::optional<Ratio> optimum_rel;  // unset when some d* is zero
    std::vector<Chain> all_optimal_chains_abs;
    std::vector<Chain> all_optimal_chains_rel;
    std::vector<dist_t> d_star;
    std::uint64_t chain_count = 0;
};

namespace detail {

template <class F>
void for_each_combination(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        f(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) return;
        ++c[i];
        for (int t = i + 1; t < k; ++t) c[t] = c[t - 1] + 1;
    }
}

inline dist_t radius_with(const Instance& inst, std::vector<dist_t>& near, const std::vector<int>& add) {
    dist_t r = 0;
    for (int i = 0; i < inst.m; ++i) {
        for (int j : add) near[i] = std::min(near[i], inst(i, j));
        r = std::max(r, near[i]);
    }
    return r;
}

}  // namespace detail

inline PCenterOracle enumerate_pcenter(const Instance& inst, int p) {
    if (p < 1 || p > inst.n) throw std::invalid_argument("p out of range");
    if (binomial_count(inst.n, p) > pcenter_oracle_guard) throw std::length_error("instance too large for oracle");
    PCenterOracle out;
    detail::for_each_combination(inst.n, p, [&](const std::vector<int>& c) {
        std::vector<dist_t> near(inst.m, dist_inf);
        dist_t r = detail::radius_with(inst, near, c);
        if (r < out.optimum) {
            out.optimum = r;
            out.optimal_sets.clear();
        }
        if (r == out.optimum) out.optimal_sets.push_back(c);
    });
    return out;
}

// Visits every nested chain once, sets sorted, with its radii.
inline void for_each_nested_chain(const Instance& inst, const Schedule& s,
                                  const std::function<void(const std::vector<std::vector<int>>&,
                                                           const std::vector<dist_t>&)>& visit) {
    validate_schedule(s, inst.n);
    if (nested_chain_count(inst.n, s) > nested_oracle_guard) throw std::length_error("instance too large for oracle");
    const int H = s.H();
    std::vector<std::vector<int>> sets(H);
    std::vector<dist_t> radii(H);
    std::function<void(int, const std::vector<dist_t>&)> rec = [&](int h, const std::vector<dist_t>& near) {
        if (h == H) {
            visit(sets, radii);
            return;
        }
        const std::vector<int>& base = h ? sets[h - 1] : std::vector<int>{};
        std::vector<int> rest;
        for (int j = 0, k = 0; j < inst.n; ++j) {
            if (k < static_cast<int>(base.size()) && base[k] == j) {
                ++k;
                continue;
            }
            rest.push_back(j);
        }
        int delta = s.p[h] - (h ? s.p[h - 1] : 0);
        detail::for_each_combination(static_cast<int>(rest.size()), delta, [&](const std::vector<int>& c) {
            std::vector<int> add;
            for (int t : c) add.push_back(rest[t]);
            std::vector<dist_t> nr = near;
            radii[h] = detail::radius_with(inst, nr, add);
            sets[h] = base;
            sets[h].insert(sets[h].end(), add.begin(), add.end());
            std::sort(sets[h].begin(), sets[h].end());
            rec(h + 1, nr);
        });
    };
    rec(0, std::vector<dist_t>(inst.m, dist_inf));
}

// Exhaustive ground truth over all nested chains. d* is computed by
// enumerate_pcenter so the result does not depend on the solver modules.
inline OracleResult enumerate_nested(const Instance& inst, const Schedule& s) {
    validate_schedule(s, inst.n);
    if (nested_chain_count(inst.n, s) > nested_oracle_guard) throw std::length_error("instance too large for oracle");
    OracleResult out;
    bool rel_ok = true;
    for (int p : s.p) {
        if (binomial_count(inst.n, p) > pcenter_oracle_guard) {
            rel_ok = false;
            out.d_star.clear();
            break;
        }
        out.d_star.push_back(enumerate_pcenter(inst, p).optimum);
    }
    for (dist_t d : out.d_star) rel_ok = rel_ok && d > 0;

    std::optional<Ratio> best_rel;
    for_each_nested_chain(inst, s, [&](const std::vector<std::vector<int>>& sets, const std::vector<dist_t>& radii) {
        ++out.chain_count;
        dist_t sum = 0;
        for (dist_t r : radii) sum += r;
        if (sum < out.optimum_abs) {
            out.optimum_abs = sum;
            out.all_optimal_chains_abs.clear();
        }
        if (sum == out.optimum_abs) out.all_optimal_chains_abs.push_back(Chain{sets, radii});
        if (rel_ok) {
            Ratio w(0);
            for (std::size_t h = 0; h < radii.size(); ++h)
                w = std::max(w, Ratio(radii[h] - out.d_star[h], out.d_star[h]));
            if (!best_rel || w < *best_rel) {
                best_rel = w;
                out.all_optimal_chains_rel.clear();
            }
            if (w == *best_rel) out.all_optimal_chains_rel.push_back(Chain{sets, radii});
        }
    });
    out.optimum_rel = best_rel;
    return out;
}

// ------------------------------------------------------------ generators

// Distinct points on an integer grid with Manhattan distances; symmetric,
// integral and metric. Drawn with raw engine output so the stream is
// identical across standard libraries.
inline Instance random_instance(std::uint64_t seed, int n, int grid = 0) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (grid <= 0) grid = 4 * n;
    if (static_cast<long long>(grid) * grid < n) throw std::invalid_argument("grid too small");
    std::mt19937_64 rng(seed);
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> pts;
    while (static_cast<int>(pts.size()) < n) {
        int x = static_cast<int>(rng() % static_cast<std::uint64_t>(grid));
        int y = static_cast<int>(rng() % static_cast<std::uint64_t>(grid));
        if (seen.insert({x, y}).second) pts.push_back({x, y});
    }
    std::vector<dist_t> d(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(i) * n + j] = std::abs(pts[i].first - pts[j].first) + std::abs(pts[i].second - pts[j].second);
    return make_instance("rand" + std::to_string(n) + "_s" + std::to_string(seed), n, n, std::move(d));
}

// H strictly increasing counts drawn from 1..n-1
inline Schedule random_schedule(std::uint64_t seed, int n, int H) {
    if (H < 1 || H > n - 1) throw std::invalid_argument("cannot draw that many distinct counts");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<int> pool(n - 1);
    for (int i = 0; i < n - 1; ++i) pool[i] = i + 1;
    for (int i = n - 2; i > 0; --i) std::swap(pool[i], pool[rng() % static_cast<std::uint64_t>(i + 1)]);
    Schedule s;
    s.p.assign(pool.begin(), pool.begin() + H);
    std::sort(s.p.begin(), s.p.end());
    return s;
}

}  // namespace npc
