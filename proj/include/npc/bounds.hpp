#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "instance.hpp"

namespace npc {

// Exact fraction over int64; compared by cross-multiplication.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) num = -num, den = -den;
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) num /= g, den /= g;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
};

inline constexpr double tighten_eps = 1e-9;

enum class Objective { absolute, relative };

struct BoundSet {
    std::vector<dist_t> d_star;
    std::vector<dist_t> LB;
    dist_t UB_global = dist_inf;
    std::vector<dist_t> UB;
};

inline dist_t ub_global_trivial(dist_t z1_star, int H) {
    if (H < 1) throw std::invalid_argument("H must be positive");
    return static_cast<dist_t>(H) * z1_star;
}

namespace detail {
inline void check_ub(dist_t ub, const std::vector<dist_t>& lb) {
    if (lb.empty()) throw std::invalid_argument("no periods");
    dist_t s = 0;
    for (dist_t v : lb) s += v;
    if (ub < s) throw std::invalid_argument("inconsistent bounds: UB below the sum of lower bounds");
}
}  // namespace detail

inline std::vector<dist_t> ub_periods_residual(dist_t ub, const std::vector<dist_t>& lb) {
    detail::check_ub(ub, lb);
    dist_t s = std::accumulate(lb.begin(), lb.end(), dist_t{0});
    std::vector<dist_t> out(lb.size());
    for (std::size_t h = 0; h < lb.size(); ++h) out[h] = ub - (s - lb[h]);
    return out;
}

// floor((UB - sum of later LBs) / h), h one-based
inline std::vector<dist_t> ub_periods_averaged(dist_t ub, const std::vector<dist_t>& lb) {
    detail::check_ub(ub, lb);
    std::vector<dist_t> out(lb.size());
    dist_t tail = 0;
    for (std::size_t h = lb.size(); h-- > 0;) {
        out[h] = (ub - tail) / static_cast<dist_t>(h + 1);
        tail += lb[h];
    }
    return out;
}

inline std::vector<dist_t> ub_periods_combined(dist_t ub, const std::vector<dist_t>& lb) {
    auto a = ub_periods_residual(ub, lb);
    auto b = ub_periods_averaged(ub, lb);
    for (std::size_t h = 0; h < a.size(); ++h) a[h] = std::min(a[h], b[h]);
    return a;
}

inline BoundSet make_bounds(const std::vector<dist_t>& d_star, dist_t ub_global) {
    BoundSet b;
    b.d_star = d_star;
    b.LB = d_star;
    b.UB_global = ub_global;
    b.UB = ub_periods_combined(ub_global, d_star);
    return b;
}

// Smallest value >= lb of the form k / d_star[h].
inline double tighten_relative_lb(double lb, const std::vector<dist_t>& d_star) {
    if (lb < 0) throw std::invalid_argument("negative lower bound");
    double best = std::numeric_limits<double>::infinity();
    for (dist_t d : d_star) {
        if (d <= 0) throw std::invalid_argument("d_star must be positive");
        double k = std::ceil(lb * static_cast<double>(d) - tighten_eps);
        best = std::min(best, k / static_cast<double>(d));
    }
    return best;
}

inline Ratio tighten_relative_lb(const Ratio& lb, const std::vector<dist_t>& d_star) {
    if (lb.num < 0) throw std::invalid_argument("negative lower bound");
    bool first = true;
    Ratio best;
    for (dist_t d : d_star) {
        if (d <= 0) throw std::invalid_argument("d_star must be positive");
        __int128 t = static_cast<__int128>(lb.num) * d;
        std::int64_t k = static_cast<std::int64_t>((t + lb.den - 1) / lb.den);
        Ratio r(k, d);
        if (first || r < best) best = r, first = false;
    }
    return best;
}

struct Regrets {
    std::vector<dist_t> abs;
    dist_t abs_sum = 0;
    bool rel_defined = true;
    std::vector<double> rel;
    double rel_max = 0;
    Ratio rel_max_exact;
};

inline Regrets compute_regrets(const std::vector<dist_t>& radii, const std::vector<dist_t>& d_star) {
    if (radii.size() != d_star.size()) throw std::invalid_argument("period count mismatch");
    Regrets r;
    bool first = true;
    for (std::size_t h = 0; h < radii.size(); ++h) {
        r.abs.push_back(radii[h] - d_star[h]);
        r.abs_sum += radii[h] - d_star[h];
        if (d_star[h] <= 0) {
            r.rel_defined = false;
            r.rel.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        Ratio q(radii[h] - d_star[h], d_star[h]);
        r.rel.push_back(q.value());
        if (first || q > r.rel_max_exact) r.rel_max_exact = q;
        first = false;
    }
    if (!r.rel_defined) {
        r.rel_max_exact = Ratio();
        r.rel_max = std::numeric_limits<double>::quiet_NaN();
    } else {
        r.rel_max = r.rel_max_exact.value();
    }
    return r;
}

inline Regrets compute_regrets(const Chain& c, const std::vector<dist_t>& d_star) {
    return compute_regrets(c.radii, d_star);
}

// Exact relative objective; throws when some d_star is zero.
inline Ratio relative_objective(const std::vector<dist_t>& radii, const std::vector<dist_t>& d_star) {
    Regrets r = compute_regrets(radii, d_star);
    if (!r.rel_defined) throw std::domain_error("relative regret undefined: some p-center optimum is zero");
    return r.rel_max_exact;
}

}  // namespace npc
