#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bounds.hpp"
#include "cover.hpp"
#include "heuristics.hpp"
#include "instance.hpp"
#include "pcenter.hpp"

namespace npc {

enum class Setting { B, P, PH };
enum class Engine { radius, chain };
enum class Status { optimal, time_limit };

inline const char* to_string(Setting s) { return s == Setting::B ? "B" : s == Setting::P ? "P" : "PH"; }
inline const char* to_string(Engine e) { return e == Engine::radius ? "radius" : "chain"; }
inline const char* to_string(Status s) { return s == Status::optimal ? "optimal" : "time_limit"; }
inline const char* to_string(Objective o) { return o == Objective::absolute ? "absolute" : "relative"; }

inline constexpr const char* time_limit_env = "NPC_TIME_LIMIT";

inline double default_time_limit() {
    if (const char* v = std::getenv(time_limit_env)) {
        char* end = nullptr;
        double t = std::strtod(v, &end);
        if (end != v && t > 0) return t;
    }
    return 3600.0;
}

struct SolveOptions {
    Setting setting = Setting::PH;
    Engine engine = Engine::radius;
    double time_limit_s = default_time_limit();
    // chain engine only
    bool constrained_bound = true;
    int constrained_depth = 1;
    bool exhaustive = false;
};

struct TraceEvent {
    double t = 0;
    double incumbent = 0;
    double dual = 0;
    std::string what;
};

struct SolveReport {
    Objective kind = Objective::absolute;
    Status status = Status::optimal;
    double objective = 0;
    std::optional<Ratio> objective_exact;  // relative objective as a fraction
    double dual_bound = 0;
    double gap_percent = 0;
    std::uint64_t nodes = 0;
    double time_s = 0;
    Chain chain;
    std::vector<dist_t> d_star;
    std::vector<std::vector<int>> pc_witnesses;
    Regrets regrets;
    double rc = 0;
    double ri = 0;
    std::string first_source;
    std::vector<TraceEvent> trace;
};

struct SearchNode {
    int h_current = 0;                // zero-based period under construction
    std::vector<int> partial;         // J^{h_current} built so far, includes J^{h_current-1}
    int last_added = -1;              // highest facility added in this period
    std::vector<dist_t> fixed_radii;  // radii of completed periods
};

inline double gap_percent(double objective, double dual) {
    if (objective <= 0) return 0.0;
    return std::max(0.0, 100.0 * (objective - dual) / objective);
}

inline std::pair<double, double> compute_rc_ri(const Chain& chain, const std::vector<dist_t>& d_star,
                                               const std::vector<std::vector<int>>& pc_witnesses) {
    Regrets g = compute_regrets(chain.radii, d_star);
    dist_t denom = std::accumulate(d_star.begin(), d_star.end(), dist_t{0});
    double rc = denom > 0 ? static_cast<double>(g.abs_sum) / static_cast<double>(denom)
                          : std::numeric_limits<double>::quiet_NaN();
    std::set<int> uni;
    for (const auto& w : pc_witnesses) uni.insert(w.begin(), w.end());
    double pH = chain.sets.empty() ? 0.0 : static_cast<double>(chain.sets.back().size());
    double ri = pH > 0 ? (static_cast<double>(uni.size()) - pH) / pH : std::numeric_limits<double>::quiet_NaN();
    return {rc, ri};
}

namespace detail {

// Nested sets from opening periods, padded top-down to the exact sizes.
inline Chain chain_from_open_periods(const Instance& inst, const Schedule& s, const std::vector<int>& open_period) {
    int H = s.H();
    std::vector<std::vector<int>> sets(H);
    sets[H - 1] = pad_to(open_set(open_period, H), s.p[H - 1], inst.n);
    for (int h = H - 2; h >= 0; --h) {
        std::vector<int> core = open_set(open_period, h + 1);
        std::vector<char> in(inst.n, 0);
        for (int j : core) in[j] = 1;
        for (int j : sets[h + 1])
            if (static_cast<int>(core.size()) < s.p[h] && !in[j]) core.push_back(j), in[j] = 1;
        std::sort(core.begin(), core.end());
        sets[h] = std::move(core);
    }
    return make_chain(inst, std::move(sets));
}

inline Chain prefix_chain(const Instance& inst, const Schedule& s) {
    std::vector<std::vector<int>> sets;
    for (int p : s.p) {
        std::vector<int> v(p);
        std::iota(v.begin(), v.end(), 0);
        sets.push_back(v);
    }
    return make_chain(inst, std::move(sets));
}

inline std::vector<char> allowed_after(const Instance& inst, const std::vector<int>& partial, int last_added) {
    std::vector<char> a(inst.n, 0);
    for (int j = last_added + 1; j < inst.n; ++j) a[j] = 1;
    for (int j : partial) a[j] = 1;
    return a;
}

// Smallest distinct distance at which the partial set extends to a p-set
// covering everything, using only allowed facilities. dist_inf if none.
inline dist_t constrained_radius(const Instance& inst, const std::vector<int>& partial, const std::vector<char>& allowed,
                                 int p, dist_t lb, SearchBudget& budget) {
    int avail = 0;
    for (int j = 0; j < inst.n; ++j) avail += allowed[j] ? 1 : 0;
    if (avail < p) return dist_inf;
    std::vector<int> all;
    for (int j = 0; j < inst.n; ++j)
        if (allowed[j]) all.push_back(j);
    lb = std::max(lb, eval_radius(inst, all));
    const auto& D = inst.distinct;
    int lo = static_cast<int>(std::lower_bound(D.begin(), D.end(), lb) - D.begin());
    int hi = static_cast<int>(D.size()) - 1;
    if (lo > hi) return dist_inf;
    NestedCover engine(inst);
    CoverQuery q;
    q.limit = {p};
    q.allowed = allowed;
    q.forced.assign(inst.n, 0);
    for (int j : partial) q.forced[j] = 1;
    auto feasible = [&](int k) {
        q.radius = {D[k]};
        return engine.solve(q, budget).verdict;
    };
    Verdict top = feasible(hi);
    if (top != Verdict::feasible) return top == Verdict::aborted ? lb : dist_inf;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        Verdict v = feasible(mid);
        if (v == Verdict::aborted) return D[lo];
        if (v == Verdict::feasible)
            hi = mid;
        else
            lo = mid + 1;
    }
    return D[lo];
}

inline dist_t node_bound_core(const Instance& inst, const Schedule& s, const SearchNode& node,
                              const std::vector<dist_t>& LB, const std::vector<char>& allowed, const SolveOptions& opts,
                              SearchBudget& budget, dist_t* current_out = nullptr) {
    int h = node.h_current;
    dist_t cur = LB[h];
    int p = s.p[h];
    int size = static_cast<int>(node.partial.size());
    if (size == p) {
        cur = std::max(cur, eval_radius(inst, node.partial));
    } else if (opts.constrained_bound && size >= p - opts.constrained_depth) {
        cur = std::max(cur, constrained_radius(inst, node.partial, allowed, p, LB[h], budget));
    }
    if (current_out) *current_out = cur;
    if (cur >= dist_inf) return dist_inf;
    dist_t b = cur;
    for (dist_t r : node.fixed_radii) b += r;
    for (int t = h + 1; t < s.H(); ++t) b += LB[t];
    return b;
}

}  // namespace detail

// Lower bound on Σ d(J^h) over completions of the node that add facilities
// with index above last_added in the current period.
inline dist_t node_bound_absolute(const Instance& inst, const Schedule& s, const SearchNode& node, const BoundSet& bounds,
                                  const SolveOptions& opts = {}) {
    SearchBudget budget;
    std::vector<char> allowed = detail::allowed_after(inst, node.partial, node.last_added);
    std::vector<dist_t> LB = bounds.LB.empty() ? std::vector<dist_t>(s.H(), 0) : bounds.LB;
    return detail::node_bound_core(inst, s, node, LB, allowed, opts, budget);
}

struct Preprocessing {
    std::vector<PCenterResult> pc;
    std::vector<dist_t> d_star;
    std::vector<std::vector<int>> witnesses;
    BoundSet bounds;
};

inline Preprocessing preprocess(const Instance& inst, const Schedule& s, SearchBudget* budget = nullptr) {
    Preprocessing pre;
    pre.pc = solve_pcenter_sequence(inst, s, budget);
    for (const auto& r : pre.pc) {
        pre.d_star.push_back(r.lower);
        pre.witnesses.push_back(r.witness);
    }
    dist_t z1 = eval_radius(inst, pre.pc.front().witness);
    pre.bounds = make_bounds(pre.d_star, ub_global_trivial(z1, s.H()));
    return pre;
}

namespace detail {

class Recorder {
  public:
    explicit Recorder(SolveReport& rep) : rep_(rep), t0_(std::chrono::steady_clock::now()) {}
    double elapsed() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }
    void event(double incumbent, double dual, std::string what) {
        if (!rep_.trace.empty()) dual = std::max(dual, rep_.trace.back().dual);
        rep_.trace.push_back({elapsed(), incumbent, dual, std::move(what)});
    }

  private:
    SolveReport& rep_;
    std::chrono::steady_clock::time_point t0_;
};

struct Incumbent {
    bool has = false;
    Chain chain;
    dist_t abs = dist_inf;
    Ratio rel;
    std::string source;
};

// Radius-vector search: a chain with d(J^h) <= r_h for all h exists iff
// the nested cover decision accepts r.
class RadiusSearch {
  public:
    RadiusSearch(const Instance& inst, const Schedule& s, SearchBudget& budget)
        : inst_(inst), s_(s), budget_(budget), engine_(inst) {}

    CoverAnswer decide(const std::vector<int>& periods, const std::vector<dist_t>& radii) {
        CoverQuery q;
        q.radius = radii;
        for (int h : periods) q.limit.push_back(s_.p[h]);
        return engine_.solve(q, budget_);
    }

    CoverAnswer decide_all(const std::vector<dist_t>& radii) {
        std::vector<int> all(s_.H());
        std::iota(all.begin(), all.end(), 0);
        return decide(all, radii);
    }

    // Minimum absolute objective over chains strictly below `best`, windows [LB,UB].
    void absolute(const std::vector<dist_t>& LB, const std::vector<dist_t>& UB, Incumbent& inc, Recorder& rec,
                  bool& complete, double& dual) {
        LB_ = LB;
        UB_ = UB;
        inc_ = &inc;
        rec_ = &rec;
        int H = s_.H();
        prefix_.assign(H, 0);
        const auto& D = inst_.distinct;
        std::vector<dist_t> top;
        for (dist_t c : D)
            if (c >= LB[0] && c <= UB[0]) top.push_back(c);
        dist_t rest = 0;
        for (int h = 1; h < H; ++h) rest += LB[h];
        complete = false;
        if (H == 1) {
            leaf(0, 0, dist_inf, LB);
            complete = !budget_.expired;
            dual = complete ? static_cast<double>(inc.abs) : static_cast<double>(leaf_lower_);
            return;
        }
        for (std::size_t k = 0; k < top.size(); ++k) {
            dual = static_cast<double>(std::min(inc.abs, top[k] + rest));
            if (top[k] + rest >= inc.abs) break;
            rec.event(static_cast<double>(inc.abs), dual, "dual");
            expand(0, 0, dist_inf, LB, top[k]);
            if (budget_.expired) return;
        }
        complete = true;
        dual = static_cast<double>(inc.abs);
    }

    // Minimum relative objective by bisection over attainable regret values.
    void relative(const std::vector<dist_t>& d_star, Incumbent& inc, Recorder& rec, bool& complete, Ratio& dual) {
        const auto& D = inst_.distinct;
        std::vector<Ratio> cand;
        for (dist_t d : d_star)
            for (dist_t v : D)
                if (v >= d) cand.emplace_back(v - d, d);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        int lo = 0;
        int hi;
        if (inc.has) {
            hi = static_cast<int>(std::lower_bound(cand.begin(), cand.end(), inc.rel) - cand.begin());
        } else {
            hi = static_cast<int>(cand.size()) - 1;
        }
        auto radii_for = [&](const Ratio& w) {
            std::vector<dist_t> r;
            for (dist_t d : d_star) {
                __int128 cap = static_cast<__int128>(d) * (w.num + w.den) / w.den;
                auto it = std::upper_bound(D.begin(), D.end(), static_cast<dist_t>(cap));
                r.push_back(*(it - 1));
            }
            return r;
        };
        auto take = [&](const CoverAnswer& a, const char* what) {
            Chain c = chain_from_open_periods(inst_, s_, a.open_period);
            Ratio v = relative_objective(c.radii, d_star);
            if (!inc.has || v < inc.rel) {
                inc.has = true;
                inc.rel = v;
                inc.abs = c.sum();
                inc.chain = std::move(c);
                inc.source = what;
                rec.event(v.value(), cand[lo].value(), what);
            }
        };
        complete = false;
        dual = cand[0];
        if (!inc.has) {
            CoverAnswer a = decide_all(radii_for(cand[hi]));
            if (a.verdict != Verdict::feasible) return;
            take(a, "search");
        }
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            CoverAnswer a = decide_all(radii_for(cand[mid]));
            if (a.verdict == Verdict::aborted) {
                dual = tighten_relative_lb(cand[lo], d_star);
                return;
            }
            if (a.verdict == Verdict::feasible) {
                take(a, "search");
                hi = static_cast<int>(std::lower_bound(cand.begin(), cand.end(), inc.rel) - cand.begin());
            } else {
                lo = mid + 1;
                rec.event(inc.rel.value(), tighten_relative_lb(cand[lo], d_star).value(), "dual");
            }
        }
        complete = true;
        dual = inc.rel;
    }

  private:
    const Instance& inst_;
    const Schedule& s_;
    SearchBudget& budget_;
    NestedCover engine_;
    std::vector<dist_t> LB_, UB_;
    Incumbent* inc_ = nullptr;
    Recorder* rec_ = nullptr;
    std::map<std::tuple<int, int, dist_t>, dist_t> pair_memo_;
    std::vector<dist_t> prefix_;  // radii fixed so far on the current path
    dist_t leaf_lower_ = 0;

    // min r_{h2} such that periods (h, h2) admit radii (c, r_{h2}); dist_inf if none
    dist_t pair_min(int h, int h2, dist_t c) {
        auto key = std::make_tuple(h, h2, c);
        if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
        const auto& D = inst_.distinct;
        int lo = static_cast<int>(std::lower_bound(D.begin(), D.end(), LB_[h2]) - D.begin());
        int hi = static_cast<int>(std::upper_bound(D.begin(), D.end(), std::min(c, UB_[h2])) - D.begin()) - 1;
        dist_t out = dist_inf;
        if (lo <= hi) {
            CoverAnswer a = decide({h, h2}, {c, D[hi]});
            if (a.verdict == Verdict::aborted) return LB_[h2];
            if (a.verdict == Verdict::feasible) {
                while (lo < hi) {
                    int mid = lo + (hi - lo) / 2;
                    CoverAnswer b = decide({h, h2}, {c, D[mid]});
                    if (b.verdict == Verdict::aborted) return D[lo];
                    if (b.verdict == Verdict::feasible)
                        hi = mid;
                    else
                        lo = mid + 1;
                }
                out = D[lo];
            }
        }
        pair_memo_[key] = out;
        return out;
    }

    void offer(const CoverAnswer& a) {
        Chain c = chain_from_open_periods(inst_, s_, a.open_period);
        if (c.sum() < inc_->abs) {
            inc_->has = true;
            inc_->abs = c.sum();
            inc_->chain = std::move(c);
            inc_->source = "search";
            rec_->event(static_cast<double>(inc_->abs), 0, "incumbent");
        }
    }

    // fix r_h = c, then continue with period h + 1
    void expand(int h, dist_t partial, dist_t prev, const std::vector<dist_t>& lbs, dist_t c) {
        int H = s_.H();
        if (c > prev) return;
        prefix_[h] = c;
        std::vector<dist_t> nl = lbs;
        dist_t sum = partial + c;
        for (int h2 = h + 1; h2 < H; ++h2) {
            nl[h2] = std::max(nl[h2], pair_min(h, h2, c));
            if (budget_.expired) return;
            if (nl[h2] > std::min(c, UB_[h2])) return;
            sum += nl[h2];
        }
        if (sum >= inc_->abs) return;
        if (h + 1 == H - 1) {
            leaf(h + 1, partial + c, c, nl);
            return;
        }
        const auto& D = inst_.distinct;
        auto it = std::lower_bound(D.begin(), D.end(), nl[h + 1]);
        for (; it != D.end() && *it <= std::min(c, UB_[h + 1]); ++it) {
            dist_t rest = 0;
            for (int t = h + 2; t < H; ++t) rest += nl[t];
            if (partial + c + *it + rest >= inc_->abs) break;
            expand(h + 1, partial + c, c, nl, *it);
            if (budget_.expired) return;
        }
    }

    // last period: bisection for the smallest feasible radius
    void leaf(int h, dist_t partial, dist_t prev, const std::vector<dist_t>& lbs) {
        const auto& D = inst_.distinct;
        dist_t cap = std::min(prev, UB_[h]);
        if (inc_->abs < dist_inf) cap = std::min(cap, inc_->abs - partial - 1);
        int lo = static_cast<int>(std::lower_bound(D.begin(), D.end(), lbs[h]) - D.begin());
        int hi = static_cast<int>(std::upper_bound(D.begin(), D.end(), cap) - D.begin()) - 1;
        leaf_lower_ = lo < static_cast<int>(D.size()) ? D[lo] : dist_inf;
        if (lo > hi) return;
        std::vector<dist_t> r = prefix_;
        auto test = [&](int k) {
            r[h] = D[k];
            return decide_all(r);
        };
        CoverAnswer a = test(lo);
        if (a.verdict == Verdict::aborted) return;
        if (a.verdict == Verdict::feasible) {
            offer(a);
            return;
        }
        CoverAnswer top = test(hi);
        if (top.verdict != Verdict::feasible) return;
        CoverAnswer found = top;
        ++lo;
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            CoverAnswer b = test(mid);
            if (b.verdict == Verdict::aborted) {
                leaf_lower_ = D[lo];
                offer(found);
                return;
            }
            if (b.verdict == Verdict::feasible) {
                hi = mid;
                found = std::move(b);
            } else {
                lo = mid + 1;
            }
        }
        leaf_lower_ = D[lo];
        offer(found);
    }

};

}  // namespace detail

namespace detail {

// Canonical chain enumeration: each period extends the previous set by
// facilities of increasing rank; a node is pruned when its bound cannot
// beat the incumbent.
class ChainSearch {
  public:
    ChainSearch(const Instance& inst, const Schedule& s, Objective obj, const std::vector<dist_t>& LB,
                const std::vector<dist_t>& UB, const std::vector<dist_t>& d_star, const SolveOptions& opts,
                SearchBudget& budget, Incumbent& inc, Recorder& rec)
        : inst_(inst), s_(s), obj_(obj), LB_(LB), UB_(UB), d_star_(d_star), opts_(opts), budget_(budget), inc_(inc),
          rec_(rec), rank_(inst.n) {
        // children in order of how many customers they serve within the last period's bound
        dist_t r = LB.back() > 0 ? LB.back() : inst.distinct[inst.distinct.size() / 2];
        std::vector<int> cover(inst.n, 0);
        for (int j = 0; j < inst.n; ++j)
            for (int i = 0; i < inst.m; ++i) cover[j] += inst(i, j) <= r;
        std::iota(rank_.begin(), rank_.end(), 0);
        std::stable_sort(rank_.begin(), rank_.end(), [&](int a, int b) { return cover[a] > cover[b]; });
    }

    std::uint64_t nodes = 0;
    bool complete = false;

    void run() {
        std::vector<int> S;
        std::vector<dist_t> radii;
        std::vector<char> in(inst_.n, 0);
        complete = dfs(0, S, in, -1, radii);
    }

  private:
    const Instance& inst_;
    const Schedule& s_;
    Objective obj_;
    const std::vector<dist_t>& LB_;
    const std::vector<dist_t>& UB_;
    const std::vector<dist_t>& d_star_;
    const SolveOptions& opts_;
    SearchBudget& budget_;
    Incumbent& inc_;
    Recorder& rec_;
    std::vector<int> rank_;

    // true when the bound shows the node cannot improve on the incumbent
    bool prunable(int h, const std::vector<int>& S, const std::vector<char>& in, int last,
                  const std::vector<dist_t>& radii) {
        if (opts_.exhaustive || !inc_.has) return false;
        SearchNode node{h, S, last, radii};
        std::vector<char> allowed(inst_.n, 0);
        for (int q = last + 1; q < inst_.n; ++q) allowed[rank_[q]] = 1;
        for (int j = 0; j < inst_.n; ++j)
            if (in[j]) allowed[j] = 1;
        dist_t cur = 0;
        dist_t b = node_bound_core(inst_, s_, node, LB_, allowed, opts_, budget_, &cur);
        if (cur >= dist_inf) return true;
        if (obj_ == Objective::absolute) return b >= inc_.abs;
        Ratio w(std::max<dist_t>(cur - d_star_[h], 0), d_star_[h]);
        for (std::size_t t = 0; t < radii.size(); ++t) w = std::max(w, Ratio(radii[t] - d_star_[t], d_star_[t]));
        return tighten_relative_lb(w, d_star_) >= inc_.rel;
    }

    void leaf(const std::vector<std::vector<int>>& sets) {
        Chain c = make_chain(inst_, sets);
        bool better;
        Ratio v;
        if (obj_ == Objective::absolute) {
            better = c.sum() < inc_.abs;
        } else {
            v = relative_objective(c.radii, d_star_);
            better = !inc_.has || v < inc_.rel;
        }
        if (!better) return;
        inc_.has = true;
        inc_.abs = c.sum();
        if (obj_ == Objective::relative) inc_.rel = v;
        inc_.chain = std::move(c);
        inc_.source = "search";
        rec_.event(obj_ == Objective::absolute ? static_cast<double>(inc_.abs) : inc_.rel.value(), 0, "incumbent");
    }

    std::vector<std::vector<int>> stack_;

    bool dfs(int h, std::vector<int>& S, std::vector<char>& in, int last, std::vector<dist_t>& radii) {
        if (!budget_.tick()) return false;
        int size = static_cast<int>(S.size());
        if (size == s_.p[h]) {
            dist_t r = eval_radius(inst_, S);
            if (!opts_.exhaustive && r > UB_[h]) return ++nodes, true;
            stack_.push_back(S);
            std::sort(stack_.back().begin(), stack_.back().end());
            radii.push_back(r);
            bool ok = true;
            if (h + 1 == s_.H()) {
                ++nodes;
                leaf(stack_);
            } else if (prunable(h + 1, S, in, -1, radii)) {
                ++nodes;
            } else {
                ok = dfs(h + 1, S, in, -1, radii);
            }
            radii.pop_back();
            stack_.pop_back();
            return ok;
        }
        int need = s_.p[h] - size;
        for (int q = last + 1; q < inst_.n; ++q) {
            int j = rank_[q];
            if (in[j]) continue;
            int later = 0;
            for (int t = q + 1; t < inst_.n && later < need - 1; ++t) later += in[rank_[t]] ? 0 : 1;
            if (later < need - 1) break;
            S.push_back(j);
            in[j] = 1;
            bool ok = true;
            if (static_cast<int>(S.size()) < s_.p[h] && prunable(h, S, in, q, radii)) {
                ++nodes;
            } else {
                ok = dfs(h, S, in, q, radii);
            }
            in[j] = 0;
            S.pop_back();
            if (!ok) return false;
        }
        return true;
    }
};

inline void adopt(Incumbent& inc, const Chain& c, Objective obj, const std::vector<dist_t>& d_star,
                  const std::string& source, Recorder& rec) {
    bool better;
    Ratio v;
    if (obj == Objective::absolute) {
        better = c.sum() < inc.abs;
    } else {
        v = relative_objective(c.radii, d_star);
        better = !inc.has || v < inc.rel;
    }
    if (!better) return;
    inc.has = true;
    inc.abs = c.sum();
    if (obj == Objective::relative) inc.rel = v;
    inc.chain = c;
    inc.source = source;
    rec.event(obj == Objective::absolute ? static_cast<double>(inc.abs) : v.value(), 0, source);
}

inline std::vector<std::vector<double>> witness_scores(const Instance& inst, const std::vector<PCenterResult>& pc) {
    std::vector<std::vector<double>> sc(inst.n, std::vector<double>(pc.size(), 0.0));
    for (std::size_t h = 0; h < pc.size(); ++h)
        for (int j : pc[h].witness) sc[j][h] = 1.0;
    return sc;
}

inline void finish(SolveReport& rep, const Instance& inst, const Schedule& s, Preprocessing& pre, bool have_pre,
                   Incumbent& inc, Recorder& rec) {
    if (!inc.has) {
        inc.chain = prefix_chain(inst, s);
        inc.abs = inc.chain.sum();
        inc.has = true;
        inc.source = "fallback";
    }
    if (!have_pre) pre = preprocess(inst, s);
    rep.chain = inc.chain;
    rep.d_star = pre.d_star;
    rep.pc_witnesses = pre.witnesses;
    rep.regrets = compute_regrets(rep.chain.radii, rep.d_star);
    auto [rc, ri] = compute_rc_ri(rep.chain, rep.d_star, rep.pc_witnesses);
    rep.rc = rc;
    rep.ri = ri;
    rep.time_s = rec.elapsed();
    if (rep.first_source.empty()) rep.first_source = inc.source;
}

}  // namespace detail

inline SolveReport solve_absolute(const Instance& inst, const Schedule& s, const SolveOptions& opts = {}) {
    validate_schedule(s, inst.n);
    SolveReport rep;
    rep.kind = Objective::absolute;
    detail::Recorder rec(rep);
    SearchBudget budget = SearchBudget::seconds(opts.time_limit_s);
    int H = s.H();
    dist_t maxD = inst.max_distance();

    Preprocessing pre;
    bool have_pre = false;
    std::vector<dist_t> LB(H, 0), UB(H, maxD);
    detail::Incumbent inc;
    if (opts.setting != Setting::B) {
        pre = preprocess(inst, s, &budget);
        have_pre = true;
        LB = pre.d_star;
        dist_t ubg = pre.bounds.UB_global;
        if (opts.setting == Setting::PH) {
            HeuristicResult hs = best_start(inst, s, pre.pc, Objective::absolute);
            detail::adopt(inc, hs.chain, Objective::absolute, pre.d_star, hs.source, rec);
            rep.first_source = inc.source;
            Chain pr = primal_from_scores(inst, s, detail::witness_scores(inst, pre.pc));
            detail::adopt(inc, pr, Objective::absolute, pre.d_star, "primal", rec);
            ubg = std::min(ubg, inc.abs);
        }
        UB = ub_periods_combined(ubg, LB);
        if (!inc.has) inc.abs = ubg + 1;  // search for anything within the global bound
    }
    dist_t lb_sum = std::accumulate(LB.begin(), LB.end(), dist_t{0});
    rec.event(inc.has ? static_cast<double>(inc.abs) : std::numeric_limits<double>::infinity(),
              static_cast<double>(lb_sum), "root");

    bool complete = false;
    double dual = static_cast<double>(lb_sum);
    if (opts.engine == Engine::radius) {
        detail::RadiusSearch rs(inst, s, budget);
        rs.absolute(LB, UB, inc, rec, complete, dual);
        rep.nodes = budget.nodes;
    } else {
        detail::ChainSearch cs(inst, s, Objective::absolute, LB, UB, LB, opts, budget, inc, rec);
        cs.run();
        complete = cs.complete;
        rep.nodes = cs.nodes;
        if (complete) dual = static_cast<double>(inc.abs);
    }
    if (budget.expired) complete = false;
    detail::finish(rep, inst, s, pre, have_pre, inc, rec);
    rep.objective = static_cast<double>(rep.chain.sum());
    rep.status = complete ? Status::optimal : Status::time_limit;
    rep.dual_bound = complete ? rep.objective : std::min(dual, rep.objective);
    rep.gap_percent = complete ? 0.0 : gap_percent(rep.objective, rep.dual_bound);
    rec.event(rep.objective, rep.dual_bound, "end");
    return rep;
}

inline SolveReport solve_relative(const Instance& inst, const Schedule& s, const SolveOptions& opts = {}) {
    validate_schedule(s, inst.n);
    SolveReport rep;
    rep.kind = Objective::relative;
    detail::Recorder rec(rep);
    SearchBudget budget = SearchBudget::seconds(opts.time_limit_s);
    int H = s.H();

    // d* is needed to state the objective at all
    Preprocessing pre = preprocess(inst, s, &budget);
    for (dist_t d : pre.d_star)
        if (d <= 0) throw std::domain_error("relative regret undefined: some p-center optimum is zero");
    const auto& d_star = pre.d_star;
    std::vector<dist_t> LB = d_star;
    std::vector<dist_t> UB(H, inst.max_distance());
    if (opts.setting == Setting::B) LB.assign(H, 0);

    detail::Incumbent inc;
    if (opts.setting == Setting::PH) {
        HeuristicResult hs = best_start(inst, s, pre.pc, Objective::relative);
        detail::adopt(inc, hs.chain, Objective::relative, d_star, hs.source, rec);
        rep.first_source = inc.source;
        Chain pr = primal_from_scores(inst, s, detail::witness_scores(inst, pre.pc));
        detail::adopt(inc, pr, Objective::relative, d_star, "primal", rec);
    }
    rec.event(inc.has ? inc.rel.value() : std::numeric_limits<double>::infinity(), 0.0, "root");

    bool complete = false;
    Ratio dual;
    if (opts.engine == Engine::radius) {
        detail::RadiusSearch rs(inst, s, budget);
        rs.relative(d_star, inc, rec, complete, dual);
        rep.nodes = budget.nodes;
    } else {
        detail::ChainSearch cs(inst, s, Objective::relative, LB, UB, d_star, opts, budget, inc, rec);
        cs.run();
        complete = cs.complete;
        rep.nodes = cs.nodes;
        dual = complete ? inc.rel : Ratio(0);
    }
    if (budget.expired) complete = false;
    detail::finish(rep, inst, s, pre, true, inc, rec);
    Ratio obj = relative_objective(rep.chain.radii, d_star);
    rep.objective_exact = obj;
    rep.objective = obj.value();
    rep.status = complete ? Status::optimal : Status::time_limit;
    rep.dual_bound = complete ? rep.objective : std::min(dual, obj).value();
    rep.gap_percent = complete ? 0.0 : gap_percent(rep.objective, rep.dual_bound);
    rec.event(rep.objective, rep.dual_bound, "end");
    return rep;
}

inline SolveReport solve(const Instance& inst, const Schedule& s, Objective obj, const SolveOptions& opts = {}) {
    return obj == Objective::absolute ? solve_absolute(inst, s, opts) : solve_relative(inst, s, opts);
}

}  // namespace npc
