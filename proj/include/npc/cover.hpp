#pragma once

#include <chrono>
#include <climits>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "instance.hpp"

namespace npc {

struct SearchBudget {
    using clock = std::chrono::steady_clock;
    clock::time_point deadline = clock::time_point::max();
    std::uint64_t nodes = 0;
    bool expired = false;

    static SearchBudget seconds(double s) {
        SearchBudget b;
        if (s > 0 && s < 1e12)
            b.deadline = clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(s));
        return b;
    }

    bool tick() {
        ++nodes;
        if ((nodes & 255u) == 0) poll();
        return !expired;
    }

    bool poll() {
        if (!expired && deadline != clock::time_point::max() && clock::now() >= deadline) expired = true;
        return !expired;
    }
};

enum class Verdict { feasible, infeasible, aborted };

// Decide whether nested sets T_1 ⊆ … ⊆ T_H exist with |T_h| ≤ limit[h] and
// every customer of the universe within radius[h] of T_h.
struct CoverQuery {
    std::vector<dist_t> radius;
    std::vector<int> limit;
    std::vector<int> forced;        // per facility: 0, or 1-based period by which it is open
    std::vector<char> allowed;      // per facility; empty means all
    std::vector<char> universe;     // per customer; empty means all
};

struct CoverAnswer {
    Verdict verdict = Verdict::infeasible;
    std::vector<int> open_period;  // per facility: 0 closed, else 1-based opening period
};

// Procedure: DFS over uncovered (period, customer) pairs. A branch opens one
// covering facility by that period; later siblings exclude it up to that
// period. Pruned by a disjoint-packing count bound per period pair.
class NestedCover {
  public:
    explicit NestedCover(const Instance& inst) : inst_(inst), W_(bits::words_for(inst.n)) {}

    CoverAnswer solve(const CoverQuery& q, SearchBudget& budget) {
        H_ = static_cast<int>(q.radius.size());
        if (H_ == 0 || static_cast<int>(q.limit.size()) != H_) throw std::invalid_argument("cover query shape");
        budget_ = &budget;
        limit_ = q.limit;
        CoverAnswer ans;

        cust_.clear();
        for (int i = 0; i < inst_.m; ++i)
            if (q.universe.empty() || q.universe[i]) cust_.push_back(i);
        M_ = static_cast<int>(cust_.size());

        auto allowed = [&](int j) { return q.allowed.empty() || q.allowed[j]; };
        nb_.assign(static_cast<std::size_t>(H_) * M_ * W_, 0);
        std::vector<int> size(static_cast<std::size_t>(H_) * M_, 0);
        for (int h = 0; h < H_; ++h)
            for (int c = 0; c < M_; ++c) {
                int i = cust_[c];
                const int* ord = inst_.sorted_facilities(i);
                bits::word* b = nb(h, c);
                for (int k = 0; k < inst_.n && inst_(i, ord[k]) <= q.radius[h]; ++k)
                    if (allowed(ord[k]) || (!q.forced.empty() && q.forced[ord[k]] > 0)) {
                        bits::set(b, ord[k]);
                        ++size[h * M_ + c];
                    }
                if (size[h * M_ + c] == 0) return ans;
            }
        order_.assign(H_, {});
        for (int h = 0; h < H_; ++h) {
            order_[h].resize(M_);
            std::iota(order_[h].begin(), order_[h].end(), 0);
            std::stable_sort(order_[h].begin(), order_[h].end(),
                             [&](int a, int b) { return size[h * M_ + a] < size[h * M_ + b]; });
        }

        branch_counts_.assign(static_cast<std::size_t>(inst_.n) * H_, 0);
        frame_words_ = 2 * H_ * W_;
        frames_.assign(frame_words_, 0);
        counts_.assign(H_, 0);
        for (int j = 0; j < static_cast<int>(q.forced.size()); ++j)
            if (q.forced[j] > 0) open_by(0, j, q.forced[j] - 1);
        for (int h = 0; h < H_; ++h)
            if (counts_[h] > limit_[h]) return ans;

        if (greedy()) {
            ans.verdict = Verdict::feasible;
            ans.open_period = solution_;
            return ans;
        }
        ans.verdict = dfs(0);
        if (ans.verdict == Verdict::feasible) ans.open_period = solution_;
        return ans;
    }

    // how often facility j was branched on for period h in the last solve, index j * H + h
    const std::vector<std::uint64_t>& branch_counts() const { return branch_counts_; }

  private:
    const Instance& inst_;
    int W_;
    int H_ = 0;
    int M_ = 0;
    SearchBudget* budget_ = nullptr;
    std::vector<int> limit_;
    std::vector<int> cust_;
    std::vector<bits::word> nb_;
    std::vector<std::vector<int>> order_;
    int frame_words_ = 0;
    std::vector<bits::word> frames_;
    std::vector<int> counts_;
    std::vector<int> solution_;
    std::vector<bits::word> scratch_;
    std::vector<std::uint64_t> branch_counts_;

    bits::word* nb(int h, int c) { return nb_.data() + (static_cast<std::size_t>(h) * M_ + c) * W_; }
    bits::word* opened(int depth, int h) { return frames_.data() + static_cast<std::size_t>(depth) * frame_words_ + h * W_; }
    bits::word* excluded(int depth, int h) {
        return frames_.data() + static_cast<std::size_t>(depth) * frame_words_ + (H_ + h) * W_;
    }
    int* counts(int depth) { return counts_.data() + static_cast<std::size_t>(depth) * H_; }

    void open_by(int depth, int j, int h) {
        for (int t = h; t < H_; ++t)
            if (!bits::test(opened(depth, t), j)) {
                bits::set(opened(depth, t), j);
                ++counts(depth)[t];
            }
    }

    void record(int depth) {
        solution_.assign(inst_.n, 0);
        for (int h = H_ - 1; h >= 0; --h)
            bits::for_each(opened(depth, h), W_, [&](int j) { solution_[j] = h + 1; });
    }

    bool greedy() {
        std::vector<bits::word> open(opened(0, 0), opened(0, 0) + H_ * W_);
        std::vector<int> cnt(counts(0), counts(0) + H_);
        std::vector<int> score(inst_.n);
        std::vector<int> todo;
        for (int h = 0; h < H_; ++h) {
            todo.clear();
            for (int c = 0; c < M_; ++c)
                if (!bits::intersects(nb(h, c), &open[h * W_], W_)) todo.push_back(c);
            while (!todo.empty()) {
                std::fill(score.begin(), score.end(), 0);
                for (int c : todo) bits::for_each(nb(h, c), W_, [&](int j) { ++score[j]; });
                int best = static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
                for (int t = h; t < H_; ++t)
                    if (!bits::test(&open[t * W_], best)) {
                        bits::set(&open[t * W_], best);
                        ++cnt[t];
                    }
                if (cnt[h] > limit_[h]) return false;
                std::erase_if(todo, [&](int c) { return bits::test(nb(h, c), best); });
            }
        }
        for (int h = 0; h < H_; ++h)
            if (cnt[h] > limit_[h]) return false;
        solution_.assign(inst_.n, 0);
        for (int h = H_ - 1; h >= 0; --h) bits::for_each(&open[h * W_], W_, [&](int j) { solution_[j] = h + 1; });
        return true;
    }

    bool packing_ok(int depth) {
        scratch_.assign(W_, 0);
        const int* cnt = counts(depth);
        for (int h2 = 0; h2 < H_; ++h2) {
            int need = 0;
            for (int h1 = 0; h1 <= h2; ++h1) {
                bits::clear(scratch_.data(), W_);
                int pack = 0;
                const bits::word* op1 = opened(depth, h1);
                const bits::word* ex1 = excluded(depth, h1);
                const bits::word* op2 = opened(depth, h2);
                for (int c : order_[h1]) {
                    const bits::word* N = nb(h1, c);
                    if (bits::intersects(N, op1, W_)) continue;
                    if (h1 != h2 && bits::minus_intersects(N, ex1, op2, W_)) continue;
                    if (bits::minus_intersects(N, ex1, scratch_.data(), W_)) continue;
                    ++pack;
                    for (int k = 0; k < W_; ++k) scratch_[k] |= N[k] & ~ex1[k];
                }
                need = std::max(need, pack);
            }
            if (cnt[h2] + need > limit_[h2]) return false;
        }
        return true;
    }

    Verdict dfs(int depth) {
        if (!budget_->tick()) return Verdict::aborted;
        int bh = -1, bc = -1, bo = INT_MAX;
        for (int h = 0; h < H_; ++h) {
            const bits::word* op = opened(depth, h);
            const bits::word* ex = excluded(depth, h);
            for (int c : order_[h]) {
                const bits::word* N = nb(h, c);
                if (bits::intersects(N, op, W_)) continue;
                int o = bits::count_minus(N, ex, W_);
                if (o == 0) return Verdict::infeasible;
                if (o < bo) {
                    bo = o;
                    bh = h;
                    bc = c;
                }
            }
        }
        if (bh < 0) {
            record(depth);
            return Verdict::feasible;
        }
        if (!packing_ok(depth)) return Verdict::infeasible;

        std::vector<int> options;
        options.reserve(bo);
        bits::for_each_minus(nb(bh, bc), excluded(depth, bh), W_, [&](int j) { options.push_back(j); });

        std::size_t need = static_cast<std::size_t>(depth + 2) * frame_words_;
        if (frames_.size() < need) {
            frames_.resize(need);
            counts_.resize(static_cast<std::size_t>(depth + 2) * H_);
        }
        for (int j : options) {
            std::copy_n(frames_.data() + static_cast<std::size_t>(depth) * frame_words_, frame_words_,
                        frames_.data() + static_cast<std::size_t>(depth + 1) * frame_words_);
            std::copy_n(counts(depth), H_, counts(depth + 1));
            open_by(depth + 1, j, bh);
            ++branch_counts_[static_cast<std::size_t>(j) * H_ + bh];
            bool ok = true;
            for (int t = bh; t < H_; ++t) ok = ok && counts(depth + 1)[t] <= limit_[t];
            if (ok) {
                Verdict v = dfs(depth + 1);
                if (v != Verdict::infeasible) return v;
            }
            for (int t = 0; t <= bh; ++t) bits::set(excluded(depth, t), j);
        }
        return Verdict::infeasible;
    }
};

}  // namespace npc
