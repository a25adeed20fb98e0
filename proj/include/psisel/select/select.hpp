#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>
#include <psisel/psi/psi.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace psisel {

struct GreedyStep {
    node_t node;
    Ratio f_after; ///< F_lambda of the set after adding `node`
};

struct SelectionResult {
    NodeSet chosen;
    PsiCertificate achieved;          ///< recomputed on the returned set
    std::optional<Ratio> target_lambda; ///< lambda whose greedy run produced `chosen`
    std::vector<GreedyStep> trace;
    std::size_t oracle_evaluations = 0; ///< F_lambda evaluations, summed over all probes
};

enum class GreedyMode {
    lazy,  ///< priority queue of stale upper bounds on the marginal gain
    naive, ///< re-evaluate every candidate each round
};

struct GreedyOptions {
    GreedyMode mode = GreedyMode::lazy;
    /// Stop after this many picks even if F_lambda is still negative.
    std::size_t max_size = std::numeric_limits<std::size_t>::max();
};

struct GreedyRun {
    NodeSet chosen;
    Ratio final_value; ///< F_lambda(chosen)
    std::vector<GreedyStep> trace;
    std::size_t evaluations = 0;

    bool feasible() const { return final_value.is_zero(); }
};

namespace detail {

struct GainEntry {
    Ratio gain;
    node_t node;
    std::size_t round; ///< round in which `gain` was computed

    // Max-heap order: larger gain first, then lower node index.
    friend bool operator<(const GainEntry& a, const GainEntry& b) {
        if (a.gain != b.gain)
            return a.gain < b.gain;
        return a.node > b.node;
    }
};

/// Marginal gains of F_lambda kept as upper bounds. Because F_lambda is
/// monotone submodular, a gain computed in an earlier round bounds the current
/// one, so an entry that is fresh when it reaches the top is the argmax
/// (ties to the lowest index).
class LazyGainQueue {
public:
    void push(GainEntry e) { heap_.push(std::move(e)); }
    bool empty() const { return heap_.empty(); }
    const GainEntry& top() const { return heap_.top(); }

    GainEntry pop() {
        GainEntry e = heap_.top();
        heap_.pop();
        return e;
    }

private:
    std::priority_queue<GainEntry> heap_;
};

} // namespace detail

/// Greedy maximization of F_lambda until it reaches zero (or `max_size`
/// picks). Ties go to the lowest node index.
inline GreedyRun greedy_f_lambda(const CutOracle& oracle, const Ratio& lam, const GreedyOptions& opts = {}) {
    const std::size_t n = oracle.universe();
    GreedyRun run;
    run.chosen = NodeSet(n);
    auto f = [&](const NodeSet& s) {
        ++run.evaluations;
        return eval_f_lambda(oracle, s, lam).value;
    };
    Ratio current = f(run.chosen);

    auto gain_of = [&](node_t v, Ratio& f_with) {
        NodeSet with = run.chosen;
        with.insert(v);
        f_with = f(with);
        return f_with - current;
    };

    auto commit = [&](node_t v, const Ratio& f_with) {
        run.chosen.insert(v);
        current = f_with;
        run.trace.push_back({v, f_with});
    };

    if (opts.mode == GreedyMode::naive) {
        while (current < Ratio(0) && run.chosen.count() < opts.max_size) {
            std::optional<node_t> best;
            Ratio best_gain, best_f;
            for (node_t v = 0; v < n; ++v) {
                if (run.chosen.contains(v))
                    continue;
                Ratio f_with;
                Ratio g = gain_of(v, f_with);
                if (!best || g > best_gain) {
                    best = v;
                    best_gain = g;
                    best_f = f_with;
                }
            }
            commit(*best, best_f);
        }
    } else {
        detail::LazyGainQueue queue;
        std::size_t round = 0;
        if (current < Ratio(0) && opts.max_size > 0) {
            for (node_t v = 0; v < n; ++v) {
                Ratio f_with;
                queue.push({gain_of(v, f_with), v, round});
            }
        }
        while (current < Ratio(0) && run.chosen.count() < opts.max_size) {
            while (true) {
                detail::GainEntry top = queue.pop();
                Ratio f_with;
                if (top.round == round) {
                    // fresh: f_with is current + gain
                    commit(top.node, current + top.gain);
                    break;
                }
                top.gain = gain_of(top.node, f_with);
                top.round = round;
                if (queue.empty() || !(top < queue.top())) {
                    commit(top.node, f_with);
                    break;
                }
                queue.push(std::move(top));
            }
            ++round;
        }
    }
    run.final_value = current;
    return run;
}

/// Smallest-set heuristic for Psi(S) >= lam: greedy set cover on F_lambda.
inline SelectionResult select_target(const CutOracle& oracle, const Ratio& lam,
                                     GreedyMode mode = GreedyMode::lazy) {
    if (lam.is_infinite() || lam < Ratio(0))
        throw InvalidInput("select_target: lambda must be finite and non-negative, got " + lam.to_string());
    GreedyRun run = greedy_f_lambda(oracle, lam, {mode});
    SelectionResult result;
    result.achieved = compute_psi(oracle, run.chosen);
    result.chosen = std::move(run.chosen);
    result.target_lambda = lam;
    result.trace = std::move(run.trace);
    result.oracle_evaluations = run.evaluations;
    return result;
}

/// Budgeted selection: bisect lambda over [0, max_v Gamma({v})], running the
/// greedy truncated at k picks per probe, and keep the feasible probe whose
/// set has the largest certified strength. Stops once (hi - lo)/hi < rel_gap,
/// or once hi drops below the smallest positive strength an integer oracle
/// can have (1/n).
inline SelectionResult select_budget(const CutOracle& oracle, std::size_t k,
                                     const Ratio& rel_gap = Ratio(1, 10000),
                                     GreedyMode mode = GreedyMode::lazy) {
    const std::size_t n = oracle.universe();
    if (k == 0)
        throw InvalidInput("select_budget: budget must be at least 1");
    if (!(rel_gap > Ratio(0)) || rel_gap.is_infinite())
        throw InvalidInput("select_budget: rel_gap must be positive and finite");

    SelectionResult result;
    if (k >= n) {
        result.chosen = NodeSet::full(n);
        result.achieved = compute_psi(oracle, result.chosen);
        return result;
    }

    const Ratio floor(1, static_cast<std::int64_t>(n));
    Ratio lo(0);
    Ratio hi(oracle.max_singleton());
    std::optional<SelectionResult> best;
    std::optional<GreedyRun> fallback; // smallest infeasible probe
    Ratio fallback_lambda;
    std::size_t evaluations = 0;

    auto consider = [&](const Ratio& lam, GreedyRun run) {
        SelectionResult candidate;
        candidate.achieved = compute_psi(oracle, run.chosen);
        candidate.chosen = std::move(run.chosen);
        candidate.target_lambda = lam;
        candidate.trace = std::move(run.trace);
        if (!best || candidate.achieved.psi > best->achieved.psi)
            best = std::move(candidate);
    };

    while (hi > Ratio(0) && hi >= floor && !((hi - lo) < rel_gap * hi)) {
        Ratio mid = (lo + hi) / Ratio(2);
        GreedyRun run = greedy_f_lambda(oracle, mid, {mode, k});
        evaluations += run.evaluations;
        if (run.feasible()) {
            lo = mid;
            consider(mid, std::move(run));
        } else {
            hi = mid;
            fallback_lambda = mid;
            fallback = std::move(run);
        }
    }

    if (!best) {
        // No positive lambda was reached within k picks; report the greedy
        // prefix from the smallest probe, or the lambda = 0 run if none.
        if (!fallback) {
            fallback = greedy_f_lambda(oracle, Ratio(0), {mode, k});
            evaluations += fallback->evaluations;
            fallback_lambda = Ratio(0);
        }
        consider(fallback_lambda, std::move(*fallback));
    }
    result = std::move(*best);
    result.oracle_evaluations = evaluations;
    return result;
}

/// Uniform sample of k distinct nodes, reproducible for a fixed seed.
inline NodeSet random_select(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n)
        throw InvalidInput("random_select: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    std::vector<node_t> all(n);
    std::iota(all.begin(), all.end(), node_t{0});
    std::vector<node_t> picked;
    picked.reserve(k);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), k, rng);
    return NodeSet::from_range(n, picked);
}

} // namespace psisel
