#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/predict/predict.hpp>
#include <psisel/select/select.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace psisel::io {

enum class SelectionMethod { psi_max, random };
enum class Predictor { mincut, labelprop };

inline std::string to_string(SelectionMethod m) { return m == SelectionMethod::psi_max ? "psi-max" : "random"; }
inline std::string to_string(Predictor p) { return p == Predictor::mincut ? "mincut" : "labelprop"; }

inline SelectionMethod parse_method(const std::string& s) {
    if (s == "psi-max")
        return SelectionMethod::psi_max;
    if (s == "random")
        return SelectionMethod::random;
    throw InvalidInput("unknown selection method '" + s + "'");
}

inline Predictor parse_predictor(const std::string& s) {
    if (s == "mincut")
        return Predictor::mincut;
    if (s == "labelprop")
        return Predictor::labelprop;
    throw InvalidInput("unknown predictor '" + s + "'");
}

/// The data an experiment runs on. Either `graph` or `hypergraph` is set;
/// `real_graph` (label propagation weights) defaults to the integer graph.
struct ExperimentData {
    std::optional<WeightedGraph> graph;
    std::optional<Hypergraph> hypergraph;
    std::optional<RealGraph> real_graph;
    Labeling truth;

    std::size_t node_count() const { return graph ? graph->node_count() : hypergraph->node_count(); }
};

struct ExperimentSpec {
    std::vector<SelectionMethod> methods{SelectionMethod::psi_max, SelectionMethod::random};
    std::vector<Predictor> predictors{Predictor::mincut};
    std::vector<std::size_t> label_counts;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    Ratio rel_gap{1, 10000};
};

struct ExperimentRow {
    SelectionMethod method;
    Predictor predictor;
    std::size_t k;
    double mean_error;
    double std_error;
    std::size_t trials;
};

namespace detail {

inline CutOracle make_oracle(const ExperimentData& data, std::span<const node_t> perm) {
    if (data.graph)
        return CutOracle::graph(perm.empty() ? *data.graph : data.graph->relabeled(perm));
    return CutOracle::hypergraph(perm.empty() ? *data.hypergraph : data.hypergraph->relabeled(perm));
}

/// Fraction of unlabeled nodes predicted wrongly (0 when every node is labeled).
inline double error_rate(const Labeling& truth, const Labeling& predicted, const NodeSet& labeled) {
    const std::size_t unlabeled = truth.universe() - labeled.count();
    if (unlabeled == 0)
        return 0.0;
    std::size_t wrong = 0;
    for (node_t v = 0; v < truth.universe(); ++v)
        if (!labeled.contains(v) && truth[v] != predicted[v])
            ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(unlabeled);
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t k, std::size_t trial, unsigned tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(trial), tag};
    return std::mt19937_64(seq);
}

} // namespace detail

inline Labeling predict_labels(const ExperimentData& data, const CutOracle& oracle, Predictor predictor,
                               const Labeling& y_labeled) {
    if (predictor == Predictor::mincut)
        return mincut_predict(oracle, y_labeled);
    if (data.real_graph)
        return label_prop_predict(*data.real_graph, y_labeled);
    if (data.graph)
        return label_prop_predict(data.graph->convert<double>(), y_labeled);
    throw InvalidInput("label propagation needs a graph, not a hypergraph");
}

/// Mean and standard deviation of the prediction error for every
/// (method, predictor, k). Random selection is redrawn per trial. Psi-max
/// selection bisects lambda once per k on the input order; each trial then
/// reruns the final greedy pass at that lambda on a random relabeling of the
/// nodes, so only tie-breaking varies between trials.
inline std::vector<ExperimentRow> run_experiment(const ExperimentData& data, const ExperimentSpec& spec) {
    const std::size_t n = data.node_count();
    if (!data.graph == !data.hypergraph)
        throw InvalidInput("experiment needs exactly one of graph or hypergraph");
    if (data.truth.universe() != n || !data.truth.is_total())
        throw InvalidInput("experiment truth labels must cover all " + std::to_string(n) + " nodes");
    if (spec.trials == 0)
        throw InvalidInput("experiment needs at least one trial");
    for (std::size_t k : spec.label_counts)
        if (k == 0 || k > n)
            throw InvalidInput("label count " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");

    const CutOracle base = detail::make_oracle(data, {});
    std::vector<ExperimentRow> rows;
    for (SelectionMethod method : spec.methods) {
        for (std::size_t k : spec.label_counts) {
            std::optional<Ratio> lambda;
            if (method == SelectionMethod::psi_max && k < n)
                lambda = select_budget(base, k, spec.rel_gap).target_lambda;

            std::vector<NodeSet> chosen_per_trial;
            chosen_per_trial.reserve(spec.trials);
            for (std::size_t t = 0; t < spec.trials; ++t) {
                auto rng = detail::trial_rng(spec.seed, k, t, method == SelectionMethod::psi_max ? 1U : 2U);
                if (method == SelectionMethod::random) {
                    chosen_per_trial.push_back(random_select(n, k, rng()));
                    continue;
                }
                if (k >= n) {
                    chosen_per_trial.push_back(NodeSet::full(n));
                    continue;
                }
                std::vector<node_t> perm(n);
                std::iota(perm.begin(), perm.end(), node_t{0});
                std::shuffle(perm.begin(), perm.end(), rng);
                GreedyRun run = greedy_f_lambda(detail::make_oracle(data, perm), *lambda, {GreedyMode::lazy, k});
                std::vector<node_t> inverse(n);
                for (node_t v = 0; v < n; ++v)
                    inverse[perm[v]] = v;
                NodeSet chosen(n);
                for (node_t v : run.chosen.members())
                    chosen.insert(inverse[v]);
                chosen_per_trial.push_back(std::move(chosen));
            }

            for (Predictor predictor : spec.predictors) {
                std::vector<double> errors;
                errors.reserve(spec.trials);
                for (const NodeSet& chosen : chosen_per_trial) {
                    Labeling predicted = predict_labels(data, base, predictor, data.truth.restricted(chosen));
                    errors.push_back(detail::error_rate(data.truth, predicted, chosen));
                }
                const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
                double var = 0.0;
                for (double e : errors)
                    var += (e - mean) * (e - mean);
                var /= static_cast<double>(errors.size());
                rows.push_back({method, predictor, k, mean, std::sqrt(var), spec.trials});
            }
        }
    }
    return rows;
}

inline void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "method,predictor,k,mean_error,std,trials\n";
    auto old_precision = out.precision(10);
    for (const auto& r : rows)
        out << to_string(r.method) << ',' << to_string(r.predictor) << ',' << r.k << ',' << r.mean_error << ','
            << r.std_error << ',' << r.trials << '\n';
    out.precision(old_precision);
}

} // namespace psisel::io
