#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>
#include <psisel/flow/reductions.hpp>
#include <psisel/psi/enumerate.hpp>
#include <psisel/psi/psi.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace psisel {

/// Completion of y_L minimizing Phi: the smallest S with L_{y=1} subset of S
/// and S disjoint from L_{y=0}, labeled 1.
inline Labeling mincut_predict(const CutOracle& oracle, const Labeling& y_labeled) {
    if (y_labeled.universe() != oracle.universe())
        throw UniverseMismatch("mincut_predict: labeling and oracle universes differ");
    const std::size_t n = oracle.universe();
    const NodeSet pos = y_labeled.with_label(1);
    const NodeSet neg = y_labeled.with_label(0);

    if (oracle.kind() != OracleKind::symmetrized_generic)
        return Labeling::indicator(flow::seeded_min_cut(oracle, pos, neg).side);

    const NodeSet free_nodes = (pos | neg).complement();
    require_desk_scale(free_nodes.count(), "mincut_predict");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t best_size = 0;
    NodeSet best_side(n);
    for_each_subset(free_nodes, [&](const NodeSet& extra, std::uint32_t) {
        NodeSet candidate = pos | extra;
        std::int64_t value = oracle(candidate);
        if (value < best || (value == best && candidate.count() < best_size)) {
            best = value;
            best_size = candidate.count();
            best_side = std::move(candidate);
        }
    });
    return Labeling::indicator(best_side);
}

/// Per-node, per-class non-negative scores; row-major n x classes.
struct ClassScores {
    std::size_t classes = 0;
    std::vector<double> values;

    std::size_t nodes() const { return classes == 0 ? 0 : values.size() / classes; }
    double& at(std::size_t node, std::size_t c) { return values[node * classes + c]; }
    double at(std::size_t node, std::size_t c) const { return values[node * classes + c]; }
};

/// Rescales class column c by proportions[c] / (column mass), then takes the
/// per-node argmax (ties to the lower class index).
inline std::vector<std::size_t> class_mass_normalize(const ClassScores& scores,
                                                     std::span<const double> proportions) {
    if (proportions.size() != scores.classes)
        throw InvalidInput("class_mass_normalize: one proportion per class required");
    double proportion_sum = 0.0;
    for (double p : proportions) {
        if (!(p >= 0.0))
            throw InvalidInput("class_mass_normalize: proportions must be non-negative");
        proportion_sum += p;
    }
    if (std::abs(proportion_sum - 1.0) > 1e-9)
        throw InvalidInput("class_mass_normalize: proportions must sum to 1");

    std::vector<double> scale(scores.classes, 0.0);
    for (std::size_t c = 0; c < scores.classes; ++c) {
        double mass = 0.0;
        for (std::size_t i = 0; i < scores.nodes(); ++i) {
            double v = scores.at(i, c);
            if (!(v >= 0.0))
                throw InvalidInput("class_mass_normalize: scores must be non-negative");
            mass += v;
        }
        if (proportions[c] == 0.0)
            continue;
        if (mass == 0.0)
            throw DegenerateNormalization("class " + std::to_string(c) +
                                          " has zero score mass but a nonzero proportion");
        scale[c] = proportions[c] / mass;
    }

    std::vector<std::size_t> decisions(scores.nodes(), 0);
    for (std::size_t i = 0; i < scores.nodes(); ++i) {
        std::size_t best = 0;
        double best_value = scores.at(i, 0) * scale[0];
        for (std::size_t c = 1; c < scores.classes; ++c) {
            double v = scores.at(i, c) * scale[c];
            if (v > best_value) {
                best = c;
                best_value = v;
            }
        }
        decisions[i] = best;
    }
    return decisions;
}

struct LabelPropOptions {
    double mu = 1e-6;
    double eps = 1e-6;
    double tolerance = 1e-8;          ///< on both max update and max residual
    std::size_t max_iterations = 100000;
};

struct LabelPropSolution {
    ClassScores scores;   ///< column 0: class-0 indicator fit, column 1: class-1
    std::size_t iterations = 0;
    double residual = 0.0; ///< max |A f - b| over both columns
};

namespace detail {

/// Residual of the optimality conditions (D_L + mu Lap + mu eps I) f = D_L y
/// of the quadratic criterion for one class column.
inline double label_prop_residual(const RealGraph& g, const NodeSet& labeled, std::span<const double> target,
                                  std::span<const double> f, double mu, double eps) {
    double worst = 0.0;
    for (node_t i = 0; i < g.node_count(); ++i) {
        const double data = labeled.contains(i) ? 1.0 : 0.0;
        double lap = 0.0;
        for (const auto& nb : g.neighbors(i))
            lap += nb.weight * (f[i] - f[nb.node]);
        const double r = data * (f[i] - target[i]) + mu * lap + mu * eps * f[i];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace detail

/// Minimizes, per class indicator column,
///   sum_{i in L} (f_i - y_i)^2 + mu sum_{i<j} W_ij (f_i - f_j)^2 + mu eps sum_i f_i^2
/// by Jacobi (diagonal) relaxation starting from f = 0.
inline LabelPropSolution label_prop_scores(const RealGraph& g, const Labeling& y_labeled,
                                           const LabelPropOptions& opts = {}) {
    const std::size_t n = g.node_count();
    if (y_labeled.universe() != n)
        throw UniverseMismatch("label propagation: labeling and graph universes differ");
    if (!(opts.mu > 0.0) || !(opts.eps > 0.0))
        throw InvalidInput("label propagation: mu and eps must be positive");
    const NodeSet labeled = y_labeled.domain();

    std::vector<double> degree(n);
    for (node_t i = 0; i < n; ++i)
        degree[i] = g.degree(i);

    LabelPropSolution sol;
    sol.scores.classes = 2;
    sol.scores.values.assign(2 * n, 0.0);
    std::array<std::vector<double>, 2> target;
    std::array<std::vector<double>, 2> f;
    for (int c = 0; c < 2; ++c) {
        target[c].assign(n, 0.0);
        f[c].assign(n, 0.0);
        for (node_t i : labeled.members())
            target[c][i] = y_labeled[i] == c ? 1.0 : 0.0;
    }

    std::vector<double> next(n);
    for (int c = 0; c < 2; ++c) {
        std::size_t it = 0;
        double residual = detail::label_prop_residual(g, labeled, target[c], f[c], opts.mu, opts.eps);
        double update = std::numeric_limits<double>::infinity();
        while (!(update < opts.tolerance && residual <= opts.tolerance)) {
            if (it >= opts.max_iterations)
                throw ConvergenceError("label propagation did not converge within " +
                                           std::to_string(opts.max_iterations) + " iterations",
                                       residual);
            update = 0.0;
            for (node_t i = 0; i < n; ++i) {
                const double data = labeled.contains(i) ? 1.0 : 0.0;
                double pull = 0.0;
                for (const auto& nb : g.neighbors(i))
                    pull += nb.weight * f[c][nb.node];
                next[i] = (data * target[c][i] + opts.mu * pull) /
                          (data + opts.mu * degree[i] + opts.mu * opts.eps);
                update = std::max(update, std::abs(next[i] - f[c][i]));
            }
            f[c].swap(next);
            residual = detail::label_prop_residual(g, labeled, target[c], f[c], opts.mu, opts.eps);
            ++it;
        }
        sol.iterations = std::max(sol.iterations, it);
        sol.residual = std::max(sol.residual, residual);
        for (node_t i = 0; i < n; ++i)
            sol.scores.at(i, static_cast<std::size_t>(c)) = std::max(0.0, f[c][i]);
    }
    return sol;
}

/// Label propagation followed by class mass normalization with the labeled
/// class proportions. For two classes the argmax equals thresholding the
/// normalized class-1 share at 1/2. Labeled nodes keep their given labels.
inline Labeling label_prop_predict(const RealGraph& g, const Labeling& y_labeled,
                                   const LabelPropOptions& opts = {}) {
    const std::size_t n = g.node_count();
    LabelPropSolution sol = label_prop_scores(g, y_labeled, opts);
    const NodeSet labeled = y_labeled.domain();
    if (labeled.empty())
        throw InvalidInput("label propagation needs at least one labeled node");
    const double ones = static_cast<double>(y_labeled.with_label(1).count());
    const double total = static_cast<double>(labeled.count());
    const std::array<double, 2> proportions{(total - ones) / total, ones / total};
    std::vector<std::size_t> decision = class_mass_normalize(sol.scores, proportions);
    Labeling out(n);
    for (node_t i = 0; i < n; ++i)
        out.set(i, labeled.contains(i) ? y_labeled[i] : static_cast<int>(decision[i]));
    return out;
}

/// Error bound report for a prediction y' against the truth y.
struct PredictionReport {
    NodeSet labeled;              ///< L after shrinking to where y' agrees with y
    std::size_t disagreements = 0;
    std::int64_t phi_truth = 0;
    std::int64_t phi_predicted = 0;
    PsiCertificate psi;
    Ratio bound;                  ///< (phi_truth + phi_predicted) / Psi(L); inf when vacuous
    Ratio mincut_bound;           ///< 2 phi_truth / Psi(L); valid when y' is the mincut completion
    bool vacuous = false;         ///< Psi(L) = 0
    bool bound_holds = false;
};

inline Ratio bound_over_psi(std::int64_t numerator, const Ratio& psi) {
    if (psi.is_infinite())
        return Ratio(0);
    if (psi.is_zero())
        return Ratio::infinity();
    return Ratio(numerator) / psi;
}

inline PredictionReport error_certificate(const CutOracle& oracle, const NodeSet& labeled,
                                          const Labeling& y, const Labeling& y_prime) {
    const std::size_t n = oracle.universe();
    if (labeled.universe() != n || y.universe() != n || y_prime.universe() != n)
        throw UniverseMismatch("error_certificate: inputs over different universes");
    if (!y.is_total() || !y_prime.is_total())
        throw IncompleteLabeling("error_certificate requires total labelings");

    PredictionReport report;
    report.labeled = NodeSet(n);
    for (node_t v : labeled.members())
        if (y[v] == y_prime[v])
            report.labeled.insert(v);
    report.disagreements = disagreements(y, y_prime);
    report.phi_truth = phi(oracle, y);
    report.phi_predicted = phi(oracle, y_prime);
    report.psi = compute_psi(oracle, report.labeled);
    report.vacuous = report.psi.psi.is_zero();
    report.bound = bound_over_psi(detail::checked_add(report.phi_truth, report.phi_predicted), report.psi.psi);
    report.mincut_bound = bound_over_psi(detail::checked_mul(2, report.phi_truth), report.psi.psi);
    report.bound_holds = Ratio(static_cast<std::int64_t>(report.disagreements)) <= report.bound;
    return report;
}

} // namespace psisel
