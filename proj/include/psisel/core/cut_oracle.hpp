#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/core/node_set.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <variant>

namespace psisel {

/// Total weight of edges with exactly one endpoint in s.
inline std::int64_t graph_cut(const WeightedGraph& g, const NodeSet& s) {
    if (s.universe() != g.node_count())
        throw UniverseMismatch("graph_cut: set universe " + std::to_string(s.universe()) +
                               " != node count " + std::to_string(g.node_count()));
    std::int64_t total = 0;
    for (const auto& e : g.edges())
        if (s.contains(e.u) != s.contains(e.v))
            total = detail::checked_add(total, e.weight);
    return total;
}

/// Total weight of hyperedges with members both inside and outside s.
inline std::int64_t hypergraph_cut(const Hypergraph& h, const NodeSet& s) {
    if (s.universe() != h.node_count())
        throw UniverseMismatch("hypergraph_cut: set universe " + std::to_string(s.universe()) +
                               " != node count " + std::to_string(h.node_count()));
    std::int64_t total = 0;
    for (const auto& e : h.edges()) {
        bool in = false, out = false;
        for (node_t v : e.members) {
            (s.contains(v) ? in : out) = true;
            if (in && out)
                break;
        }
        if (in && out)
            total = detail::checked_add(total, e.weight);
    }
    return total;
}

using SetFunction = std::function<std::int64_t(const NodeSet&)>;

enum class OracleKind { graph_cut, hypergraph_cut, symmetrized_generic };

inline std::string to_string(OracleKind kind) {
    switch (kind) {
    case OracleKind::graph_cut:
        return "graph";
    case OracleKind::hypergraph_cut:
        return "hypergraph";
    case OracleKind::symmetrized_generic:
        return "generic";
    }
    return "unknown";
}

/// A symmetric, normalized, non-negative, integer-valued submodular set
/// function Gamma over a fixed universe.
///
/// Graph and hypergraph variants expose their structure so that constrained
/// minimizations can be solved exactly by max-flow; the generic variant is an
/// opaque callable and is minimized by enumeration.
class CutOracle {
public:
    static CutOracle graph(WeightedGraph g) {
        CutOracle o;
        o.universe_ = g.node_count();
        o.impl_ = std::make_shared<const WeightedGraph>(std::move(g));
        return o;
    }

    static CutOracle hypergraph(Hypergraph h) {
        CutOracle o;
        o.universe_ = h.node_count();
        o.impl_ = std::make_shared<const Hypergraph>(std::move(h));
        return o;
    }

    /// Wraps an already symmetric, normalized set function without
    /// transformation. Use symmetrize() for arbitrary submodular functions.
    static CutOracle generic(std::size_t universe, SetFunction gamma) {
        if (!gamma)
            throw InvalidInput("generic oracle requires a callable");
        CutOracle o;
        o.universe_ = universe;
        o.impl_ = std::make_shared<const SetFunction>(std::move(gamma));
        return o;
    }

    std::size_t universe() const noexcept { return universe_; }

    OracleKind kind() const noexcept {
        switch (impl_.index()) {
        case 0:
            return OracleKind::graph_cut;
        case 1:
            return OracleKind::hypergraph_cut;
        default:
            return OracleKind::symmetrized_generic;
        }
    }

    /// Non-null only for the graph-cut variant.
    const WeightedGraph* as_graph() const noexcept {
        auto* p = std::get_if<0>(&impl_);
        return p ? p->get() : nullptr;
    }

    /// Non-null only for the hypergraph-cut variant.
    const Hypergraph* as_hypergraph() const noexcept {
        auto* p = std::get_if<1>(&impl_);
        return p ? p->get() : nullptr;
    }

    std::int64_t operator()(const NodeSet& s) const {
        if (s.universe() != universe_)
            throw UniverseMismatch("oracle over universe " + std::to_string(universe_) +
                                   " evaluated on set over " + std::to_string(s.universe()));
        switch (impl_.index()) {
        case 0:
            return graph_cut(*std::get<0>(impl_), s);
        case 1:
            return hypergraph_cut(*std::get<1>(impl_), s);
        default: {
            std::int64_t value = (*std::get<2>(impl_))(s);
            if (value < 0)
                throw NotSubmodular("generic oracle returned negative value " +
                                    std::to_string(value) + " on " + s.to_string());
            return value;
        }
        }
    }

    /// Largest singleton value; an upper bound on the strength of any set
    /// that leaves some node out.
    std::int64_t max_singleton() const {
        std::int64_t best = 0;
        for (node_t v = 0; v < universe_; ++v)
            best = std::max(best, (*this)(NodeSet(universe_, {v})));
        return best;
    }

private:
    CutOracle() = default;

    std::size_t universe_ = 0;
    std::variant<std::shared_ptr<const WeightedGraph>, std::shared_ptr<const Hypergraph>,
                 std::shared_ptr<const SetFunction>>
        impl_;
};

/// Gamma(S) = F(S) + F(V\S) - F(V) for an arbitrary submodular F.
///
/// F must be normalized (F(empty) = 0). Negative values on the probe sets
/// (empty set and singletons) prove F is not submodular.
inline CutOracle symmetrize(std::size_t universe, SetFunction f) {
    if (!f)
        throw InvalidInput("symmetrize requires a callable");
    const NodeSet all = NodeSet::full(universe);
    const std::int64_t f_all = f(all);
    if (std::int64_t f_empty = f(NodeSet(universe)); f_empty != 0)
        throw InvalidInput("symmetrize: F(empty) = " + std::to_string(f_empty) + ", expected 0");
    auto gamma = [f, f_all](const NodeSet& s) {
        return detail::checked_add(detail::checked_add(f(s), f(s.complement())), -f_all);
    };
    for (node_t v = 0; v < universe; ++v) {
        NodeSet probe(universe, {v});
        if (std::int64_t value = gamma(probe); value < 0)
            throw NotSubmodular("symmetrized value " + std::to_string(value) + " on " +
                                probe.to_string() + " is negative");
    }
    return CutOracle::generic(universe, std::move(gamma));
}

/// Label complexity: Gamma applied to the nodes labeled 1.
inline std::int64_t phi(const CutOracle& oracle, const Labeling& y) {
    if (y.universe() != oracle.universe())
        throw UniverseMismatch("phi: labeling and oracle universes differ");
    if (!y.is_total())
        throw IncompleteLabeling("phi requires a total labeling");
    return oracle(y.with_label(1));
}

struct OracleCheckReport {
    std::size_t samples = 0;
    std::size_t symmetry_violations = 0;
    std::size_t submodularity_violations = 0;
    std::size_t negativity_violations = 0;
    bool normalized = true;

    bool ok() const noexcept {
        return normalized && symmetry_violations == 0 && submodularity_violations == 0 &&
               negativity_violations == 0;
    }
};

/// Spot-checks the CutOracle invariants on `samples` random pairs (A, B).
template <typename Rng>
OracleCheckReport check_oracle(const CutOracle& oracle, std::size_t samples, Rng& rng) {
    const std::size_t n = oracle.universe();
    OracleCheckReport report;
    report.samples = samples;
    report.normalized = oracle(NodeSet(n)) == 0 && oracle(NodeSet::full(n)) == 0;
    std::bernoulli_distribution coin(0.5);
    auto random_set = [&] {
        NodeSet s(n);
        for (node_t v = 0; v < n; ++v)
            if (coin(rng))
                s.insert(v);
        return s;
    };
    for (std::size_t i = 0; i < samples; ++i) {
        NodeSet a = random_set();
        NodeSet b = random_set();
        std::int64_t fa = oracle(a);
        std::int64_t fb = oracle(b);
        if (fa < 0)
            ++report.negativity_violations;
        if (fa != oracle(a.complement()))
            ++report.symmetry_violations;
        if (fa + fb < oracle(a | b) + oracle(a & b))
            ++report.submodularity_violations;
    }
    return report;
}

} // namespace psisel
