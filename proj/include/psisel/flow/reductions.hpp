#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>
#include <psisel/flow/flow_network.hpp>

#include <cstdint>
#include <string>
#include <utility>

// Reductions of cut-type minimizations to a single s-t min cut. Original
// nodes keep their indices 0..n-1, the source is n and the sink n+1; any
// auxiliary nodes come after.

namespace psisel::flow {

/// Adds every edge of g as a pair of opposite arcs with capacity scale * w.
inline void add_graph_arcs(FlowNetwork& net, const WeightedGraph& g, std::int64_t scale) {
    for (const auto& e : g.edges())
        net.add_edge(e.u, e.v, ::psisel::detail::checked_mul(scale, e.weight));
}

struct HyperedgeGadgets {
    node_t first_aux = 0; ///< hyperedge i uses first_aux + 2i (entry) and first_aux + 2i + 1 (exit)
    std::size_t hyperedge_count = 0;
};

/// Two auxiliary nodes per hyperedge e: entry -> exit with capacity scale * w,
/// member -> entry and exit -> member with infinite capacity. A cut separating
/// the original nodes into X (source side) and Y then pays scale * w exactly
/// when e has members on both sides.
inline HyperedgeGadgets add_hyperedge_gadgets(FlowNetwork& net, const Hypergraph& h,
                                              std::int64_t scale) {
    HyperedgeGadgets gadgets;
    gadgets.hyperedge_count = h.edges().size();
    gadgets.first_aux = net.add_nodes(2 * h.edges().size());
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        const auto& e = h.edges()[i];
        node_t entry = gadgets.first_aux + 2 * i;
        node_t exit = entry + 1;
        net.add_arc(entry, exit, ::psisel::detail::checked_mul(scale, e.weight));
        for (node_t v : e.members) {
            net.add_infinite_arc(v, entry);
            net.add_infinite_arc(exit, v);
        }
    }
    return gadgets;
}

/// Network over the oracle's structure with arcs scaled by `scale`. Only graph
/// and hypergraph oracles have one.
inline FlowNetwork cut_network(const CutOracle& oracle, std::int64_t scale) {
    const std::size_t n = oracle.universe();
    FlowNetwork net(n + 2, n, n + 1);
    if (const auto* g = oracle.as_graph())
        add_graph_arcs(net, *g, scale);
    else if (const auto* h = oracle.as_hypergraph())
        add_hyperedge_gadgets(net, *h, scale);
    else
        throw InvalidInput("oracle kind '" + to_string(oracle.kind()) + "' has no flow network");
    return net;
}

inline void check_cut_oracle(const CutOracle& oracle, const NodeSet& s) {
    if (s.universe() != oracle.universe())
        throw UniverseMismatch("set universe " + std::to_string(s.universe()) +
                               " != oracle universe " + std::to_string(oracle.universe()));
}

/// Network for min over T subset of V\S of  den*Gamma(T) - num*|T|, with
/// lam = num/den. Its min cut equals that minimum plus `offset`.
struct StrengthNetwork {
    FlowNetwork net;
    std::int64_t offset;  ///< num * |V\S|
    std::int64_t scale;   ///< den
    NodeSet free_nodes;   ///< V\S
};

inline StrengthNetwork strength_network(const CutOracle& oracle, const NodeSet& s, const Ratio& lam) {
    check_cut_oracle(oracle, s);
    if (lam.is_infinite() || lam < Ratio(0))
        throw InvalidInput("strength_network: lambda must be finite and non-negative, got " +
                           lam.to_string());
    const std::size_t n = oracle.universe();
    FlowNetwork net = cut_network(oracle, lam.den());
    NodeSet free_nodes = s.complement();
    for (node_t u = 0; u < n; ++u) {
        if (s.contains(u))
            net.add_infinite_arc(net.source(), u);
        else
            net.add_arc(u, net.sink(), lam.num());
    }
    std::int64_t offset =
        ::psisel::detail::checked_mul(lam.num(), static_cast<std::int64_t>(free_nodes.count()));
    return {std::move(net), offset, lam.den(), std::move(free_nodes)};
}

inline StrengthNetwork strength_network(const WeightedGraph& g, const NodeSet& s, const Ratio& lam) {
    return strength_network(CutOracle::graph(g), s, lam);
}

struct ShiftedMinimum {
    std::int64_t scaled_value; ///< den * min_T (Gamma(T) - lam |T|), always <= 0
    NodeSet minimizer;         ///< the largest minimizing T
};

/// Solves the strength network; the minimizer is the sink side restricted to
/// V\S.
inline ShiftedMinimum solve_strength(const StrengthNetwork& sn) {
    StCut cut = min_st_cut(sn.net);
    const std::size_t n = sn.free_nodes.universe();
    NodeSet t(n);
    for (node_t v : sn.free_nodes.members())
        if (cut.sink_side.contains(v))
            t.insert(v);
    return {::psisel::detail::checked_add(cut.value, -sn.offset), std::move(t)};
}

struct SeededCut {
    std::int64_t value; ///< Gamma(S)
    NodeSet side;       ///< the smallest minimizing S
};

/// min Gamma(S) subject to pos subset of S and S disjoint from neg.
inline SeededCut seeded_min_cut(const CutOracle& oracle, const NodeSet& pos, const NodeSet& neg) {
    check_cut_oracle(oracle, pos);
    check_cut_oracle(oracle, neg);
    if (pos.intersects(neg))
        throw ContradictorySeeds("seeds " + (pos & neg).to_string() + " are both positive and negative");
    const std::size_t n = oracle.universe();
    FlowNetwork net = cut_network(oracle, 1);
    for (node_t v : pos.members())
        net.add_infinite_arc(net.source(), v);
    for (node_t v : neg.members())
        net.add_infinite_arc(v, net.sink());
    StCut cut = min_st_cut(net);
    NodeSet side(n);
    for (node_t v = 0; v < n; ++v)
        if (!cut.sink_side.contains(v))
            side.insert(v);
    return {cut.value, std::move(side)};
}

inline SeededCut seeded_min_cut(const WeightedGraph& g, const NodeSet& pos, const NodeSet& neg) {
    return seeded_min_cut(CutOracle::graph(g), pos, neg);
}

} // namespace psisel::flow
