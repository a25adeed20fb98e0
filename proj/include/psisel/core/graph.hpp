#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace psisel {

template <typename W>
struct Edge {
    node_t u;
    node_t v;
    W weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

template <typename W>
struct Neighbor {
    node_t node;
    W weight;
};

/// Undirected weighted graph without self-loops and with at most one edge per
/// unordered pair. Edges are stored canonically (u < v) in sorted order.
///
/// WeightedGraph (integer weights) feeds every exact routine; RealGraph is only
/// consumed by label propagation.
template <typename W>
class BasicGraph {
    static_assert(std::is_arithmetic_v<W>);

public:
    using weight_type = W;

    BasicGraph() = default;

    BasicGraph(std::size_t node_count, std::vector<Edge<W>> edges)
        : node_count_(node_count), edges_(std::move(edges)) {
        for (auto& e : edges_) {
            if (e.u >= node_count_ || e.v >= node_count_)
                throw UniverseMismatch("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                       ") outside universe of size " + std::to_string(node_count_));
            if (e.u == e.v)
                throw InvalidInput("self-loop at node " + std::to_string(e.u));
            if constexpr (std::is_floating_point_v<W>) {
                if (!std::isfinite(e.weight))
                    throw InvalidInput("non-finite edge weight");
            }
            if (e.weight < W{0})
                throw InvalidInput("negative edge weight");
            if (e.u > e.v)
                std::swap(e.u, e.v);
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge<W>& a, const Edge<W>& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                throw InvalidInput("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                   std::to_string(edges_[i].v) + ")");
        adjacency_.assign(node_count_, {});
        for (const auto& e : edges_) {
            adjacency_[e.u].push_back({e.v, e.weight});
            adjacency_[e.v].push_back({e.u, e.weight});
        }
    }

    std::size_t node_count() const noexcept { return node_count_; }
    std::span<const Edge<W>> edges() const noexcept { return edges_; }
    std::span<const Neighbor<W>> neighbors(node_t v) const { return adjacency_.at(v); }

    W degree(node_t v) const {
        W d{0};
        for (const auto& nb : neighbors(v))
            d += nb.weight;
        return d;
    }

    W total_weight() const {
        W total{0};
        for (const auto& e : edges_) {
            if constexpr (std::is_integral_v<W>)
                total = detail::checked_add(total, e.weight);
            else
                total += e.weight;
        }
        return total;
    }

    template <typename U>
    BasicGraph<U> convert() const {
        std::vector<Edge<U>> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_)
            out.push_back({e.u, e.v, static_cast<U>(e.weight)});
        return BasicGraph<U>(node_count_, std::move(out));
    }

    /// Graph with node v renamed to perm[v].
    BasicGraph relabeled(std::span<const node_t> perm) const {
        if (perm.size() != node_count_)
            throw UniverseMismatch("permutation size does not match node count");
        std::vector<Edge<W>> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_)
            out.push_back({perm[e.u], perm[e.v], e.weight});
        return BasicGraph(node_count_, std::move(out));
    }

    friend bool operator==(const BasicGraph& a, const BasicGraph& b) {
        return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge<W>> edges_;
    std::vector<std::vector<Neighbor<W>>> adjacency_;
};

using WeightedGraph = BasicGraph<std::int64_t>;
using RealGraph = BasicGraph<double>;

/// Accumulates edges in any order; repeated pairs have their weights summed
/// and self-loops are rejected.
template <typename W>
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t node_count) : node_count_(node_count) {}

    void add_edge(node_t u, node_t v, W w) {
        if (u == v)
            throw InvalidInput("self-loop at node " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        auto [it, inserted] = weights_.try_emplace({u, v}, w);
        if (!inserted) {
            if constexpr (std::is_integral_v<W>)
                it->second = detail::checked_add(it->second, w);
            else
                it->second += w;
        }
    }

    BasicGraph<W> build() const {
        std::vector<Edge<W>> edges;
        edges.reserve(weights_.size());
        for (const auto& [key, w] : weights_)
            edges.push_back({key.first, key.second, w});
        return BasicGraph<W>(node_count_, std::move(edges));
    }

private:
    std::size_t node_count_;
    std::map<std::pair<node_t, node_t>, W> weights_;
};

struct Hyperedge {
    std::int64_t weight;
    std::vector<node_t> members; // sorted, unique

    friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// Weighted hyperedges over the node universe 0..n-1. Every hyperedge has at
/// least one member; singleton hyperedges are legal and never cut.
class Hypergraph {
public:
    Hypergraph() = default;

    Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges)
        : node_count_(node_count), edges_(std::move(edges)) {
        for (auto& e : edges_) {
            if (e.members.empty())
                throw InvalidInput("empty hyperedge");
            if (e.weight < 0)
                throw InvalidInput("negative hyperedge weight");
            std::sort(e.members.begin(), e.members.end());
            e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
            if (e.members.back() >= node_count_)
                throw UniverseMismatch("hyperedge member " + std::to_string(e.members.back()) +
                                       " outside universe of size " + std::to_string(node_count_));
        }
    }

    /// Hypergraph whose hyperedges are exactly the graph's edges.
    static Hypergraph from_graph(const WeightedGraph& g) {
        std::vector<Hyperedge> edges;
        edges.reserve(g.edges().size());
        for (const auto& e : g.edges())
            edges.push_back({e.weight, {e.u, e.v}});
        return Hypergraph(g.node_count(), std::move(edges));
    }

    std::size_t node_count() const noexcept { return node_count_; }
    std::span<const Hyperedge> edges() const noexcept { return edges_; }

    NodeSet members(std::size_t edge) const {
        return NodeSet::from_range(node_count_, edges_.at(edge).members);
    }

    std::int64_t total_weight() const {
        std::int64_t total = 0;
        for (const auto& e : edges_)
            total = detail::checked_add(total, e.weight);
        return total;
    }

    /// Hypergraph with node v renamed to perm[v].
    Hypergraph relabeled(std::span<const node_t> perm) const {
        if (perm.size() != node_count_)
            throw UniverseMismatch("permutation size does not match node count");
        std::vector<Hyperedge> out = edges_;
        for (auto& e : out)
            for (auto& v : e.members)
                v = perm[v];
        return Hypergraph(node_count_, std::move(out));
    }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t node_count_ = 0;
    std::vector<Hyperedge> edges_;
};

} // namespace psisel
