#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>

#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace psisel::flow {

struct Arc {
    node_t from;
    node_t to;
    std::int64_t capacity; // ignored when infinite
    bool infinite = false;
};

/// Directed network with integer capacities and a distinguished source and
/// sink. Infinite arcs are resolved to 1 + (sum of finite capacities), which
/// no finite cut can prefer.
class FlowNetwork {
public:
    FlowNetwork(std::size_t node_count, node_t source, node_t sink)
        : node_count_(node_count), source_(source), sink_(sink) {
        if (source >= node_count || sink >= node_count)
            throw UniverseMismatch("source or sink outside the network");
        if (source == sink)
            throw InvalidInput("source and sink must differ");
    }

    std::size_t node_count() const noexcept { return node_count_; }
    node_t source() const noexcept { return source_; }
    node_t sink() const noexcept { return sink_; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    /// Appends `count` fresh nodes and returns the index of the first one.
    node_t add_nodes(std::size_t count) {
        node_t first = node_count_;
        node_count_ += count;
        return first;
    }

    void add_arc(node_t from, node_t to, std::int64_t capacity) {
        check(from, to);
        if (capacity < 0)
            throw InvalidInput("negative arc capacity");
        if (capacity == 0)
            return;
        finite_total_ = ::psisel::detail::checked_add(finite_total_, capacity);
        arcs_.push_back({from, to, capacity, false});
    }

    void add_infinite_arc(node_t from, node_t to) {
        check(from, to);
        arcs_.push_back({from, to, 0, true});
    }

    /// Undirected edge as a pair of opposite arcs.
    void add_edge(node_t u, node_t v, std::int64_t capacity) {
        add_arc(u, v, capacity);
        add_arc(v, u, capacity);
    }

    std::int64_t infinite_capacity() const { return ::psisel::detail::checked_add(finite_total_, 1); }

    std::int64_t capacity(const Arc& a) const { return a.infinite ? infinite_capacity() : a.capacity; }

    /// Capacity of arcs leaving `source_side`. The caller must put the source
    /// inside and the sink outside.
    std::int64_t cut_value(const NodeSet& source_side) const {
        if (source_side.universe() != node_count_)
            throw UniverseMismatch("cut side does not cover the network");
        std::int64_t total = 0;
        for (const auto& a : arcs_)
            if (source_side.contains(a.from) && !source_side.contains(a.to))
                total = ::psisel::detail::checked_add(total, capacity(a));
        return total;
    }

private:
    void check(node_t from, node_t to) const {
        if (from >= node_count_ || to >= node_count_)
            throw UniverseMismatch("arc (" + std::to_string(from) + "," + std::to_string(to) +
                                   ") outside network of " + std::to_string(node_count_) + " nodes");
        if (from == to)
            throw InvalidInput("arc is a self-loop");
    }

    std::size_t node_count_;
    node_t source_;
    node_t sink_;
    std::vector<Arc> arcs_;
    std::int64_t finite_total_ = 0;
};

struct StCut {
    std::int64_t value = 0;
    /// Nodes not reachable from the source in the final residual graph: the
    /// largest sink side over all minimum cuts.
    NodeSet sink_side;
};

namespace detail {

/// Dinic's blocking-flow algorithm on a compact residual graph.
class Dinic {
public:
    explicit Dinic(const FlowNetwork& net)
        : n_(net.node_count()), source_(net.source()), sink_(net.sink()),
          infinity_(net.infinite_capacity()), head_(n_ + 1, 0) {
        const auto arcs = net.arcs();
        for (const auto& a : arcs) {
            ++head_[a.from + 1];
            ++head_[a.to + 1];
        }
        for (std::size_t i = 0; i < n_; ++i)
            head_[i + 1] += head_[i];
        to_.resize(2 * arcs.size());
        cap_.resize(2 * arcs.size());
        rev_.resize(2 * arcs.size());
        std::vector<std::size_t> fill(head_.begin(), head_.end() - 1);
        for (const auto& a : arcs) {
            std::size_t fwd = fill[a.from]++;
            std::size_t bwd = fill[a.to]++;
            to_[fwd] = a.to;
            cap_[fwd] = a.infinite ? infinity_ : a.capacity;
            rev_[fwd] = bwd;
            to_[bwd] = a.from;
            cap_[bwd] = 0;
            rev_[bwd] = fwd;
        }
    }

    StCut solve() {
        std::int64_t value = 0;
        level_.assign(n_, -1);
        iter_.assign(n_, 0);
        while (bfs()) {
            for (std::size_t v = 0; v < n_; ++v)
                iter_[v] = head_[v];
            value = ::psisel::detail::checked_add(value, blocking_flow());
            if (value >= infinity_)
                throw InvalidInput("flow network has no finite source-sink cut");
        }
        StCut cut;
        cut.value = value;
        cut.sink_side = NodeSet(n_);
        for (std::size_t v = 0; v < n_; ++v)
            if (level_[v] < 0)
                cut.sink_side.insert(v);
        return cut;
    }

private:
    bool bfs() {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> queue;
        level_[source_] = 0;
        queue.push(source_);
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop();
            for (std::size_t e = head_[u]; e < head_[u + 1]; ++e) {
                if (cap_[e] > 0 && level_[to_[e]] < 0) {
                    level_[to_[e]] = level_[u] + 1;
                    queue.push(to_[e]);
                }
            }
        }
        return level_[sink_] >= 0;
    }

    // Iterative DFS over the level graph; saturated prefixes are retracted
    // after each augmentation.
    std::int64_t blocking_flow() {
        std::int64_t total = 0;
        std::vector<std::size_t> path; // residual edge ids
        std::size_t u = source_;
        while (true) {
            if (u == sink_) {
                std::int64_t push = std::numeric_limits<std::int64_t>::max();
                for (std::size_t e : path)
                    push = std::min(push, cap_[e]);
                std::size_t retreat = path.size();
                for (std::size_t i = 0; i < path.size(); ++i) {
                    std::size_t e = path[i];
                    cap_[e] -= push;
                    cap_[rev_[e]] += push;
                    if (cap_[e] == 0 && retreat == path.size())
                        retreat = i;
                }
                total = ::psisel::detail::checked_add(total, push);
                if (total >= infinity_)
                    return total;
                path.resize(retreat);
                u = path.empty() ? source_ : to_[path.back()];
                continue;
            }
            bool advanced = false;
            for (; iter_[u] < head_[u + 1]; ++iter_[u]) {
                std::size_t e = iter_[u];
                std::size_t w = to_[e];
                if (cap_[e] > 0 && level_[w] == level_[u] + 1) {
                    path.push_back(e);
                    u = w;
                    advanced = true;
                    break;
                }
            }
            if (advanced)
                continue;
            if (u == source_)
                return total;
            level_[u] = -1; // dead end for this phase
            std::size_t e = path.back();
            path.pop_back();
            u = to_[rev_[e]];
            ++iter_[u];
        }
    }

    std::size_t n_;
    std::size_t source_;
    std::size_t sink_;
    std::int64_t infinity_;
    std::vector<std::size_t> head_;
    std::vector<std::size_t> to_;
    std::vector<std::int64_t> cap_;
    std::vector<std::size_t> rev_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

} // namespace detail

/// Exact minimum s-t cut. Ties resolve to the largest sink side (equivalently
/// the smallest source side), which is unique.
inline StCut min_st_cut(const FlowNetwork& net) {
    return detail::Dinic(net).solve();
}

} // namespace psisel::flow
