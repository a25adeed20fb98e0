#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/graph.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace psisel::io {

using Point = std::vector<double>;

struct NeighborList {
    std::vector<node_t> nodes;      ///< nearest first
    std::vector<double> distances;  ///< Euclidean, aligned with nodes
};

/// Exact k nearest neighbors of every point by brute force. Distance ties go
/// to the lower index.
inline std::vector<NeighborList> nearest_neighbors(std::span<const Point> points, std::size_t k) {
    const std::size_t n = points.size();
    if (k == 0)
        throw InvalidInput("k-NN: k must be at least 1");
    if (n < k + 1)
        throw InvalidInput("k-NN: need at least k+1 = " + std::to_string(k + 1) + " points, got " +
                           std::to_string(n));
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim)
            throw InvalidInput("k-NN: points have different dimensions");
        for (double x : p)
            if (!std::isfinite(x))
                throw InvalidInput("k-NN: non-finite coordinate");
    }

    std::vector<NeighborList> lists(n);
    std::vector<std::pair<double, node_t>> candidates;
    candidates.reserve(n - 1);
    for (node_t i = 0; i < n; ++i) {
        candidates.clear();
        for (node_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            double d2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                double diff = points[i][c] - points[j][c];
                d2 += diff * diff;
            }
            candidates.emplace_back(d2, j);
        }
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                          candidates.end());
        for (std::size_t r = 0; r < k; ++r) {
            lists[i].nodes.push_back(candidates[r].second);
            lists[i].distances.push_back(std::sqrt(candidates[r].first));
        }
    }
    return lists;
}

/// One third of the mean distance to the k-th nearest neighbor.
inline double sigma_from_kth_distances(std::span<const double> kth) {
    if (kth.empty())
        throw InvalidInput("sigma heuristic: no distances");
    return std::accumulate(kth.begin(), kth.end(), 0.0) / static_cast<double>(kth.size()) / 3.0;
}

inline double sigma_heuristic(std::span<const Point> points, std::size_t k) {
    auto lists = nearest_neighbors(points, k);
    std::vector<double> kth;
    kth.reserve(lists.size());
    for (const auto& l : lists)
        kth.push_back(l.distances.back());
    return sigma_from_kth_distances(kth);
}

/// Symmetrized union of the directed k-NN relations with unit weights.
inline WeightedGraph knn_graph(std::span<const Point> points, std::size_t k = 10) {
    auto lists = nearest_neighbors(points, k);
    GraphBuilder<std::int64_t> builder(points.size());
    std::vector<std::pair<node_t, node_t>> pairs;
    for (node_t i = 0; i < lists.size(); ++i)
        for (node_t j : lists[i].nodes)
            pairs.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [u, v] : pairs)
        builder.add_edge(u, v, 1);
    return builder.build();
}

/// Same edge set as knn_graph with Gaussian weights exp(-d^2 / (2 sigma^2)),
/// sigma from sigma_heuristic.
inline RealGraph gaussian_knn_graph(std::span<const Point> points, std::size_t k = 10) {
    auto lists = nearest_neighbors(points, k);
    std::vector<double> kth;
    for (const auto& l : lists)
        kth.push_back(l.distances.back());
    const double sigma = sigma_from_kth_distances(kth);
    if (!(sigma > 0.0))
        throw InvalidInput("gaussian k-NN: degenerate bandwidth (all k-th neighbor distances are zero)");
    std::vector<Edge<double>> edges;
    std::set<std::pair<node_t, node_t>> seen;
    for (node_t i = 0; i < lists.size(); ++i) {
        for (std::size_t r = 0; r < lists[i].nodes.size(); ++r) {
            node_t j = lists[i].nodes[r];
            auto key = std::pair(std::min(i, j), std::max(i, j));
            if (!seen.insert(key).second)
                continue;
            double d = lists[i].distances[r];
            edges.push_back({key.first, key.second, std::exp(-d * d / (2.0 * sigma * sigma))});
        }
    }
    return RealGraph(points.size(), std::move(edges));
}

} // namespace psisel::io
