#pragma once

#include <psisel/core/graph.hpp>
#include <psisel/io/formats.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace psisel::io {

struct RatingsHypergraph {
    Hypergraph hypergraph;
    std::vector<std::int64_t> item_of_node; ///< node index -> original item id (ascending)
};

/// Items rated more than `min_ratings` times become nodes. Every user
/// contributes a unit-weight hyperedge over the items they rated above 3 stars
/// and one over the items rated below 3; 3-star ratings are ignored and empty
/// hyperedges are dropped. Hyperedges are ordered by user id, liked first.
inline RatingsHypergraph ratings_to_hypergraph(std::span<const Rating> ratings, std::size_t min_ratings = 10) {
    std::map<std::int64_t, std::size_t> counts;
    for (const auto& r : ratings)
        ++counts[r.item];

    RatingsHypergraph out;
    std::map<std::int64_t, node_t> node_of_item;
    for (const auto& [item, count] : counts) {
        if (count > min_ratings) {
            node_of_item.emplace(item, out.item_of_node.size());
            out.item_of_node.push_back(item);
        }
    }

    const Ratio neutral(3);
    std::map<std::int64_t, std::pair<std::set<node_t>, std::set<node_t>>> by_user;
    for (const auto& r : ratings) {
        auto it = node_of_item.find(r.item);
        if (it == node_of_item.end())
            continue;
        auto& [liked, disliked] = by_user[r.user];
        if (r.stars > neutral)
            liked.insert(it->second);
        else if (r.stars < neutral)
            disliked.insert(it->second);
    }

    std::vector<Hyperedge> edges;
    for (const auto& [user, sides] : by_user) {
        if (!sides.first.empty())
            edges.push_back({1, {sides.first.begin(), sides.first.end()}});
        if (!sides.second.empty())
            edges.push_back({1, {sides.second.begin(), sides.second.end()}});
    }
    out.hypergraph = Hypergraph(out.item_of_node.size(), std::move(edges));
    return out;
}

} // namespace psisel::io
