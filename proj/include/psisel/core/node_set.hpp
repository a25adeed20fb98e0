#pragma once

#include <psisel/core/error.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace psisel {

using node_t = std::size_t;

/// Dense bitset over the node universe 0..n-1.
class NodeSet {
public:
    NodeSet() = default;

    explicit NodeSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    NodeSet(std::size_t universe, std::initializer_list<node_t> members) : NodeSet(universe) {
        for (node_t v : members)
            insert(v);
    }

    template <typename Range>
    static NodeSet from_range(std::size_t universe, const Range& members) {
        NodeSet s(universe);
        for (auto v : members)
            s.insert(static_cast<node_t>(v));
        return s;
    }

    static NodeSet full(std::size_t universe) {
        NodeSet s(universe);
        for (auto& w : s.words_)
            w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    /// Bit i of `mask` selects node i. Requires universe <= 64.
    static NodeSet from_mask(std::size_t universe, std::uint64_t mask) {
        if (universe > 64)
            throw InvalidInput("NodeSet::from_mask: universe exceeds 64 nodes");
        NodeSet s(universe);
        if (universe > 0)
            s.words_[0] = mask;
        s.trim();
        return s;
    }

    std::uint64_t to_mask() const {
        if (universe_ > 64)
            throw InvalidInput("NodeSet::to_mask: universe exceeds 64 nodes");
        return universe_ == 0 ? 0 : words_[0];
    }

    std::size_t universe() const noexcept { return universe_; }

    bool contains(node_t v) const {
        check(v);
        return (words_[v / 64] >> (v % 64)) & 1U;
    }

    void insert(node_t v) {
        check(v);
        words_[v / 64] |= std::uint64_t{1} << (v % 64);
    }

    void erase(node_t v) {
        check(v);
        words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }

    void flip(node_t v) {
        check(v);
        words_[v / 64] ^= std::uint64_t{1} << (v % 64);
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const noexcept {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    std::vector<node_t> members() const {
        std::vector<node_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    NodeSet complement() const {
        NodeSet s(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    NodeSet& operator|=(const NodeSet& o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }

    /// Set difference.
    NodeSet& operator-=(const NodeSet& o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    bool is_subset_of(const NodeSet& o) const {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~o.words_[i]) != 0)
                return false;
        return true;
    }

    bool intersects(const NodeSet& o) const {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & o.words_[i]) != 0)
                return true;
        return false;
    }

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

    /// "{0,2,5}"
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (node_t v : members()) {
            if (!first)
                out += ',';
            out += std::to_string(v);
            first = false;
        }
        return out + "}";
    }

private:
    void check(node_t v) const {
        if (v >= universe_)
            throw UniverseMismatch("node " + std::to_string(v) + " outside universe of size " +
                                   std::to_string(universe_));
    }

    void same_universe(const NodeSet& o) const {
        if (o.universe_ != universe_)
            throw UniverseMismatch("node sets over universes of size " + std::to_string(universe_) +
                                   " and " + std::to_string(o.universe_));
    }

    void trim() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace psisel
