#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/node_set.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace psisel {

/// Binary labels over 0..n-1, possibly defined only on a subset.
class Labeling {
public:
    Labeling() = default;
    explicit Labeling(std::size_t universe) : values_(universe, kUndefined) {}

    /// Total labeling from a 0/1 vector.
    static Labeling total(std::span<const int> bits) {
        Labeling y(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            y.set(i, bits[i]);
        return y;
    }

    /// Total labeling that is 1 exactly on `positives`.
    static Labeling indicator(const NodeSet& positives) {
        Labeling y(positives.universe());
        for (std::size_t i = 0; i < y.universe(); ++i)
            y.values_[i] = positives.contains(i) ? 1 : 0;
        return y;
    }

    std::size_t universe() const noexcept { return values_.size(); }

    void set(node_t v, int label) {
        check(v);
        if (label != 0 && label != 1)
            throw InvalidInput("label must be 0 or 1, got " + std::to_string(label));
        values_[v] = static_cast<std::int8_t>(label);
    }

    void unset(node_t v) {
        check(v);
        values_[v] = kUndefined;
    }

    bool defined(node_t v) const {
        check(v);
        return values_[v] != kUndefined;
    }

    int operator[](node_t v) const {
        check(v);
        if (values_[v] == kUndefined)
            throw IncompleteLabeling("label of node " + std::to_string(v) + " is undefined");
        return values_[v];
    }

    bool is_total() const noexcept {
        for (auto x : values_)
            if (x == kUndefined)
                return false;
        return true;
    }

    NodeSet domain() const {
        NodeSet s(universe());
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] != kUndefined)
                s.insert(i);
        return s;
    }

    /// Nodes labeled `label` (undefined nodes excluded).
    NodeSet with_label(int label) const {
        NodeSet s(universe());
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] == label)
                s.insert(i);
        return s;
    }

    /// Copy restricted to `nodes`; entries outside become undefined.
    Labeling restricted(const NodeSet& nodes) const {
        if (nodes.universe() != universe())
            throw UniverseMismatch("restriction set over a different universe");
        Labeling out(universe());
        for (node_t v : nodes.members())
            out.values_[v] = values_[v];
        return out;
    }

    Labeling flipped() const {
        Labeling out = *this;
        for (auto& x : out.values_)
            if (x != kUndefined)
                x = static_cast<std::int8_t>(1 - x);
        return out;
    }

    friend bool operator==(const Labeling&, const Labeling&) = default;

private:
    static constexpr std::int8_t kUndefined = -1;

    void check(node_t v) const {
        if (v >= values_.size())
            throw UniverseMismatch("node " + std::to_string(v) + " outside labeling of size " +
                                   std::to_string(values_.size()));
    }

    std::vector<std::int8_t> values_;
};

/// Number of nodes on which two total labelings differ, i.e. the squared error.
inline std::size_t disagreements(const Labeling& a, const Labeling& b) {
    if (a.universe() != b.universe())
        throw UniverseMismatch("labelings over different universes");
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.universe(); ++i)
        if (a[i] != b[i])
            ++count;
    return count;
}

} // namespace psisel
