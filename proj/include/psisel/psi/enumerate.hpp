#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/node_set.hpp>

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace psisel {

/// Largest number of free nodes an exhaustive routine will enumerate.
inline constexpr std::size_t kDeskScaleLimit = 22;

inline void require_desk_scale(std::size_t free_count, const char* what) {
    if (free_count > kDeskScaleLimit)
        throw DeskScaleLimit(std::string(what) + ": " + std::to_string(free_count) +
                             " free nodes exceed the exhaustive limit of " +
                             std::to_string(kDeskScaleLimit));
}

/// Visits every subset T of `ground` in Gray-code order, starting with the
/// empty set. `visit(const NodeSet& t, std::uint32_t mask)` receives the
/// current subset and its bitmask over ground.members().
template <typename Visit>
void for_each_subset(const NodeSet& ground, Visit&& visit) {
    const std::vector<node_t> members = ground.members();
    require_desk_scale(members.size(), "subset enumeration");
    NodeSet t(ground.universe());
    std::uint32_t mask = 0;
    visit(static_cast<const NodeSet&>(t), mask);
    const std::uint64_t total = std::uint64_t{1} << members.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        auto bit = static_cast<unsigned>(std::countr_zero(i));
        t.flip(members[bit]);
        mask ^= std::uint32_t{1} << bit;
        visit(static_cast<const NodeSet&>(t), mask);
    }
}

} // namespace psisel
