// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_NSGA2_HPP
#define ZSR_NSGA2_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "zsr/individual.hpp"
#include "zsr/random.hpp"

namespace zsr {

using Objectives = std::array<double, 2>;

// a <= b in every objective and a < b in at least one (minimization).
constexpr auto Dominates(Objectives const& a, Objectives const& b) noexcept -> bool
{
    bool strictly = false;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) { return false; }
        strictly |= a[k] < b[k];
    }
    return strictly;
}

// Fast non-dominated sorting. Returns the rank of each point; rank 0 is the
// non-dominated set.
auto NonDominatedSort(std::span<Objectives const> points) -> std::vector<size_t>;

// Crowding distance of each point within one front. Boundary points of every
// objective get infinity; objectives with zero spread contribute nothing.
auto CrowdingDistance(std::span<Objectives const> front) -> std::vector<double>;

// Sets Rank and Crowding on every individual. Returns the fronts as index lists.
auto AssignRankAndCrowding(std::span<Individual> population) -> std::vector<std::vector<size_t>>;

// Keeps the best `count` individuals by (rank ascending, crowding descending);
// ties keep the earlier index. Rank and crowding must already be assigned.
auto SelectSurvivors(std::vector<Individual> pool, size_t count) -> std::vector<Individual>;

// Binary crowded tournament with replacement: lower rank wins, then larger
// crowding, then a fair coin. Returns the winner's index.
auto SelectParent(std::span<Individual const> population, Random& rng) -> size_t;

} // namespace zsr

#endif
