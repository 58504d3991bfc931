// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/nsga2.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace zsr {

auto NonDominatedSort(std::span<Objectives const> points) -> std::vector<size_t>
{
    auto const n = points.size();
    std::vector<size_t> rank(n, 0);
    std::vector<size_t> dominatedBy(n, 0);
    std::vector<std::vector<size_t>> dominates(n);
    std::vector<size_t> front;

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (Dominates(points[i], points[j])) {
                dominates[i].push_back(j);
                ++dominatedBy[j];
            } else if (Dominates(points[j], points[i])) {
                dominates[j].push_back(i);
                ++dominatedBy[i];
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (dominatedBy[i] == 0) { front.push_back(i); }
    }
    size_t current = 0;
    std::vector<size_t> next;
    while (!front.empty()) {
        next.clear();
        for (auto i : front) {
            rank[i] = current;
            for (auto j : dominates[i]) {
                if (--dominatedBy[j] == 0) { next.push_back(j); }
            }
        }
        std::swap(front, next);
        ++current;
    }
    return rank;
}

auto CrowdingDistance(std::span<Objectives const> front) -> std::vector<double>
{
    auto const n = front.size();
    constexpr auto inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::ranges::fill(distance, inf);
        return distance;
    }
    std::vector<size_t> idx(n);
    for (size_t k = 0; k < std::tuple_size_v<Objectives>; ++k) {
        std::iota(idx.begin(), idx.end(), size_t { 0 });
        std::ranges::stable_sort(idx, [&](auto a, auto b) { return front[a][k] < front[b][k]; });
        auto const lo = front[idx.front()][k];
        auto const hi = front[idx.back()][k];
        distance[idx.front()] = inf;
        distance[idx.back()] = inf;
        if (!(hi > lo)) { continue; }
        for (size_t i = 1; i + 1 < n; ++i) {
            distance[idx[i]] += (front[idx[i + 1]][k] - front[idx[i - 1]][k]) / (hi - lo);
        }
    }
    return distance;
}

auto AssignRankAndCrowding(std::span<Individual> population) -> std::vector<std::vector<size_t>>
{
    std::vector<Objectives> points(population.size());
    std::ranges::transform(population, points.begin(), [](auto const& ind) { return ind.Objectives; });
    auto const rank = NonDominatedSort(points);

    size_t fronts = 0;
    for (auto r : rank) { fronts = std::max(fronts, r + 1); }
    std::vector<std::vector<size_t>> members(fronts);
    for (size_t i = 0; i < rank.size(); ++i) {
        members[rank[i]].push_back(i);
        population[i].Rank = rank[i];
    }
    std::vector<Objectives> front;
    for (auto const& m : members) {
        front.clear();
        for (auto i : m) { front.push_back(points[i]); }
        auto d = CrowdingDistance(front);
        for (size_t k = 0; k < m.size(); ++k) { population[m[k]].Crowding = d[k]; }
    }
    return members;
}

auto SelectSurvivors(std::vector<Individual> pool, size_t count) -> std::vector<Individual>
{
    std::vector<size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), size_t { 0 });
    std::ranges::stable_sort(idx, [&](auto a, auto b) {
        if (pool[a].Rank != pool[b].Rank) { return pool[a].Rank < pool[b].Rank; }
        return pool[a].Crowding > pool[b].Crowding;
    });
    count = std::min(count, pool.size());
    std::vector<Individual> survivors;
    survivors.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        survivors.push_back(std::move(pool[idx[i]]));
    }
    return survivors;
}

auto SelectParent(std::span<Individual const> population, Random& rng) -> size_t
{
    if (population.empty()) {
        throw std::invalid_argument("cannot select from an empty population");
    }
    auto const a = static_cast<size_t>(rng.Below(population.size()));
    auto const b = static_cast<size_t>(rng.Below(population.size()));
    auto const& x = population[a];
    auto const& y = population[b];
    if (x.Rank != y.Rank) { return x.Rank < y.Rank ? a : b; }
    if (x.Crowding != y.Crowding) { return x.Crowding > y.Crowding ? a : b; }
    return rng.Below(2) == 0 ? a : b;
}

} // namespace zsr
