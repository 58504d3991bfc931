// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <fmt/core.h>

#include "zsr/random.hpp"

namespace zsr {

auto ComputeMdl(double sse, size_t rows, size_t length, size_t coefficients, size_t primitives) -> MdlScore
{
    if (rows == 0 || primitives == 0) {
        throw std::invalid_argument("MDL needs at least one row and one primitive");
    }
    auto const n = static_cast<double>(rows);
    MdlScore score;
    score.Residual = std::isfinite(sse) && sse >= 0 ? 0.5 * n * std::log(sse / n) : std::numeric_limits<double>::infinity();
    score.Structure = static_cast<double>(length) * std::log(static_cast<double>(primitives));
    score.Parameters = 0.5 * static_cast<double>(coefficients) * std::log(n);
    score.Total = score.Residual + score.Structure + score.Parameters;
    return score;
}

auto ScoreModel(Tree const& tree, Dataset const& data, Range rows, size_t primitives) -> MdlScore
{
    auto const prediction = Evaluate(tree, data, rows);
    auto const target = data.Target(rows);
    double sse = 0;
    for (size_t i = 0; i < target.size(); ++i) {
        auto const e = target[i] - prediction[i];
        sse += e * e;
    }
    if (std::isnan(sse)) { sse = std::numeric_limits<double>::infinity(); }
    return ComputeMdl(sse, rows.Size, tree.Length(), tree.Length(), primitives);
}

auto MdlSelect(std::span<Individual const> front, Dataset const& data, Range rows) -> size_t
{
    if (front.empty()) {
        throw std::invalid_argument("cannot select a model from an empty front");
    }
    auto const primitives = PrimitiveSetSize(data.FeatureCount());
    size_t best = 0;
    auto bestScore = ScoreModel(front[0].Tree, data, rows, primitives).Total;
    for (size_t i = 1; i < front.size(); ++i) {
        auto const score = ScoreModel(front[i].Tree, data, rows, primitives).Total;
        if (score < bestScore || (score == bestScore && front[i].Tree.Length() < front[best].Tree.Length())) {
            best = i;
            bestScore = score;
        }
    }
    return best;
}

auto TournamentLoss(size_t populationSize, size_t tournamentSize, size_t trials, uint64_t seed) -> double
{
    if (populationSize < 2 || tournamentSize < 1 || trials < 1) {
        throw std::invalid_argument(fmt::format("invalid tournament simulation (N={}, t={}, trials={})", populationSize, tournamentSize, trials));
    }
    Random rng(seed);
    std::vector<uint8_t> won(populationSize);
    double total = 0;
    for (size_t trial = 0; trial < trials; ++trial) {
        std::ranges::fill(won, 0);
        for (size_t k = 0; k < populationSize; ++k) {
            uint64_t winner = 0;
            for (size_t j = 0; j < tournamentSize; ++j) {
                winner = std::max(winner, rng.Below(populationSize));
            }
            won[winner] = 1;
        }
        size_t lost = 0;
        for (auto w : won) { lost += w == 0 ? 1 : 0; }
        total += static_cast<double>(lost) / static_cast<double>(populationSize);
    }
    return total / static_cast<double>(trials);
}

} // namespace zsr
