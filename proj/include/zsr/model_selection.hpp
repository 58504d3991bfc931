// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_MODEL_SELECTION_HPP
#define ZSR_MODEL_SELECTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "zsr/dataset.hpp"
#include "zsr/individual.hpp"

namespace zsr {

// Two-part codelength in nats.
struct MdlScore {
    double Residual { 0.0 };   // (n/2) ln(SSE/n)
    double Structure { 0.0 };  // length * ln(primitive set size)
    double Parameters { 0.0 }; // (coefficients/2) ln(n)
    double Total { 0.0 };
};

// Function symbols, the constant terminal and one terminal per feature.
constexpr auto PrimitiveSetSize(size_t features) noexcept -> size_t { return 9 + 1 + features; }

// Non-finite SSE yields an infinite total.
auto ComputeMdl(double sse, size_t rows, size_t length, size_t coefficients, size_t primitives) -> MdlScore;

// Scores a model on the given rows; every node carries one coefficient.
auto ScoreModel(Tree const& tree, Dataset const& data, Range rows, size_t primitives) -> MdlScore;

// Index of the member with the smallest total codelength; ties go to the
// shorter model, then to the earlier one. Throws std::invalid_argument on an empty front.
auto MdlSelect(std::span<Individual const> front, Dataset const& data, Range rows) -> size_t;

// Monte Carlo estimate of the fraction of a population that never wins a
// tournament in one generation: N tournaments of size t, contestants drawn
// uniformly with replacement, fitness given by distinct ranks.
auto TournamentLoss(size_t populationSize, size_t tournamentSize, size_t trials, uint64_t seed = 0) -> double;

} // namespace zsr

#endif
