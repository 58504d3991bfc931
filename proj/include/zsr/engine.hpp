// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_ENGINE_HPP
#define ZSR_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "zsr/dataset.hpp"
#include "zsr/individual.hpp"
#include "zsr/optim.hpp"

namespace zsr {

struct EngineConfig {
    size_t PopulationSize { 1000 };
    size_t MaxGenerations { 300 };
    size_t MaxLength { 20 };
    size_t MaxDepth { 10 };
    size_t MaxInitialLength { 10 };
    double CrossoverProbability { 1.0 };
    double MutationProbability { 0.25 };
    size_t LocalSearchIterations { 0 };
    bool UseCache { true };
    uint64_t Seed { 0 };
    uint64_t HashSeed { 0x5eed5eedULL }; // Zobrist table seed
    size_t Threads { 1 };
    bool VerifyHashes { false }; // recompute and compare every offspring hash
    LMConfig Lm {};               // MaxIterations is overridden by LocalSearchIterations

    void Validate() const;
    [[nodiscard]] auto LocalSearch() const -> LMConfig;
};

struct GenerationStats {
    size_t Generation { 0 };
    size_t Evaluations { 0 };    // model evaluations (residual and Jacobian passes) spent this generation
    size_t CacheHits { 0 };      // individuals whose fitness came from the cache
    size_t EvaluatorCalls { 0 }; // individuals evaluated anew
    size_t CacheSize { 0 };
    double AvgFitness { 0.0 };   // population mean of min(1 - R^2, 1)
    double AvgLength { 0.0 };
    double BestError { 0.0 };
    size_t FrontSize { 0 };
    double ElapsedMs { 0.0 };
};

struct RunResult {
    std::vector<GenerationStats> Generations;
    size_t TotalEvaluations { 0 };
    size_t CacheHits { 0 };
    size_t EvaluatorCalls { 0 };
    size_t Offspring { 0 };
    size_t InitialPopulation { 0 };
    std::vector<Individual> Population;
    std::vector<Individual> Front; // rank-0 members of the final population
    double Seconds { 0.0 };
};

// Called after the initial population is evaluated (generation 0) and after
// every environmental selection.
using GenerationCallback = std::function<void(size_t generation, std::span<Individual const> population)>;

// Evaluates a model on the training rows: runs local search with the configured
// iterations, stores the optimized coefficients in the individual and sets its
// objectives. Returns the number of model evaluations spent.
auto EvaluateIndividual(Individual& ind, Dataset const& data, LMConfig const& lm, double trainSst) -> size_t;

// NSGA-2 symbolic regression: initialization, crowded tournament selection,
// crossover, mutation, cached (or direct) evaluation, (mu + lambda) survival.
auto Run(EngineConfig const& config, Dataset const& data, GenerationCallback const& onGeneration = {}) -> RunResult;

} // namespace zsr

#endif
