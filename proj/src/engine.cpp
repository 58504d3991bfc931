// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>

#include "zsr/cache.hpp"
#include "zsr/nsga2.hpp"
#include "zsr/operators.hpp"
#include "zsr/random.hpp"
#include "zsr/zobrist.hpp"

namespace zsr {

void EngineConfig::Validate() const
{
    if (PopulationSize == 0 || MaxLength == 0 || MaxDepth == 0 || MaxInitialLength == 0 || Threads == 0) {
        throw std::invalid_argument("population size, length and depth limits and thread count must be positive");
    }
    if (MaxInitialLength > MaxLength) {
        throw std::invalid_argument(fmt::format("max initial length {} exceeds max length {}", MaxInitialLength, MaxLength));
    }
    if (MaxInitialLength > MaxLengthForDepth(MaxDepth)) {
        throw std::invalid_argument(fmt::format("trees of length {} cannot fit within depth {}", MaxInitialLength, MaxDepth));
    }
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(CrossoverProbability) || !probability(MutationProbability)) {
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
    LocalSearch().Validate();
}

auto EngineConfig::LocalSearch() const -> LMConfig
{
    auto lm = Lm;
    lm.MaxIterations = LocalSearchIterations;
    return lm;
}

auto EvaluateIndividual(Individual& ind, Dataset const& data, LMConfig const& lm, double trainSst) -> size_t
{
    auto fit = LevenbergMarquardt(ind.Tree, data, data.Training(), lm);
    ind.Tree = std::move(fit.Tree);
    auto const r2 = std::isfinite(fit.Sse) ? 1.0 - fit.Sse / trainSst : -std::numeric_limits<double>::infinity();
    ind.Objectives = { ErrorFromRSquared(r2), static_cast<double>(ind.Tree.Length()) };
    return fit.Evaluations;
}

namespace {
    template <typename F>
    void ParallelFor(size_t count, size_t threads, F&& body)
    {
        if (threads <= 1 || count <= 1) {
            for (size_t i = 0; i < count; ++i) { body(i); }
            return;
        }
        std::atomic<size_t> next { 0 };
        std::exception_ptr error;
        std::mutex errorMutex;
        {
            std::vector<std::jthread> workers;
            for (size_t t = 0; t < std::min(threads, count); ++t) {
                workers.emplace_back([&]() {
                    for (auto i = next++; i < count; i = next++) {
                        try {
                            body(i);
                        } catch (...) {
                            std::scoped_lock lock(errorMutex);
                            if (!error) { error = std::current_exception(); }
                            next = count;
                        }
                    }
                });
            }
        }
        if (error) { std::rethrow_exception(error); }
    }

    struct SlotRecord {
        size_t Evaluations { 0 };
        bool Evaluated { false };
        bool Hit { false };
    };

    auto Summarize(size_t generation, std::span<Individual const> population, std::span<SlotRecord const> slots,
        size_t cacheSize, double elapsedMs) -> GenerationStats
    {
        GenerationStats s;
        s.Generation = generation;
        for (auto const& r : slots) {
            s.Evaluations += r.Evaluations;
            s.CacheHits += r.Hit ? 1 : 0;
            s.EvaluatorCalls += r.Evaluated ? 1 : 0;
        }
        s.CacheSize = cacheSize;
        s.BestError = std::numeric_limits<double>::infinity();
        for (auto const& ind : population) {
            s.AvgFitness += std::min(ind.Error(), 1.0);
            s.AvgLength += static_cast<double>(ind.Tree.Length());
            s.BestError = std::min(s.BestError, ind.Error());
            s.FrontSize += ind.Rank == 0 ? 1 : 0;
        }
        auto const n = static_cast<double>(population.size());
        s.AvgFitness /= n;
        s.AvgLength /= n;
        s.ElapsedMs = elapsedMs;
        return s;
    }

    void CheckOffspring(Individual const& child, ZobristTable const& table, Limits const& limits)
    {
        if (table.HashTree(child.Tree) != child.Hash) {
            throw std::logic_error(fmt::format("hash mismatch for offspring {}", Serialize(child.Tree)));
        }
        if (child.Tree.Length() > limits.MaxLength || child.Tree.Depth() > limits.MaxDepth) {
            throw std::logic_error(fmt::format("offspring {} violates the size limits", Serialize(child.Tree)));
        }
    }
} // namespace

auto Run(EngineConfig const& config, Dataset const& data, GenerationCallback const& onGeneration) -> RunResult
{
    config.Validate();
    if (data.FeatureCount() == 0) {
        throw std::invalid_argument("the dataset has no feature columns");
    }
    auto const start = std::chrono::steady_clock::now();
    auto elapsedMs = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    auto const train = data.Target(data.Training());
    double mean = 0;
    for (auto y : train) { mean += y; }
    mean /= static_cast<double>(train.size());
    double sst = 0;
    for (auto y : train) { sst += (y - mean) * (y - mean); }
    if (!(sst > 0)) {
        throw std::domain_error("degenerate dataset: the training target is constant");
    }

    Limits const limits { config.MaxLength, config.MaxDepth };
    auto const lm = config.LocalSearch();
    auto const table = ZobristTable::ForPrimitiveSet(config.MaxLength, data.FeatureCount(), config.HashSeed);
    TreeCreator const creator(data.FeatureCount());
    FitnessCache cache;
    auto const n = config.PopulationSize;

    RunResult result;
    std::vector<SlotRecord> slots(n);
    std::vector<Individual> population(n);

    ParallelFor(n, config.Threads, [&](size_t s) {
        auto rng = Random::ForStream(config.Seed, 0, s);
        auto const length = 1 + static_cast<size_t>(rng.Below(config.MaxInitialLength));
        auto& ind = population[s];
        ind.Tree = creator.Create(rng, length, config.MaxDepth);
        ind.Hash = table.HashTree(ind.Tree);
        slots[s] = { EvaluateIndividual(ind, data, lm, sst), true, false };
    });
    if (config.UseCache) {
        cache.SeedWith(population);
    }
    AssignRankAndCrowding(population);
    result.InitialPopulation = n;
    result.Generations.push_back(Summarize(0, population, slots, cache.Size(), elapsedMs()));
    if (onGeneration) { onGeneration(0, population); }

    std::vector<Individual> offspring(n);
    for (size_t gen = 1; gen <= config.MaxGenerations; ++gen) {
        ParallelFor(n, config.Threads, [&](size_t s) {
            auto rng = Random::ForStream(config.Seed, gen, s);
            auto const& p1 = population[SelectParent(population, rng)];
            auto const& p2 = population[SelectParent(population, rng)];
            auto crossed = Crossover(p1, p2, rng, limits, table, config.CrossoverProbability);
            auto mutated = Mutate(crossed.Child, rng, limits, creator, table, config.MutationProbability);
            auto& child = offspring[s];
            child = std::move(mutated.Child);
            if (config.VerifyHashes) { CheckOffspring(child, table, limits); }

            SlotRecord record;
            if (config.UseCache) {
                auto fitness = cache.GetOrEvaluate(child.Hash, [&]() {
                    record.Evaluations = EvaluateIndividual(child, data, lm, sst);
                    record.Evaluated = true;
                    return CachedFitness { child.Error(), child.Tree.Length() };
                });
                record.Hit = !record.Evaluated;
                child.Objectives = { fitness.Error, static_cast<double>(child.Tree.Length()) };
            } else {
                record.Evaluations = EvaluateIndividual(child, data, lm, sst);
                record.Evaluated = true;
            }
            slots[s] = record;
        });

        std::vector<Individual> pool;
        pool.reserve(2 * n);
        std::ranges::move(population, std::back_inserter(pool));
        std::ranges::move(offspring, std::back_inserter(pool));
        AssignRankAndCrowding(pool);
        population = SelectSurvivors(std::move(pool), n);
        AssignRankAndCrowding(population);

        result.Generations.push_back(Summarize(gen, population, slots, config.UseCache ? cache.Size() : 0, elapsedMs()));
        if (onGeneration) { onGeneration(gen, population); }
    }

    for (auto const& g : result.Generations) {
        result.TotalEvaluations += g.Evaluations;
        result.CacheHits += g.CacheHits;
        result.EvaluatorCalls += g.EvaluatorCalls;
    }
    result.Offspring = n * config.MaxGenerations;
    for (auto const& ind : population) {
        if (ind.Rank == 0) { result.Front.push_back(ind); }
    }
    result.Population = std::move(population);
    result.Seconds = elapsedMs() / 1000.0;
    return result;
}

} // namespace zsr
