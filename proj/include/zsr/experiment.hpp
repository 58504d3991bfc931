// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_EXPERIMENT_HPP
#define ZSR_EXPERIMENT_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsr/dataset.hpp"
#include "zsr/engine.hpp"
#include "zsr/model_selection.hpp"

namespace zsr {

struct FinalModel {
    std::string Infix;
    std::string Structure;
    size_t Length { 0 };
    double R2Train { 0.0 };
    double R2Test { 0.0 };
    MdlScore Mdl;
};

// One engine run inside an experiment.
struct ArmRun {
    size_t LocalSearchIterations { 0 };
    bool UseCache { false };
    size_t Repetition { 0 };
    uint64_t Seed { 0 };
    RunResult Result;
    FinalModel Model;
};

// Aggregate over the repetitions of one (local search iterations, cache) cell.
struct CellSummary {
    size_t LocalSearchIterations { 0 };
    bool UseCache { false };
    size_t Runs { 0 };
    double MeanEvaluations { 0.0 };
    double MeanSeconds { 0.0 };
    double MedianR2Train { 0.0 };
    double MedianR2Test { 0.0 };
    double StdR2Test { 0.0 };
    double MedianModelLength { 0.0 };
};

// Cache-on versus cache-off for one local search setting.
struct PairSummary {
    size_t LocalSearchIterations { 0 };
    double EvaluationsCached { 0.0 };
    double EvaluationsUncached { 0.0 };
    double SavedEffort { 0.0 }; // 1 - cached / uncached evaluations
    double Speedup { 0.0 };     // uncached / cached wall-clock time
    double MedianR2TrainDifference { 0.0 }; // median over repetitions of (cached - uncached)
};

struct ExperimentReport {
    std::vector<ArmRun> Runs;
    std::vector<CellSummary> Cells;
    std::vector<PairSummary> Pairs;
};

struct ExperimentConfig {
    EngineConfig Engine;
    size_t Repetitions { 1 };
    // Local search settings to sweep; empty means Engine.LocalSearchIterations only.
    std::vector<size_t> LocalSearchSweep;
    // Run both cache arms; otherwise only the arm selected by Engine.UseCache.
    bool Paired { true };
};

// MDL-selected member of the final front, scored on train and test rows.
auto FinalizeModel(RunResult const& run, Dataset const& data) -> FinalModel;

// Repetition r runs with seed Engine.Seed + r in every cell, so paired arms share seeds.
auto RunExperiment(ExperimentConfig const& config, Dataset const& data,
    std::function<void(ArmRun const&)> const& onRun = {}) -> ExperimentReport;

inline constexpr std::string_view GenerationCsvHeader =
    "generation,evaluations_total,evaluations_cached,cache_size,avg_fitness,avg_length,best_error,front_size,elapsed_ms";

// One row per generation, columns as in GenerationCsvHeader. With `timing`
// false the elapsed_ms column is written as 0 so that outputs are reproducible.
void WriteGenerationCsv(std::ostream& out, RunResult const& run, bool timing = true);

auto ToJson(FinalModel const& model) -> nlohmann::json;
auto ToJson(ArmRun const& run, Dataset const& data) -> nlohmann::json;
auto ToJson(CellSummary const& cell) -> nlohmann::json;
auto ToJson(PairSummary const& pair) -> nlohmann::json;

auto Median(std::vector<double> values) -> double;

} // namespace zsr

#endif
