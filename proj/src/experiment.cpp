// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>

namespace zsr {

auto Median(std::vector<double> values) -> double
{
    if (values.empty()) { return std::numeric_limits<double>::quiet_NaN(); }
    auto const mid = values.size() / 2;
    std::ranges::nth_element(values, values.begin() + static_cast<std::ptrdiff_t>(mid));
    auto const upper = values[mid];
    if (values.size() % 2 == 1) { return upper; }
    auto const lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

namespace {
    auto SafeRSquared(Tree const& tree, Dataset const& data, Range rows) -> double
    {
        try {
            return RSquared(Evaluate(tree, data, rows), data.Target(rows));
        } catch (std::domain_error const&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
} // namespace

auto FinalizeModel(RunResult const& run, Dataset const& data) -> FinalModel
{
    auto const& front = run.Front.empty() ? run.Population : run.Front;
    if (front.empty()) {
        throw std::invalid_argument("run has no population");
    }
    auto const& best = front[MdlSelect(front, data, data.Training())].Tree;
    FinalModel model;
    model.Infix = ToInfix(best, data.FeatureNames());
    model.Structure = Serialize(best);
    model.Length = best.Length();
    model.R2Train = SafeRSquared(best, data, data.Training());
    model.R2Test = SafeRSquared(best, data, data.Test());
    model.Mdl = ScoreModel(best, data, data.Training(), PrimitiveSetSize(data.FeatureCount()));
    return model;
}

auto RunExperiment(ExperimentConfig const& config, Dataset const& data, std::function<void(ArmRun const&)> const& onRun)
    -> ExperimentReport
{
    if (config.Repetitions == 0) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    auto sweep = config.LocalSearchSweep;
    if (sweep.empty()) { sweep.push_back(config.Engine.LocalSearchIterations); }
    std::vector<bool> arms;
    if (config.Paired) {
        arms = { true, false };
    } else {
        arms = { config.Engine.UseCache };
    }

    ExperimentReport report;
    for (auto iterations : sweep) {
        for (size_t rep = 0; rep < config.Repetitions; ++rep) {
            for (auto useCache : arms) {
                auto engine = config.Engine;
                engine.LocalSearchIterations = iterations;
                engine.UseCache = useCache;
                engine.Seed = config.Engine.Seed + rep;
                ArmRun arm;
                arm.LocalSearchIterations = iterations;
                arm.UseCache = useCache;
                arm.Repetition = rep;
                arm.Seed = engine.Seed;
                arm.Result = Run(engine, data);
                arm.Model = FinalizeModel(arm.Result, data);
                if (onRun) { onRun(arm); }
                report.Runs.push_back(std::move(arm));
            }
        }
    }

    for (auto iterations : sweep) {
        std::map<bool, CellSummary> cells;
        for (auto useCache : arms) {
            CellSummary cell;
            cell.LocalSearchIterations = iterations;
            cell.UseCache = useCache;
            std::vector<double> r2Train;
            std::vector<double> r2Test;
            std::vector<double> lengths;
            for (auto const& run : report.Runs) {
                if (run.LocalSearchIterations != iterations || run.UseCache != useCache) { continue; }
                ++cell.Runs;
                cell.MeanEvaluations += static_cast<double>(run.Result.TotalEvaluations);
                cell.MeanSeconds += run.Result.Seconds;
                r2Train.push_back(run.Model.R2Train);
                r2Test.push_back(run.Model.R2Test);
                lengths.push_back(static_cast<double>(run.Model.Length));
            }
            auto const n = static_cast<double>(cell.Runs);
            cell.MeanEvaluations /= n;
            cell.MeanSeconds /= n;
            cell.MedianR2Train = Median(r2Train);
            cell.MedianR2Test = Median(r2Test);
            double mean = 0;
            for (auto v : r2Test) { mean += v; }
            mean /= n;
            double var = 0;
            for (auto v : r2Test) { var += (v - mean) * (v - mean); }
            cell.StdR2Test = r2Test.size() > 1 ? std::sqrt(var / (n - 1)) : 0.0;
            cell.MedianModelLength = Median(lengths);
            cells[useCache] = cell;
            report.Cells.push_back(cell);
        }
        if (config.Paired) {
            PairSummary pair;
            pair.LocalSearchIterations = iterations;
            pair.EvaluationsCached = cells[true].MeanEvaluations;
            pair.EvaluationsUncached = cells[false].MeanEvaluations;
            pair.SavedEffort = 1.0 - pair.EvaluationsCached / pair.EvaluationsUncached;
            pair.Speedup = cells[false].MeanSeconds / cells[true].MeanSeconds;
            std::vector<double> diffs;
            for (size_t rep = 0; rep < config.Repetitions; ++rep) {
                double on = 0;
                double off = 0;
                for (auto const& run : report.Runs) {
                    if (run.LocalSearchIterations != iterations || run.Repetition != rep) { continue; }
                    (run.UseCache ? on : off) = run.Model.R2Train;
                }
                diffs.push_back(on - off);
            }
            pair.MedianR2TrainDifference = Median(diffs);
            report.Pairs.push_back(pair);
        }
    }
    return report;
}

void WriteGenerationCsv(std::ostream& out, RunResult const& run, bool timing)
{
    out << GenerationCsvHeader << '\n';
    for (auto const& g : run.Generations) {
        out << fmt::format("{},{},{},{},{},{},{},{},{}\n", g.Generation, g.Evaluations, g.CacheHits, g.CacheSize,
            g.AvgFitness, g.AvgLength, g.BestError, g.FrontSize, timing ? g.ElapsedMs : 0.0);
    }
}

auto ToJson(FinalModel const& model) -> nlohmann::json
{
    return {
        { "infix", model.Infix },
        { "structure", model.Structure },
        { "length", model.Length },
        { "r2_train", model.R2Train },
        { "r2_test", model.R2Test },
        { "mdl", { { "residual", model.Mdl.Residual }, { "structure", model.Mdl.Structure },
                     { "parameters", model.Mdl.Parameters }, { "total", model.Mdl.Total } } },
    };
}

auto ToJson(ArmRun const& run, Dataset const& data) -> nlohmann::json
{
    auto const& r = run.Result;
    nlohmann::json front = nlohmann::json::array();
    auto const primitives = PrimitiveSetSize(data.FeatureCount());
    std::vector<Hash> seen;
    for (auto const& ind : r.Front) {
        if (std::ranges::find(seen, ind.Hash) != seen.end()) { continue; }
        seen.push_back(ind.Hash);
        auto mdl = ScoreModel(ind.Tree, data, data.Training(), primitives);
        front.push_back({
            { "infix", ToInfix(ind.Tree, data.FeatureNames()) },
            { "error", ind.Objectives[0] },
            { "length", ind.Objectives[1] },
            { "mdl", mdl.Total },
        });
    }
    return {
        { "local_search_iterations", run.LocalSearchIterations },
        { "use_cache", run.UseCache },
        { "repetition", run.Repetition },
        { "seed", run.Seed },
        { "generations", r.Generations.empty() ? 0 : r.Generations.size() - 1 },
        { "evaluations_total", r.TotalEvaluations },
        { "evaluator_calls", r.EvaluatorCalls },
        { "cache_hits", r.CacheHits },
        { "offspring", r.Offspring },
        { "initial_population", r.InitialPopulation },
        { "seconds", r.Seconds },
        { "model", ToJson(run.Model) },
        { "front", std::move(front) },
    };
}

auto ToJson(CellSummary const& cell) -> nlohmann::json
{
    return {
        { "local_search_iterations", cell.LocalSearchIterations },
        { "use_cache", cell.UseCache },
        { "runs", cell.Runs },
        { "mean_evaluations", cell.MeanEvaluations },
        { "mean_seconds", cell.MeanSeconds },
        { "median_r2_train", cell.MedianR2Train },
        { "median_r2_test", cell.MedianR2Test },
        { "std_r2_test", cell.StdR2Test },
        { "median_model_length", cell.MedianModelLength },
    };
}

auto ToJson(PairSummary const& pair) -> nlohmann::json
{
    return {
        { "local_search_iterations", pair.LocalSearchIterations },
        { "evaluations_cached", pair.EvaluationsCached },
        { "evaluations_uncached", pair.EvaluationsUncached },
        { "saved_effort", pair.SavedEffort },
        { "speedup", pair.Speedup },
        { "median_r2_train_difference", pair.MedianR2TrainDifference },
    };
}

} // namespace zsr
