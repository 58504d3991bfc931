// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "zsr/dataset.hpp"
#include "zsr/engine.hpp"
#include "zsr/experiment.hpp"
#include "zsr/model_selection.hpp"

namespace fs = std::filesystem;

namespace {

struct DataOptions {
    std::string Dataset;
    std::string Target { "y" };
    std::string Synthetic;
    size_t Rows { 1000 };
    double TrainFraction { 0.8 };
    uint64_t ShuffleSeed { 0 };
    double Noise { 0.0 };
};

void AddDataOptions(CLI::App* app, DataOptions& opts)
{
    app->add_option("--dataset", opts.Dataset, "CSV file with a header row");
    app->add_option("--target", opts.Target, "Name of the target column")->capture_default_str();
    app->add_option("--synthetic", opts.Synthetic, "Built-in problem instead of a file (poly2, trig)");
    app->add_option("--rows", opts.Rows, "Rows generated for --synthetic")->capture_default_str();
    app->add_option("--noise", opts.Noise, "Gaussian noise sigma for --synthetic")->capture_default_str();
    app->add_option("--train-fraction", opts.TrainFraction, "Fraction of rows used for training")->capture_default_str();
    app->add_option("--shuffle-seed", opts.ShuffleSeed, "Seed for the row shuffle (and synthetic inputs)")->capture_default_str();
}

auto LoadData(DataOptions const& opts) -> zsr::Dataset
{
    if (opts.Dataset.empty() == opts.Synthetic.empty()) {
        throw std::invalid_argument("exactly one of --dataset and --synthetic is required");
    }
    if (!opts.Synthetic.empty()) {
        return zsr::MakeSynthetic(opts.Synthetic, opts.Rows, opts.ShuffleSeed, opts.TrainFraction, opts.Noise);
    }
    return zsr::IngestCsv(opts.Dataset, opts.Target, opts.TrainFraction, opts.ShuffleSeed);
}

void AddEngineOptions(CLI::App* app, zsr::EngineConfig& cfg)
{
    app->add_option("--population-size", cfg.PopulationSize, "Population size")->capture_default_str();
    app->add_option("--max-generations", cfg.MaxGenerations, "Number of generations")->capture_default_str();
    app->add_option("--max-length", cfg.MaxLength, "Maximum tree length")->capture_default_str();
    app->add_option("--max-depth", cfg.MaxDepth, "Maximum tree depth")->capture_default_str();
    app->add_option("--max-initial-length", cfg.MaxInitialLength, "Maximum initial tree length")->capture_default_str();
    app->add_option("--crossover-probability", cfg.CrossoverProbability, "Crossover probability")->capture_default_str();
    app->add_option("--mutation-probability", cfg.MutationProbability, "Mutation probability")->capture_default_str();
    app->add_option("--local-search-iterations", cfg.LocalSearchIterations, "Levenberg-Marquardt iterations per model")->capture_default_str();
    app->add_option("--seed", cfg.Seed, "Random seed")->capture_default_str();
    app->add_option("--hash-seed", cfg.HashSeed, "Seed of the Zobrist key table")->capture_default_str();
    app->add_option("--threads", cfg.Threads, "Worker threads per run")->capture_default_str();
    app->add_flag("--verify-hashes", cfg.VerifyHashes, "Check every offspring hash against a full recomputation");
}

void WriteText(fs::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw std::runtime_error(fmt::format("cannot write '{}'", path.string())); }
    out << text;
}

auto ArmName(zsr::ArmRun const& run) -> std::string
{
    return fmt::format("ls{}_cache{}_rep{}", run.LocalSearchIterations, run.UseCache ? "on" : "off", run.Repetition);
}

void PrintModel(zsr::FinalModel const& m)
{
    fmt::print("  model    {}\n", m.Infix);
    fmt::print("  length   {}\n", m.Length);
    fmt::print("  R2 train {:.6f}  R2 test {:.6f}\n", m.R2Train, m.R2Test);
    fmt::print("  MDL      {:.3f} = {:.3f} (residual) + {:.3f} (structure) + {:.3f} (parameters)\n", m.Mdl.Total,
        m.Mdl.Residual, m.Mdl.Structure, m.Mdl.Parameters);
}

auto RunExperimentCommand(zsr::ExperimentConfig const& cfg, DataOptions const& data, std::string const& outDir, bool timing) -> int
{
    auto ds = LoadData(data);
    fs::path const dir(outDir);
    if (!outDir.empty()) { fs::create_directories(dir); }

    nlohmann::json runs = nlohmann::json::array();
    auto report = zsr::RunExperiment(cfg, ds, [&](zsr::ArmRun const& run) {
        auto const& r = run.Result;
        fmt::print("[ls={} cache={} rep={} seed={}] evaluations={} hits={} time={:.2f}s\n", run.LocalSearchIterations,
            run.UseCache ? "on" : "off", run.Repetition, run.Seed, r.TotalEvaluations, r.CacheHits, r.Seconds);
        PrintModel(run.Model);
        if (!outDir.empty()) {
            std::ostringstream csv;
            zsr::WriteGenerationCsv(csv, r, timing);
            WriteText(dir / fmt::format("generations_{}.csv", ArmName(run)), csv.str());
        }
        auto j = zsr::ToJson(run, ds);
        if (!timing) { j["seconds"] = 0.0; }
        runs.push_back(std::move(j));
    });

    nlohmann::json cells = nlohmann::json::array();
    for (auto const& c : report.Cells) {
        auto j = zsr::ToJson(c);
        if (!timing) { j["mean_seconds"] = 0.0; }
        cells.push_back(std::move(j));
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (auto const& p : report.Pairs) {
        fmt::print("ls={:>3}  evaluations cached={:.0f} uncached={:.0f}  saved effort={:.3f}  speedup={:.3f}  median dR2(train)={:+.4f}\n",
            p.LocalSearchIterations, p.EvaluationsCached, p.EvaluationsUncached, p.SavedEffort, p.Speedup, p.MedianR2TrainDifference);
        auto j = zsr::ToJson(p);
        if (!timing) { j["speedup"] = 0.0; }
        pairs.push_back(std::move(j));
    }
    if (!outDir.empty()) {
        nlohmann::json summary {
            { "dataset", data.Synthetic.empty() ? data.Dataset : "synthetic:" + data.Synthetic },
            { "rows", ds.Rows() },
            { "train_rows", ds.Training().Size },
            { "test_rows", ds.Test().Size },
            { "runs", std::move(runs) },
            { "cells", std::move(cells) },
            { "pairs", std::move(pairs) },
        };
        WriteText(dir / "summary.json", summary.dump(2) + "\n");
    }
    return EXIT_SUCCESS;
}

} // namespace

auto main(int argc, char** argv) -> int
{
    CLI::App app { "Symbolic regression with Zobrist-hash fitness caching" };
    app.require_subcommand(1);

    // run: one engine run
    zsr::EngineConfig runCfg;
    DataOptions runData;
    std::string runOut;
    bool runUseCache = true;
    bool runNoTiming = false;
    auto* run = app.add_subcommand("run", "Single run with or without the fitness cache");
    AddEngineOptions(run, runCfg);
    AddDataOptions(run, runData);
    run->add_option("--use-cache", runUseCache, "Enable the transposition cache (true/false)")->capture_default_str();
    run->add_option("--out-dir", runOut, "Directory for generations.csv and summary.json");
    run->add_flag("--no-timing", runNoTiming, "Write 0 for wall-clock columns (byte-reproducible output)");

    // experiment: paired cache on/off runs over repetitions and a local search sweep
    zsr::ExperimentConfig expCfg;
    DataOptions expData;
    std::string expOut;
    std::vector<size_t> sweep;
    bool expNoTiming = false;
    auto* exp = app.add_subcommand("experiment", "Paired cache on/off runs, optionally over a local search sweep");
    AddEngineOptions(exp, expCfg.Engine);
    AddDataOptions(exp, expData);
    exp->add_option("--repetitions", expCfg.Repetitions, "Seeds per cell (seed, seed+1, ...)")->capture_default_str();
    exp->add_option("--local-search-sweep", sweep, "Comma separated local search iterations, e.g. 0,1,10,50,100")->delimiter(',');
    exp->add_option("--out-dir", expOut, "Directory for per-run generation CSVs and summary.json");
    exp->add_flag("--no-timing", expNoTiming, "Write 0 for wall-clock columns (byte-reproducible output)");

    // tournament: selection pressure simulation
    size_t tPop = 1000;
    size_t tMax = 10;
    size_t tTrials = 10000;
    uint64_t tSeed = 0;
    auto* tour = app.add_subcommand("tournament", "Fraction of individuals never selected vs. tournament size");
    tour->add_option("--population-size", tPop, "Population size")->capture_default_str();
    tour->add_option("--max-tournament-size", tMax, "Largest tournament size simulated")->capture_default_str();
    tour->add_option("--trials", tTrials, "Monte Carlo trials per size")->capture_default_str();
    tour->add_option("--seed", tSeed, "Random seed")->capture_default_str();

    // synth: write a built-in problem as CSV
    std::string synName = "poly2";
    size_t synRows = 1000;
    uint64_t synSeed = 0;
    double synNoise = 0.0;
    std::string synOut;
    auto* synth = app.add_subcommand("synth", "Write a built-in synthetic problem as CSV");
    synth->add_option("--name", synName, "poly2 or trig")->capture_default_str();
    synth->add_option("--rows", synRows, "Row count")->capture_default_str();
    synth->add_option("--seed", synSeed, "Input sampling seed")->capture_default_str();
    synth->add_option("--noise", synNoise, "Gaussian noise sigma")->capture_default_str();
    synth->add_option("--out", synOut, "Output file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            zsr::ExperimentConfig cfg;
            cfg.Engine = runCfg;
            cfg.Engine.UseCache = runUseCache;
            cfg.Paired = false;
            auto ds = LoadData(runData);
            auto result = zsr::Run(cfg.Engine, ds);
            zsr::ArmRun arm { .LocalSearchIterations = cfg.Engine.LocalSearchIterations, .UseCache = runUseCache,
                .Repetition = 0, .Seed = cfg.Engine.Seed, .Result = std::move(result), .Model = {} };
            arm.Model = zsr::FinalizeModel(arm.Result, ds);
            auto const& r = arm.Result;
            fmt::print("generations={} evaluations={} evaluator_calls={} cache_hits={} time={:.2f}s\n",
                r.Generations.size() - 1, r.TotalEvaluations, r.EvaluatorCalls, r.CacheHits, r.Seconds);
            PrintModel(arm.Model);
            if (!runOut.empty()) {
                fs::create_directories(runOut);
                std::ostringstream csv;
                zsr::WriteGenerationCsv(csv, r, !runNoTiming);
                WriteText(fs::path(runOut) / "generations.csv", csv.str());
                auto j = zsr::ToJson(arm, ds);
                if (runNoTiming) { j["seconds"] = 0.0; }
                WriteText(fs::path(runOut) / "summary.json", j.dump(2) + "\n");
            }
            return EXIT_SUCCESS;
        }
        if (*exp) {
            expCfg.LocalSearchSweep = sweep;
            return RunExperimentCommand(expCfg, expData, expOut, !expNoTiming);
        }
        if (*tour) {
            fmt::print("tournament_size,not_selected\n");
            for (size_t t = 1; t <= tMax; ++t) {
                fmt::print("{},{:.6f}\n", t, zsr::TournamentLoss(tPop, t, tTrials, tSeed + t));
            }
            return EXIT_SUCCESS;
        }
        if (*synth) {
            auto ds = zsr::MakeSynthetic(synName, synRows, synSeed, 0.5, synNoise);
            std::ostringstream out;
            out << "x1,x2,y\n";
            // rows are written in stored order; the split is redone on ingestion
            for (size_t i = 0; i < ds.Rows(); ++i) {
                out << fmt::format("{},{},{}\n", ds.Feature(0)[i], ds.Feature(1)[i], ds.Target()[i]);
            }
            if (synOut.empty()) {
                std::cout << out.str();
            } else {
                WriteText(synOut, out.str());
            }
            return EXIT_SUCCESS;
        }
    } catch (std::exception const& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}
