// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Criterion numbers may be passed as arguments to run a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <fmt/core.h>

#include "helpers.hpp"
#include "zsr/cache.hpp"
#include "zsr/engine.hpp"
#include "zsr/experiment.hpp"
#include "zsr/model_selection.hpp"
#include "zsr/nsga2.hpp"
#include "zsr/operators.hpp"
#include "zsr/optim.hpp"
#include "zsr/zobrist.hpp"

using namespace zsr;

namespace {

using Clock = std::chrono::steady_clock;

auto Seconds(Clock::time_point since) -> double
{
    return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
    bool Pass { false };
    std::string Detail;
};

// ---------------------------------------------------------------------------
// Shared engine workloads

constexpr size_t Population = 500;
constexpr size_t Generations = 100;
constexpr size_t QualitySeeds = 20;

auto Workload(size_t lm, bool cache, uint64_t seed) -> EngineConfig
{
    EngineConfig cfg;
    cfg.PopulationSize = Population;
    cfg.MaxGenerations = Generations;
    cfg.MaxLength = 20;
    cfg.MaxDepth = 10;
    cfg.MaxInitialLength = 10;
    cfg.CrossoverProbability = 1.0;
    cfg.MutationProbability = 0.25;
    cfg.LocalSearchIterations = lm;
    cfg.UseCache = cache;
    cfg.Seed = seed;
    cfg.Threads = 1;
    return cfg;
}

struct Arm {
    RunResult Result;
    FinalModel Model;
};

struct Problem {
    std::string Name;
    Dataset Data;
};

auto Problems() -> std::vector<Problem> const&
{
    static std::vector<Problem> const problems {
        { "poly2", MakeSynthetic("poly2", 5000, 1) },
        { "trig", MakeSynthetic("trig", 1000, 1) },
    };
    return problems;
}

// Runs are memoized so that criteria sharing a workload do not repeat it.
std::map<std::tuple<std::string, size_t, bool, uint64_t>, Arm> runCache;
double engineSeconds = 0;

auto RunArm(Problem const& p, size_t lm, bool cache, uint64_t seed, GenerationCallback const& cb = {}) -> Arm const&
{
    auto key = std::make_tuple(p.Name, lm, cache, seed);
    if (auto it = runCache.find(key); it != runCache.end() && !cb) { return it->second; }
    auto start = Clock::now();
    Arm arm;
    arm.Result = Run(Workload(lm, cache, seed), p.Data, cb);
    arm.Model = FinalizeModel(arm.Result, p.Data);
    engineSeconds += Seconds(start);
    fmt::print(stderr, "  {} lm={} cache={} seed={}: evals={} hits={} r2={:.4f} ({:.1f}s)\n", p.Name, lm, cache, seed,
        arm.Result.TotalEvaluations, arm.Result.CacheHits, arm.Model.R2Train, arm.Result.Seconds);
    return runCache[key] = std::move(arm);
}

auto FrontSignature(RunResult const& r) -> std::vector<std::string>
{
    std::vector<std::string> out;
    for (auto const& ind : r.Front) {
        out.push_back(fmt::format("{}|{:a}|{}", Serialize(ind.Tree), ind.Objectives[0], ind.Objectives[1]));
    }
    std::ranges::sort(out);
    return out;
}

// ---------------------------------------------------------------------------
// 1. incremental hash equals full hash over random variation events

auto HashEquivalence() -> Verdict
{
    auto const start = Clock::now();
    Limits const limits { 20, 10 };
    std::vector<ZobristTable> tables;
    std::vector<TreeCreator> creators;
    for (size_t f = 1; f <= 8; ++f) {
        tables.push_back(ZobristTable::ForPrimitiveSet(limits.MaxLength, f, 1000 + f));
        creators.emplace_back(f);
    }
    constexpr std::array subtreeKinds { MutationKind::InsertSubtree, MutationKind::RemoveSubtree, MutationKind::ReplaceSubtree };
    Random rng(2024);
    size_t events = 0;
    size_t mismatches = 0;
    size_t crossovers = 0;
    while (events < 100000) {
        auto const f = 1 + static_cast<size_t>(rng.Below(8));
        auto const& table = tables[f - 1];
        auto make = [&]() {
            Individual ind;
            ind.Tree = test::RandomTree(rng, f, limits.MaxLength, limits.MaxDepth);
            ind.Hash = table.HashTree(ind.Tree);
            return ind;
        };
        auto a = make();
        SwapDescriptor swap;
        Tree child;
        if (rng.Below(2) == 0) {
            auto b = make();
            auto x = Crossover(a, b, rng, limits, table, 1.0);
            if (!x.Applied) { continue; }
            swap = std::move(x.Swap);
            child = std::move(x.Child.Tree);
            ++crossovers;
        } else {
            auto applicable = ApplicableMutations(a.Tree, limits, f);
            std::vector<MutationKind> kinds;
            for (auto k : subtreeKinds) {
                if (std::ranges::find(applicable, k) != applicable.end()) { kinds.push_back(k); }
            }
            auto m = MutateWith(kinds[rng.Below(kinds.size())], a, rng, limits, creators[f - 1], table);
            swap = std::move(m.Swap);
            child = std::move(m.Child.Tree);
        }
        mismatches += table.HashIncremental(swap) != table.HashTree(child) ? 1 : 0;
        ++events;
    }
    auto const secs = Seconds(start);
    return { mismatches == 0 && secs < 10.0,
        fmt::format("{} events ({} crossovers), {} mismatches, {:.2f}s (limit 10s)", events, crossovers, mismatches, secs) };
}

// ---------------------------------------------------------------------------
// 2. XOR algebra over random triples

auto XorAlgebra() -> Verdict
{
    Random rng(7);
    size_t failures = 0;
    constexpr size_t triples = 10000;
    for (size_t i = 0; i < triples; ++i) {
        Hash a = rng();
        Hash b = rng();
        Hash c = rng();
        bool ok = (a ^ b) == (b ^ a);
        ok &= ((a ^ b) ^ c) == (a ^ (b ^ c));
        ok &= ((a ^ b) ^ b) == a;
        ok &= (a ^ a) == 0 && (a ^ 0) == a;
        failures += ok ? 0 : 1;
    }
    return { failures == 0, fmt::format("{} triples, {} failures", triples, failures) };
}

// ---------------------------------------------------------------------------
// 3. no collisions among a million distinct structures

// Trees that the feature identifiers cannot tell apart: the same symbol at every
// position, and every feature used the same number of times modulo two (the
// identifiers of a feature used twice cancel out).
auto IdentifierAliased(Tree const& a, Tree const& b) -> bool
{
    if (a.Length() != b.Length()) { return false; }
    std::map<uint32_t, int> parity;
    for (size_t i = 0; i < a.Length(); ++i) {
        if (a[i].Type != b[i].Type) { return false; }
        if (a[i].IsVariable()) {
            parity[a[i].Feature] ^= 1;
            parity[b[i].Feature] ^= 1;
        }
    }
    return std::ranges::all_of(parity, [](auto const& kv) { return kv.second == 0; });
}

auto CollisionScarcity() -> Verdict
{
    auto const start = Clock::now();
    constexpr size_t features = 8;
    auto const table = ZobristTable::ForPrimitiveSet(20, features, 31337);
    Random rng(99);
    std::unordered_set<std::string> structures;
    std::unordered_map<Hash, std::string> hashes;
    constexpr size_t target = 1000000;
    structures.reserve(target * 2);
    hashes.reserve(target * 2);
    size_t collisions = 0;
    size_t aliased = 0;
    while (structures.size() < target) {
        auto t = test::RandomTree(rng, features, 20, 10);
        auto s = Serialize(t);
        if (!structures.insert(s).second) { continue; }
        auto [it, inserted] = hashes.try_emplace(table.HashTree(t), s);
        if (!inserted) {
            ++collisions;
            aliased += IdentifierAliased(Deserialize(it->second), t) ? 1 : 0;
        }
    }
    auto const secs = Seconds(start);
    return { collisions == 0 && secs < 60.0,
        fmt::format("{} distinct trees, {} collisions ({} between trees with identical symbols per position whose "
                    "features agree in per-feature parity, {} other), {:.1f}s (limit 60s)",
            structures.size(), collisions, aliased, collisions - aliased, secs) };
}

// ---------------------------------------------------------------------------
// 4. coefficients do not reach the hash or the cache key

auto CoefficientInvisibility() -> Verdict
{
    auto const table = ZobristTable::ForPrimitiveSet(20, 3, 5);
    Random rng(11);
    size_t trials = 1000;
    size_t failures = 0;
    auto data = MakeSynthetic("poly2", 200, 3);
    for (size_t k = 0; k < trials; ++k) {
        auto t = test::RandomTree(rng, 2);
        auto u = t;
        for (size_t i = 0; i < u.Length(); ++i) { u.SetCoefficient(i, 10 * rng.Uniform() - 5); }
        auto const ht = table.HashTree(t);
        auto const hu = table.HashTree(u);
        FitnessCache cache;
        size_t calls = 0;
        auto eval = [&](Tree const& tree) {
            return [&, tree]() {
                ++calls;
                return CachedFitness { ErrorFromRSquared(RSquared(Evaluate(tree, data, data.Training()), data.Target(data.Training()))),
                    tree.Length() };
            };
        };
        auto first = cache.GetOrEvaluate(ht, eval(t));
        auto second = cache.GetOrEvaluate(hu, eval(u));
        bool ok = ht == hu && calls == 1 && first == second && cache.Stats().Hits == 1 && cache.Stats().Misses == 1;
        failures += ok ? 0 : 1;
    }
    return { failures == 0, fmt::format("{} coefficient variants, {} failures", trials, failures) };
}

// ---------------------------------------------------------------------------
// 5. concurrent cache

auto CacheConcurrency() -> Verdict
{
    constexpr size_t workers = 8;
    constexpr size_t calls = 100000;
    constexpr size_t keys = 1000;
    FitnessCache cache;
    std::vector<std::atomic<size_t>> evaluations(keys);
    std::vector<std::vector<double>> observed(workers, std::vector<double>(keys, -1.0));
    std::atomic<size_t> inconsistent { 0 };
    {
        std::vector<std::jthread> pool;
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                Random rng(Random::ForStream(5, w, 0));
                for (size_t i = 0; i < calls; ++i) {
                    auto const key = static_cast<size_t>(rng.Below(keys));
                    // each evaluation returns a distinct value, so a second stored value would be visible
                    auto v = cache.GetOrEvaluate(key * 0x9e3779b97f4a7c15ULL, [&]() {
                        auto n = evaluations[key].fetch_add(1);
                        return CachedFitness { static_cast<double>(key) + static_cast<double>(n) / 1000.0, 1 };
                    });
                    auto& seen = observed[w][key];
                    if (seen >= 0 && seen != v.Error) { inconsistent.fetch_add(1); }
                    seen = v.Error;
                }
            });
        }
    }
    size_t disagreements = inconsistent.load();
    for (size_t k = 0; k < keys; ++k) {
        auto stored = cache.Find(k * 0x9e3779b97f4a7c15ULL);
        if (!stored) { ++disagreements; continue; }
        for (size_t w = 0; w < workers; ++w) {
            if (observed[w][k] >= 0 && observed[w][k] != stored->Error) { ++disagreements; }
        }
    }
    auto const s = cache.Stats();
    bool ok = s.Size == keys && s.Hits + s.Misses == workers * calls && disagreements == 0;
    return { ok, fmt::format("size {} (want {}), hits+misses {} (want {}), {} value disagreements", s.Size, keys,
                     s.Hits + s.Misses, workers * calls, disagreements) };
}

// ---------------------------------------------------------------------------
// 6. quality parity between cache arms

auto QualityParity() -> Verdict
{
    auto const start = Clock::now();
    bool ok = true;
    std::vector<std::string> parts;
    for (auto const& p : Problems()) {
        std::vector<double> diffs;
        std::vector<double> on;
        std::vector<double> off;
        for (uint64_t seed = 1; seed <= QualitySeeds; ++seed) {
            auto const& a = RunArm(p, 10, true, seed);
            auto const& b = RunArm(p, 10, false, seed);
            on.push_back(a.Model.R2Train);
            off.push_back(b.Model.R2Train);
            diffs.push_back(a.Model.R2Train - b.Model.R2Train);
        }
        auto const md = Median(diffs);
        ok &= std::fabs(md) <= 0.05;
        parts.push_back(fmt::format("{}: median R2 on {:.4f} off {:.4f}, median paired diff {:+.4f}", p.Name, Median(on),
            Median(off), md));
    }

    size_t identical = 0;
    size_t identities = 0;
    size_t compared = 0;
    for (auto const& p : Problems()) {
        for (uint64_t seed = 1; seed <= QualitySeeds; ++seed) {
            auto const& a = RunArm(p, 0, true, seed);
            auto const& b = RunArm(p, 0, false, seed);
            ++compared;
            identical += FrontSignature(a.Result) == FrontSignature(b.Result) ? 1 : 0;
            identities += a.Result.TotalEvaluations + a.Result.CacheHits == b.Result.TotalEvaluations ? 1 : 0;
        }
    }
    ok &= identical == compared;
    parts.push_back(fmt::format("0 LM: identical fronts {}/{}, evaluations(on)+hits == evaluations(off) {}/{}", identical,
        compared, identities, compared));

    auto const secs = Seconds(start);
    ok &= secs < 15 * 60;
    parts.push_back(fmt::format("{:.0f}s (limit 900s)", secs));
    std::string detail;
    for (auto const& s : parts) { detail += (detail.empty() ? "" : "; ") + s; }
    return { ok, detail };
}

// ---------------------------------------------------------------------------
// 7. saved effort and local search saturation

constexpr size_t SweepSeeds = 5;

auto SavedEffort() -> Verdict
{
    auto const& poly2 = Problems()[0];
    auto mean = [&](size_t lm, bool cache, size_t seeds) {
        double sum = 0;
        for (uint64_t seed = 1; seed <= seeds; ++seed) {
            sum += static_cast<double>(RunArm(poly2, lm, cache, seed).Result.TotalEvaluations);
        }
        return sum / static_cast<double>(seeds);
    };
    auto const on10 = mean(10, true, QualitySeeds);
    auto const off10 = mean(10, false, QualitySeeds);
    auto const saved = 1.0 - on10 / off10;

    bool ok = saved >= 0.30;
    std::string detail = fmt::format("saved effort at 10 LM {:.3f} (>= 0.30; {:.0f} vs {:.0f} evaluations)", saved, on10, off10);
    for (bool cache : { true, false }) {
        auto const e50 = mean(50, cache, SweepSeeds);
        auto const e100 = mean(100, cache, SweepSeeds);
        auto const rel = std::fabs(e100 - e50) / std::max(e50, e100);
        ok &= rel <= 0.15;
        detail += fmt::format("; cache {}: 50 LM {:.0f}, 100 LM {:.0f} evaluations, relative gap {:.3f} (<= 0.15)",
            cache ? "on" : "off", e50, e100, rel);
    }
    return { ok, detail };
}

// ---------------------------------------------------------------------------
// 8. cached evaluations early in the run

auto EarlyCollapse() -> Verdict
{
    auto const& poly2 = Problems()[0];
    constexpr size_t seeds = 10;
    constexpr size_t window = 20;
    std::vector<std::vector<double>> perGen(window + 1);
    for (uint64_t seed = 1; seed <= seeds; ++seed) {
        auto const& arm = RunArm(poly2, 10, true, seed);
        for (size_t g = 1; g <= window; ++g) {
            perGen[g].push_back(static_cast<double>(arm.Result.Generations[g].CacheHits));
        }
    }
    size_t reached = 0;
    double peak = 0;
    for (size_t g = 1; g <= window; ++g) {
        auto const m = Median(perGen[g]);
        peak = std::max(peak, m);
        if (reached == 0 && m >= 0.25 * Population) { reached = g; }
    }
    return { reached != 0, fmt::format("median cached per generation reaches {:.0f}/{} (25% = {:.0f}) {}; peak in window {:.0f}",
                               reached ? Median(perGen[reached]) : peak, Population, 0.25 * Population,
                               reached ? fmt::format("at generation {}", reached) : std::string("never"), peak) };
}

// ---------------------------------------------------------------------------
// 9. tournament selection pressure

auto ClosedFormLoss(size_t n, size_t t) -> double
{
    auto const nn = static_cast<double>(n);
    double sum = 0;
    for (size_t i = 1; i <= n; ++i) {
        auto const p = (std::pow(static_cast<double>(i), static_cast<double>(t)) - std::pow(static_cast<double>(i - 1), static_cast<double>(t)))
            / std::pow(nn, static_cast<double>(t));
        sum += std::pow(1.0 - p, nn);
    }
    return sum / nn;
}

auto TournamentPressure() -> Verdict
{
    constexpr size_t n = 1000;
    constexpr size_t trials = 10000;
    bool ok = true;
    std::string detail;
    double previous = -1;
    for (size_t t = 1; t <= 7; ++t) {
        auto const sim = TournamentLoss(n, t, trials, 100 + t);
        auto const exact = ClosedFormLoss(n, t);
        ok &= std::fabs(sim - exact) <= 0.02;
        if (t >= 2) { ok &= sim >= 0.40; }
        if (previous >= 0) { ok &= sim >= previous - 0.005; }
        previous = sim;
        detail += fmt::format("{}t={}: {:.4f} vs {:.4f}", detail.empty() ? "" : ", ", t, sim, exact);
    }
    return { ok, detail };
}

// ---------------------------------------------------------------------------
// 10. Levenberg-Marquardt

auto LmCorrectness() -> Verdict
{
    Random rng(77);
    auto data = test::RandomDataset(rng, 3, 64, -1.5, 1.5);

    // Jacobian against central differences
    size_t pairs = 0;
    size_t jacobianFailures = 0;
    while (pairs < 1000) {
        auto t = test::RandomTree(rng, 3, 15, 6);
        auto const row = static_cast<size_t>(rng.Below(data.Rows()));
        Range const r { row, 1 };
        auto f = Evaluate(t, data, r);
        if (!std::isfinite(f[0]) || std::fabs(f[0]) > 1e4) { continue; }
        std::vector<double> values { data.Feature(0)[row], data.Feature(1)[row], data.Feature(2)[row] };
        if (!test::WellConditioned(t, values)) { continue; }
        auto j = Jacobian(t, data, r);
        auto theta = t.Coefficients();
        bool usable = true;
        for (size_t k = 0; k < theta.size() && usable; ++k) {
            auto const h = 1e-6 * std::max(1.0, std::fabs(theta[k]));
            auto up = theta;
            auto dn = theta;
            up[k] += h;
            dn[k] -= h;
            auto const fd = (Evaluate(t, data, r, up)[0] - Evaluate(t, data, r, dn)[0]) / (2 * h);
            if (!std::isfinite(fd) || std::fabs(fd) > 1e4) { usable = false; break; }
            if (std::fabs(j(0, static_cast<Eigen::Index>(k)) - fd) > 1e-4 * std::max(1.0, std::fabs(fd))) { ++jacobianFailures; }
        }
        if (usable) { ++pairs; }
    }

    // linear model recovery: y = 2.5 x1 - 1.25 x2 + 0.5 with tree w1*x1 + w2*x2 + c
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> y;
    for (int i = 0; i < 200; ++i) {
        x1.push_back(rng.Uniform() * 4 - 2);
        x2.push_back(rng.Uniform() * 4 - 2);
        y.push_back(2.5 * x1.back() - 1.25 * x2.back() + 0.5);
    }
    auto linear = test::MakeDataset({ x1, x2 }, y);
    Tree model({ Node::Function(NodeType::Add), Node::Variable(0, 1.0), Node::Function(NodeType::Add), Node::Variable(1, 1.0),
        Node::Constant(1.0) });
    LMConfig cfg;
    cfg.MaxIterations = 10;
    auto fit = LevenbergMarquardt(model, linear, linear.Training(), cfg);
    auto const& ft = fit.Tree;
    // effective coefficients of the nested sums
    auto const w1 = ft[0].Value * ft[1].Value;
    auto const w2 = ft[0].Value * ft[2].Value * ft[3].Value;
    auto const c = ft[0].Value * ft[2].Value * ft[4].Value;
    auto const recovery = std::max({ std::fabs(w1 - 2.5), std::fabs(w2 + 1.25), std::fabs(c - 0.5) });
    bool const recovered = recovery <= 1e-6 && fit.Iterations <= 10;

    // monotone SSE over accepted steps on random models and data
    size_t monotoneFailures = 0;
    auto target = test::RandomDataset(rng, 3, 64);
    LMConfig many;
    many.MaxIterations = 25;
    for (int k = 0; k < 300; ++k) {
        auto r = LevenbergMarquardt(test::RandomTree(rng, 3), target, target.Training(), many);
        for (size_t i = 1; i < r.SseTrace.size(); ++i) {
            if (!(r.SseTrace[i] < r.SseTrace[i - 1])) { ++monotoneFailures; }
        }
    }

    // zero iterations change nothing
    size_t noopFailures = 0;
    LMConfig none;
    none.MaxIterations = 0;
    for (int k = 0; k < 300; ++k) {
        auto t = test::RandomTree(rng, 3);
        auto r = LevenbergMarquardt(t, target, target.Training(), none);
        noopFailures += r.Tree == t && r.Accepted == 0 ? 0 : 1;
    }

    bool ok = jacobianFailures == 0 && recovered && monotoneFailures == 0 && noopFailures == 0;
    return { ok, fmt::format("jacobian: {} pairs, {} mismatches; linear recovery error {:.2e} in {} iterations; "
                             "{} non-monotone SSE steps; {} no-op violations",
                     pairs, jacobianFailures, recovery, fit.Iterations, monotoneFailures, noopFailures) };
}

// ---------------------------------------------------------------------------
// 11. NSGA-2 ranks

auto PeelRanks(std::vector<Objectives> const& pts) -> std::vector<size_t>
{
    std::vector<size_t> rank(pts.size(), SIZE_MAX);
    size_t assigned = 0;
    for (size_t level = 0; assigned < pts.size(); ++level) {
        std::vector<size_t> current;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (rank[i] != SIZE_MAX) { continue; }
            bool dominated = false;
            for (size_t j = 0; j < pts.size() && !dominated; ++j) {
                dominated = rank[j] == SIZE_MAX && Dominates(pts[j], pts[i]);
            }
            if (!dominated) { current.push_back(i); }
        }
        for (auto i : current) { rank[i] = level; }
        assigned += current.size();
    }
    return rank;
}

auto NsgaCorrectness() -> Verdict
{
    Random rng(13);
    size_t mismatches = 0;
    for (int k = 0; k < 1000; ++k) {
        std::vector<Objectives> pts(1 + rng.Below(200));
        bool coarse = rng.Below(2) == 0;
        for (auto& p : pts) {
            if (coarse) {
                p = { static_cast<double>(rng.Below(20)), static_cast<double>(rng.Below(20)) };
            } else {
                p = { rng.Uniform(), rng.Uniform() };
            }
        }
        mismatches += NonDominatedSort(pts) == PeelRanks(pts) ? 0 : 1;
    }

    size_t violations = 0;
    size_t generations = 0;
    RunArm(Problems()[1], 0, true, 1, [&](size_t, std::span<Individual const> pop) {
        ++generations;
        for (auto const& a : pop) {
            if (a.Rank != 0) { continue; }
            for (auto const& b : pop) {
                if (b.Rank == 0 && Dominates(b.Objectives, a.Objectives)) { ++violations; }
            }
        }
    });
    return { mismatches == 0 && violations == 0 && generations == Generations + 1,
        fmt::format("1000 random sets, {} rank mismatches; {} generations checked, {} dominated rank-0 members", mismatches,
            generations, violations) };
}

// ---------------------------------------------------------------------------
// 12. wall-clock sanity on the saved-effort workload

auto WallClock() -> Verdict
{
    auto const& poly2 = Problems()[0];
    double on = 0;
    double off = 0;
    for (uint64_t seed = 1; seed <= QualitySeeds; ++seed) {
        on += RunArm(poly2, 10, true, seed).Result.Seconds;
        off += RunArm(poly2, 10, false, seed).Result.Seconds;
    }
    return { on <= 1.05 * off, fmt::format("cache on {:.1f}s, cache off {:.1f}s, ratio {:.3f} (<= 1.05)", on, off, on / off) };
}

} // namespace

auto main(int argc, char** argv) -> int
{
    std::vector<std::pair<std::string, std::function<Verdict()>>> const criteria {
        { "hash equivalence", HashEquivalence },
        { "xor algebra", XorAlgebra },
        { "collision scarcity", CollisionScarcity },
        { "coefficient invisibility", CoefficientInvisibility },
        { "cache concurrency", CacheConcurrency },
        { "quality parity", QualityParity },
        { "saved effort", SavedEffort },
        { "early diversity collapse", EarlyCollapse },
        { "tournament pressure", TournamentPressure },
        { "levenberg-marquardt", LmCorrectness },
        { "nsga-2", NsgaCorrectness },
        { "wall-clock sanity", WallClock },
    };
    std::set<size_t> selected;
    for (int i = 1; i < argc; ++i) { selected.insert(static_cast<size_t>(std::atoi(argv[i]))); }

    size_t failed = 0;
    auto const start = Clock::now();
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (!selected.empty() && !selected.contains(i + 1)) { continue; }
        auto const t0 = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (std::exception const& e) {
            v = { false, fmt::format("exception: {}", e.what()) };
        }
        failed += v.Pass ? 0 : 1;
        fmt::print("[{}] {:>2} {}: {} [{:.1f}s]\n", v.Pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.Detail, Seconds(t0));
        std::fflush(stdout);
    }
    fmt::print("{} criteria failed; total {:.0f}s (engine runs {:.0f}s)\n", failed, Seconds(start), engineSeconds);
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
