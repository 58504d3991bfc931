// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_CACHE_HPP
#define ZSR_CACHE_HPP

#include <atomic>
#include <concepts>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>

#include "zsr/individual.hpp"
#include "zsr/zobrist.hpp"

namespace zsr {

struct CachedFitness {
    double Error { WorstError };
    size_t Length { 0 }; // informational

    friend auto operator==(CachedFitness const&, CachedFitness const&) noexcept -> bool = default;
};

struct CacheStats {
    size_t Hits { 0 };
    size_t Misses { 0 };
    size_t Size { 0 };
};

// Concurrent transposition table from tree hash to fitness. The map is split
// into shards, each guarded by its own reader/writer lock. Entries are never
// overwritten or evicted: the first completed insert for a hash is canonical.
class FitnessCache {
public:
    static constexpr size_t DefaultShards = 64;

    explicit FitnessCache(size_t shards = DefaultShards);

    // Returns the cached value for `hash`, or runs `evaluate` and stores its
    // result. Concurrent misses on one hash may each evaluate; only one result
    // is stored and every caller returns the stored value.
    template <typename F>
        requires std::is_invocable_r_v<CachedFitness, F>
    auto GetOrEvaluate(Hash hash, F&& evaluate) -> CachedFitness
    {
        if (auto cached = Find(hash)) {
            hits_.fetch_add(1, std::memory_order_relaxed);
            return *cached;
        }
        misses_.fetch_add(1, std::memory_order_relaxed);
        return Insert(hash, std::forward<F>(evaluate)()).first;
    }

    [[nodiscard]] auto Find(Hash hash) const -> std::optional<CachedFitness>;

    // Inserts unless present. Returns the stored value and whether this call stored it.
    auto Insert(Hash hash, CachedFitness value) -> std::pair<CachedFitness, bool>;

    // Inserts the already evaluated members of an initial population. Does not
    // touch the hit/miss counters.
    void SeedWith(std::span<Individual const> population);

    [[nodiscard]] auto Stats() const -> CacheStats;
    [[nodiscard]] auto Size() const -> size_t;
    [[nodiscard]] auto ShardCount() const noexcept -> size_t { return count_; }

    void Clear();

private:
    struct alignas(64) Shard {
        mutable std::shared_mutex Mutex;
        std::unordered_map<Hash, CachedFitness> Map;
    };

    [[nodiscard]] auto ShardFor(Hash hash) const noexcept -> Shard& { return shards_[hash % count_]; }

    size_t count_;
    std::unique_ptr<Shard[]> shards_;
    std::atomic<size_t> hits_ { 0 };
    std::atomic<size_t> misses_ { 0 };
};

} // namespace zsr

#endif
