// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/cache.hpp"

#include <stdexcept>

namespace zsr {

FitnessCache::FitnessCache(size_t shards)
    : count_(shards)
{
    if (shards == 0) {
        throw std::invalid_argument("the cache needs at least one shard");
    }
    shards_ = std::make_unique<Shard[]>(shards);
}

auto FitnessCache::Find(Hash hash) const -> std::optional<CachedFitness>
{
    auto& shard = ShardFor(hash);
    std::shared_lock lock(shard.Mutex);
    if (auto it = shard.Map.find(hash); it != shard.Map.end()) {
        return it->second;
    }
    return std::nullopt;
}

auto FitnessCache::Insert(Hash hash, CachedFitness value) -> std::pair<CachedFitness, bool>
{
    auto& shard = ShardFor(hash);
    std::unique_lock lock(shard.Mutex);
    auto [it, inserted] = shard.Map.try_emplace(hash, value);
    return { it->second, inserted };
}

void FitnessCache::SeedWith(std::span<Individual const> population)
{
    for (auto const& ind : population) {
        Insert(ind.Hash, CachedFitness { ind.Error(), ind.Tree.Length() });
    }
}

auto FitnessCache::Size() const -> size_t
{
    size_t n = 0;
    for (size_t i = 0; i < count_; ++i) {
        std::shared_lock lock(shards_[i].Mutex);
        n += shards_[i].Map.size();
    }
    return n;
}

auto FitnessCache::Stats() const -> CacheStats
{
    return { hits_.load(), misses_.load(), Size() };
}

void FitnessCache::Clear()
{
    for (size_t i = 0; i < count_; ++i) {
        std::unique_lock lock(shards_[i].Mutex);
        shards_[i].Map.clear();
    }
    hits_ = 0;
    misses_ = 0;
}

} // namespace zsr
