// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_ZOBRIST_HPP
#define ZSR_ZOBRIST_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zsr/expr.hpp"

namespace zsr {

using Hash = uint64_t;

// Describes the replacement of one subtree in a parent tree, in terms of the
// positional keys that leave and enter the hash.
struct SwapDescriptor {
    struct Entry {
        size_t Index;
        zsr::Node Node;
    };
    // a node whose preorder index moved because the removed and inserted lengths differ
    struct Shift {
        size_t OldIndex;
        size_t NewIndex;
        zsr::Node Node;
    };

    Hash ParentHash { 0 };
    std::vector<Entry> Removed;
    std::vector<Entry> Inserted;
    std::vector<Shift> Tail;

    [[nodiscard]] auto Size() const noexcept -> size_t { return Removed.size() + Inserted.size() + Tail.size(); }
};

// Builds the descriptor for replacing the subtree at `index` of `parent` with `graft`.
auto DescribeSwap(Tree const& parent, Hash parentHash, size_t index, std::span<Node const> graft) -> SwapDescriptor;

// Matrix of random 64-bit keys indexed by (symbol, preorder position), plus one
// identifier per feature. Immutable after construction.
class ZobristTable {
public:
    // `symbols` rows by `maxLength` columns. Keys come from one xoshiro256** stream:
    // the key matrix row by row, then the feature identifiers.
    ZobristTable(size_t symbols, size_t maxLength, size_t features, uint64_t seed);

    // Table sized for the full primitive set (one row per NodeType).
    static auto ForPrimitiveSet(size_t maxLength, size_t features, uint64_t seed) -> ZobristTable
    {
        return { NodeTypeCount, maxLength, features, seed };
    }

    [[nodiscard]] auto Symbols() const noexcept -> size_t { return symbols_; }
    [[nodiscard]] auto MaxLength() const noexcept -> size_t { return maxLength_; }
    [[nodiscard]] auto Features() const noexcept -> size_t { return ids_.size(); }
    [[nodiscard]] auto Seed() const noexcept -> uint64_t { return seed_; }
    [[nodiscard]] auto Keys() const noexcept -> std::span<Hash const> { return keys_; }

    [[nodiscard]] auto Key(size_t symbol, size_t index) const -> Hash;
    [[nodiscard]] auto VariableId(size_t feature) const -> Hash;

    // zobrist(s, i) ^ id(s) for variables, zobrist(s, i) otherwise.
    // Throws std::length_error when index >= MaxLength().
    [[nodiscard]] auto NodeKey(Node const& node, size_t index) const -> Hash;

    // XOR of NodeKey over all nodes; coefficients do not contribute.
    [[nodiscard]] auto HashTree(Tree const& tree) const -> Hash;

    // ParentHash ^ removed keys ^ inserted keys ^ tail keys at both old and new positions.
    [[nodiscard]] auto HashIncremental(SwapDescriptor const& swap) const -> Hash;

    // Hash of `child` (the result of `swap`). Falls back to full recomputation
    // when 2 * swap.Size() > child.Length().
    [[nodiscard]] auto HashChild(SwapDescriptor const& swap, Tree const& child) const -> Hash;

private:
    size_t symbols_;
    size_t maxLength_;
    uint64_t seed_;
    std::vector<Hash> keys_;
    std::vector<Hash> ids_;
};

} // namespace zsr

#endif
