// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/zobrist.hpp"

#include <stdexcept>

#include <fmt/core.h>

#include "zsr/random.hpp"

namespace zsr {

auto DescribeSwap(Tree const& parent, Hash parentHash, size_t index, std::span<Node const> graft) -> SwapDescriptor
{
    auto const r = parent.SubtreeRange(index);
    auto nodes = parent.Nodes();
    SwapDescriptor swap;
    swap.ParentHash = parentHash;
    swap.Removed.reserve(r.Size);
    for (auto i = r.Start; i < r.End(); ++i) {
        swap.Removed.push_back({ i, nodes[i] });
    }
    swap.Inserted.reserve(graft.size());
    for (size_t k = 0; k < graft.size(); ++k) {
        swap.Inserted.push_back({ index + k, graft[k] });
    }
    if (graft.size() != r.Size) {
        auto const shift = static_cast<std::ptrdiff_t>(graft.size()) - static_cast<std::ptrdiff_t>(r.Size);
        for (auto i = r.End(); i < nodes.size(); ++i) {
            swap.Tail.push_back({ i, static_cast<size_t>(static_cast<std::ptrdiff_t>(i) + shift), nodes[i] });
        }
    }
    return swap;
}

ZobristTable::ZobristTable(size_t symbols, size_t maxLength, size_t features, uint64_t seed)
    : symbols_(symbols)
    , maxLength_(maxLength)
    , seed_(seed)
{
    if (symbols == 0 || maxLength == 0) {
        throw std::invalid_argument(fmt::format("zobrist table dimensions must be positive (got {} x {})", symbols, maxLength));
    }
    Random rng(seed);
    keys_.resize(symbols * maxLength);
    for (auto& k : keys_) { k = rng(); }
    ids_.resize(features);
    for (auto& id : ids_) { id = rng(); }
}

auto ZobristTable::Key(size_t symbol, size_t index) const -> Hash
{
    if (index >= maxLength_) {
        throw std::length_error(fmt::format("preorder index {} exceeds the maximum tree length {}", index, maxLength_));
    }
    if (symbol >= symbols_) {
        throw std::out_of_range(fmt::format("symbol {} outside table with {} symbols", symbol, symbols_));
    }
    return keys_[symbol * maxLength_ + index];
}

auto ZobristTable::VariableId(size_t feature) const -> Hash
{
    if (feature >= ids_.size()) {
        throw std::out_of_range(fmt::format("feature {} outside table with {} features", feature, ids_.size()));
    }
    return ids_[feature];
}

auto ZobristTable::NodeKey(Node const& node, size_t index) const -> Hash
{
    auto key = Key(static_cast<size_t>(node.Type), index);
    if (node.IsVariable()) {
        key ^= VariableId(node.Feature);
    }
    return key;
}

auto ZobristTable::HashTree(Tree const& tree) const -> Hash
{
    if (tree.Length() > maxLength_) {
        throw std::length_error(fmt::format("tree of length {} exceeds the maximum tree length {}", tree.Length(), maxLength_));
    }
    Hash h = 0;
    auto nodes = tree.Nodes();
    for (size_t i = 0; i < nodes.size(); ++i) {
        h ^= NodeKey(nodes[i], i);
    }
    return h;
}

auto ZobristTable::HashIncremental(SwapDescriptor const& swap) const -> Hash
{
    Hash h = swap.ParentHash;
    for (auto const& [i, n] : swap.Removed) { h ^= NodeKey(n, i); }
    for (auto const& [i, n] : swap.Inserted) { h ^= NodeKey(n, i); }
    for (auto const& [from, to, n] : swap.Tail) { h ^= NodeKey(n, from) ^ NodeKey(n, to); }
    return h;
}

auto ZobristTable::HashChild(SwapDescriptor const& swap, Tree const& child) const -> Hash
{
    if (2 * swap.Size() <= child.Length()) {
        return HashIncremental(swap);
    }
    return HashTree(child);
}

} // namespace zsr
