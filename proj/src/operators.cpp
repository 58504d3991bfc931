// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/core.h>

namespace zsr {

TreeCreator::TreeCreator(size_t features, double constantMin, double constantMax)
    : features_(features)
    , constantMin_(constantMin)
    , constantMax_(constantMax)
{
    if (!(constantMin <= constantMax)) {
        throw std::invalid_argument("constant range is empty");
    }
}

auto TreeCreator::RandomTerminal(Random& rng) const -> Node
{
    if (features_ == 0 || rng.Below(2) == 0) {
        return Node::Constant(constantMin_ + (constantMax_ - constantMin_) * rng.Uniform());
    }
    return Node::Variable(static_cast<uint32_t>(rng.Below(features_)));
}

auto TreeCreator::RandomFunction(Random& rng, size_t arity) const -> Node
{
    if (arity == 1) { return Node::Function(UnaryTypes[rng.Below(UnaryTypes.size())]); }
    if (arity == 2) { return Node::Function(BinaryTypes[rng.Below(BinaryTypes.size())]); }
    throw std::invalid_argument(fmt::format("no function symbols of arity {}", arity));
}

void TreeCreator::Grow(Random& rng, size_t length, size_t depth, std::vector<Node>& out) const
{
    if (length == 1) {
        out.push_back(RandomTerminal(rng));
        return;
    }
    auto const cap = MaxLengthForDepth(depth - 1);
    bool const unary = length - 1 <= cap;
    bool const binary = length >= 3 && length - 1 <= 2 * cap;
    auto const choices = (unary ? UnaryTypes.size() : 0) + (binary ? BinaryTypes.size() : 0);
    auto k = static_cast<size_t>(rng.Below(choices));
    if (unary && k < UnaryTypes.size()) {
        out.push_back(Node::Function(UnaryTypes[k]));
        Grow(rng, length - 1, depth - 1, out);
        return;
    }
    if (unary) { k -= UnaryTypes.size(); }
    out.push_back(Node::Function(BinaryTypes[k]));
    auto const lo = std::max<size_t>(1, length - 1 > cap ? length - 1 - cap : 1);
    auto const hi = std::min(length - 2, cap);
    auto const left = lo + static_cast<size_t>(rng.Below(hi - lo + 1));
    Grow(rng, left, depth - 1, out);
    Grow(rng, length - 1 - left, depth - 1, out);
}

auto TreeCreator::CreateNodes(Random& rng, size_t length, size_t maxDepth) const -> std::vector<Node>
{
    if (length == 0 || maxDepth == 0 || length > MaxLengthForDepth(maxDepth)) {
        throw std::invalid_argument(fmt::format("cannot build a tree of length {} within depth {}", length, maxDepth));
    }
    std::vector<Node> nodes;
    nodes.reserve(length);
    Grow(rng, length, maxDepth, nodes);
    return nodes;
}

auto TreeCreator::Create(Random& rng, size_t length, size_t maxDepth) const -> Tree
{
    return Tree(CreateNodes(rng, length, maxDepth));
}

auto CrossoverAt(Individual const& p1, size_t cut, Individual const& p2, size_t donor, ZobristTable const& table) -> CrossoverResult
{
    auto graft = p2.Tree.SubtreeNodes(donor);
    CrossoverResult result;
    result.Applied = true;
    result.Cut = cut;
    result.Donor = donor;
    result.Swap = DescribeSwap(p1.Tree, p1.Hash, cut, graft);
    result.Child.Tree = p1.Tree.ReplaceSubtree(cut, graft);
    result.Child.Hash = table.HashChild(result.Swap, result.Child.Tree);
    return result;
}

auto Crossover(Individual const& p1, Individual const& p2, Random& rng, Limits const& limits, ZobristTable const& table,
    double probability) -> CrossoverResult
{
    if (!(rng.Uniform() < probability)) {
        return { .Child = p1, .Swap = {}, .Applied = false };
    }
    auto const& t1 = p1.Tree;
    auto const& t2 = p2.Tree;
    auto const cut = static_cast<size_t>(rng.Below(t1.Length()));
    auto const removed = t1.SubtreeRange(cut);
    auto const levels = t1.Levels();
    size_t restDepth = 0;
    for (size_t i = 0; i < t1.Length(); ++i) {
        if (i < removed.Start || i >= removed.End()) { restDepth = std::max(restDepth, levels[i]); }
    }
    auto const donorDepths = t2.SubtreeDepths();
    std::vector<size_t> candidates;
    candidates.reserve(t2.Length());
    for (size_t j = 0; j < t2.Length(); ++j) {
        auto const length = t1.Length() - removed.Size + t2[j].Size;
        auto const depth = std::max(restDepth, levels[cut] - 1 + donorDepths[j]);
        if (length <= limits.MaxLength && depth <= limits.MaxDepth) {
            candidates.push_back(j);
        }
    }
    if (candidates.empty()) {
        return { .Child = p1, .Swap = {}, .Applied = false };
    }
    auto const donor = candidates[rng.Below(candidates.size())];
    return CrossoverAt(p1, cut, p2, donor, table);
}

namespace {
    auto Pick(std::vector<size_t> const& items, Random& rng) -> size_t
    {
        return items[rng.Below(items.size())];
    }

    auto FunctionNodes(Tree const& tree) -> std::vector<size_t>
    {
        std::vector<size_t> out;
        for (size_t i = 0; i < tree.Length(); ++i) {
            if (!tree[i].IsLeaf()) { out.push_back(i); }
        }
        return out;
    }

    auto VariableNodes(Tree const& tree) -> std::vector<size_t>
    {
        std::vector<size_t> out;
        for (size_t i = 0; i < tree.Length(); ++i) {
            if (tree[i].IsVariable()) { out.push_back(i); }
        }
        return out;
    }

    // nodes above which a function node can be inserted without breaking the depth limit
    auto InsertionPoints(Tree const& tree, Limits const& limits) -> std::vector<size_t>
    {
        std::vector<size_t> out;
        if (tree.Length() + 1 > limits.MaxLength) { return out; }
        auto const levels = tree.Levels();
        auto const depths = tree.SubtreeDepths();
        for (size_t i = 0; i < tree.Length(); ++i) {
            if (levels[i] + depths[i] <= limits.MaxDepth) { out.push_back(i); }
        }
        return out;
    }

    auto ReplaceAt(Individual const& ind, size_t i, std::span<Node const> graft, ZobristTable const& table, MutationKind kind) -> MutationResult
    {
        MutationResult result;
        result.Applied = kind;
        result.Swap = DescribeSwap(ind.Tree, ind.Hash, i, graft);
        result.Child.Tree = ind.Tree.ReplaceSubtree(i, graft);
        result.Child.Hash = table.HashChild(result.Swap, result.Child.Tree);
        return result;
    }

    // a single-node substitution that keeps every index in place
    auto SubstituteAt(Individual const& ind, size_t i, Node replacement, ZobristTable const& table, MutationKind kind) -> MutationResult
    {
        MutationResult result;
        result.Applied = kind;
        result.Swap.ParentHash = ind.Hash;
        result.Swap.Removed.push_back({ i, ind.Tree[i] });
        result.Swap.Inserted.push_back({ i, replacement });
        auto nodes = std::vector<Node>(ind.Tree.Nodes().begin(), ind.Tree.Nodes().end());
        nodes[i] = replacement;
        result.Child.Tree = Tree(std::move(nodes));
        result.Child.Hash = table.HashIncremental(result.Swap);
        return result;
    }
} // namespace

auto ApplicableMutations(Tree const& tree, Limits const& limits, size_t features) -> std::vector<MutationKind>
{
    std::vector<MutationKind> kinds;
    bool const hasFunction = std::ranges::any_of(tree.Nodes(), [](auto const& n) { return !n.IsLeaf(); });
    bool const hasVariable = std::ranges::any_of(tree.Nodes(), [](auto const& n) { return n.IsVariable(); });
    if (!InsertionPoints(tree, limits).empty()) { kinds.push_back(MutationKind::InsertSubtree); }
    if (hasFunction) { kinds.push_back(MutationKind::RemoveSubtree); }
    kinds.push_back(MutationKind::ReplaceSubtree);
    if (hasFunction) { kinds.push_back(MutationKind::ChangeFunction); }
    if (hasVariable && features >= 2) { kinds.push_back(MutationKind::ChangeVariable); }
    kinds.push_back(MutationKind::ChangeCoefficient);
    return kinds;
}

auto MutateWith(MutationKind kind, Individual const& ind, Random& rng, Limits const& limits, TreeCreator const& creator,
    ZobristTable const& table) -> MutationResult
{
    auto const& tree = ind.Tree;
    auto inapplicable = [&]() {
        return std::invalid_argument(fmt::format("mutation {} is not applicable to this tree", static_cast<int>(kind)));
    };

    switch (kind) {
    case MutationKind::InsertSubtree: {
        auto const points = InsertionPoints(tree, limits);
        if (points.empty()) { throw inapplicable(); }
        auto const i = Pick(points, rng);
        auto const level = tree.Levels()[i];
        auto const budget = limits.MaxLength - tree.Length() - 1;
        auto const arity = budget >= 1 ? 1 + static_cast<size_t>(rng.Below(UnaryTypes.size() + BinaryTypes.size()) >= UnaryTypes.size()) : 1;
        std::vector<Node> graft { creator.RandomFunction(rng, arity) };
        auto existing = tree.SubtreeNodes(i);
        if (arity == 1) {
            graft.insert(graft.end(), existing.begin(), existing.end());
        } else {
            auto const siblingDepth = limits.MaxDepth - level;
            auto const maxSize = std::min(budget, MaxLengthForDepth(siblingDepth));
            auto const size = 1 + static_cast<size_t>(rng.Below(maxSize));
            auto sibling = creator.CreateNodes(rng, size, siblingDepth);
            if (rng.Below(2) == 0) {
                graft.insert(graft.end(), existing.begin(), existing.end());
                graft.insert(graft.end(), sibling.begin(), sibling.end());
            } else {
                graft.insert(graft.end(), sibling.begin(), sibling.end());
                graft.insert(graft.end(), existing.begin(), existing.end());
            }
        }
        return ReplaceAt(ind, i, graft, table, kind);
    }
    case MutationKind::RemoveSubtree: {
        auto const functions = FunctionNodes(tree);
        if (functions.empty()) { throw inapplicable(); }
        auto const i = Pick(functions, rng);
        auto const child = Pick(tree.Children(i), rng);
        auto const graft = tree.SubtreeNodes(child);
        return ReplaceAt(ind, i, std::vector<Node>(graft.begin(), graft.end()), table, kind);
    }
    case MutationKind::ReplaceSubtree: {
        auto const i = static_cast<size_t>(rng.Below(tree.Length()));
        auto const level = tree.Levels()[i];
        auto const budget = limits.MaxLength - tree.Length() + tree[i].Size;
        auto const depthBudget = limits.MaxDepth - level + 1;
        auto const maxSize = std::min(budget, MaxLengthForDepth(depthBudget));
        auto const size = 1 + static_cast<size_t>(rng.Below(maxSize));
        auto const graft = creator.CreateNodes(rng, size, depthBudget);
        return ReplaceAt(ind, i, graft, table, kind);
    }
    case MutationKind::ChangeFunction: {
        auto const functions = FunctionNodes(tree);
        if (functions.empty()) { throw inapplicable(); }
        auto const i = Pick(functions, rng);
        auto node = tree[i];
        if (node.Arity() == 1) {
            auto const k = (static_cast<size_t>(std::ranges::find(UnaryTypes, node.Type) - UnaryTypes.begin()) + 1 + rng.Below(UnaryTypes.size() - 1)) % UnaryTypes.size();
            node.Type = UnaryTypes[k];
        } else {
            auto const k = (static_cast<size_t>(std::ranges::find(BinaryTypes, node.Type) - BinaryTypes.begin()) + 1 + rng.Below(BinaryTypes.size() - 1)) % BinaryTypes.size();
            node.Type = BinaryTypes[k];
        }
        return SubstituteAt(ind, i, node, table, kind);
    }
    case MutationKind::ChangeVariable: {
        auto const variables = VariableNodes(tree);
        if (variables.empty() || creator.Features() < 2) { throw inapplicable(); }
        auto const i = Pick(variables, rng);
        auto node = tree[i];
        node.Feature = static_cast<uint32_t>((node.Feature + 1 + rng.Below(creator.Features() - 1)) % creator.Features());
        return SubstituteAt(ind, i, node, table, kind);
    }
    case MutationKind::ChangeCoefficient: {
        auto const i = static_cast<size_t>(rng.Below(tree.Length()));
        std::normal_distribution<double> normal(-0.5 * CoefficientSigma * CoefficientSigma, CoefficientSigma);
        MutationResult result;
        result.Applied = kind;
        result.Child = ind;
        result.Child.Tree.SetCoefficient(i, tree[i].Value * std::exp(normal(rng)));
        result.Swap.ParentHash = ind.Hash;
        return result;
    }
    }
    throw inapplicable();
}

auto Mutate(Individual const& ind, Random& rng, Limits const& limits, TreeCreator const& creator, ZobristTable const& table,
    double probability) -> MutationResult
{
    if (!(rng.Uniform() < probability)) {
        return { .Child = ind, .Applied = std::nullopt, .Swap = {} };
    }
    auto const kinds = ApplicableMutations(ind.Tree, limits, creator.Features());
    auto const kind = kinds[rng.Below(kinds.size())];
    return MutateWith(kind, ind, rng, limits, creator, table);
}

} // namespace zsr
