// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_OPERATORS_HPP
#define ZSR_OPERATORS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "zsr/individual.hpp"
#include "zsr/random.hpp"
#include "zsr/zobrist.hpp"

namespace zsr {

struct Limits {
    size_t MaxLength { 20 };
    size_t MaxDepth { 10 };
};

// Largest tree that fits in `depth` levels (2^depth - 1, saturating).
constexpr auto MaxLengthForDepth(size_t depth) noexcept -> size_t
{
    return depth >= 63 ? ~size_t { 0 } >> 1U : (size_t { 1 } << depth) - 1;
}

// Builds random trees of an exact target length. At each open slot the creator
// picks a function or terminal so that the remaining node budget can still be
// spent within the depth limit; symbols are uniform within the feasible class.
class TreeCreator {
public:
    explicit TreeCreator(size_t features, double constantMin = -1.0, double constantMax = 1.0);

    // Throws std::invalid_argument if length == 0 or length > MaxLengthForDepth(maxDepth).
    [[nodiscard]] auto Create(Random& rng, size_t length, size_t maxDepth) const -> Tree;
    [[nodiscard]] auto CreateNodes(Random& rng, size_t length, size_t maxDepth) const -> std::vector<Node>;

    // Constant (value uniform in [constantMin, constantMax]) or variable (weight 1), with equal odds.
    [[nodiscard]] auto RandomTerminal(Random& rng) const -> Node;
    [[nodiscard]] auto RandomFunction(Random& rng, size_t arity) const -> Node;

    [[nodiscard]] auto Features() const noexcept -> size_t { return features_; }

private:
    void Grow(Random& rng, size_t length, size_t depth, std::vector<Node>& out) const;

    size_t features_;
    double constantMin_;
    double constantMax_;
};

struct CrossoverResult {
    Individual Child;
    SwapDescriptor Swap;
    bool Applied { false };
    size_t Cut { 0 };   // index in the first parent
    size_t Donor { 0 }; // index in the second parent
};

// Replaces the subtree of p1 at `cut` with the subtree of p2 at `donor`. No limit checks.
auto CrossoverAt(Individual const& p1, size_t cut, Individual const& p2, size_t donor, ZobristTable const& table) -> CrossoverResult;

// With the given probability: uniform cut point in p1, donor uniform among the
// subtrees of p2 that keep the child within `limits`. Otherwise the child is a copy of p1.
auto Crossover(Individual const& p1, Individual const& p2, Random& rng, Limits const& limits, ZobristTable const& table,
    double probability = 1.0) -> CrossoverResult;

enum class MutationKind {
    InsertSubtree,
    RemoveSubtree,
    ReplaceSubtree,
    ChangeFunction,
    ChangeVariable,
    ChangeCoefficient,
};

inline constexpr std::array<MutationKind, 6> AllMutations {
    MutationKind::InsertSubtree, MutationKind::RemoveSubtree, MutationKind::ReplaceSubtree,
    MutationKind::ChangeFunction, MutationKind::ChangeVariable, MutationKind::ChangeCoefficient
};

struct MutationResult {
    Individual Child;
    std::optional<MutationKind> Applied;
    SwapDescriptor Swap;
};

auto ApplicableMutations(Tree const& tree, Limits const& limits, size_t features) -> std::vector<MutationKind>;

// Applies one specific operator. Throws std::invalid_argument if it is not applicable.
auto MutateWith(MutationKind kind, Individual const& ind, Random& rng, Limits const& limits, TreeCreator const& creator,
    ZobristTable const& table) -> MutationResult;

// With the given probability, applies one operator drawn uniformly from the applicable ones.
auto Mutate(Individual const& ind, Random& rng, Limits const& limits, TreeCreator const& creator, ZobristTable const& table,
    double probability) -> MutationResult;

// Sigma of the unit-mean lognormal factor used by ChangeCoefficient.
inline constexpr double CoefficientSigma = 0.1;

} // namespace zsr

#endif
