// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_EXPR_HPP
#define ZSR_EXPR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "zsr/dataset.hpp"

namespace zsr {

enum class NodeType : uint8_t {
    Add,
    Sub,
    Mul,
    Div,
    Exp,
    LogAbs,
    Sin,
    SqrtAbs,
    Square,
    Constant,
    Variable,
};

inline constexpr size_t NodeTypeCount = 11;

inline constexpr std::array<NodeType, 4> BinaryTypes { NodeType::Add, NodeType::Sub, NodeType::Mul, NodeType::Div };
inline constexpr std::array<NodeType, 5> UnaryTypes { NodeType::Exp, NodeType::LogAbs, NodeType::Sin, NodeType::SqrtAbs, NodeType::Square };

constexpr auto Arity(NodeType t) noexcept -> size_t
{
    switch (t) {
    case NodeType::Add:
    case NodeType::Sub:
    case NodeType::Mul:
    case NodeType::Div:
        return 2;
    case NodeType::Constant:
    case NodeType::Variable:
        return 0;
    default:
        return 1;
    }
}

auto TypeName(NodeType t) noexcept -> std::string_view;

struct Node {
    NodeType Type{NodeType::Constant};
    uint32_t Feature{0}; // column index, meaningful for variables only
    double Value{1.0};   // multiplicative coefficient; the value itself for constants
    uint16_t Size{1};    // node count of the subtree rooted here, including itself

    static auto Function(NodeType type, double coefficient = 1.0) -> Node;
    static auto Constant(double value) -> Node;
    static auto Variable(uint32_t feature, double weight = 1.0) -> Node;

    [[nodiscard]] auto Arity() const noexcept -> size_t { return zsr::Arity(Type); }
    [[nodiscard]] auto IsLeaf() const noexcept -> bool { return Arity() == 0; }
    [[nodiscard]] auto IsVariable() const noexcept -> bool { return Type == NodeType::Variable; }

    // Equality of symbol and feature, ignoring coefficient and size.
    [[nodiscard]] auto SameSymbol(Node const& other) const noexcept -> bool
    {
        return Type == other.Type && (Type != NodeType::Variable || Feature == other.Feature);
    }
};

// Expression tree stored as a preorder node array. The subtree rooted at node i
// occupies the contiguous index range [i, i + nodes[i].Size).
class Tree {
public:
    Tree() = default;

    // Recomputes every Size field from the node arities. Throws std::invalid_argument
    // if the sequence is not exactly one well-formed preorder tree.
    explicit Tree(std::vector<Node> nodes);

    [[nodiscard]] auto Nodes() const noexcept -> std::span<Node const> { return nodes_; }
    [[nodiscard]] auto operator[](size_t i) const -> Node const& { return nodes_[i]; }
    [[nodiscard]] auto Length() const noexcept -> size_t { return nodes_.size(); }
    [[nodiscard]] auto Empty() const noexcept -> bool { return nodes_.empty(); }

    [[nodiscard]] auto SubtreeRange(size_t i) const -> Range;
    [[nodiscard]] auto Subtree(size_t i) const -> Tree;
    [[nodiscard]] auto SubtreeNodes(size_t i) const -> std::span<Node const>;

    // Child indices of node i, in argument order.
    [[nodiscard]] auto Children(size_t i) const -> std::vector<size_t>;

    // Number of levels; a single node has depth 1.
    [[nodiscard]] auto Depth() const -> size_t;
    // Level of every node, root at level 1.
    [[nodiscard]] auto Levels() const -> std::vector<size_t>;
    // Depth of the subtree rooted at every node.
    [[nodiscard]] auto SubtreeDepths() const -> std::vector<size_t>;

    [[nodiscard]] auto Coefficients() const -> std::vector<double>;
    void SetCoefficients(std::span<double const> values);
    void SetCoefficient(size_t i, double value) { nodes_.at(i).Value = value; }

    // Returns a copy where the subtree at i is replaced by `graft` (a preorder
    // sequence forming one tree). Ancestor sizes are adjusted.
    [[nodiscard]] auto ReplaceSubtree(size_t i, std::span<Node const> graft) const -> Tree;

    // Structural equality (symbols and features, not coefficients).
    [[nodiscard]] auto SameStructure(Tree const& other) const noexcept -> bool;

    friend auto operator==(Tree const& a, Tree const& b) noexcept -> bool;

private:
    std::vector<Node> nodes_;
};

// Predictions of `tree` for the rows in `range`. Each node outputs its local
// function of the children's outputs multiplied by its coefficient. Arithmetic is
// unprotected: non-finite values propagate.
auto Evaluate(Tree const& tree, Dataset const& data, Range range) -> std::vector<double>;

// Same, but with `coefficients` (one per node) in place of the tree's own.
auto Evaluate(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients) -> std::vector<double>;

// 1 - SSE/SST. Returns -infinity when any prediction is non-finite. Throws
// std::domain_error when the target is constant and std::invalid_argument on a
// size mismatch or fewer than two values.
auto RSquared(std::span<double const> prediction, std::span<double const> target) -> double;

auto ToInfix(Tree const& tree, std::span<std::string const> featureNames = {}) -> std::string;

// Structural serialization: space separated preorder tokens "symbol[:feature]",
// coefficients excluded. Two trees serialize equal iff they are structurally equal.
auto Serialize(Tree const& tree) -> std::string;

// Inverse of Serialize; all coefficients are 1.
auto Deserialize(std::string_view text) -> Tree;

namespace detail {
    // Column i of Primal holds node i's local function of its children's outputs;
    // column i of Output holds coefficient_i * Primal.col(i). The arrays may have
    // more columns than the tree has nodes.
    struct Trace {
        Eigen::ArrayXXd Primal;
        Eigen::ArrayXXd Output;
    };

    void Forward(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients, Trace& trace);
} // namespace detail

} // namespace zsr

#endif
