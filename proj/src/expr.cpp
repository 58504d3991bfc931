// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/expr.hpp"

#include "vecmath.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

namespace zsr {

namespace {
    constexpr std::array<std::string_view, NodeTypeCount> TypeNames {
        "add", "sub", "mul", "div", "exp", "logabs", "sin", "sqrtabs", "square", "const", "var"
    };
} // namespace

auto TypeName(NodeType t) noexcept -> std::string_view
{
    return TypeNames[static_cast<size_t>(t)];
}

auto Node::Function(NodeType type, double coefficient) -> Node
{
    if (zsr::Arity(type) == 0) {
        throw std::invalid_argument(fmt::format("{} is not a function symbol", TypeName(type)));
    }
    return Node { .Type = type, .Feature = 0, .Value = coefficient, .Size = 1 };
}

auto Node::Constant(double value) -> Node
{
    return Node { .Type = NodeType::Constant, .Feature = 0, .Value = value, .Size = 1 };
}

auto Node::Variable(uint32_t feature, double weight) -> Node
{
    return Node { .Type = NodeType::Variable, .Feature = feature, .Value = weight, .Size = 1 };
}

Tree::Tree(std::vector<Node> nodes)
    : nodes_(std::move(nodes))
{
    if (nodes_.empty()) {
        throw std::invalid_argument("a tree needs at least one node");
    }
    if (nodes_.size() > std::numeric_limits<uint16_t>::max()) {
        throw std::invalid_argument("tree too large");
    }
    std::vector<size_t> stack;
    stack.reserve(nodes_.size());
    for (auto i = nodes_.size(); i-- > 0;) {
        auto& n = nodes_[i];
        auto const arity = n.Arity();
        if (stack.size() < arity) {
            throw std::invalid_argument(fmt::format("node {} ({}) is missing arguments", i, TypeName(n.Type)));
        }
        size_t size = 1;
        for (size_t k = 0; k < arity; ++k) {
            size += stack.back();
            stack.pop_back();
        }
        n.Size = static_cast<uint16_t>(size);
        stack.push_back(size);
    }
    if (stack.size() != 1) {
        throw std::invalid_argument(fmt::format("node sequence encodes {} trees instead of one", stack.size()));
    }
}

auto Tree::SubtreeRange(size_t i) const -> Range
{
    return { i, nodes_.at(i).Size };
}

auto Tree::SubtreeNodes(size_t i) const -> std::span<Node const>
{
    auto r = SubtreeRange(i);
    return std::span<Node const>(nodes_).subspan(r.Start, r.Size);
}

auto Tree::Subtree(size_t i) const -> Tree
{
    auto s = SubtreeNodes(i);
    return Tree(std::vector<Node>(s.begin(), s.end()));
}

auto Tree::Children(size_t i) const -> std::vector<size_t>
{
    std::vector<size_t> children;
    auto const arity = nodes_.at(i).Arity();
    children.reserve(arity);
    auto c = i + 1;
    for (size_t k = 0; k < arity; ++k) {
        children.push_back(c);
        c += nodes_[c].Size;
    }
    return children;
}

auto Tree::Depth() const -> size_t
{
    if (nodes_.empty()) { return 0; }
    return SubtreeDepths().front();
}

auto Tree::Levels() const -> std::vector<size_t>
{
    std::vector<size_t> levels(nodes_.size(), 1);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        auto c = i + 1;
        for (size_t k = 0; k < nodes_[i].Arity(); ++k) {
            levels[c] = levels[i] + 1;
            c += nodes_[c].Size;
        }
    }
    return levels;
}

auto Tree::SubtreeDepths() const -> std::vector<size_t>
{
    std::vector<size_t> depths(nodes_.size(), 1);
    for (auto i = nodes_.size(); i-- > 0;) {
        auto c = i + 1;
        size_t deepest = 0;
        for (size_t k = 0; k < nodes_[i].Arity(); ++k) {
            deepest = std::max(deepest, depths[c]);
            c += nodes_[c].Size;
        }
        depths[i] = 1 + deepest;
    }
    return depths;
}

auto Tree::Coefficients() const -> std::vector<double>
{
    std::vector<double> values(nodes_.size());
    std::ranges::transform(nodes_, values.begin(), [](auto const& n) { return n.Value; });
    return values;
}

void Tree::SetCoefficients(std::span<double const> values)
{
    if (values.size() != nodes_.size()) {
        throw std::invalid_argument(fmt::format("expected {} coefficients, got {}", nodes_.size(), values.size()));
    }
    for (size_t i = 0; i < values.size(); ++i) {
        nodes_[i].Value = values[i];
    }
}

auto Tree::ReplaceSubtree(size_t i, std::span<Node const> graft) const -> Tree
{
    auto const r = SubtreeRange(i);
    std::vector<Node> nodes;
    nodes.reserve(nodes_.size() - r.Size + graft.size());
    nodes.insert(nodes.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(r.Start));
    nodes.insert(nodes.end(), graft.begin(), graft.end());
    nodes.insert(nodes.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(r.End()), nodes_.end());
    return Tree(std::move(nodes));
}

auto Tree::SameStructure(Tree const& other) const noexcept -> bool
{
    return std::ranges::equal(nodes_, other.nodes_, [](auto const& a, auto const& b) { return a.SameSymbol(b); });
}

auto operator==(Tree const& a, Tree const& b) noexcept -> bool
{
    return std::ranges::equal(a.nodes_, b.nodes_, [](auto const& x, auto const& y) {
        return x.SameSymbol(y) && x.Size == y.Size && std::bit_cast<uint64_t>(x.Value) == std::bit_cast<uint64_t>(y.Value);
    });
}

namespace detail {
    void Forward(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients, Trace& trace)
    {
        auto const n = static_cast<Eigen::Index>(tree.Length());
        auto const rows = static_cast<Eigen::Index>(range.Size);
        if (range.End() > data.Rows()) {
            throw std::out_of_range(fmt::format("row range [{}, {}) exceeds dataset rows {}", range.Start, range.End(), data.Rows()));
        }
        if (coefficients.size() != tree.Length()) {
            throw std::invalid_argument("coefficient count does not match tree length");
        }
        // grow-only, so that repeated evaluations reuse the same storage
        if (trace.Primal.rows() != rows || trace.Primal.cols() < n) {
            trace.Primal.resize(rows, std::max(n, trace.Primal.cols()));
            trace.Output.resize(rows, std::max(n, trace.Output.cols()));
        }
        auto& P = trace.Primal;
        auto& O = trace.Output;
        auto nodes = tree.Nodes();

        for (auto i = n; i-- > 0;) {
            auto const& node = nodes[static_cast<size_t>(i)];
            auto const a = i + 1;
            auto const b = node.Arity() == 2 ? a + nodes[static_cast<size_t>(a)].Size : a;
            switch (node.Type) {
            case NodeType::Add: P.col(i) = O.col(a) + O.col(b); break;
            case NodeType::Sub: P.col(i) = O.col(a) - O.col(b); break;
            case NodeType::Mul: P.col(i) = O.col(a) * O.col(b); break;
            case NodeType::Div: P.col(i) = O.col(a) / O.col(b); break;
            case NodeType::Exp: P.col(i) = O.col(a).exp(); break;
            case NodeType::LogAbs: P.col(i) = O.col(a).abs().log(); break;
            case NodeType::Sin: SinInto(O.col(a), P.col(i)); break;
            case NodeType::SqrtAbs: P.col(i) = O.col(a).abs().sqrt(); break;
            case NodeType::Square: P.col(i) = O.col(a).square(); break;
            case NodeType::Constant: P.col(i).setOnes(); break;
            case NodeType::Variable: {
                if (node.Feature >= data.FeatureCount()) {
                    throw std::out_of_range(fmt::format("variable index {} exceeds feature count {}", node.Feature, data.FeatureCount()));
                }
                auto column = data.Feature(node.Feature).subspan(range.Start, range.Size);
                P.col(i) = Eigen::Map<Eigen::ArrayXd const>(column.data(), rows);
                break;
            }
            }
            O.col(i) = coefficients[static_cast<size_t>(i)] * P.col(i);
        }
    }
} // namespace detail

auto Evaluate(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients) -> std::vector<double>
{
    thread_local detail::Trace trace;
    detail::Forward(tree, data, range, coefficients, trace);
    std::vector<double> out(range.Size);
    Eigen::Map<Eigen::ArrayXd>(out.data(), static_cast<Eigen::Index>(out.size())) = trace.Output.col(0);
    return out;
}

auto Evaluate(Tree const& tree, Dataset const& data, Range range) -> std::vector<double>
{
    auto const coefficients = tree.Coefficients();
    return Evaluate(tree, data, range, coefficients);
}

auto RSquared(std::span<double const> prediction, std::span<double const> target) -> double
{
    if (prediction.size() != target.size()) {
        throw std::invalid_argument(fmt::format("prediction has {} values, target has {}", prediction.size(), target.size()));
    }
    if (target.size() < 2) {
        throw std::invalid_argument("R^2 needs at least two values");
    }
    double mean = 0;
    for (auto y : target) { mean += y; }
    mean /= static_cast<double>(target.size());
    double sst = 0;
    for (auto y : target) { sst += (y - mean) * (y - mean); }
    if (!(sst > 0)) {
        throw std::domain_error("degenerate dataset: target is constant");
    }
    double sse = 0;
    for (size_t i = 0; i < target.size(); ++i) {
        if (!std::isfinite(prediction[i])) {
            return -std::numeric_limits<double>::infinity();
        }
        auto const e = target[i] - prediction[i];
        sse += e * e;
    }
    if (!std::isfinite(sse)) {
        return -std::numeric_limits<double>::infinity();
    }
    return 1.0 - sse / sst;
}

namespace {
    auto FormatNumber(double v) -> std::string { return fmt::format("{:.6g}", v); }

    auto Infix(Tree const& tree, size_t i, std::span<std::string const> names) -> std::string
    {
        auto const& node = tree[i];
        auto const scale = [&](std::string body) {
            return node.Value == 1.0 ? body : fmt::format("{} * {}", FormatNumber(node.Value), body);
        };
        switch (node.Type) {
        case NodeType::Constant:
            return FormatNumber(node.Value);
        case NodeType::Variable: {
            auto name = node.Feature < names.size() ? names[node.Feature] : fmt::format("x{}", node.Feature);
            return scale(std::move(name));
        }
        default:
            break;
        }
        auto children = tree.Children(i);
        std::string body;
        if (node.Arity() == 2) {
            static constexpr std::array<char, 4> ops { '+', '-', '*', '/' };
            body = fmt::format("({} {} {})", Infix(tree, children[0], names), ops[static_cast<size_t>(node.Type)],
                Infix(tree, children[1], names));
        } else if (node.Type == NodeType::Square) {
            body = fmt::format("({} ^ 2)", Infix(tree, children[0], names));
        } else {
            auto fn = node.Type == NodeType::LogAbs ? std::string_view("log") : TypeName(node.Type);
            if (node.Type == NodeType::SqrtAbs) { fn = "sqrt"; }
            auto arg = Infix(tree, children[0], names);
            if (node.Type == NodeType::LogAbs || node.Type == NodeType::SqrtAbs) {
                body = fmt::format("{}(abs({}))", fn, arg);
            } else {
                body = fmt::format("{}({})", fn, arg);
            }
        }
        return scale(std::move(body));
    }
} // namespace

auto ToInfix(Tree const& tree, std::span<std::string const> featureNames) -> std::string
{
    if (tree.Empty()) { return {}; }
    return Infix(tree, 0, featureNames);
}

auto Serialize(Tree const& tree) -> std::string
{
    std::string out;
    for (auto const& n : tree.Nodes()) {
        if (!out.empty()) { out += ' '; }
        out += TypeName(n.Type);
        if (n.IsVariable()) {
            out += fmt::format(":{}", n.Feature);
        }
    }
    return out;
}

auto Deserialize(std::string_view text) -> Tree
{
    std::vector<Node> nodes;
    size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ') { ++pos; continue; }
        auto end = text.find(' ', pos);
        if (end == std::string_view::npos) { end = text.size(); }
        auto token = text.substr(pos, end - pos);
        pos = end;

        auto colon = token.find(':');
        auto name = token.substr(0, colon);
        auto it = std::ranges::find(TypeNames, name);
        if (it == TypeNames.end()) {
            throw std::invalid_argument(fmt::format("unknown symbol '{}'", name));
        }
        auto type = static_cast<NodeType>(std::distance(TypeNames.begin(), it));
        if (type == NodeType::Variable) {
            uint32_t feature = 0;
            auto digits = colon == std::string_view::npos ? std::string_view {} : token.substr(colon + 1);
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), feature);
            if (digits.empty() || ec != std::errc() || p != digits.data() + digits.size()) {
                throw std::invalid_argument(fmt::format("malformed variable token '{}'", token));
            }
            nodes.push_back(Node::Variable(feature));
        } else if (type == NodeType::Constant) {
            nodes.push_back(Node::Constant(1.0));
        } else {
            nodes.push_back(Node::Function(type));
        }
    }
    return Tree(std::move(nodes));
}

} // namespace zsr
