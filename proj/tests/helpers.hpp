// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_TEST_HELPERS_HPP
#define ZSR_TEST_HELPERS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "zsr/dataset.hpp"
#include "zsr/expr.hpp"
#include "zsr/operators.hpp"
#include "zsr/random.hpp"

namespace zsr::test {

// Dataset from explicit columns; the first half of the rows (at least one) is training data.
inline auto MakeDataset(std::vector<std::vector<double>> features, std::vector<double> target) -> Dataset
{
    std::vector<std::string> names;
    for (size_t i = 0; i < features.size(); ++i) { names.push_back("x" + std::to_string(i + 1)); }
    return Dataset(std::move(names), std::move(features), "y", std::move(target), 0.5);
}

inline auto AllRows(Dataset const& d) -> Range { return { 0, d.Rows() }; }

// Scalar recursive interpreter, written independently of the vectorized one.
// With applyCoefficients false every coefficient is treated as 1 (constants included).
inline auto ScalarEval(Tree const& t, size_t i, std::vector<double> const& row, bool applyCoefficients = true) -> double
{
    auto const& n = t[i];
    auto const c = applyCoefficients ? n.Value : 1.0;
    auto arg = [&](size_t k) { return ScalarEval(t, t.Children(i)[k], row, applyCoefficients); };
    switch (n.Type) {
    case NodeType::Add: return c * (arg(0) + arg(1));
    case NodeType::Sub: return c * (arg(0) - arg(1));
    case NodeType::Mul: return c * (arg(0) * arg(1));
    case NodeType::Div: return c * (arg(0) / arg(1));
    case NodeType::Exp: return c * std::exp(arg(0));
    case NodeType::LogAbs: return c * std::log(std::fabs(arg(0)));
    case NodeType::Sin: return c * std::sin(arg(0));
    case NodeType::SqrtAbs: return c * std::sqrt(std::fabs(arg(0)));
    case NodeType::Square: { auto v = arg(0); return c * v * v; }
    case NodeType::Constant: return c;
    case NodeType::Variable: return c * row[n.Feature];
    }
    return NAN;
}

// False when the row sits where comparisons against an independent oracle are
// not meaningful: a sin or exp argument so large that last-ulp differences between
// math libraries dominate, or an abs, log or division argument within `eps` of
// zero, where the model is not differentiable.
inline auto WellConditioned(Tree const& t, std::vector<double> const& row, double limit = 50.0, double eps = 1e-6) -> bool
{
    for (size_t i = 0; i < t.Length(); ++i) {
        auto const type = t[i].Type;
        if (type == NodeType::Sin || type == NodeType::Exp) {
            if (!(std::fabs(ScalarEval(t, i + 1, row)) <= limit)) { return false; }
        } else if (type == NodeType::SqrtAbs || type == NodeType::LogAbs) {
            if (!(std::fabs(ScalarEval(t, i + 1, row)) > eps)) { return false; }
        } else if (type == NodeType::Div) {
            auto const denominator = t.Children(i)[1];
            if (!(std::fabs(ScalarEval(t, denominator, row)) > eps)) { return false; }
        }
    }
    return true;
}

inline auto RandomTree(Random& rng, size_t features, size_t maxLength = 20, size_t maxDepth = 10) -> Tree
{
    TreeCreator creator(features);
    auto length = 1 + rng.Below(maxLength);
    while (length > MaxLengthForDepth(maxDepth)) { length = 1 + rng.Below(maxLength); }
    return creator.Create(rng, length, maxDepth);
}

inline auto RandomDataset(Random& rng, size_t features, size_t rows, double lo = -2.0, double hi = 2.0) -> Dataset
{
    std::vector<std::vector<double>> cols(features, std::vector<double>(rows));
    std::vector<double> y(rows);
    for (auto& c : cols) {
        for (auto& v : c) { v = lo + (hi - lo) * rng.Uniform(); }
    }
    for (auto& v : y) { v = rng.Uniform(); }
    return MakeDataset(std::move(cols), std::move(y));
}

} // namespace zsr::test

#endif
