// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/optim.hpp"

#include "vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <fmt/core.h>

namespace zsr {

void LMConfig::Validate() const
{
    if (!(LambdaInit > 0)) {
        throw std::invalid_argument(fmt::format("lambda_init must be positive, got {}", LambdaInit));
    }
    if (!(LambdaUp > 1.0 && LambdaDown > 0.0 && LambdaDown < 1.0)) {
        throw std::invalid_argument(fmt::format("need lambda_up > 1 > lambda_down > 0, got {} and {}", LambdaUp, LambdaDown));
    }
    if (!(Tolerance >= 0) || !(LambdaMax > LambdaInit)) {
        throw std::invalid_argument("invalid tolerance or lambda_max");
    }
}

namespace {
    // Fills the first tree.Length() columns of `jac`; both buffers only ever grow.
    void ReverseSweep(Tree const& tree, std::span<double const> coefficients, detail::Trace const& trace,
        Eigen::ArrayXXd& adjoint, Eigen::MatrixXd& jac)
    {
        auto const n = static_cast<Eigen::Index>(tree.Length());
        auto const& P = trace.Primal;
        auto const& O = trace.Output;
        auto const rows = P.rows();
        if (adjoint.rows() != rows || adjoint.cols() < n) { adjoint.resize(rows, std::max(n, adjoint.cols())); }
        if (jac.rows() != rows || jac.cols() < n) { jac.resize(rows, std::max(n, jac.cols())); }
        adjoint.col(0).setOnes();
        auto nodes = tree.Nodes();

        for (Eigen::Index i = 0; i < n; ++i) {
            auto const& node = nodes[static_cast<size_t>(i)];
            jac.col(i) = (adjoint.col(i) * P.col(i)).matrix();
            if (node.IsLeaf()) { continue; }

            auto const a = i + 1;
            auto const b = node.Arity() == 2 ? a + nodes[static_cast<size_t>(a)].Size : a;
            auto const w = adjoint.col(i) * coefficients[static_cast<size_t>(i)];
            switch (node.Type) {
            case NodeType::Add:
                adjoint.col(a) = w;
                adjoint.col(b) = w;
                break;
            case NodeType::Sub:
                adjoint.col(a) = w;
                adjoint.col(b) = -w;
                break;
            case NodeType::Mul:
                adjoint.col(a) = w * O.col(b);
                adjoint.col(b) = w * O.col(a);
                break;
            case NodeType::Div:
                adjoint.col(a) = w / O.col(b);
                adjoint.col(b) = -w * P.col(i) / O.col(b);
                break;
            case NodeType::Exp:
                adjoint.col(a) = w * P.col(i);
                break;
            case NodeType::LogAbs:
                adjoint.col(a) = w / O.col(a);
                break;
            case NodeType::Sin:
                detail::CosInto(O.col(a), adjoint.col(a));
                adjoint.col(a) *= w;
                break;
            case NodeType::SqrtAbs:
                adjoint.col(a) = w * O.col(a).sign() * 0.5 / P.col(i);
                break;
            case NodeType::Square:
                adjoint.col(a) = w * 2.0 * O.col(a);
                break;
            default:
                break;
            }
        }
    }

    auto Residual(Eigen::ArrayXXd const& output, Eigen::Map<Eigen::VectorXd const> const& target) -> Eigen::VectorXd
    {
        return target - output.col(0).matrix();
    }
} // namespace

auto Jacobian(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients) -> Eigen::MatrixXd
{
    detail::Trace trace;
    detail::Forward(tree, data, range, coefficients, trace);
    Eigen::ArrayXXd adjoint;
    Eigen::MatrixXd jac;
    ReverseSweep(tree, coefficients, trace, adjoint, jac);
    return jac.leftCols(static_cast<Eigen::Index>(tree.Length()));
}

auto Jacobian(Tree const& tree, Dataset const& data, Range range) -> Eigen::MatrixXd
{
    auto const coefficients = tree.Coefficients();
    return Jacobian(tree, data, range, coefficients);
}

auto LevenbergMarquardt(Tree const& tree, Dataset const& data, Range range, LMConfig const& config) -> LMResult
{
    config.Validate();
    auto targetSpan = data.Target(range);
    Eigen::Map<Eigen::VectorXd const> target(targetSpan.data(), static_cast<Eigen::Index>(targetSpan.size()));

    // `current` holds the forward trace at theta; trials are evaluated into `candidate`
    // and the two are swapped when a step is accepted, so the Jacobian never needs
    // a second forward pass at the same point.
    thread_local detail::Trace traces[2];
    thread_local Eigen::ArrayXXd adjoint;
    thread_local Eigen::MatrixXd jac;
    auto* current = &traces[0];
    auto* candidate = &traces[1];

    LMResult result;
    result.Tree = tree;
    std::vector<double> theta = tree.Coefficients();

    detail::Forward(tree, data, range, theta, *current);
    Eigen::VectorXd residual = Residual(current->Output, target);
    double sse = residual.squaredNorm();
    result.Evaluations = 1;
    result.SseTrace.push_back(sse);
    result.Sse = sse;
    if (config.MaxIterations == 0 || !std::isfinite(sse) || sse == 0.0) {
        return result;
    }

    auto const n = static_cast<Eigen::Index>(theta.size());
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd gradient(n);
    Eigen::MatrixXd damped(n, n);
    Eigen::LLT<Eigen::MatrixXd> llt(n);
    Eigen::VectorXd trialResidual(residual.size());
    std::vector<double> trial(theta.size());

    double lambda = config.LambdaInit;
    bool stale = true;
    for (size_t it = 0; it < config.MaxIterations; ++it) {
        result.Iterations = it + 1;
        if (stale) {
            ReverseSweep(tree, theta, *current, adjoint, jac);
            ++result.Evaluations;
            // only the lower triangle is filled; the Cholesky factorization reads nothing else.
            // Column dot products avoid the packing overhead of a general product at these sizes.
            for (Eigen::Index c = 0; c < n; ++c) {
                for (Eigen::Index r = c; r < n; ++r) { normal(r, c) = jac.col(r).dot(jac.col(c)); }
                gradient(c) = jac.col(c).dot(residual);
            }
            stale = false;
            if (!normal.allFinite() || !gradient.allFinite()) {
                break;
            }
        }

        auto const floor = 1e-12 * (1.0 + normal.diagonal().maxCoeff());
        damped = normal;
        damped.diagonal() += lambda * normal.diagonal().cwiseMax(floor);
        llt.compute(damped);
        bool rejected = llt.info() != Eigen::Success;
        if (!rejected) {
            Eigen::VectorXd delta = llt.solve(gradient);
            rejected = !delta.allFinite();
            if (!rejected) {
                for (size_t j = 0; j < trial.size(); ++j) {
                    trial[j] = theta[j] + delta(static_cast<Eigen::Index>(j));
                }
                detail::Forward(tree, data, range, trial, *candidate);
                ++result.Evaluations;
                trialResidual = Residual(candidate->Output, target);
                double const trialSse = trialResidual.squaredNorm();
                if (std::isfinite(trialSse) && trialSse < sse) {
                    auto const improvement = (sse - trialSse) / sse;
                    theta.swap(trial);
                    residual.swap(trialResidual);
                    std::swap(current, candidate);
                    sse = trialSse;
                    lambda *= config.LambdaDown;
                    stale = true;
                    ++result.Accepted;
                    result.SseTrace.push_back(sse);
                    if (improvement < config.Tolerance || sse == 0.0) {
                        break;
                    }
                    continue;
                }
                rejected = true;
            }
        }
        if (rejected) {
            lambda *= config.LambdaUp;
            if (lambda > config.LambdaMax) {
                break;
            }
        }
    }

    result.Tree.SetCoefficients(theta);
    result.Sse = sse;
    return result;
}

} // namespace zsr
