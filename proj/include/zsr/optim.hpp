// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_OPTIM_HPP
#define ZSR_OPTIM_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "zsr/dataset.hpp"
#include "zsr/expr.hpp"

namespace zsr {

struct LMConfig {
    size_t MaxIterations { 10 };
    double LambdaInit { 1e-3 };
    double LambdaUp { 10.0 };
    double LambdaDown { 0.1 };
    double Tolerance { 1e-8 }; // relative SSE decrease below which an accepted step ends the run
    double LambdaMax { 1e10 }; // damping beyond which the run is abandoned

    // Throws std::invalid_argument unless LambdaInit > 0 and LambdaUp > 1 > LambdaDown > 0.
    void Validate() const;
};

struct LMResult {
    zsr::Tree Tree;
    double Sse { 0.0 };
    size_t Iterations { 0 };  // attempted steps, accepted or not
    size_t Accepted { 0 };
    size_t Evaluations { 0 }; // residual passes + Jacobian passes
    std::vector<double> SseTrace; // starting SSE followed by the SSE after each accepted step
};

// d prediction / d coefficient for every row of `range` (rows x tree length),
// by reverse accumulation over the preorder array.
auto Jacobian(Tree const& tree, Dataset const& data, Range range) -> Eigen::MatrixXd;
auto Jacobian(Tree const& tree, Dataset const& data, Range range, std::span<double const> coefficients) -> Eigen::MatrixXd;

// Fits all node coefficients to data.Target(range) by damped Gauss-Newton steps
//   theta += (J'J + lambda * diag(J'J))^-1 J' r,   r = y - f(x; theta).
// A step is accepted only if it lowers the SSE. MaxIterations == 0 returns the
// input tree untouched after a single residual pass.
auto LevenbergMarquardt(Tree const& tree, Dataset const& data, Range range, LMConfig const& config) -> LMResult;

} // namespace zsr

#endif
