// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_INDIVIDUAL_HPP
#define ZSR_INDIVIDUAL_HPP

#include <array>
#include <cstddef>
#include <limits>

#include "zsr/expr.hpp"
#include "zsr/zobrist.hpp"

namespace zsr {

// Error objective assigned to models whose predictions are not finite.
inline constexpr double WorstError = 1e10;

struct Individual {
    zsr::Tree Tree;
    zsr::Hash Hash { 0 };
    // (error, length), both minimized
    std::array<double, 2> Objectives { WorstError, 0.0 };
    size_t Rank { 0 };
    double Crowding { 0.0 };

    [[nodiscard]] auto Error() const noexcept -> double { return Objectives[0]; }
};

// Maps R^2 to the minimized error objective 1 - R^2, clamped to [0, WorstError].
constexpr auto ErrorFromRSquared(double r2) noexcept -> double
{
    if (!(r2 == r2) || r2 == -std::numeric_limits<double>::infinity()) { // NaN or -inf
        return WorstError;
    }
    auto const e = 1.0 - r2;
    return e < 0.0 ? 0.0 : (e > WorstError ? WorstError : e);
}

} // namespace zsr

#endif
