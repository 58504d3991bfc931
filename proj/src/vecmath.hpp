// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_VECMATH_HPP
#define ZSR_VECMATH_HPP

#include <cmath>

#include <Eigen/Core>

#if defined(ZSR_HAVE_LIBMVEC) && defined(__AVX2__) && defined(__x86_64__)
#include <immintrin.h>
#define ZSR_USE_LIBMVEC 1
extern "C" {
__m256d _ZGVdN4v_sin(__m256d x); // NOLINT
__m256d _ZGVdN4v_cos(__m256d x); // NOLINT
}
#endif

namespace zsr::detail {

// Element-wise sin/cos over contiguous columns. Eigen 3.4 has no packet sin/cos for
// double, so the AVX2 kernels of glibc's libmvec are used when they are available.
template <typename In, typename Out>
inline void SinInto(In const& x, Out&& y)
{
#ifdef ZSR_USE_LIBMVEC
    auto const n = x.size();
    double const* src = x.data();
    double* dst = y.data();
    Eigen::Index i = 0;
    for (; i + 4 <= n; i += 4) { _mm256_storeu_pd(dst + i, _ZGVdN4v_sin(_mm256_loadu_pd(src + i))); }
    for (; i < n; ++i) { dst[i] = std::sin(src[i]); }
#else
    y = x.sin();
#endif
}

template <typename In, typename Out>
inline void CosInto(In const& x, Out&& y)
{
#ifdef ZSR_USE_LIBMVEC
    auto const n = x.size();
    double const* src = x.data();
    double* dst = y.data();
    Eigen::Index i = 0;
    for (; i + 4 <= n; i += 4) { _mm256_storeu_pd(dst + i, _ZGVdN4v_cos(_mm256_loadu_pd(src + i))); }
    for (; i < n; ++i) { dst[i] = std::cos(src[i]); }
#else
    y = x.cos();
#endif
}

} // namespace zsr::detail

#endif
