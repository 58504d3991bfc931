// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_RANDOM_HPP
#define ZSR_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace zsr {

// SplitMix64, used for seeding and for mixing stream coordinates.
class SplitMix64 {
public:
    using result_type = uint64_t;

    explicit constexpr SplitMix64(uint64_t seed) noexcept : state_(seed) { }

    static constexpr auto min() -> result_type { return std::numeric_limits<result_type>::min(); }
    static constexpr auto max() -> result_type { return std::numeric_limits<result_type>::max(); }

    constexpr auto operator()() noexcept -> result_type
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31U);
    }

private:
    uint64_t state_;
};

// xoshiro256** 1.0 (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256ss {
public:
    using result_type = uint64_t;

    explicit constexpr Xoshiro256ss(uint64_t seed) noexcept
    {
        SplitMix64 sm(seed);
        for (auto& s : state_) { s = sm(); }
    }

    explicit constexpr Xoshiro256ss(std::array<uint64_t, 4> const& state) noexcept : state_(state) { }

    // Independent stream for a (seed, a, b) coordinate, e.g. (run seed, generation, slot).
    static constexpr auto ForStream(uint64_t seed, uint64_t a, uint64_t b) noexcept -> Xoshiro256ss
    {
        SplitMix64 sm(seed);
        uint64_t x = sm();
        x = SplitMix64(x ^ SplitMix64(a)())();
        x = SplitMix64(x ^ SplitMix64(~b)())();
        return Xoshiro256ss(x);
    }

    static constexpr auto min() -> result_type { return std::numeric_limits<result_type>::min(); }
    static constexpr auto max() -> result_type { return std::numeric_limits<result_type>::max(); }

    constexpr auto operator()() noexcept -> result_type
    {
        auto const result = Rotl(state_[1] * 5, 7) * 9;
        auto const t = state_[1] << 17U;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = Rotl(state_[3], 45);
        return result;
    }

    // uniform double in [0, 1)
    constexpr auto Uniform() noexcept -> double
    {
        return static_cast<double>((*this)() >> 11U) * 0x1.0p-53;
    }

    // uniform integer in [0, n), n > 0 (Lemire's nearly divisionless method)
    constexpr auto Below(uint64_t n) noexcept -> uint64_t
    {
        auto m = static_cast<unsigned __int128>((*this)()) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            uint64_t const threshold = -n % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64U);
    }

    [[nodiscard]] constexpr auto State() const noexcept -> std::array<uint64_t, 4> const& { return state_; }

private:
    static constexpr auto Rotl(uint64_t x, int k) noexcept -> uint64_t
    {
        return (x << static_cast<unsigned>(k)) | (x >> static_cast<unsigned>(64 - k));
    }

    std::array<uint64_t, 4> state_{};
};

using Random = Xoshiro256ss;

} // namespace zsr

#endif
