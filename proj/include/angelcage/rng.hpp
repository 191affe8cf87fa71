/*
 * Copyright 2026 The angelcage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ANGELCAGE_RNG_HPP
#define ANGELCAGE_RNG_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

namespace angelcage {

/// SplitMix64 finalizer. Used to hash seeds into generator state.
constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256
{
public:
    using result_type = std::uint64_t;

    constexpr explicit Xoshiro256(std::uint64_t seed) noexcept
    {
        std::uint64_t sm = seed;
        for (auto &word : s_) {
            word = splitmix64(sm);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Seed of the independent stream for one trial. Depends only on
/// (master_seed, index), never on scheduling.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    std::uint64_t sm = master_seed;
    const std::uint64_t a = splitmix64(sm);
    std::uint64_t mixed = a ^ (index * 0xD1B54A32D192ED03ULL);
    return splitmix64(mixed);
}

/// Hands out 32-bit words, two per 64-bit draw.
template <typename Engine>
class Word32Source
{
public:
    explicit Word32Source(Engine &engine) noexcept : engine_(engine) {}

    std::uint32_t next() noexcept
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const std::uint64_t w = engine_();
        spare_ = static_cast<std::uint32_t>(w >> 32);
        have_spare_ = true;
        return static_cast<std::uint32_t>(w);
    }

private:
    Engine &engine_;
    std::uint32_t spare_ = 0;
    bool have_spare_ = false;
};

/// Unbiased draw from {0, ..., range-1} by Lemire's multiply-and-reject.
/// `threshold` must equal (2^32 - range) % range, see lemire_threshold().
template <typename Source>
std::uint32_t bounded_u32(Source &src, std::uint32_t range, std::uint32_t threshold) noexcept
{
    std::uint64_t m = std::uint64_t{src.next()} * range;
    auto low = static_cast<std::uint32_t>(m);
    while (low < threshold) {
        m = std::uint64_t{src.next()} * range;
        low = static_cast<std::uint32_t>(m);
    }
    return static_cast<std::uint32_t>(m >> 32);
}

constexpr std::uint32_t lemire_threshold(std::uint32_t range) noexcept
{
    return static_cast<std::uint32_t>(-range) % range;
}

/// Several independent uniform draws, out[i] in {0, ..., range-1}, from one
/// 64-bit word per attempt.
///
/// Multiplying by `range` once per output peels off mixed-radix digits of
/// x * range^count; the final low word plays the role of the low half in
/// Lemire's method for the combined range range^count, so a single rejection
/// test keeps every output exactly uniform. `threshold` must be
/// (2^64 - range^count) % range^count, see batched_threshold().
template <typename Engine>
void batched_bounded(Engine &engine, std::uint64_t range, std::size_t count, std::uint64_t threshold,
                     std::uint32_t *out) noexcept
{
    for (;;) {
        std::uint64_t low = engine();
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned __int128 m = static_cast<unsigned __int128>(low) * range;
            out[i] = static_cast<std::uint32_t>(m >> 64);
            low = static_cast<std::uint64_t>(m);
        }
        if (low >= threshold) {
            return;
        }
    }
}

constexpr std::uint64_t batched_threshold(std::uint64_t product) noexcept
{
    return static_cast<std::uint64_t>(-product) % product;
}

} // namespace angelcage

#endif
