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

#ifndef ANGELCAGE_EXACT_DIST_HPP
#define ANGELCAGE_EXACT_DIST_HPP

// Exact law of the displacement of a one-dimensional walk whose steps are
// uniform on {-c, ..., c}. Counts are arbitrary precision; probabilities are
// exact rationals with denominator (2c+1)^l.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace angelcage {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Uniform law of one step on {-power, ..., power}.
struct StepDistribution {
    std::int64_t power = 1;

    StepDistribution() = default;
    explicit StepDistribution(std::int64_t c) : power(c)
    {
        if (c < 0) {
            throw std::invalid_argument("step power must be non-negative");
        }
    }

    [[nodiscard]] std::int64_t support_size() const noexcept { return 2 * power + 1; }
    [[nodiscard]] double mean() const noexcept { return 0.0; }
    [[nodiscard]] double variance() const noexcept
    {
        const auto c = static_cast<double>(power);
        return (c * c + c) / 3.0;
    }
};

namespace detail {

// C(a, b) with C(a, b) = 0 whenever a < 0 or a < b. The zero convention is
// what lets the alternating sum truncate like the power-series extraction.
inline BigInt binom_or_zero(std::int64_t a, std::int64_t b)
{
    if (b < 0 || a < 0 || a < b) {
        return 0;
    }
    if (b > a - b) {
        b = a - b;
    }
    BigInt acc = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        acc *= a - b + i;
        acc /= i;
    }
    return acc;
}

inline void require_power(std::int64_t power)
{
    if (power < 0) {
        throw std::invalid_argument("step power must be non-negative");
    }
}

inline void require_turns(std::int64_t turns)
{
    if (turns < 0) {
        throw std::invalid_argument("turn count must be non-negative");
    }
}

} // namespace detail

/// Number of `turns`-step walks with steps in {-power, ..., power} that end at
/// displacement `target`, by inclusion-exclusion over the coefficient of
/// x^{target + power*turns} in (1 + x + ... + x^{2 power})^turns.
inline BigInt walk_count(std::int64_t power, std::int64_t turns, std::int64_t target)
{
    detail::require_power(power);
    detail::require_turns(turns);
    if (turns == 0) {
        return target == 0 ? 1 : 0;
    }
    const std::int64_t reach = power * turns;
    if (target > reach || target < -reach) {
        return 0;
    }
    const std::int64_t width = 2 * power + 1;
    const std::int64_t shifted = target + reach;
    BigInt total = 0;
    for (std::int64_t m = 0; m <= turns; ++m) {
        const std::int64_t top = turns - 1 + shifted - m * width;
        if (top < turns - 1) {
            break; // every later term is zero as well
        }
        BigInt term = detail::binom_or_zero(turns, m) * detail::binom_or_zero(top, turns - 1);
        if (m % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

/// Exact displacement law after a fixed number of turns.
class DisplacementPmf
{
public:
    DisplacementPmf(std::int64_t power, std::int64_t turns, std::vector<BigInt> counts)
        : power_(power), turns_(turns), counts_(std::move(counts))
    {
        denominator_ = boost::multiprecision::pow(BigInt{2 * power_ + 1}, static_cast<unsigned>(turns_));
        if (counts_.size() != static_cast<std::size_t>(2 * reach() + 1)) {
            throw std::invalid_argument("count vector does not match support");
        }
    }

    [[nodiscard]] std::int64_t power() const noexcept { return power_; }
    [[nodiscard]] std::int64_t turns() const noexcept { return turns_; }
    [[nodiscard]] std::int64_t reach() const noexcept { return power_ * turns_; }
    [[nodiscard]] const BigInt &denominator() const noexcept { return denominator_; }
    [[nodiscard]] const std::vector<BigInt> &counts() const noexcept { return counts_; }

    /// Walk count ending at `displacement`; zero outside the support.
    [[nodiscard]] BigInt count(std::int64_t displacement) const
    {
        if (displacement < -reach() || displacement > reach()) {
            return 0;
        }
        return counts_[static_cast<std::size_t>(displacement + reach())];
    }

    [[nodiscard]] Rational mass(std::int64_t displacement) const
    {
        return Rational{count(displacement), denominator_};
    }

    [[nodiscard]] double probability(std::int64_t displacement) const
    {
        return mass(displacement).convert_to<double>();
    }

    [[nodiscard]] BigInt total_count() const
    {
        BigInt sum = 0;
        for (const auto &c : counts_) {
            sum += c;
        }
        return sum;
    }

    friend bool operator==(const DisplacementPmf &, const DisplacementPmf &) = default;

private:
    std::int64_t power_;
    std::int64_t turns_;
    std::vector<BigInt> counts_;
    BigInt denominator_;
};

/// PMF from the closed-form walk count. turns = 0 gives the point mass at 0.
inline DisplacementPmf pmf_exact(std::int64_t power, std::int64_t turns)
{
    detail::require_power(power);
    detail::require_turns(turns);
    const std::int64_t reach = power * turns;
    std::vector<BigInt> counts(static_cast<std::size_t>(2 * reach + 1));
    for (std::int64_t j = -reach; j <= reach; ++j) {
        counts[static_cast<std::size_t>(j + reach)] = walk_count(power, turns, j);
    }
    return {power, turns, std::move(counts)};
}

/// Same PMF by repeated discrete convolution of the step law. Intended as an
/// independent check of pmf_exact() for small power * turns.
inline DisplacementPmf pmf_convolve_oracle(std::int64_t power, std::int64_t turns)
{
    detail::require_power(power);
    detail::require_turns(turns);
    std::vector<BigInt> counts{1};
    for (std::int64_t t = 0; t < turns; ++t) {
        std::vector<BigInt> next(counts.size() + static_cast<std::size_t>(2 * power));
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] == 0) {
                continue;
            }
            for (std::int64_t s = 0; s <= 2 * power; ++s) {
                next[i + static_cast<std::size_t>(s)] += counts[i];
            }
        }
        counts = std::move(next);
    }
    return {power, turns, std::move(counts)};
}

/// Exact probability that the walk ends within distance `radius` of its start.
inline Rational cdf_within(std::int64_t power, std::int64_t turns, std::int64_t radius)
{
    if (radius < 0) {
        throw std::invalid_argument("radius must be non-negative");
    }
    const auto pmf = pmf_exact(power, turns);
    const std::int64_t hi = std::min(radius, pmf.reach());
    BigInt inside = 0;
    for (std::int64_t j = -hi; j <= hi; ++j) {
        inside += pmf.count(j);
    }
    return Rational{inside, pmf.denominator()};
}

} // namespace angelcage

#endif
