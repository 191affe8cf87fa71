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

#ifndef ANGELCAGE_LATTICE_HPP
#define ANGELCAGE_LATTICE_HPP

// Lattice-point counting in Euclidean balls and the size of the devil's
// hollow cage. The cage region is always Euclidean; the supremum norm only
// bounds a single move of the angel.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace angelcage {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an exhaustive enumeration would exceed its point budget.
class budget_exceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A point of Z^n.
class LatticePoint
{
public:
    LatticePoint() = default;
    explicit LatticePoint(std::size_t dimension) : coords_(dimension, 0) {}
    explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

    [[nodiscard]] std::size_t dimension() const noexcept { return coords_.size(); }
    [[nodiscard]] const std::vector<std::int64_t> &coords() const noexcept { return coords_; }
    std::int64_t &operator[](std::size_t i) { return coords_[i]; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }

    [[nodiscard]] std::int64_t norm_sq() const noexcept
    {
        std::int64_t s = 0;
        for (auto x : coords_) {
            s += x * x;
        }
        return s;
    }

    [[nodiscard]] double euclidean_norm() const noexcept { return std::sqrt(static_cast<double>(norm_sq())); }

    [[nodiscard]] std::int64_t sup_norm() const noexcept
    {
        std::int64_t m = 0;
        for (auto x : coords_) {
            m = std::max(m, x < 0 ? -x : x);
        }
        return m;
    }

    friend bool operator==(const LatticePoint &, const LatticePoint &) = default;

private:
    std::vector<std::int64_t> coords_;
};

/// The hollow lattice sphere of inner radius k and thickness c in Z^n.
struct HollowShell {
    int dimension;
    std::int64_t power;
    std::int64_t inner_radius;

    HollowShell(int n, std::int64_t c, std::int64_t k) : dimension(n), power(c), inner_radius(k)
    {
        if (n < 1) {
            throw std::invalid_argument("dimension must be at least 1");
        }
        if (c < 1) {
            throw std::invalid_argument("power must be at least 1");
        }
        if (k < 1) {
            throw std::invalid_argument("inner radius must be at least 1");
        }
    }

    [[nodiscard]] std::int64_t outer_radius() const noexcept { return inner_radius + power; }
};

inline constexpr std::uint64_t default_enumeration_budget = 100'000'000;

namespace detail {

// floor(r^2) for a non-negative real radius; integer radii are exact.
inline std::int64_t floor_radius_sq(double r)
{
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("radius must be a finite non-negative number");
    }
    const auto rl = static_cast<long double>(r);
    return static_cast<std::int64_t>(std::floor(rl * rl));
}

} // namespace detail

/// Number of points of Z^n with Euclidean norm at most r, by enumerating the
/// bounding box [-floor(r), floor(r)]^n. Throws budget_exceeded when the box
/// holds more than `budget` candidates.
inline BigInt count_ball_exact(int n, double r, std::uint64_t budget = default_enumeration_budget)
{
    if (n < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    const std::int64_t r2 = detail::floor_radius_sq(r);
    const auto half = static_cast<std::int64_t>(std::floor(r));
    const auto side = static_cast<std::uint64_t>(2 * half + 1);

    std::uint64_t candidates = 1;
    for (int i = 0; i < n; ++i) {
        if (candidates > budget / side) {
            throw budget_exceeded("ball enumeration of " + std::to_string(side) + "^" + std::to_string(n) +
                                  " points exceeds budget " + std::to_string(budget));
        }
        candidates *= side;
    }

    std::vector<std::int64_t> x(static_cast<std::size_t>(n), -half);
    std::uint64_t inside = 0;
    for (std::uint64_t step = 0; step < candidates; ++step) {
        std::int64_t s = 0;
        for (auto v : x) {
            s += v * v;
        }
        if (s <= r2) {
            ++inside;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (++x[i] <= half) {
                break;
            }
            x[i] = -half;
        }
    }
    return inside;
}

/// Two-dimensional count from the classical divisor series
/// N(r) = 1 + 4 sum_{i>=0} (floor(r^2/(4i+1)) - floor(r^2/(4i+3))).
inline BigInt count_disk_hcv(double r)
{
    const std::int64_t r2 = detail::floor_radius_sq(r);
    BigInt total = 0;
    for (std::int64_t i = 0; 4 * i + 1 <= r2; ++i) {
        total += r2 / (4 * i + 1) - r2 / (4 * i + 3);
    }
    return 1 + 4 * total;
}

/// log Gamma(n/2 + 1), via the half-integer recurrence from Gamma(1) = 1 or
/// Gamma(1/2) = sqrt(pi).
inline double log_gamma_half_plus_one(int n)
{
    double acc = (n % 2 == 0) ? 0.0 : 0.5 * std::log(std::numbers::pi);
    for (int twice = (n % 2 == 0) ? 2 : 1; twice <= n; twice += 2) {
        acc += std::log(0.5 * twice);
    }
    return acc;
}

/// pi^{n/2} / Gamma(n/2 + 1): the volume of the unit n-ball.
inline double unit_ball_volume(int n)
{
    if (n < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    if (n > 20) {
        return std::exp(0.5 * n * std::log(std::numbers::pi) - log_gamma_half_plus_one(n));
    }
    double gamma = (n % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
    for (int twice = (n % 2 == 0) ? 2 : 1; twice <= n; twice += 2) {
        gamma *= 0.5 * twice;
    }
    return std::pow(std::numbers::pi, 0.5 * n) / gamma;
}

/// Volume of the Euclidean n-ball of radius r.
inline double ball_volume(int n, double r)
{
    if (!(r >= 0.0)) {
        throw std::invalid_argument("radius must be non-negative");
    }
    return unit_ball_volume(n) * std::pow(r, n);
}

/// Turns the devil spends building the cage, N = |H^n_{k,c}|. One dimension
/// needs exactly 2c+2 vertices; otherwise the ball-volume difference rounded up.
inline std::uint64_t shell_turns(const HollowShell &shell)
{
    const auto c = shell.power;
    const auto k = shell.inner_radius;
    if (shell.dimension == 1) {
        return static_cast<std::uint64_t>(2 * c + 2);
    }
    const auto n = static_cast<unsigned>(shell.dimension);
    const BigInt outer = boost::multiprecision::pow(BigInt{k + c}, n);
    const BigInt inner = boost::multiprecision::pow(BigInt{k - 1}, n);
    const double span = static_cast<BigInt>(outer - inner).convert_to<double>();
    return static_cast<std::uint64_t>(std::ceil(unit_ball_volume(shell.dimension) * span));
}

inline std::uint64_t shell_turns(int n, std::int64_t c, std::int64_t k)
{
    return shell_turns(HollowShell{n, c, k});
}

} // namespace angelcage

#endif
