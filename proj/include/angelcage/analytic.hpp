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

#ifndef ANGELCAGE_ANALYTIC_HPP
#define ANGELCAGE_ANALYTIC_HPP

// Caging probabilities under the normal approximation of the angel's final
// position. After N turns every axis is approximately N(0, sigma^2) with
// sigma^2 = N (c^2 + c) / 3, and the caging event is |Z| <= k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lattice.hpp"

namespace angelcage {

/// The devil's commitment: cage geometry and the game length it implies.
struct CagePlan {
    int dimension = 1;
    std::int64_t power = 1;
    std::int64_t inner_radius = 1;
    std::uint64_t turns = 0;
    double sigma_sq = 0.0; // per-axis variance of the final position
};

inline double step_variance(std::int64_t power)
{
    const auto c = static_cast<double>(power);
    return (c * c + c) / 3.0;
}

inline CagePlan make_plan(int n, std::int64_t c, std::int64_t k)
{
    const std::uint64_t turns = shell_turns(n, c, k);
    return {n, c, k, turns, static_cast<double>(turns) * step_variance(c)};
}

enum class Method { exact_1d_lower, gaussian_2d, series_even, series_odd, quadrature_oracle };

inline std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::exact_1d_lower:
        return "exact-1d-lower";
    case Method::gaussian_2d:
        return "gaussian-2d";
    case Method::series_even:
        return "series-even";
    case Method::series_odd:
        return "series-odd";
    case Method::quadrature_oracle:
        return "quadrature-oracle";
    }
    return "unknown";
}

struct ProbabilityEstimate {
    double value = 0.0;
    Method method = Method::series_even;
};

struct Bounds3D {
    double lower = 0.0;
    double upper = 0.0;
};

/// Series that fails to settle within its term budget.
class convergence_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_eps(double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
}

inline void require_power_positive(std::int64_t c)
{
    if (c < 1) {
        throw std::invalid_argument("power must be at least 1");
    }
}

inline double clamp_probability(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

inline double sigma_sq_2d(std::int64_t c, std::int64_t k)
{
    const auto cd = static_cast<double>(c);
    const auto kd = static_cast<double>(k);
    return std::numbers::pi * cd * (cd + 1) * (cd + 1) * (2 * kd + cd - 1) / 3.0;
}

// log(j!!) for odd j.
inline double log_odd_double_factorial(int j)
{
    if (j <= 19) {
        double p = 1.0;
        for (int i = 3; i <= j; i += 2) {
            p *= i;
        }
        return std::log(p);
    }
    // j!! = j! / (2^m m!) with m = (j-1)/2
    const int m = (j - 1) / 2;
    return std::lgamma(j + 1.0) - m * std::numbers::ln2 - std::lgamma(m + 1.0);
}

} // namespace detail

/// Lower bound sqrt(1 - exp(-3k^2 / (4c(c+1)^2))) on the one-dimensional
/// caging probability after N = 2c+2 turns.
inline ProbabilityEstimate cage_prob_1d_lower(std::int64_t c, double k)
{
    detail::require_power_positive(c);
    if (!(k >= 0.0)) {
        throw std::invalid_argument("k must be non-negative");
    }
    const auto cd = static_cast<double>(c);
    if (std::isinf(k)) {
        return {1.0, Method::exact_1d_lower};
    }
    const double expo = 3.0 * k * k / (4.0 * cd * (cd + 1) * (cd + 1));
    return {std::sqrt(-std::expm1(-expo)), Method::exact_1d_lower};
}

/// Smallest integer k with sqrt(1 - exp(-3k^2/(4c(c+1)^2))) >= 1 - eps,
/// clamped below at 1.
inline std::int64_t threshold_k_1d(std::int64_t c, double eps)
{
    detail::require_power_positive(c);
    detail::require_eps(eps);
    const auto cd = static_cast<double>(c);
    const double rhs = -std::log(eps * (2.0 - eps)) * 4.0 * cd * (cd + 1) * (cd + 1) / 3.0;
    const double k = std::ceil(std::sqrt(std::max(rhs, 0.0)));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
}

/// 1 - exp(-k^2 / (2 sigma^2)) with sigma^2 = pi c (c+1)^2 (2k+c-1) / 3, the
/// unrounded two-dimensional variance.
inline ProbabilityEstimate cage_prob_2d(std::int64_t c, std::int64_t k)
{
    detail::require_power_positive(c);
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    const auto kd = static_cast<double>(k);
    const double s2 = detail::sigma_sq_2d(c, k);
    return {detail::clamp_probability(-std::expm1(-kd * kd / (2.0 * s2))), Method::gaussian_2d};
}

/// Inner radius meeting exp(-k^2/(2 sigma^2(k))) <= eps in two dimensions.
///
/// With A = -2 ln(eps) pi c (c+1)^2 / 3 the equality case is the quadratic
/// k^2 = A (2k + c - 1), whose positive root r is A + sqrt(A^2 + A(c-1)).
/// The returned value is ceil(r) + 1; this convention matches the published
/// table of k for c in {1, 3, 10} and eps in {0.5, 0.1, 0.01}.
inline std::int64_t threshold_k_2d(std::int64_t c, double eps)
{
    detail::require_power_positive(c);
    detail::require_eps(eps);
    const auto cd = static_cast<double>(c);
    const double a = -2.0 * std::log(eps) * std::numbers::pi * cd * (cd + 1) * (cd + 1) / 3.0;
    const double root = a + std::sqrt(a * a + a * (cd - 1));
    return static_cast<std::int64_t>(std::ceil(root)) + 1;
}

/// Even n: 1 - exp(-x) sum_{d<n/2} x^d / d!, x = k^2 / (2 sigma^2).
inline double even_series(int n, double sigma_sq, double k)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("even_series needs an even dimension >= 2");
    }
    if (!(sigma_sq > 0.0) || !(k >= 0.0)) {
        throw std::invalid_argument("sigma_sq must be positive and k non-negative");
    }
    const double x = k * k / (2.0 * sigma_sq);
    const int half = n / 2;
    if (x < 1.0) {
        // Small x: the complement of the head is the tail sum_{d>=n/2}, which
        // avoids cancelling 1 against a number close to 1.
        double term = std::exp(-x);
        for (int d = 1; d <= half; ++d) {
            term *= x / d;
        }
        double tail = 0.0;
        for (int d = half; d < half + 1'000'000; ++d) {
            tail += term;
            if (term <= tail * 1e-17) {
                return detail::clamp_probability(tail);
            }
            term *= x / (d + 1);
        }
        throw convergence_error("even-dimension tail did not converge");
    }
    double term = 1.0;
    double head = 0.0;
    for (int d = 0; d < half; ++d) {
        head += term;
        term *= x / (d + 1);
    }
    return detail::clamp_probability(1.0 - std::exp(-x) * head);
}

/// Odd n: sqrt(2/pi) exp(-x) sum_{j=n,n+2,...} (k/sigma)^j / j!!.
///
/// Terms are accumulated in log space so that exp(-x) never multiplies an
/// overflowing partial sum. Summation stops once the terms are decreasing and
/// the next one is below 1e-15 of the partial sum (or below 1e-300).
inline double odd_series(int n, double sigma_sq, double k, std::size_t max_terms = 1'000'000)
{
    if (n < 1 || n % 2 == 0) {
        throw std::invalid_argument("odd_series needs an odd dimension");
    }
    if (!(sigma_sq > 0.0) || !(k >= 0.0)) {
        throw std::invalid_argument("sigma_sq must be positive and k non-negative");
    }
    if (k == 0.0) {
        return 0.0;
    }
    const double log_ratio = std::log(k) - 0.5 * std::log(sigma_sq);
    const double ratio_sq = k * k / sigma_sq;
    const double x = 0.5 * ratio_sq;
    double log_term = n * log_ratio - detail::log_odd_double_factorial(n) - x;
    double sum = 0.0;
    int j = n;
    for (std::size_t i = 0; i < max_terms; ++i) {
        const double term = std::exp(log_term);
        sum += term;
        const bool decreasing = ratio_sq < j + 2;
        log_term += 2.0 * log_ratio - std::log(static_cast<double>(j + 2));
        j += 2;
        const double next = std::exp(log_term);
        if (decreasing && (next <= 1e-15 * sum || next < 1e-300)) {
            return detail::clamp_probability(std::sqrt(2.0 / std::numbers::pi) * sum);
        }
    }
    std::ostringstream msg;
    msg << "odd-dimension series did not converge within " << max_terms << " terms";
    throw convergence_error(msg.str());
}

inline ProbabilityEstimate cage_prob_even(int n, std::int64_t c, std::int64_t k)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("cage_prob_even needs an even dimension >= 2");
    }
    const CagePlan plan = make_plan(n, c, k);
    return {even_series(n, plan.sigma_sq, static_cast<double>(k)), Method::series_even};
}

inline ProbabilityEstimate cage_prob_odd(int n, std::int64_t c, std::int64_t k)
{
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("cage_prob_odd needs an odd dimension >= 3");
    }
    const CagePlan plan = make_plan(n, c, k);
    return {odd_series(n, plan.sigma_sq, static_cast<double>(k)), Method::series_odd};
}

/// Parity dispatch for n >= 2.
inline ProbabilityEstimate cage_prob_series(int n, std::int64_t c, std::int64_t k)
{
    return n % 2 == 0 ? cage_prob_even(n, c, k) : cage_prob_odd(n, c, k);
}

/// The k-independent bounds l(c) <= P <= u(c) for the three-dimensional game.
inline Bounds3D bounds_3d(std::int64_t c)
{
    detail::require_power_positive(c);
    const auto cd = static_cast<double>(c);
    const double pi = std::numbers::pi;
    const double cp1 = cd + 1;
    const double lower = std::sqrt(2.0) / std::sqrt(pi) * std::exp(-3.0 / (8.0 * pi * cd * cp1 * cp1)) *
                         std::pow(1.0 / (12.0 * pi * cd * cp1 * cp1), 1.5);
    const double upper = std::exp(-9.0 / (8.0 * pi * cd * std::pow(cp1, 4))) * std::sqrt(6.0) /
                         (12.0 * cp1 * pi * std::sqrt(cd)) * (3.0 / (2.0 * pi * cd * cp1 * cp1 - 3.0));
    return {lower, upper};
}

/// Probability mass within radius k of an isotropic n-dimensional Gaussian
/// with per-axis variance sigma_sq, by adaptive Gauss-Kronrod quadrature of
/// the radial density u^{n-1} exp(-u^2/2) / (2^{n/2-1} Gamma(n/2)), u = r/sigma.
/// Pass k = +inf for the total mass.
inline double radial_quadrature_oracle(int n, double sigma_sq, double k, double abs_tol = 1e-10)
{
    if (n < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    if (!(sigma_sq > 0.0) || !(k >= 0.0)) {
        throw std::invalid_argument("sigma_sq must be positive and k non-negative");
    }
    const double log_norm = (0.5 * n - 1.0) * std::numbers::ln2 + std::lgamma(0.5 * n);
    auto density = [n, log_norm](double u) {
        if (u <= 0.0) {
            return n == 1 ? std::exp(-log_norm) : 0.0;
        }
        return std::exp((n - 1) * std::log(u) - 0.5 * u * u - log_norm);
    };
    // Beyond sqrt(n) + 40 the remaining mass is far below double resolution.
    const double cutoff = std::sqrt(static_cast<double>(n)) + 40.0;
    const double upper = std::min(k / std::sqrt(sigma_sq), cutoff);
    if (upper == 0.0) {
        return 0.0;
    }
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, upper, 12, 1e-12, &error);
    if (error > abs_tol) {
        std::ostringstream msg;
        msg << "radial quadrature reached error " << error << " above tolerance " << abs_tol;
        throw convergence_error(msg.str());
    }
    return value;
}

/// Series probabilities at each k, for checking that they vanish as k grows.
inline std::vector<double> asymptotic_vanish_check(int n, std::int64_t c, std::span<const std::int64_t> ks)
{
    if (n < 4) {
        throw std::invalid_argument("vanishing regime needs dimension >= 4");
    }
    std::vector<double> out;
    out.reserve(ks.size());
    for (auto k : ks) {
        out.push_back(cage_prob_series(n, c, k).value);
    }
    return out;
}

} // namespace angelcage

#endif
