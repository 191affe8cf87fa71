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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// The simulation criteria run the full 100,000-trial experiments and take
// about half an hour on one core. ANGELCAGE_THREADS sets the worker
// count (default: hardware concurrency).

#include <angelcage/angelcage.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace angelcage;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t seed = 20260401;

unsigned worker_threads()
{
    if (const char *env = std::getenv("ANGELCAGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict thresholds()
{
    Verdict v;
    const auto start = Clock::now();
    for (const auto &cell : table_spec("table1", full_reproduction_trials).cells) {
        const auto k = threshold_k_2d(cell.power, cell.eps);
        v.require(k == cell.inner_radius, "eps=" + format_number(cell.eps) + " c=" + std::to_string(cell.power) +
                                              " gave k=" + std::to_string(k));
    }
    const double t = seconds_since(start);
    v.require(t < 1.0, "runtime");
    v.detail << "9/9 radii checked in " << t << " s";
    return v;
}

Verdict table_run(const std::string &id, std::uint64_t trials, unsigned threads, double time_limit)
{
    Verdict v;
    const auto spec = table_spec(id, trials);
    const auto start = Clock::now();
    const auto results = run_table(spec, seed, threads);
    const double t = seconds_since(start);
    v.detail << id << " trials=" << trials << " (" << spec.tolerance_note << "):";
    for (const auto &r : results) {
        v.detail << ' ' << r.cell.label << '=' << r.measured << (r.pass ? "" : "!");
        v.require(r.pass, r.cell.label);
    }
    if (id == "table2") {
        const auto b = bounds_3d(1);
        for (const auto &r : results) {
            if (r.cell.dimension != 3) {
                continue;
            }
            const double se = binomial_standard_error(r.measured, trials);
            v.require(r.measured >= b.lower - 3 * se && r.measured <= b.upper + 3 * se,
                      r.cell.label + " outside [l(1) - 3se, u(1) + 3se]");
        }
        v.detail << "; bounds l(1)=" << b.lower << " u(1)=" << b.upper;
    }
    v.detail << "; " << t << " s";
    if (time_limit > 0) {
        v.require(t < time_limit, "runtime above " + format_number(time_limit) + " s");
    }
    return v;
}

Verdict table1(unsigned threads)
{
    auto full = table_run("table1", full_reproduction_trials, threads, 0);
    auto reduced = table_run("table1", 10'000, threads, 600);
    Verdict v;
    v.require(full.pass, "full run");
    v.require(reduced.pass, "reduced run");
    v.detail << full.detail.str() << " | " << reduced.detail.str();
    return v;
}

Verdict exact_vs_oracle()
{
    Verdict v;
    const auto start = Clock::now();
    int checked = 0;
    for (std::int64_t c = 0; c <= 4; ++c) {
        for (std::int64_t l = 1; l <= 8; ++l) {
            const auto exact = pmf_exact(c, l);
            v.require(exact == pmf_convolve_oracle(c, l), "pmf c=" + std::to_string(c) + " l=" + std::to_string(l));
            BigInt sum = 0;
            for (std::int64_t j = -c * l; j <= c * l; ++j) {
                sum += walk_count(c, l, j);
            }
            v.require(sum == boost::multiprecision::pow(BigInt{2 * c + 1}, static_cast<unsigned>(l)),
                      "conservation c=" + std::to_string(c) + " l=" + std::to_string(l));
            ++checked;
        }
    }
    const double t = seconds_since(start);
    v.require(t < 5.0, "runtime");
    v.detail << checked << " (c, l) pairs in " << t << " s";
    return v;
}

Verdict counting()
{
    Verdict v;
    const auto start = Clock::now();
    for (int r = 0; r <= 50; ++r) {
        v.require(count_disk_hcv(r) == count_ball_exact(2, r), "r=" + std::to_string(r));
    }
    const double disk = count_ball_exact(2, 50).convert_to<double>() / ball_volume(2, 50) - 1.0;
    const double ball = count_ball_exact(3, 20).convert_to<double>() / ball_volume(3, 20) - 1.0;
    v.require(std::abs(disk) < 0.05, "volume (2, 50)");
    v.require(std::abs(ball) < 0.05, "volume (3, 20)");
    const double t = seconds_since(start);
    v.require(t < 30.0, "runtime");
    v.detail << "r in [0, 50] agree; relative volume error " << disk << " (n=2, r=50), " << ball
             << " (n=3, r=20); " << t << " s";
    return v;
}

Verdict series_vs_quadrature()
{
    Verdict v;
    const auto start = Clock::now();
    double worst = 0;
    for (int n = 2; n <= 7; ++n) {
        for (std::int64_t c : {1, 2}) {
            for (std::int64_t k : {5, 10, 20}) {
                const auto plan = make_plan(n, c, k);
                const double diff = std::abs(cage_prob_series(n, c, k).value -
                                             radial_quadrature_oracle(n, plan.sigma_sq, static_cast<double>(k)));
                worst = std::max(worst, diff);
                v.require(diff <= 1e-8, "n=" + std::to_string(n) + " c=" + std::to_string(c) + " k=" +
                                            std::to_string(k));
            }
        }
    }
    const double t = seconds_since(start);
    v.require(t < 5.0, "runtime");
    v.detail << "36 cases, max |series - quadrature| = " << worst << "; " << t << " s";
    return v;
}

Verdict analytic_vs_empirical(unsigned threads)
{
    Verdict v;
    const SimulationConfig config{make_plan(2, 1, 40), full_reproduction_trials, stream_seed(seed, 40), false};
    const auto report = run_simulation(config, threads);
    const double analytic = cage_prob_2d(1, 40).value;
    v.require(std::abs(analytic - report.caged_rate) <= 0.02, "2-D k=40");
    const double odd = cage_prob_odd(3, 1, 10).value;
    v.require(std::abs(odd - 0.00379) < 5e-6, "odd series value");
    v.require(std::abs(odd - 0.00371) <= 0.001, "odd series vs published");
    v.detail << "P2(1,40)=" << analytic << " simulated=" << report.caged_rate << "; P3(1,10)=" << odd;
    return v;
}

Verdict vanishing()
{
    Verdict v;
    const std::vector<std::int64_t> ks{5, 10, 25, 50};
    for (int n : {4, 5}) {
        const auto ps = asymptotic_vanish_check(n, 1, ks);
        v.detail << "n=" << n << ':';
        for (std::size_t i = 0; i < ps.size(); ++i) {
            v.detail << ' ' << ps[i];
            if (i > 0) {
                v.require(ps[i] < ps[i - 1], "n=" + std::to_string(n) + " not decreasing");
            }
        }
        v.require(ps[2] < 1e-4, "n=" + std::to_string(n) + " at k=25");
        v.detail << "; ";
    }
    return v;
}

Verdict determinism()
{
    Verdict v;
    const SimulationConfig config{make_plan(2, 1, 13), 10'000, seed, false};
    const auto one = run_simulation(config, 1);
    for (unsigned t : {2U, 8U}) {
        const auto many = run_simulation(config, t);
        v.require(many.caged_rate == one.caged_rate && many.never_left_rate == one.never_left_rate &&
                      many.caged_count == one.caged_count,
                  std::to_string(t) + " threads");
    }
    v.detail << "caged_rate=" << one.caged_rate << " never_left_rate=" << one.never_left_rate
             << " identical on 1, 2, 8 threads";
    return v;
}

Verdict distance_curves(unsigned threads)
{
    Verdict v;
    constexpr std::uint64_t steps = 10'000;
    double prev = 0;
    v.detail << "mean distance at t=10000:";
    for (int n = 2; n <= 5; ++n) {
        const auto curve = avg_distance_curve(n, 1, steps, 1000, stream_seed(seed, 100 + n), threads);
        v.detail << " n=" << n << ':' << curve[steps];
        v.require(curve[steps] > prev, "not increasing at n=" + std::to_string(n));
        prev = curve[steps];
    }
    const auto line = avg_distance_curve(1, 1, steps, 20'000, stream_seed(seed, 101), threads);
    for (std::uint64_t t : {1000U, 10'000U}) {
        const double expected = std::sqrt(4.0 * static_cast<double>(t) / (3.0 * std::numbers::pi));
        const double rel = line[t] / expected - 1.0;
        v.detail << "; 1-D t=" << t << " relative error " << rel;
        v.require(std::abs(rel) <= 0.03, "1-D half-normal at t=" + std::to_string(t));
    }
    return v;
}

} // namespace

int main()
{
    const unsigned threads = worker_threads();
    std::cout << std::setprecision(6);
    std::cout << "angelcage acceptance suite, seed " << seed << ", " << threads << " thread(s)\n" << std::flush;

    struct Criterion {
        int id;
        const char *name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "table1 thresholds", thresholds},
        {2, "table1 success rates", [&] { return table1(threads); }},
        {3, "table2 success rates", [&] { return table_run("table2", full_reproduction_trials, threads, 0); }},
        {4, "exact pmf vs convolution", exact_vs_oracle},
        {5, "lattice counting", counting},
        {6, "series vs quadrature", series_vs_quadrature},
        {7, "analytic vs empirical", [&] { return analytic_vs_empirical(threads); }},
        {8, "vanishing in high dimension", vanishing},
        {9, "thread determinism", determinism},
        {10, "distance curves", [&] { return distance_curves(threads); }},
    };

    int failures = 0;
    for (const auto &c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail.str()
                  << '\n'
                  << std::flush;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
