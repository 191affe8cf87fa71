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

#ifndef ANGELCAGE_MONTECARLO_HPP
#define ANGELCAGE_MONTECARLO_HPP

// Monte Carlo play of the drunk angel against a fixed cage plan.
//
// Each turn adds an independent uniform integer in [-c, c] to every
// coordinate. The cage is revealed after turn N: the angel is caged when her
// final Euclidean norm is at most k, and "never left" when every position of
// the walk satisfied the same bound. Every trial draws from its own stream,
// seeded from (master_seed, trial_index), so results do not depend on how
// trials are scheduled over threads.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "lattice.hpp"
#include "rng.hpp"

namespace angelcage {

struct SimulationConfig {
    CagePlan plan;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    bool record_traces = false;
};

struct TrialOutcome {
    LatticePoint final_position;
    bool caged = false;
    bool never_left = false;
    double max_distance = 0.0;
};

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t caged_count = 0;
    std::uint64_t never_left_count = 0;
    double caged_rate = 0.0;
    double never_left_rate = 0.0;
    double ci_halfwidth_95 = 0.0; // normal approximation, on caged_rate
    double elapsed_seconds = 0.0;
};

struct Trace {
    std::vector<LatticePoint> positions;
};

struct SweepRow {
    std::int64_t inner_radius = 0;
    std::uint64_t turns = 0;
    double caged_rate = 0.0;
    double never_left_rate = 0.0;
};

/// Draws moves of the angel: a uniform integer in [-c, c] per coordinate.
///
/// A move has (2c+1)^n equally likely outcomes. When that count is at most
/// `table_limit`, a move is one draw from {0, ..., (2c+1)^n - 1} looked up in
/// an offset table, and several moves share one 64-bit word through
/// batched_bounded(); the batch keeps the combined range below 2^40 so
/// rejections are rare. Larger moves fall back to packing coordinates into
/// groups, one unbiased 32-bit draw per group.
class StepSampler
{
public:
    static constexpr std::uint64_t table_limit = 1U << 14;
    static constexpr std::uint64_t batch_range_limit = std::uint64_t{1} << 40;
    static constexpr std::size_t max_batch = 40;

    StepSampler(int dimension, std::int64_t power) : dimension_(dimension), power_(power)
    {
        if (dimension < 1) {
            throw std::invalid_argument("dimension must be at least 1");
        }
        if (power < 0 || 2 * power + 1 > std::int64_t{0xFFFFFFFF}) {
            throw std::invalid_argument("power must be in [0, 2^31 - 1)");
        }
        const auto width = static_cast<std::uint64_t>(2 * power + 1);

        std::uint64_t outcomes = 1;
        for (int i = 0; i < dimension && outcomes <= table_limit; ++i) {
            outcomes *= width;
        }
        if (outcomes <= table_limit) {
            move_range_ = outcomes;
            move_table_ = offset_table(outcomes, dimension, width);
            std::uint64_t product = outcomes;
            batch_ = 1;
            while (batch_ < max_batch && product * outcomes <= batch_range_limit && outcomes > 1) {
                product *= outcomes;
                ++batch_;
            }
            batch_threshold_ = batched_threshold(product);
            return;
        }

        int first = 0;
        while (first < dimension) {
            Group g;
            g.first = first;
            std::uint64_t range = width;
            g.width = 1;
            while (first + g.width < dimension && range * width <= table_limit) {
                range *= width;
                ++g.width;
            }
            g.range = static_cast<std::uint32_t>(range);
            g.threshold = lemire_threshold(g.range);
            if (g.width > 1) {
                g.table = offset_table(range, g.width, width);
            }
            first += g.width;
            groups_.push_back(std::move(g));
        }
    }

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] std::int64_t power() const noexcept { return power_; }

    /// True when moves are drawn in batches from one offset table.
    [[nodiscard]] bool batched() const noexcept { return move_range_ != 0; }
    [[nodiscard]] std::size_t batch_size() const noexcept { return batch_; }

    /// Draws batch_size() move indices into `out`. Requires batched().
    template <typename Engine>
    void draw_batch(Engine &engine, std::uint32_t *out) const noexcept
    {
        batched_bounded(engine, move_range_, batch_, batch_threshold_, out);
    }

    /// Adds the move with index `idx` to `pos`. Requires batched().
    template <std::size_t Dim>
    void apply_index(std::uint32_t idx, std::array<std::int64_t, Dim> &pos) const noexcept
    {
        const std::int32_t *row = move_table_.data() + static_cast<std::size_t>(idx) * Dim;
        [&]<std::size_t... I>(std::index_sequence<I...>) {
            ((pos[I] += row[I]), ...);
        }(std::make_index_sequence<Dim>{});
    }

    void apply_index(std::uint32_t idx, std::int64_t *pos) const noexcept
    {
        const auto n = static_cast<std::size_t>(dimension_);
        const std::int32_t *row = move_table_.data() + static_cast<std::size_t>(idx) * n;
        for (std::size_t i = 0; i < n; ++i) {
            pos[i] += row[i];
        }
    }

    /// Draws one move coordinate group by coordinate group. Requires !batched().
    template <typename Source>
    void apply_grouped(Source &src, std::int64_t *pos) const noexcept
    {
        for (const auto &g : groups_) {
            const std::uint32_t idx = bounded_u32(src, g.range, g.threshold);
            if (g.table.empty()) {
                pos[g.first] += static_cast<std::int64_t>(idx) - power_;
                continue;
            }
            const std::int32_t *row = g.table.data() + static_cast<std::size_t>(idx) * g.width;
            for (int i = 0; i < g.width; ++i) {
                pos[g.first + i] += row[i];
            }
        }
    }

private:
    struct Group {
        int first = 0;
        int width = 1;
        std::uint32_t range = 1;
        std::uint32_t threshold = 0;
        std::vector<std::int32_t> table;
    };

    // Row idx holds the base-(2c+1) digits of idx shifted to [-c, c].
    static std::vector<std::int32_t> offset_table(std::uint64_t rows, int columns, std::uint64_t width)
    {
        const auto cols = static_cast<std::size_t>(columns);
        std::vector<std::int32_t> table(static_cast<std::size_t>(rows) * cols);
        const auto c = static_cast<std::int64_t>(width / 2);
        for (std::size_t idx = 0; idx < static_cast<std::size_t>(rows); ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t i = 0; i < cols; ++i) {
                table[idx * cols + i] = static_cast<std::int32_t>(static_cast<std::int64_t>(rest % width) - c);
                rest /= width;
            }
        }
        return table;
    }

    int dimension_;
    std::int64_t power_;
    std::uint64_t move_range_ = 0;
    std::vector<std::int32_t> move_table_;
    std::size_t batch_ = 1;
    std::uint64_t batch_threshold_ = 0;
    std::vector<Group> groups_;
};

namespace detail {

inline void require_config(const SimulationConfig &config)
{
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.plan.dimension < 1) {
        throw std::invalid_argument("plan dimension must be at least 1");
    }
}

template <std::size_t Dim>
std::int64_t norm_sq_of(const std::array<std::int64_t, Dim> &pos) noexcept
{
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
        return ((pos[I] * pos[I]) + ...);
    }(std::make_index_sequence<Dim>{});
}

inline std::int64_t norm_sq_of(const std::vector<std::int64_t> &pos) noexcept
{
    std::int64_t s = 0;
    for (auto x : pos) {
        s += x * x;
    }
    return s;
}

// Walks `steps` moves from the origin. `observe(t, coords, norm_sq)` sees the
// origin at t = 0 and then every position. A final partial batch discards its
// unused draws.
template <typename Coords, typename Observer>
Observer walk_with(Coords pos, const StepSampler &sampler, std::uint64_t steps, std::uint64_t seed, Observer observe)
{
    Xoshiro256 engine(seed);
    std::fill(pos.begin(), pos.end(), 0);
    observe(std::uint64_t{0}, std::span<const std::int64_t>(pos.data(), pos.size()), std::int64_t{0});
    auto settle = [&](std::uint64_t t) {
        observe(t, std::span<const std::int64_t>(pos.data(), pos.size()), norm_sq_of(pos));
    };

    if (!sampler.batched()) {
        Word32Source<Xoshiro256> words(engine);
        for (std::uint64_t t = 1; t <= steps; ++t) {
            sampler.apply_grouped(words, pos.data());
            settle(t);
        }
        return observe;
    }

    std::array<std::uint32_t, StepSampler::max_batch> draws{};
    const std::uint64_t batch = sampler.batch_size();
    for (std::uint64_t t = 1; t <= steps;) {
        sampler.draw_batch(engine, draws.data());
        const std::uint64_t take = std::min(batch, steps - t + 1);
        for (std::uint64_t j = 0; j < take; ++j, ++t) {
            if constexpr (requires { std::tuple_size<Coords>::value; }) {
                sampler.apply_index(draws[j], pos);
            } else {
                sampler.apply_index(draws[j], pos.data());
            }
            settle(t);
        }
    }
    return observe;
}

template <typename Observer>
Observer walk(const StepSampler &sampler, std::uint64_t steps, std::uint64_t seed, Observer observe)
{
    switch (sampler.dimension()) {
    case 1:
        return walk_with(std::array<std::int64_t, 1>{}, sampler, steps, seed, observe);
    case 2:
        return walk_with(std::array<std::int64_t, 2>{}, sampler, steps, seed, observe);
    case 3:
        return walk_with(std::array<std::int64_t, 3>{}, sampler, steps, seed, observe);
    case 4:
        return walk_with(std::array<std::int64_t, 4>{}, sampler, steps, seed, observe);
    case 5:
        return walk_with(std::array<std::int64_t, 5>{}, sampler, steps, seed, observe);
    case 6:
        return walk_with(std::array<std::int64_t, 6>{}, sampler, steps, seed, observe);
    default:
        return walk_with(std::vector<std::int64_t>(static_cast<std::size_t>(sampler.dimension())), sampler, steps,
                         seed, observe);
    }
}

// Largest and last squared norm along a walk.
struct NormSummary {
    std::int64_t max_norm_sq = 0;
    std::int64_t final_norm_sq = 0;

    void operator()(std::uint64_t, std::span<const std::int64_t>, std::int64_t norm_sq) noexcept
    {
        max_norm_sq = std::max(max_norm_sq, norm_sq);
        final_norm_sq = norm_sq;
    }
};

// Runs body(begin, end) over fixed-size blocks of [0, count). Block bounds do
// not depend on the thread count.
template <typename Body>
void for_each_block(std::uint64_t count, std::uint64_t block, unsigned threads, Body &&body)
{
    const std::uint64_t blocks = (count + block - 1) / block;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            body(b, b * block, std::min(count, (b + 1) * block));
        }
    };
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(blocks, 1)));
    if (threads == 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned i = 1; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
}

inline double binomial_halfwidth_95(double p, std::uint64_t trials)
{
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

} // namespace detail

/// Plays one game. The walk has exactly plan.turns moves.
inline TrialOutcome run_trial(const SimulationConfig &config, std::uint64_t trial_index)
{
    detail::require_config(config);
    if (trial_index >= config.trials) {
        throw std::out_of_range("trial index beyond configured trials");
    }
    const auto &plan = config.plan;
    const StepSampler sampler(plan.dimension, plan.power);
    const std::int64_t k_sq = plan.inner_radius * plan.inner_radius;

    TrialOutcome out;
    std::int64_t max_norm_sq = 0;
    auto observe = [&](std::uint64_t t, std::span<const std::int64_t> pos, std::int64_t norm_sq) {
        max_norm_sq = std::max(max_norm_sq, norm_sq);
        if (t == plan.turns) {
            out.final_position = LatticePoint(std::vector<std::int64_t>(pos.begin(), pos.end()));
        }
    };
    detail::walk(sampler, plan.turns, stream_seed(config.master_seed, trial_index), observe);
    out.max_distance = std::sqrt(static_cast<double>(max_norm_sq));
    out.caged = out.final_position.norm_sq() <= k_sq;
    out.never_left = max_norm_sq <= k_sq;
    return out;
}

/// Position sequence of one trial, origin first. Uses the same stream as
/// run_trial(), so the last position is that trial's final position.
inline Trace trace_walk(const SimulationConfig &config, std::uint64_t trial_index)
{
    detail::require_config(config);
    if (!config.record_traces) {
        throw std::invalid_argument("trace requested but record_traces is off");
    }
    if (trial_index >= config.trials) {
        throw std::out_of_range("trial index beyond configured trials");
    }
    const StepSampler sampler(config.plan.dimension, config.plan.power);
    Trace trace;
    trace.positions.reserve(static_cast<std::size_t>(config.plan.turns) + 1);
    auto observe = [&](std::uint64_t, std::span<const std::int64_t> pos, std::int64_t) {
        trace.positions.emplace_back(std::vector<std::int64_t>(pos.begin(), pos.end()));
    };
    detail::walk(sampler, config.plan.turns, stream_seed(config.master_seed, trial_index), observe);
    return trace;
}

/// Runs every trial of `config`. Counters are integers, so the rates are
/// bit-identical for any `threads`.
inline SimulationReport run_simulation(const SimulationConfig &config, unsigned threads = 1)
{
    detail::require_config(config);
    const auto start = std::chrono::steady_clock::now();
    const auto &plan = config.plan;
    const StepSampler sampler(plan.dimension, plan.power);
    const std::int64_t k_sq = plan.inner_radius * plan.inner_radius;

    std::atomic<std::uint64_t> caged{0};
    std::atomic<std::uint64_t> never_left{0};
    detail::for_each_block(config.trials, 64, threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local_caged = 0;
        std::uint64_t local_never = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto summary =
                detail::walk(sampler, plan.turns, stream_seed(config.master_seed, i), detail::NormSummary{});
            local_caged += summary.final_norm_sq <= k_sq ? 1 : 0;
            local_never += summary.max_norm_sq <= k_sq ? 1 : 0;
        }
        caged += local_caged;
        never_left += local_never;
    });

    SimulationReport report;
    report.trials = config.trials;
    report.caged_count = caged.load();
    report.never_left_count = never_left.load();
    report.caged_rate = static_cast<double>(report.caged_count) / static_cast<double>(config.trials);
    report.never_left_rate = static_cast<double>(report.never_left_count) / static_cast<double>(config.trials);
    report.ci_halfwidth_95 = detail::binomial_halfwidth_95(report.caged_rate, config.trials);
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Mean Euclidean distance from the origin after t = 0..steps moves.
///
/// Per-trial distances are summed inside fixed blocks of trials and the block
/// sums are combined in block order, which keeps the result independent of
/// the thread count.
inline std::vector<double> avg_distance_curve(int n, std::int64_t c, std::uint64_t steps, std::uint64_t trials,
                                              std::uint64_t master_seed, unsigned threads = 1)
{
    if (steps < 1 || trials < 1) {
        throw std::invalid_argument("steps and trials must be at least 1");
    }
    const StepSampler sampler(n, c);
    constexpr std::uint64_t block = 32;
    const std::uint64_t blocks = (trials + block - 1) / block;
    std::vector<std::vector<double>> partial(blocks);
    detail::for_each_block(trials, block, threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> sums(steps + 1, 0.0);
        for (std::uint64_t i = begin; i < end; ++i) {
            auto observe = [&](std::uint64_t t, std::span<const std::int64_t>, std::int64_t norm_sq) {
                sums[t] += std::sqrt(static_cast<double>(norm_sq));
            };
            detail::walk(sampler, steps, stream_seed(master_seed, i), observe);
        }
        partial[b] = std::move(sums);
    });
    std::vector<double> mean(steps + 1, 0.0);
    for (const auto &sums : partial) {
        for (std::size_t t = 0; t < mean.size(); ++t) {
            mean[t] += sums[t];
        }
    }
    for (auto &m : mean) {
        m /= static_cast<double>(trials);
    }
    return mean;
}

/// One simulation per inner radius in [k_min, k_max], each with its own plan
/// and a master seed derived from (master_seed, k).
inline std::vector<SweepRow> sweep_k(int n, std::int64_t c, std::int64_t k_min, std::int64_t k_max,
                                     std::uint64_t trials_per_k, std::uint64_t master_seed, unsigned threads = 1)
{
    if (k_min < 1 || k_max < k_min) {
        throw std::invalid_argument("need 1 <= k_min <= k_max");
    }
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        SimulationConfig config{make_plan(n, c, k), trials_per_k,
                                stream_seed(master_seed, static_cast<std::uint64_t>(k)), false};
        const auto report = run_simulation(config, threads);
        rows.push_back({k, config.plan.turns, report.caged_rate, report.never_left_rate});
    }
    return rows;
}

} // namespace angelcage

#endif
