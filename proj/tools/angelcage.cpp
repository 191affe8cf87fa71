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

// angelcage command-line tool.
//
// Exit codes: 0 success, 1 reproduction failure, 2 usage error, 3 I/O error.

#include <angelcage/angelcage.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace angelcage;

constexpr int exit_reproduce_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

constexpr std::uint64_t default_seed = 1;

class io_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string errno_text() { return std::strerror(errno); }

struct Globals {
    std::uint64_t seed = default_seed;
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
    std::string output;
    std::vector<std::string> argv;
};

/// Destination of a command's output: the --output file or standard output.
class Sink
{
public:
    explicit Sink(const std::string &path) : path_(path)
    {
        if (path_.empty() || path_ == "-") {
            return;
        }
        file_ = std::make_unique<std::ofstream>(path_);
        if (!*file_) {
            throw io_error("cannot open '" + path_ + "' for writing: " + errno_text());
        }
    }

    std::ostream &stream() { return file_ ? *file_ : std::cout; }

    void finish()
    {
        stream().flush();
        if (!stream()) {
            throw io_error("write to '" + (path_.empty() ? std::string("stdout") : path_) + "' failed");
        }
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

RunManifest manifest_for(const std::string &command, const Globals &g)
{
    RunManifest m{command, g.argv, g.seed, RunManifest::utc_now()};
    const bool has_seed = std::find(g.argv.begin(), g.argv.end(), "--seed") != g.argv.end() ||
                          std::any_of(g.argv.begin(), g.argv.end(), [](const std::string &a) {
                              return a.rfind("--seed=", 0) == 0;
                          });
    if (!has_seed) {
        m.arguments.push_back("--seed");
        m.arguments.push_back(std::to_string(g.seed));
    }
    return m;
}

// ---------------------------------------------------------------- commands

struct PmfArgs {
    std::int64_t power = 1;
    std::int64_t turns = 1;
    std::optional<std::int64_t> within;
};

void cmd_exact_pmf(const PmfArgs &a, std::ostream &os)
{
    if (a.within) {
        const Rational p = cdf_within(a.power, a.turns, *a.within);
        write_csv_row(os, {"power", "turns", "within", "exact", "value"});
        write_csv_row(os, std::vector<std::string>{format_number(a.power), format_number(a.turns),
                                                   format_number(*a.within), p.str(),
                                                   format_number(p.convert_to<double>())});
        return;
    }
    const auto pmf = pmf_exact(a.power, a.turns);
    write_csv_row(os, {"displacement", "count", "probability"});
    for (std::int64_t j = -pmf.reach(); j <= pmf.reach(); ++j) {
        write_csv_row(os, std::vector<std::string>{format_number(j), pmf.count(j).str(),
                                                   format_number(pmf.probability(j))});
    }
}

struct CountArgs {
    int dim = 2;
    double radius = 0;
    std::string method = "exact";
};

void cmd_count(const CountArgs &a, std::ostream &os)
{
    if (a.method == "exact") {
        os << count_ball_exact(a.dim, a.radius) << '\n';
    } else if (a.method == "hcv") {
        if (a.dim != 2) {
            throw std::invalid_argument("--method hcv counts planar points only (--dim 2)");
        }
        os << count_disk_hcv(a.radius) << '\n';
    } else {
        os << format_number(ball_volume(a.dim, a.radius)) << '\n';
    }
}

struct PlanArgs {
    int dim = 2;
    std::int64_t power = 1;
    std::int64_t inner_k = 1;
};

void cmd_shell(const PlanArgs &a, std::ostream &os) { os << shell_turns(a.dim, a.power, a.inner_k) << '\n'; }

struct ThresholdArgs {
    int dim = 2;
    std::int64_t power = 1;
    double eps = 0.5;
};

void cmd_threshold(const ThresholdArgs &a, std::ostream &os)
{
    const std::int64_t k = a.dim == 1 ? threshold_k_1d(a.power, a.eps) : threshold_k_2d(a.power, a.eps);
    write_csv_row(os, {"dim", "power", "eps", "k"});
    write_csv_row(os, std::vector<std::string>{format_number(a.dim), format_number(a.power), format_number(a.eps),
                                               format_number(k)});
}

void cmd_cage_prob(const PlanArgs &a, const std::string &method, std::ostream &os)
{
    const CagePlan plan = make_plan(a.dim, a.power, a.inner_k);
    ProbabilityEstimate est;
    if (method == "oracle") {
        est = {radial_quadrature_oracle(a.dim, plan.sigma_sq, static_cast<double>(a.inner_k)),
               Method::quadrature_oracle};
    } else if (a.dim == 1) {
        est = cage_prob_1d_lower(a.power, static_cast<double>(a.inner_k));
    } else {
        est = cage_prob_series(a.dim, a.power, a.inner_k);
    }
    write_csv_row(os, {"dim", "power", "k", "N", "sigma_sq", "method", "value"});
    write_csv_row(os, std::vector<std::string>{format_number(a.dim), format_number(a.power), format_number(a.inner_k),
                                               format_number(plan.turns), format_number(plan.sigma_sq),
                                               std::string(to_string(est.method)), format_number(est.value)});
}

void cmd_bounds3d(std::int64_t power, std::ostream &os)
{
    const auto b = bounds_3d(power);
    write_csv_row(os, {"power", "lower", "upper"});
    write_csv_row(os, std::vector<std::string>{format_number(power), format_number(b.lower), format_number(b.upper)});
}

void cmd_simulate(const PlanArgs &a, std::uint64_t trials, const Globals &g, std::ostream &os)
{
    const SimulationConfig config{make_plan(a.dim, a.power, a.inner_k), trials, g.seed, false};
    const auto r = run_simulation(config, g.threads);
    write_csv_row(os, {"dim", "power", "k", "N", "trials", "seed", "caged_rate", "never_left_rate", "ci95",
                       "elapsed_s"});
    write_csv_row(os, std::vector<std::string>{format_number(a.dim), format_number(a.power), format_number(a.inner_k),
                                               format_number(config.plan.turns), format_number(trials),
                                               format_number(g.seed), format_number(r.caged_rate),
                                               format_number(r.never_left_rate), format_number(r.ci_halfwidth_95),
                                               format_number(r.elapsed_seconds)});
}

Trace make_trace(const PlanArgs &a, std::uint64_t trial, std::uint64_t seed)
{
    const SimulationConfig config{make_plan(a.dim, a.power, a.inner_k), trial + 1, seed, true};
    return trace_walk(config, trial);
}

void cmd_trace(const PlanArgs &a, std::uint64_t trial, const Globals &g, std::ostream &os)
{
    const Trace trace = make_trace(a, trial, g.seed);
    std::vector<std::string> header{"step"};
    for (int i = 1; i <= a.dim; ++i) {
        header.push_back("x" + std::to_string(i));
    }
    write_csv_row(os, header);
    std::vector<std::string> row;
    for (std::size_t t = 0; t < trace.positions.size(); ++t) {
        row.assign(1, format_number(static_cast<std::uint64_t>(t)));
        for (auto x : trace.positions[t].coords()) {
            row.push_back(format_number(x));
        }
        write_csv_row(os, row);
    }
}

struct CurveArgs {
    int dim = 2;
    std::int64_t power = 1;
    std::uint64_t steps = 1000;
    std::uint64_t trials = 100;
};

void cmd_distance_curve(const CurveArgs &a, const Globals &g, std::ostream &os)
{
    const auto curve = avg_distance_curve(a.dim, a.power, a.steps, a.trials, g.seed, g.threads);
    write_csv_row(os, {"step", "mean_distance"});
    for (std::size_t t = 0; t < curve.size(); ++t) {
        write_csv_row(os, std::vector<std::string>{format_number(static_cast<std::uint64_t>(t)),
                                                   format_number(curve[t])});
    }
}

struct SweepArgs {
    int dim = 2;
    std::int64_t power = 1;
    std::int64_t k_min = 1;
    std::int64_t k_max = 100;
    std::uint64_t trials = 1000;
};

void cmd_sweep(const SweepArgs &a, const Globals &g, std::ostream &os)
{
    write_csv_row(os, {"k", "N", "caged_rate", "never_left_rate"});
    for (const auto &row : sweep_k(a.dim, a.power, a.k_min, a.k_max, a.trials, g.seed, g.threads)) {
        write_csv_row(os, std::vector<std::string>{format_number(row.inner_radius), format_number(row.turns),
                                                   format_number(row.caged_rate), format_number(row.never_left_rate)});
    }
}

int cmd_reproduce(const std::string &table, std::uint64_t trials, const Globals &g, std::ostream &os)
{
    const TableSpec spec = table_spec(table, trials);
    os << "# tolerance: " << spec.tolerance_note << '\n';
    write_csv_row(os, {"table", "cell", "dim", "power", "k", "eps", "N", "trials", "expected", "measured",
                       "never_left_rate", "rule", "tolerance", "pass"});
    std::size_t passed = 0;
    for (std::size_t i = 0; i < spec.cells.size(); ++i) {
        const auto r = run_cell(spec, i, g.seed, g.threads);
        passed += r.pass ? 1 : 0;
        const auto &c = r.cell;
        write_csv_row(os, std::vector<std::string>{
                              spec.id, c.label, format_number(c.dimension), format_number(c.power),
                              format_number(c.inner_radius), c.dimension == 2 ? format_number(c.eps) : "",
                              format_number(r.turns), format_number(trials), format_number(c.expected),
                              format_number(r.measured), format_number(r.never_left),
                              c.rule == CellRule::within ? "within" : "at_most", format_number(c.tolerance),
                              r.pass ? "true" : "false"});
        os.flush();
    }
    os << "# summary: " << passed << '/' << spec.cells.size() << " cells passed\n";
    std::cerr << spec.id << ": " << passed << '/' << spec.cells.size() << " cells passed\n";
    return passed == spec.cells.size() ? 0 : exit_reproduce_failed;
}

// -------------------------------------------------------------------- plot

struct CsvData {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::vector<std::string> split_fields(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    return out;
}

CsvData read_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open '" + path + "' for reading: " + errno_text());
    }
    CsvData data;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            data.comments.push_back(line);
            continue;
        }
        if (data.header.empty()) {
            data.header = split_fields(line);
            continue;
        }
        std::vector<double> row;
        for (const auto &f : split_fields(line)) {
            try {
                row.push_back(std::stod(f));
            } catch (const std::exception &) {
                throw io_error("'" + path + "' line " + std::to_string(line_no) + ": not a number: '" + f + "'");
            }
        }
        data.rows.push_back(std::move(row));
    }
    if (in.bad()) {
        throw io_error("read from '" + path + "' failed: " + errno_text());
    }
    if (data.header.empty()) {
        throw io_error("'" + path + "' has no CSV header");
    }
    return data;
}

// Value of `flag` on a "# rerun:" manifest line, if present.
std::optional<double> rerun_flag(const CsvData &data, const std::string &flag)
{
    for (const auto &c : data.comments) {
        if (c.rfind("# rerun:", 0) != 0) {
            continue;
        }
        std::stringstream ss(c.substr(8));
        std::string tok;
        while (ss >> tok) {
            if (tok == flag && ss >> tok) {
                return std::stod(tok);
            }
            if (tok.rfind(flag + "=", 0) == 0) {
                return std::stod(tok.substr(flag.size() + 1));
            }
        }
    }
    return std::nullopt;
}

struct PlotArgs {
    std::string kind = "footprint";
    std::string input;
    std::optional<double> radius;
    PlanArgs plan;
    std::uint64_t trial = 0;
    CurveArgs curve;
};

// Footprint points use the first two coordinates; a 1-D walk lies on y = 0.
std::vector<PlanarPoint> planar_rows(const std::vector<std::vector<double>> &rows, std::size_t first)
{
    std::vector<PlanarPoint> pts;
    pts.reserve(rows.size());
    for (const auto &r : rows) {
        PlanarPoint p;
        p.x = r.size() > first ? r[first] : 0.0;
        p.y = r.size() > first + 1 ? r[first + 1] : 0.0;
        pts.push_back(p);
    }
    return pts;
}

void cmd_plot(const PlotArgs &a, const Globals &g, const RunManifest &m, std::ostream &os)
{
    std::string svg;
    if (a.kind == "footprint") {
        std::vector<PlanarPoint> pts;
        double radius = 0;
        if (!a.input.empty()) {
            const CsvData data = read_csv(a.input);
            if (data.header.size() < 2 || data.header[0] != "step") {
                throw io_error("'" + a.input + "' is not a trace CSV (expected step,x1,...)");
            }
            pts = planar_rows(data.rows, 1);
            radius = a.radius.value_or(rerun_flag(data, "--inner-k").value_or(0.0));
        } else {
            const Trace trace = make_trace(a.plan, a.trial, g.seed);
            for (const auto &p : trace.positions) {
                pts.push_back({static_cast<double>(p[0]), p.dimension() > 1 ? static_cast<double>(p[1]) : 0.0});
            }
            radius = a.radius.value_or(static_cast<double>(a.plan.inner_k));
        }
        svg = footprint_svg(pts, radius);
    } else {
        std::vector<PlanarPoint> pts;
        std::string y_label = "mean_distance";
        if (!a.input.empty()) {
            const CsvData data = read_csv(a.input);
            if (data.header.size() < 2) {
                throw io_error("'" + a.input + "' needs at least two columns");
            }
            y_label = data.header[1];
            pts = planar_rows(data.rows, 0);
        } else {
            const auto curve = avg_distance_curve(a.curve.dim, a.curve.power, a.curve.steps, a.curve.trials, g.seed,
                                                  g.threads);
            for (std::size_t t = 0; t < curve.size(); ++t) {
                pts.push_back({static_cast<double>(t), curve[t]});
            }
        }
        svg = curve_svg(pts, "step", y_label);
    }
    // The manifest travels in a processing instruction, which unlike an XML
    // comment may contain "--" and so keeps the rerun line verbatim.
    os << "<?angelcage-manifest\n";
    m.write(os);
    os << "?>\n" << svg;
}

} // namespace

int main(int argc, char **argv)
{
    Globals g;
    for (int i = 1; i < argc; ++i) {
        g.argv.emplace_back(argv[i]);
    }

    CLI::App app{"angelcage: drunk angel vs hiding devil toolkit"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "Master seed (u64)");
    app.add_option("--threads", g.threads, "Worker threads")->envname("ANGELCAGE_THREADS")->check(CLI::PositiveNumber);
    app.add_option("--output", g.output, "Output path (default: standard output)");

    auto plan_options = [](CLI::App *sub, PlanArgs &p) {
        sub->add_option("--dim", p.dim, "Dimension n")->required()->check(CLI::Range(1, 64));
        sub->add_option("--power", p.power, "Angel power c")->required();
        sub->add_option("--inner-k", p.inner_k, "Inner cage radius k")->required();
    };

    PmfArgs pmf;
    auto *exact = app.add_subcommand("exact-pmf", "Exact 1-D displacement distribution");
    exact->add_option("--power", pmf.power)->required();
    exact->add_option("--turns", pmf.turns)->required();
    exact->add_option("--within", pmf.within, "Print P(|displacement| <= k) instead");

    CountArgs count;
    auto *count_cmd = app.add_subcommand("count", "Lattice points in an n-ball");
    count_cmd->add_option("--dim", count.dim)->required()->check(CLI::Range(1, 64));
    count_cmd->add_option("--radius", count.radius)->required();
    count_cmd->add_option("--method", count.method)->check(CLI::IsMember({"exact", "hcv", "volume"}));

    PlanArgs shell;
    auto *shell_cmd = app.add_subcommand("shell", "Turn budget N of the cage");
    plan_options(shell_cmd, shell);

    ThresholdArgs threshold;
    auto *threshold_cmd = app.add_subcommand("threshold", "Smallest radius k caging with probability 1 - eps");
    threshold_cmd->add_option("--dim", threshold.dim)->required()->check(CLI::IsMember({1, 2}));
    threshold_cmd->add_option("--power", threshold.power)->required();
    threshold_cmd->add_option("--eps", threshold.eps)->required();

    PlanArgs prob;
    std::string prob_method = "series";
    auto *prob_cmd = app.add_subcommand("cage-prob", "Analytic caging probability");
    plan_options(prob_cmd, prob);
    prob_cmd->add_option("--method", prob_method)->check(CLI::IsMember({"series", "oracle"}));

    std::int64_t bounds_power = 1;
    auto *bounds_cmd = app.add_subcommand("bounds3d", "Radius-independent 3-D bounds");
    bounds_cmd->add_option("--power", bounds_power)->required();

    PlanArgs sim;
    std::uint64_t sim_trials = 1000;
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo caging rates");
    plan_options(sim_cmd, sim);
    sim_cmd->add_option("--trials", sim_trials)->required()->check(CLI::PositiveNumber);

    PlanArgs trace;
    std::uint64_t trace_trial = 0;
    auto *trace_cmd = app.add_subcommand("trace", "Positions of one simulated game");
    plan_options(trace_cmd, trace);
    trace_cmd->add_option("--trial", trace_trial, "Trial index");

    CurveArgs curve;
    auto *curve_cmd = app.add_subcommand("distance-curve", "Mean distance from the origin per step");
    curve_cmd->add_option("--dim", curve.dim)->required()->check(CLI::Range(1, 64));
    curve_cmd->add_option("--power", curve.power)->required();
    curve_cmd->add_option("--steps", curve.steps)->required()->check(CLI::PositiveNumber);
    curve_cmd->add_option("--trials", curve.trials)->required()->check(CLI::PositiveNumber);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Caging rates over a range of radii");
    sweep_cmd->add_option("--dim", sweep.dim)->required()->check(CLI::Range(1, 64));
    sweep_cmd->add_option("--power", sweep.power)->required();
    sweep_cmd->add_option("--k-min", sweep.k_min)->required();
    sweep_cmd->add_option("--k-max", sweep.k_max)->required();
    sweep_cmd->add_option("--trials", sweep.trials)->required()->check(CLI::PositiveNumber);

    std::string table = "table1";
    std::uint64_t table_trials = full_reproduction_trials;
    auto *repro_cmd = app.add_subcommand("reproduce", "Re-run a published success-rate table");
    repro_cmd->add_option("--table", table)->required()->check(CLI::IsMember({"table1", "table2"}));
    repro_cmd->add_option("--trials", table_trials)->check(CLI::PositiveNumber);

    PlotArgs plot;
    auto *plot_cmd = app.add_subcommand("plot", "SVG footprint or distance curve");
    plot_cmd->add_option("--kind", plot.kind)->required()->check(CLI::IsMember({"footprint", "curve"}));
    plot_cmd->add_option("--input", plot.input, "Trace or curve CSV; generated inline when absent");
    plot_cmd->add_option("--radius", plot.radius, "Cage circle radius for footprints");
    plot_cmd->add_option("--dim", plot.plan.dim)->check(CLI::Range(1, 64));
    plot_cmd->add_option("--power", plot.plan.power);
    plot_cmd->add_option("--inner-k", plot.plan.inner_k);
    plot_cmd->add_option("--trial", plot.trial);
    plot_cmd->add_option("--steps", plot.curve.steps)->check(CLI::PositiveNumber);
    plot_cmd->add_option("--trials", plot.curve.trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }
    plot.curve.dim = plot.plan.dim;
    plot.curve.power = plot.plan.power;

    CLI::App *chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    int status = 0;
    try {
        Sink sink(g.output);
        std::ostream &os = sink.stream();
        const RunManifest manifest = manifest_for(name, g);
        if (name != "plot") {
            manifest.write(os);
        }
        if (name == "exact-pmf") {
            cmd_exact_pmf(pmf, os);
        } else if (name == "count") {
            cmd_count(count, os);
        } else if (name == "shell") {
            cmd_shell(shell, os);
        } else if (name == "threshold") {
            cmd_threshold(threshold, os);
        } else if (name == "cage-prob") {
            cmd_cage_prob(prob, prob_method, os);
        } else if (name == "bounds3d") {
            cmd_bounds3d(bounds_power, os);
        } else if (name == "simulate") {
            cmd_simulate(sim, sim_trials, g, os);
        } else if (name == "trace") {
            cmd_trace(trace, trace_trial, g, os);
        } else if (name == "distance-curve") {
            cmd_distance_curve(curve, g, os);
        } else if (name == "sweep") {
            cmd_sweep(sweep, g, os);
        } else if (name == "reproduce") {
            status = cmd_reproduce(table, table_trials, g, os);
        } else if (name == "plot") {
            cmd_plot(plot, g, manifest, os);
        }
        sink.finish();
    } catch (const io_error &e) {
        std::cerr << "angelcage: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument &e) {
        std::cerr << "angelcage " << name << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range &e) {
        std::cerr << "angelcage " << name << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const budget_exceeded &e) {
        std::cerr << "angelcage " << name << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "angelcage " << name << ": " << e.what() << '\n';
        return exit_usage;
    }
    return status;
}
