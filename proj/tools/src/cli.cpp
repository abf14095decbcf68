#include "uhvga/cli.hpp"

#include "uhvga/errors.hpp"
#include "uhvga/hypervolume.hpp"
#include "uhvga/metrics.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#ifndef UHVGA_VERSION
#define UHVGA_VERSION "unknown"
#endif
#ifndef UHVGA_SOURCE_DATA_DIR
#define UHVGA_SOURCE_DATA_DIR ""
#endif
#ifndef UHVGA_INSTALL_DATA_DIR
#define UHVGA_INSTALL_DATA_DIR ""
#endif

namespace fs = std::filesystem;

namespace uhvga::cli {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    }
    catch (const std::exception&) {
        throw ConfigError("invalid " + what + " '" + text + "'");
    }
    if (used != text.size()) {
        throw ConfigError("invalid " + what + " '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& what)
{
    const double v = parse_double(text, what);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.0e18) {
        throw ConfigError(what + " must be a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

ObjectivePoint parse_reference(const std::string& text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2) {
        throw ConfigError("reference point must be given as r0,r1 (got '" + text + "')");
    }
    return {parse_double(parts[0], "reference coordinate"), parse_double(parts[1], "reference coordinate")};
}

bool is_known_problem(const std::string& id)
{
    const auto ids = problem_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

} // namespace

std::size_t RunConfig::dimension() const { return n == 0 ? default_dimension(problem) : n; }

void RunConfig::validate() const
{
    if (problem.empty()) {
        throw ConfigError("--problem is required");
    }
    if (!is_known_problem(problem)) {
        std::string known;
        for (const auto& id : problem_ids()) {
            known += (known.empty() ? "" : ", ") + id;
        }
        throw ConfigError("unknown problem '" + problem + "' (known: " + known + ")");
    }
    if (problem.starts_with("wfg") && dimension() <= 4) {
        throw ConfigError("WFG problems need n > 4 (k = 4 position variables)");
    }
    if ((problem == "wfg2" || problem == "wfg3") && (dimension() - 4) % 2 != 0) {
        throw ConfigError(problem + " needs an even number of distance variables (n - 4 even)");
    }
    if (p == 0) {
        throw ConfigError("--p must be at least 1");
    }
    if (optimizer == OptimizerKind::gamo && p < 2) {
        throw ConfigError("GA-MO needs --p >= 2");
    }
    if (!std::isfinite(reference.f0) || !std::isfinite(reference.f1)) {
        throw ConfigError("reference point must be finite");
    }
    if (budget < p) {
        throw ConfigError(fmt::format("--budget {} is below p = {} (initialization alone costs p MO-evaluations)",
                                      budget, p));
    }
    if (repetitions == 0) {
        throw ConfigError("--reps must be at least 1");
    }
    if (gradients == GradientMode::analytic && problem.starts_with("wfg")) {
        throw ConfigError(problem + " has no analytic gradients; use --gradients fd");
    }
}

std::vector<std::string> RunConfig::describe() const
{
    std::vector<std::string> lines = {
        "problem = " + problem,
        fmt::format("n = {}", dimension()),
        fmt::format("p = {}", p),
        fmt::format("optimizer = {}", to_string(optimizer)),
        fmt::format("gradients = {}", to_string(gradients)),
        fmt::format("adam_input = {}", to_string(adam_input)),
        fmt::format("budget = {}", budget),
        fmt::format("reference = {},{}", format_number(reference.f0), format_number(reference.f1)),
        "gamma0_policy = " + gamma0.to_string(),
        fmt::format("seed = {}", seed),
        fmt::format("reps = {}", repetitions),
        fmt::format("convergence = {}", convergence ? "on" : "off"),
    };
    if (max_iterations) {
        lines.push_back(fmt::format("max_iterations = {}", *max_iterations));
    }
    return lines;
}

Statistics summarize(std::vector<double> values)
{
    Statistics s;
    if (values.empty()) {
        s.median = s.iqr = s.mean = s.stddev = nan_value;
        return s;
    }
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    s.median = quantile(0.5);
    s.iqr = quantile(0.75) - quantile(0.25);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() < 2) {
        s.stddev = nan_value;
    }
    else {
        double sq = 0.0;
        for (double v : values) {
            sq += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::vector<std::size_t> downsample(const std::vector<TraceRow>& rows)
{
    std::vector<std::size_t> keep;
    std::uint64_t last = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const bool early = rows[k].iteration <= 100;
        const bool grown = static_cast<double>(rows[k].evaluations) >= 1.01 * static_cast<double>(last);
        if (early || grown || k + 1 == rows.size()) {
            keep.push_back(k);
            last = rows[k].evaluations;
        }
    }
    return keep;
}

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    return fmt::format("{:.17g}", value);
}

fs::path default_output_dir()
{
    if (const char* env = std::getenv("UHVGA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "uhvga-out";
}

fs::path data_dir()
{
    if (const char* env = std::getenv("UHVGA_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    for (const fs::path& candidate : {fs::path(UHVGA_SOURCE_DATA_DIR), fs::path(UHVGA_INSTALL_DATA_DIR)}) {
        std::error_code ec;
        if (!candidate.empty() && fs::is_directory(candidate, ec)) {
            return candidate;
        }
    }
    return "data";
}

namespace {

// Target and reference front shared by every repetition of one config.
struct Context {
    std::optional<double> target;
    std::string target_note = "none";
    std::shared_ptr<const ReferenceFront> front;
    std::string front_note = "none";
};

Context resolve_context(const RunConfig& config)
{
    Context ctx;
    const std::size_t n = config.dimension();
    const bool default_reference = config.reference == ObjectivePoint{11.0, 11.0};

    const fs::path table_path = config.targets_file ? *config.targets_file : data_dir() / "targets.tsv";
    std::error_code ec;
    if (default_reference && fs::exists(table_path, ec)) {
        const TargetTable table = TargetTable::read_file(table_path.string());
        if (auto hv = table.find(config.problem, n, config.p)) {
            ctx.target = *hv;
            ctx.target_note = fmt::format("{} (table {})", format_number(*hv), table_path.string());
        }
    }
    if (!ctx.target && (config.problem == "bisphere" || config.problem == "concave-bisphere" ||
                        config.problem == "sphere-rot-ellipsoid")) {
        const auto od = optimal_distribution(*front_curve(config.problem, n), config.p, config.reference);
        ctx.target = od.hypervolume;
        ctx.target_note = fmt::format("{} (front oracle, computed on the fly)", format_number(od.hypervolume));
    }

    if (config.front_file) {
        ctx.front = std::make_shared<ReferenceFront>(read_front_file(config.front_file->string()));
        ctx.front_note = fmt::format("{} ({} points)", config.front_file->string(), ctx.front->size());
    }
    else if (auto front = default_front(config.problem, n)) {
        ctx.front = std::make_shared<ReferenceFront>(std::move(*front));
        ctx.front_note = fmt::format("{} ({})", ctx.front->provenance(), to_string(ctx.front->source()));
    }
    else {
        const fs::path stored = data_dir() / "fronts" / fmt::format("{}_n{}.txt", config.problem, n);
        if (fs::exists(stored, ec)) {
            ctx.front = std::make_shared<ReferenceFront>(read_front_file(stored.string()));
            ctx.front_note = fmt::format("{} ({} points)", stored.string(), ctx.front->size());
        }
    }
    return ctx;
}

struct RepResult {
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    RunTrace trace;
};

RunOptions make_options(const RunConfig& config, const Context& ctx, std::uint64_t seed)
{
    RunOptions o;
    o.optimizer = config.optimizer;
    o.gradients = config.gradients;
    o.adam_input = config.adam_input;
    o.p = config.p;
    o.budget = config.budget;
    o.seed = seed;
    o.gamma0 = config.gamma0;
    o.reference = config.reference;
    o.convergence.enabled = config.convergence;
    o.max_iterations = config.max_iterations;
    o.target_hv = ctx.target;
    o.front = ctx.front.get();
    return o;
}

RepResult execute(const RunConfig& config, const Context& ctx, std::size_t rep)
{
    RepResult r;
    r.rep = rep;
    r.seed = config.seed + rep;
    try {
        const auto problem = make_problem(config.problem, config.dimension());
        r.trace = run(*problem, make_options(config, ctx, r.seed));
        r.ok = true;
    }
    catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

void run_pool(std::vector<std::function<void()>>& jobs, std::size_t threads)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            jobs[k]();
        }
    };
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
}

void write_preamble(std::ostream& out, const std::string& kind, const RunConfig& config, const Context& ctx)
{
    fmt::print(out, "# uhvga {} {}\n", UHVGA_VERSION, kind);
    for (const auto& line : config.describe()) {
        fmt::print(out, "# {}\n", line);
    }
    const auto problem = make_problem(config.problem, config.dimension());
    fmt::print(out, "# problem_description = {}\n", problem->description());
    fmt::print(out, "# target_hv = {}\n", ctx.target_note);
    fmt::print(out, "# reference_front = {}\n", ctx.front_note);
    fmt::print(out, "# gd = plain mean distance of the best set's non-dominated points to the reference front\n");
    fmt::print(out, "# flag = non-dominated points outside the reference box are steered toward it\n");
}

const char* trace_header = "iteration,evaluations,uhv,best_uhv,best_hv,delta_hv,gd,nondominated,step_size";

void write_trace(const fs::path& path, const RunConfig& config, const Context& ctx, const RepResult& r)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_preamble(out, "trace", config, ctx);
    fmt::print(out, "# rep = {}\n# rep_seed = {}\n", r.rep, r.seed);
    fmt::print(out, "# gamma0 = {}\n", format_number(r.trace.gamma0));
    fmt::print(out, "# termination = {}\n", to_string(r.trace.termination));
    fmt::print(out, "# steered_iterations = {}\n", r.trace.steered_iterations);
    fmt::print(out, "# rows = {}\n", config.full_trace ? "every iteration" : "logarithmic subsample, final row always");
    out << trace_header << '\n';

    std::vector<std::size_t> keep;
    if (config.full_trace) {
        keep.resize(r.trace.rows.size());
        std::iota(keep.begin(), keep.end(), std::size_t{0});
    }
    else {
        keep = downsample(r.trace.rows);
    }
    for (std::size_t k : keep) {
        const TraceRow& row = r.trace.rows[k];
        fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", row.iteration, row.evaluations, format_number(row.uhv),
                   format_number(row.best_uhv), format_number(row.best_hv), format_number(row.delta_hv),
                   format_number(row.gd), row.nondominated, format_number(row.step_size));
    }
}

void write_best(const fs::path& path, const RepResult& r)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    const SolutionSet& best = r.trace.best;
    fmt::print(out, "# best-so-far set by UHV, rep {} seed {}\n", r.rep, r.seed);
    out << "f0,f1";
    for (std::size_t j = 0; j < best.dimension(); ++j) {
        out << ",x" << j;
    }
    out << '\n';
    for (std::size_t i = 0; i < best.size(); ++i) {
        out << format_number(best.objectives()[i].f0) << ',' << format_number(best.objectives()[i].f1);
        for (double v : best.solution(i)) {
            out << ',' << format_number(v);
        }
        out << '\n';
    }
}

const char* summary_header =
    "kind,rep,seed,status,hv,uhv,delta_hv,gd,nondominated,evaluations,iterations,termination,message";

std::string summary_row(const RepResult& r)
{
    if (!r.ok) {
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        return fmt::format("rep,{},{},failed,,,,,,,,,{}", r.rep, r.seed, msg);
    }
    const TraceRow& last = r.trace.rows.back();
    return fmt::format("rep,{},{},ok,{},{},{},{},{},{},{},{},", r.rep, r.seed, format_number(last.best_hv),
                       format_number(last.best_uhv), format_number(last.delta_hv), format_number(last.gd),
                       last.nondominated, r.trace.evaluations, r.trace.iterations, to_string(r.trace.termination));
}

void write_summary(const fs::path& path, const RunConfig& config, const Context& ctx,
                   const std::vector<RepResult>& results)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_preamble(out, "summary", config, ctx);
    fmt::print(out, "# statistics over the final best-so-far HV of successful repetitions; "
                    "IQR by linear interpolation, sample standard deviation\n");
    out << summary_header << '\n';
    std::vector<double> hv;
    for (const RepResult& r : results) {
        out << summary_row(r) << '\n';
        if (r.ok) {
            hv.push_back(r.trace.rows.back().best_hv);
        }
    }
    const Statistics s = summarize(hv);
    for (const auto& [name, value] : {std::pair{"median", s.median}, std::pair{"iqr", s.iqr},
                                      std::pair{"mean", s.mean}, std::pair{"std", s.stddev}}) {
        fmt::print(out, "{},,,,{},,,,,,,,\n", name, format_number(value));
    }
}

// One configuration with its repetitions, written to one directory.
struct Cell {
    RunConfig config;
    Context context;
    fs::path dir;
    std::vector<RepResult> results;
    std::vector<std::pair<std::string, std::string>> labels;
};

int execute_cells(std::vector<Cell>& cells, std::size_t threads, std::ostream& out, std::ostream& err)
{
    std::vector<std::function<void()>> jobs;
    std::mutex write_mutex;
    for (Cell& cell : cells) {
        cell.results.resize(cell.config.repetitions);
        fs::create_directories(cell.dir);
        for (std::size_t rep = 0; rep < cell.config.repetitions; ++rep) {
            jobs.emplace_back([&cell, rep, &write_mutex, &err] {
                RepResult r = execute(cell.config, cell.context, rep);
                if (r.ok) {
                    try {
                        write_trace(cell.dir / fmt::format("trace_rep{:03}.csv", rep), cell.config, cell.context, r);
                        write_best(cell.dir / fmt::format("best_rep{:03}.csv", rep), r);
                    }
                    catch (const std::exception& e) {
                        r.ok = false;
                        r.error = e.what();
                    }
                }
                if (!r.ok) {
                    const std::lock_guard lock(write_mutex);
                    fmt::print(err, "repetition {} (seed {}) failed: {}\n", rep, r.seed, r.error);
                }
                cell.results[rep] = std::move(r);
            });
        }
    }
    run_pool(jobs, threads);

    bool failed = false;
    for (Cell& cell : cells) {
        write_summary(cell.dir / "summary.csv", cell.config, cell.context, cell.results);
        std::vector<double> hv;
        for (const RepResult& r : cell.results) {
            failed = failed || !r.ok;
            if (r.ok) {
                hv.push_back(r.trace.rows.back().best_hv);
            }
        }
        const Statistics s = summarize(hv);
        std::string label;
        for (const auto& [k, v] : cell.labels) {
            label += fmt::format("{}={} ", k, v);
        }
        fmt::print(out, "{}{} {} {}: {}/{} ok, HV median {} mean {} std {} -> {}\n", label, cell.config.problem,
                   to_string(cell.config.optimizer), to_string(cell.config.gradients), hv.size(),
                   cell.results.size(), format_number(s.median), format_number(s.mean), format_number(s.stddev),
                   cell.dir.string());
    }
    return failed ? partial_failure : success;
}

// Options common to `run` and `sweep`, kept as strings until validation.
struct RawOptions {
    std::string optimizer = "adam";
    std::string gradients = "analytic";
    std::string adam_input = "normalized";
    std::string budget = "1000000";
    std::string reference = "11,11";
    std::string gamma0 = "paper";
    std::string max_iterations;
    std::string out;
    std::string targets;
    std::string front;
    bool no_convergence = false;
};

void add_run_options(CLI::App* app, RunConfig& config, RawOptions& raw, bool problem_required)
{
    auto* problem = app->add_option("--problem", config.problem, "Problem identifier (see `uhvga problems`)");
    if (problem_required) {
        problem->required();
    }
    app->add_option("--n", config.n, "Decision-space dimension (default: 10 quadratic, 24 WFG)");
    app->add_option("--p", config.p, "Solution-set size")->capture_default_str();
    app->add_option("--optimizer", raw.optimizer, "adam | gamo")->capture_default_str();
    app->add_option("--gradients", raw.gradients, "analytic | fd")->capture_default_str();
    app->add_option("--adam-input", raw.adam_input, "normalized | raw gradient fed to Adam")->capture_default_str();
    app->add_option("--budget", raw.budget, "MO-evaluation budget (e.g. 1e6)")->capture_default_str();
    app->add_option("--reference", raw.reference, "Reference point r0,r1")->capture_default_str();
    app->add_option("--gamma0", raw.gamma0, "paper | explicit:<value>")->capture_default_str();
    app->add_option("--seed", config.seed, "Seed of the first repetition (rep k uses seed + k)")->capture_default_str();
    app->add_option("--reps", config.repetitions, "Number of repetitions")->capture_default_str();
    app->add_option("--out", raw.out, "Output directory (default: $UHVGA_OUTPUT_DIR or ./uhvga-out)");
    app->add_option("--threads", config.threads, "Worker threads (0 = available parallelism)")->capture_default_str();
    app->add_option("--max-iterations", raw.max_iterations, "Stop after this many iterations");
    app->add_flag("--no-convergence", raw.no_convergence, "Run until the budget is exhausted");
    app->add_flag("--full-trace", config.full_trace, "Write every iteration to the trace files");
    app->add_option("--targets", raw.targets, "Target HV table (default: <data>/targets.tsv)");
    app->add_option("--front", raw.front, "Reference front file for GD");
}

void apply_raw(RunConfig& config, const RawOptions& raw)
{
    config.optimizer = parse_optimizer(raw.optimizer);
    config.gradients = parse_gradient_mode(raw.gradients);
    config.adam_input = parse_adam_input(raw.adam_input);
    config.budget = parse_count(raw.budget, "--budget");
    config.reference = parse_reference(raw.reference);
    config.gamma0 = Gamma0Policy::parse(raw.gamma0);
    config.convergence = !raw.no_convergence;
    config.output_dir = raw.out.empty() ? default_output_dir() : fs::path(raw.out);
    if (!raw.max_iterations.empty()) {
        config.max_iterations = parse_count(raw.max_iterations, "--max-iterations");
    }
    if (!raw.targets.empty()) {
        config.targets_file = raw.targets;
    }
    if (!raw.front.empty()) {
        config.front_file = raw.front;
    }
}

// Applies one `--vary` assignment to a config.
void apply_parameter(RunConfig& config, const std::string& name, const std::string& value)
{
    if (name == "p") {
        config.p = static_cast<std::size_t>(parse_count(value, "p"));
    }
    else if (name == "n") {
        config.n = static_cast<std::size_t>(parse_count(value, "n"));
    }
    else if (name == "budget") {
        config.budget = parse_count(value, "budget");
    }
    else if (name == "gamma0") {
        config.gamma0 = Gamma0Policy::parse(value);
    }
    else if (name == "optimizer") {
        config.optimizer = parse_optimizer(value);
    }
    else if (name == "gradients") {
        config.gradients = parse_gradient_mode(value);
    }
    else if (name == "problem") {
        config.problem = value;
    }
    else if (name == "seed") {
        config.seed = parse_count(value, "seed");
    }
    else if (name == "adam-input") {
        config.adam_input = parse_adam_input(value);
    }
    else {
        throw ConfigError("unknown sweep parameter '" + name +
                          "' (known: p, n, budget, gamma0, optimizer, gradients, problem, seed, adam-input)");
    }
}

int cmd_run(RunConfig config, std::ostream& out, std::ostream& err)
{
    config.validate();
    std::vector<Cell> cells(1);
    cells[0].config = config;
    cells[0].context = resolve_context(config);
    cells[0].dir = config.output_dir;
    return execute_cells(cells, config.threads, out, err);
}

int cmd_sweep(const RunConfig& base, const std::vector<std::string>& vary, std::ostream& out, std::ostream& err)
{
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const std::string& spec : vary) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw ConfigError("--vary expects name=v1,v2,... (got '" + spec + "')");
        }
        axes.emplace_back(spec.substr(0, eq), split(spec.substr(eq + 1), ','));
        RunConfig probe = base;
        apply_parameter(probe, axes.back().first, axes.back().second.front());
    }

    std::vector<std::vector<std::pair<std::string, std::string>>> combos{{}};
    for (const auto& [name, values] : axes) {
        std::vector<std::vector<std::pair<std::string, std::string>>> next;
        for (const auto& combo : combos) {
            for (const auto& v : values) {
                auto c = combo;
                c.emplace_back(name, v);
                next.push_back(std::move(c));
            }
        }
        combos = std::move(next);
    }

    std::vector<Cell> cells;
    for (const auto& combo : combos) {
        Cell cell;
        cell.config = base;
        std::string dir;
        for (const auto& [name, value] : combo) {
            apply_parameter(cell.config, name, value);
            dir += (dir.empty() ? "" : "_") + name + "=" + value;
        }
        cell.config.validate();
        cell.context = resolve_context(cell.config);
        cell.dir = base.output_dir / (dir.empty() ? "base" : dir);
        cell.labels = combo;
        cells.push_back(std::move(cell));
    }

    const int status = execute_cells(cells, base.threads, out, err);

    fs::create_directories(base.output_dir);
    std::ofstream summary(base.output_dir / "sweep_summary.csv");
    fmt::print(summary, "# uhvga {} sweep\n", UHVGA_VERSION);
    for (const auto& line : base.describe()) {
        fmt::print(summary, "# base {}\n", line);
    }
    for (const auto& [name, values] : axes) {
        summary << name << ',';
    }
    summary << summary_header << '\n';
    for (const Cell& cell : cells) {
        for (const RepResult& r : cell.results) {
            for (const auto& [name, value] : cell.labels) {
                summary << value << ',';
            }
            summary << summary_row(r) << '\n';
        }
    }
    return status;
}

int cmd_indicator(const std::string& path, const std::string& reference, std::ostream& out, std::ostream& err)
{
    const ObjectivePoint r = parse_reference(reference);
    std::ifstream in(path);
    if (!in) {
        fmt::print(err, "error: cannot open {}\n", path);
        return invalid_usage;
    }
    std::vector<ObjectivePoint> points;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first[0] == '#') {
            continue;
        }
        std::istringstream all(line);
        ObjectivePoint y;
        std::string extra;
        if (!(all >> y.f0 >> y.f1) || (all >> extra) || !std::isfinite(y.f0) || !std::isfinite(y.f1)) {
            fmt::print(err, "error: {}:{}: expected two finite numbers\n", path, number);
            return invalid_usage;
        }
        points.push_back(y);
    }
    if (points.empty()) {
        fmt::print(err, "error: {} contains no points\n", path);
        return invalid_usage;
    }
    const ObjectiveMatrix Y(std::move(points), r);
    const DominationReport report = classify(Y);
    const double hv = hypervolume(Y, report);
    const double ud = uncrowded_penalty(Y, report);
    fmt::print(out, "HV {}\nUD {}\nUHV {}\nnondominated {}\n", format_number(hv), format_number(ud),
               format_number(hv - ud), report.front.size());
    return success;
}

int cmd_targets(const std::vector<std::string>& problems, std::size_t n, const std::vector<std::size_t>& ps,
                const std::string& path, std::ostream& out)
{
    TargetTable table;
    std::error_code ec;
    if (!path.empty() && fs::exists(path, ec)) {
        table = TargetTable::read_file(path);
    }
    if (table.comments().empty()) {
        table.comments().push_back("Target hypervolumes for r = (11,11): columns problem n p hv method");
        table.comments().push_back("front-oracle: coordinate ascent of p points along the exact Pareto front "
                                   "(generated by `uhvga targets`)");
    }
    const ObjectivePoint r{11.0, 11.0};
    for (const std::string& id : problems) {
        const auto curve = front_curve(id, n);
        if (!curve || id.starts_with("wfg")) {
            throw ConfigError("no front oracle for '" + id + "' (supported: bisphere, concave-bisphere, "
                              "sphere-rot-ellipsoid)");
        }
        for (std::size_t p : ps) {
            const auto od = optimal_distribution(*curve, p, r);
            table.set({id, n, p, od.hypervolume, "front-oracle"});
            fmt::print(out, "{} n={} p={} hv={} sweeps={}\n", id, n, p, format_number(od.hypervolume), od.sweeps);
        }
    }
    if (path.empty() || path == "-") {
        table.write(out);
    }
    else {
        std::ofstream file(path);
        table.write(file);
    }
    return success;
}

int cmd_front(const std::string& id, std::size_t n, std::size_t count, std::size_t runs, std::uint64_t budget,
              std::size_t p, std::size_t threads, const std::string& path, std::ostream& out)
{
    if (!is_known_problem(id)) {
        throw ConfigError("unknown problem '" + id + "'");
    }
    if (n == 0) {
        n = default_dimension(id);
    }
    ReferenceFront front;
    if (auto curve = front_curve(id, n)) {
        front = sample_front(*curve, count, FrontSource::sampled,
                             fmt::format("{} n={} exact front sampled at {} points of equal arc length", id, n, count));
    }
    else {
        // No closed form: union of long UHV-Adam runs, pruned evenly.
        const auto problem = make_problem(id, n);
        std::vector<RunTrace> traces(runs);
        std::vector<std::function<void()>> jobs;
        for (std::size_t k = 0; k < runs; ++k) {
            jobs.emplace_back([&, k] {
                RunOptions o;
                o.p = p;
                o.budget = budget;
                o.seed = 1 + k;
                o.gradients = problem->has_analytic_gradients() ? GradientMode::analytic : GradientMode::fd;
                traces[k] = run(*problem, o);
            });
        }
        run_pool(jobs, threads);
        std::vector<ObjectivePoint> all;
        for (const RunTrace& t : traces) {
            all.insert(all.end(), t.best.objectives().begin(), t.best.objectives().end());
        }
        ReferenceFront merged(std::move(all), FrontSource::sampled);
        std::vector<ObjectivePoint> pruned;
        const auto& pts = merged.points();
        if (pts.size() <= count) {
            pruned = pts;
        }
        else {
            for (std::size_t k = 0; k < count; ++k) {
                pruned.push_back(pts[k * (pts.size() - 1) / (count - 1)]);
            }
        }
        front = ReferenceFront(std::move(pruned), FrontSource::sampled,
                               fmt::format("{} n={}: non-dominated union of {} UHV-Adam runs (p={}, budget={}, "
                                           "seeds 1..{}), pruned to at most {} points",
                                           id, n, runs, p, budget, runs, count));
    }
    if (path.empty() || path == "-") {
        write_front(out, front);
    }
    else {
        fs::create_directories(fs::path(path).parent_path().empty() ? fs::path(".") : fs::path(path).parent_path());
        std::ofstream file(path);
        write_front(file, front);
        fmt::print(out, "wrote {} points to {}\n", front.size(), path);
    }
    return success;
}

} // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"UHV gradient ascent for bi-objective optimization", "uhvga"};
    app.require_subcommand(1);
    app.set_version_flag("--version", UHVGA_VERSION);

    RunConfig run_config;
    RawOptions run_raw;
    auto* run_cmd = app.add_subcommand("run", "Run seeded repetitions of one configuration");
    add_run_options(run_cmd, run_config, run_raw, true);

    RunConfig sweep_config;
    RawOptions sweep_raw;
    std::vector<std::string> vary;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the cross-product of parameter values");
    add_run_options(sweep_cmd, sweep_config, sweep_raw, false);
    sweep_cmd->add_option("--vary", vary, "name=v1,v2,... (repeatable)")->required();

    std::string indicator_file;
    std::string indicator_reference = "11,11";
    auto* indicator_cmd = app.add_subcommand("indicator", "Print HV, UD, UHV and |A_p| of a set of points");
    indicator_cmd->add_option("file", indicator_file, "Two-column file of objective vectors")->required();
    indicator_cmd->add_option("--reference", indicator_reference, "Reference point r0,r1")->capture_default_str();

    std::vector<std::string> target_problems{"bisphere", "sphere-rot-ellipsoid", "concave-bisphere"};
    std::size_t target_n = 10;
    std::vector<std::size_t> target_ps{3, 5, 9, 17, 33, 65, 129};
    std::string target_out;
    auto* targets_cmd = app.add_subcommand("targets", "Compute target hypervolumes with the front oracle");
    targets_cmd->add_option("--problems", target_problems, "Problems")->delimiter(',')->capture_default_str();
    targets_cmd->add_option("--n", target_n, "Dimension")->capture_default_str();
    targets_cmd->add_option("--p", target_ps, "Set sizes")->delimiter(',')->capture_default_str();
    targets_cmd->add_option("--out", target_out, "Table to update (default: stdout)");

    std::string front_problem;
    std::size_t front_n = 0;
    std::size_t front_count = 5000;
    std::size_t front_runs = 20;
    std::string front_budget = "1000000";
    std::size_t front_p = 129;
    std::size_t front_threads = 0;
    std::string front_out;
    auto* front_cmd = app.add_subcommand("front", "Write a reference front file");
    front_cmd->add_option("--problem", front_problem, "Problem")->required();
    front_cmd->add_option("--n", front_n, "Dimension");
    front_cmd->add_option("--points", front_count, "Maximum number of points")->capture_default_str();
    front_cmd->add_option("--runs", front_runs, "Runs to merge when no exact front is known")->capture_default_str();
    front_cmd->add_option("--budget", front_budget, "Budget per merged run")->capture_default_str();
    front_cmd->add_option("--p", front_p, "Set size per merged run")->capture_default_str();
    front_cmd->add_option("--threads", front_threads, "Worker threads")->capture_default_str();
    front_cmd->add_option("--out", front_out, "Output file (default: stdout)");

    auto* problems_cmd = app.add_subcommand("problems", "List problem identifiers");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return success;
    }
    catch (const CLI::CallForVersion&) {
        out << UHVGA_VERSION << '\n';
        return success;
    }
    catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return invalid_usage;
    }

    try {
        if (run_cmd->parsed()) {
            apply_raw(run_config, run_raw);
            return cmd_run(run_config, out, err);
        }
        if (sweep_cmd->parsed()) {
            apply_raw(sweep_config, sweep_raw);
            return cmd_sweep(sweep_config, vary, out, err);
        }
        if (indicator_cmd->parsed()) {
            return cmd_indicator(indicator_file, indicator_reference, out, err);
        }
        if (targets_cmd->parsed()) {
            return cmd_targets(target_problems, target_n, target_ps, target_out, out);
        }
        if (front_cmd->parsed()) {
            return cmd_front(front_problem, front_n, front_count, front_runs,
                             parse_count(front_budget, "--budget"), front_p, front_threads, front_out, out);
        }
        if (problems_cmd->parsed()) {
            for (const auto& id : problem_ids()) {
                fmt::print(out, "{} (default n = {})\n", id, default_dimension(id));
            }
            return success;
        }
    }
    catch (const ConfigError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return invalid_usage;
    }
    catch (const InvalidArgument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return invalid_usage;
    }
    catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return partial_failure;
    }
    return invalid_usage;
}

} // namespace uhvga::cli
