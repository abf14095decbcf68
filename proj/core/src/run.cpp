#include "uhvga/run.hpp"

#include "uhvga/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace uhvga {

std::string_view to_string(OptimizerKind kind) { return kind == OptimizerKind::adam ? "adam" : "gamo"; }

std::string_view to_string(GradientMode mode) { return mode == GradientMode::analytic ? "analytic" : "fd"; }

std::string_view to_string(AdamInput input) { return input == AdamInput::normalized ? "normalized" : "raw"; }

std::string_view to_string(Termination reason)
{
    switch (reason) {
    case Termination::budget:
        return "budget";
    case Termination::iteration_limit:
        return "iteration-limit";
    case Termination::step_size:
        return "step-size";
    case Termination::stalled:
        return "stalled";
    }
    return "unknown";
}

OptimizerKind parse_optimizer(std::string_view text)
{
    if (text == "adam") {
        return OptimizerKind::adam;
    }
    if (text == "gamo" || text == "ga-mo") {
        return OptimizerKind::gamo;
    }
    throw ConfigError("unknown optimizer '" + std::string(text) + "' (expected adam or gamo)");
}

GradientMode parse_gradient_mode(std::string_view text)
{
    if (text == "analytic") {
        return GradientMode::analytic;
    }
    if (text == "fd") {
        return GradientMode::fd;
    }
    throw ConfigError("unknown gradient mode '" + std::string(text) + "' (expected analytic or fd)");
}

AdamInput parse_adam_input(std::string_view text)
{
    if (text == "normalized") {
        return AdamInput::normalized;
    }
    if (text == "raw") {
        return AdamInput::raw;
    }
    throw ConfigError("unknown Adam input '" + std::string(text) + "' (expected normalized or raw)");
}

Gamma0Policy Gamma0Policy::fixed(double value)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError("explicit gamma0 must be positive and finite");
    }
    Gamma0Policy policy;
    policy.value_ = value;
    return policy;
}

Gamma0Policy Gamma0Policy::parse(std::string_view text)
{
    if (text == "paper") {
        return paper();
    }
    std::string_view number = text;
    if (text.starts_with("explicit:")) {
        number = text.substr(9);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || end != number.data() + number.size()) {
        throw ConfigError("invalid gamma0 policy '" + std::string(text) + "' (expected paper or explicit:<value>)");
    }
    return fixed(value);
}

double Gamma0Policy::resolve(const Problem& problem) const
{
    if (value_) {
        return *value_;
    }
    return problem.init_bounds().max_range() * 1.0e-2;
}

std::string Gamma0Policy::to_string() const
{
    if (!value_) {
        return "paper";
    }
    std::ostringstream s;
    s.precision(17);
    s << "explicit:" << *value_;
    return s.str();
}

std::uint64_t iteration_cost(GradientMode mode, std::size_t n, std::size_t p)
{
    return mode == GradientMode::analytic ? p : (1 + n) * p;
}

namespace {

void evaluate_set(const Problem& problem, SolutionSet& X, bool with_gradients, std::vector<MoGradient>& grads,
                  EvaluationLedger& ledger)
{
    auto& Y = X.objectives();
    Y.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (with_gradients) {
            Evaluation e = evaluate_with_gradients(problem, X.solution(i), ledger);
            Y[i] = e.y;
            grads[i] = std::move(e.gradient);
        }
        else {
            Y[i] = evaluate(problem, X.solution(i), ledger);
        }
    }
}

// Indicators of the best-so-far set, refreshed only when it changes.
struct BestSummary {
    double hv = 0.0;
    double delta_hv = std::numeric_limits<double>::quiet_NaN();
    double gd = std::numeric_limits<double>::quiet_NaN();
    std::size_t nondominated = 0;

    void update(const SolutionSet& best, const RunOptions& options)
    {
        const ObjectiveMatrix Y(best.objectives(), options.reference);
        const DominationReport report = classify(Y);
        hv = hypervolume(Y, report);
        nondominated = report.front.size();
        if (options.target_hv) {
            delta_hv = *options.target_hv - hv;
        }
        if (options.front != nullptr) {
            gd = generational_distance(report.front_points, *options.front);
        }
    }
};

} // namespace

RunTrace run(const Problem& problem, const RunOptions& options)
{
    const std::size_t n = problem.dimension();
    const std::size_t p = options.p;
    const bool analytic = options.gradients == GradientMode::analytic;

    if (p == 0) {
        throw ConfigError("p must be at least 1");
    }
    if (options.optimizer == OptimizerKind::gamo && p < 2) {
        throw ConfigError("GA-MO needs p >= 2");
    }
    if (options.budget < p) {
        throw ConfigError("budget " + std::to_string(options.budget) + " is below the " + std::to_string(p) +
                          " MO-evaluations needed to initialize the set");
    }
    if (analytic && !problem.has_analytic_gradients()) {
        throw ConfigError(problem.id() + " has no analytic gradients; use finite differences");
    }
    if (!std::isfinite(options.reference.f0) || !std::isfinite(options.reference.f1)) {
        throw ConfigError("reference point must be finite");
    }

    SolutionSet X;
    if (options.initial) {
        X = *options.initial;
        if (X.size() != p || X.dimension() != n) {
            throw ConfigError("initial set has the wrong shape");
        }
    }
    else {
        X = sample_initial_set(problem, p, options.seed);
    }

    EvaluationLedger ledger;
    std::vector<MoGradient> grads(p);
    evaluate_set(problem, X, analytic, grads, ledger);
    double g = uhv(ObjectiveMatrix(X.objectives(), options.reference));

    RunTrace trace;
    trace.gamma0 = options.gamma0.resolve(problem);
    trace.best = X;
    trace.best_uhv = g;

    AdamState adam;
    GaMoState gamo;
    if (options.optimizer == OptimizerKind::adam) {
        adam = AdamState(n * p, trace.gamma0);
    }
    else {
        gamo = GaMoState(p, n, trace.gamma0);
    }
    const auto step_size = [&] { return options.optimizer == OptimizerKind::adam ? adam.gamma : gamo.gamma_sum(); };
    const auto largest_step = [&] { return options.optimizer == OptimizerKind::adam ? adam.gamma : gamo.gamma_max(); };

    BestSummary summary;
    summary.update(trace.best, options);
    const auto record = [&](std::uint64_t iteration) {
        TraceRow row{iteration,  ledger.count(),       g, trace.best_uhv, summary.hv, summary.delta_hv,
                     summary.gd, summary.nondominated, step_size()};
        trace.rows.push_back(row);
        if (options.observer) {
            options.observer(row);
        }
    };
    record(0);

    const std::uint64_t cost = iteration_cost(options.gradients, n, p);
    const double stop_step = options.convergence.step_ratio * problem.init_bounds().max_range();
    double last_significant = trace.best_uhv;
    std::size_t stall = 0;
    std::uint64_t t = 0;
    trace.termination = Termination::budget;

    while (true) {
        if (ledger.count() + cost > options.budget) {
            trace.termination = Termination::budget;
            break;
        }
        if (options.max_iterations && t >= *options.max_iterations) {
            trace.termination = Termination::iteration_limit;
            break;
        }

        if (!analytic) {
            const double h = std::max(1.0e-6 * step_size(), 1.0e-12);
            for (std::size_t i = 0; i < p; ++i) {
                grads[i] = fd_mo_gradient(problem, X.solution(i), X.objectives()[i], h, ledger);
            }
        }
        const UhvGradient G = uhv_gradient(ObjectiveMatrix(X.objectives(), options.reference), grads, options.gradient);
        if (G.steered_outside > 0) {
            ++trace.steered_iterations;
        }

        if (options.optimizer == OptimizerKind::adam) {
            const Vector direction = options.adam_input == AdamInput::normalized ? G.concatenated() : G.concatenated_raw();
            adam_update(adam, X.concatenated(), direction);
        }
        else {
            gamo_update(gamo, X, G.per_solution_direction);
        }
        for (std::size_t i = 0; i < p; ++i) {
            boundary_repair_in_place(X.solution(i), problem.bounds());
        }

        evaluate_set(problem, X, analytic, grads, ledger);
        const double g_new = uhv(ObjectiveMatrix(X.objectives(), options.reference));
        if (options.optimizer == OptimizerKind::adam) {
            adam_adapt_step_size(adam, g_new, g);
        }
        g = g_new;
        ++t;

        if (g > trace.best_uhv) {
            trace.best = X;
            trace.best_uhv = g;
            summary.update(trace.best, options);
        }
        if (trace.best_uhv >= last_significant + options.convergence.min_improvement) {
            last_significant = trace.best_uhv;
            stall = 0;
        }
        else {
            ++stall;
        }
        record(t);

        if (options.convergence.enabled) {
            if (largest_step() < stop_step) {
                trace.termination = Termination::step_size;
                break;
            }
            if (stall >= options.convergence.stall_iterations) {
                trace.termination = Termination::stalled;
                break;
            }
        }
    }

    trace.final_set = X;
    trace.evaluations = ledger.count();
    trace.iterations = t;
    return trace;
}

} // namespace uhvga
