#pragma once

#include "uhvga/metrics.hpp"
#include "uhvga/optimizers.hpp"
#include "uhvga/problems.hpp"
#include "uhvga/uhv_gradient.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uhvga {

enum class OptimizerKind { adam, gamo };
enum class GradientMode { analytic, fd };
/// What Adam consumes: the per-solution normalized directions or the raw
/// chain-rule gradient.
enum class AdamInput { normalized, raw };

std::string_view to_string(OptimizerKind kind);
std::string_view to_string(GradientMode mode);
std::string_view to_string(AdamInput input);
OptimizerKind parse_optimizer(std::string_view text);
GradientMode parse_gradient_mode(std::string_view text);
AdamInput parse_adam_input(std::string_view text);

/// Initial step size: `paper` (max init range * 1e-2) or `explicit:<value>`.
class Gamma0Policy {
public:
    static Gamma0Policy paper() { return Gamma0Policy(); }
    static Gamma0Policy fixed(double value);
    /// Accepts `paper`, `explicit:<value>` or a bare number.
    static Gamma0Policy parse(std::string_view text);

    double resolve(const Problem& problem) const;
    std::string to_string() const;
    std::optional<double> value() const noexcept { return value_; }

private:
    std::optional<double> value_;
};

struct ConvergenceOptions {
    bool enabled = true;
    /// Stop once the step size falls below this fraction of the max init
    /// range; 0 disables the test.
    double step_ratio = 0.0;
    double min_improvement = 1.0e-14;
    std::size_t stall_iterations = 500;
};

struct TraceRow {
    std::uint64_t iteration = 0;
    std::uint64_t evaluations = 0;
    double uhv = 0.0;
    double best_uhv = 0.0;
    double best_hv = 0.0;
    /// NaN without a target.
    double delta_hv = 0.0;
    /// NaN without a reference front.
    double gd = 0.0;
    std::size_t nondominated = 0;
    /// Adam's gamma or the sum of GA-MO's gamma_i used for the next step.
    double step_size = 0.0;
};

enum class Termination { budget, iteration_limit, step_size, stalled };
std::string_view to_string(Termination reason);

struct RunOptions {
    OptimizerKind optimizer = OptimizerKind::adam;
    GradientMode gradients = GradientMode::analytic;
    AdamInput adam_input = AdamInput::normalized;
    std::size_t p = 9;
    std::uint64_t budget = 1000000;
    std::uint64_t seed = 1;
    Gamma0Policy gamma0;
    ObjectivePoint reference{11.0, 11.0};
    UhvGradientOptions gradient;
    ConvergenceOptions convergence;
    std::optional<std::uint64_t> max_iterations;
    std::optional<double> target_hv;
    const ReferenceFront* front = nullptr;
    /// Start from this set instead of sampling the init box.
    std::optional<SolutionSet> initial;
    /// Called after every recorded row.
    std::function<void(const TraceRow&)> observer;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    SolutionSet best;
    double best_uhv = 0.0;
    SolutionSet final_set;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    double gamma0 = 0.0;
    Termination termination = Termination::budget;
    /// Iterations in which some non-dominated point was outside the
    /// reference box and got steered toward it.
    std::uint64_t steered_iterations = 0;
};

/// MO-evaluations one iteration costs: p (analytic) or (1 + n) p (FD).
std::uint64_t iteration_cost(GradientMode mode, std::size_t n, std::size_t p);

/// Runs one UHV gradient ascent until the budget is exhausted or it
/// converges. Initialization evaluates objectives (and analytic gradients)
/// once per solution. Throws ConfigError for invalid options.
RunTrace run(const Problem& problem, const RunOptions& options);

} // namespace uhvga
