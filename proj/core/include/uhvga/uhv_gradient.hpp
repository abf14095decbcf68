#pragma once

#include "uhvga/hypervolume.hpp"
#include "uhvga/problems.hpp"
#include "uhvga/types.hpp"

#include <span>
#include <vector>

namespace uhvga {

struct UhvGradientOptions {
    /// Weak-domination perturbation size relative to max(1, max |y_ik|).
    double epsilon_scale = 1.0e-9;
    /// Ignore the dependence of UD on non-dominated points (the scheme used by
    /// the optimizers). When false the full derivative of UHV is assembled,
    /// which is what a finite-difference check of uhv() sees.
    bool zero_ud_for_nondominated = true;
    /// Give non-dominated points beyond the reference point the direction
    /// -max(0, y - r) instead of the (zero) hypervolume gradient.
    bool steer_outside_reference = true;
};

struct UhvGradient {
    /// Normalized search direction per solution (zero when W_i = 0).
    std::vector<Vector> per_solution_direction;
    /// Unnormalized dUHV/dx_i per solution.
    std::vector<Vector> per_solution_raw;
    /// (dUHV/df0, dUHV/df1) per solution.
    std::vector<ObjectivePoint> objective_space_gradient;
    Vector normalization_weights;
    /// Classification after weak-domination handling.
    std::vector<Dominance> status;
    /// Number of non-dominated points outside the reference box that were
    /// steered back toward it.
    std::size_t steered_outside = 0;

    Vector concatenated() const;
    Vector concatenated_raw() const;
};

/// Objective-space HV gradient of non-dominated point i. Neighbour values are
/// clipped to the reference point. Throws ContractViolation if i is not
/// non-dominated or lies outside the closed reference box.
ObjectivePoint hv_objective_gradient(const DominationReport& report, const ObjectiveMatrix& Y, std::size_t i);

/// dUD/df for a dominated point y with nearest boundary point s: (2/p)(y - s).
/// Throws ContractViolation if y == s.
ObjectivePoint ud_objective_gradient(const ObjectivePoint& y, const ObjectivePoint& s, std::size_t p);

/// Worsens the coordinates each weakly dominated point shares with a point
/// that weakly dominates it by epsilon. If the result still has weakly
/// dominated points, or a perturbed point becomes dominated by a point that
/// did not dominate it before, epsilon is shrunk by 10 and the attempt
/// repeated (at most 10 retries). Throws DegenerateConfiguration on failure.
ObjectiveMatrix perturb_weakly_dominated(const ObjectiveMatrix& Y, const DominationReport& report, double epsilon);

/// Chain-rule UHV gradient: dUHV/dx_i = dUHV/df0 * grad f0 + dUHV/df1 * grad f1.
UhvGradient uhv_gradient(const ObjectiveMatrix& Y, std::span<const MoGradient> mo_gradients,
                         const UhvGradientOptions& options = {});

/// Same, taking objective values from X (which must be evaluated).
UhvGradient uhv_gradient(const Problem& problem, const SolutionSet& X, std::span<const MoGradient> mo_gradients,
                         const ObjectivePoint& reference, const UhvGradientOptions& options = {});

/// Forward-difference MO gradients at x (backward in coordinates where
/// x_j + h exceeds the upper bound). Evaluates the base point too, so the
/// ledger grows by 1 + n.
MoGradient fd_mo_gradient(const Problem& problem, std::span<const double> x, double h, EvaluationLedger& ledger);

/// As above with the objective values at x already known; charges n.
MoGradient fd_mo_gradient(const Problem& problem, std::span<const double> x, const ObjectivePoint& base, double h,
                          EvaluationLedger& ledger);

} // namespace uhvga
