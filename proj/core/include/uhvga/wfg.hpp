#pragma once

#include "uhvga/problems.hpp"

#include <span>

namespace uhvga {

/// Bi-objective WFG1 ... WFG9 with k position and l distance parameters.
///
/// Decision variable z_i (0-based) ranges over [0, 2(i+1)]; the objectives
/// are f_m = x_M + S_m h_m(x) with S = (2, 4). No analytic gradients.
class WfgProblem final : public Problem {
public:
    WfgProblem(int index, std::size_t k, std::size_t l);

    int index() const noexcept { return index_; }
    std::size_t position_parameters() const noexcept { return k_; }
    std::size_t distance_parameters() const noexcept { return l_; }

    ObjectivePoint objectives(std::span<const double> z) const override;
    std::string description() const override;

    /// Objective vector on the Pareto front for the position value x1 in
    /// [0, 1] (distance-related parameter x_M = 0).
    ObjectivePoint front_point(double x1) const;

private:
    int index_;
    std::size_t k_;
    std::size_t l_;
};

/// WFG transformation and shape primitives, exposed for testing.
namespace wfg {

double correct_to_01(double a);

double b_poly(double y, double alpha);
double b_flat(double y, double A, double B, double C);
double b_param(double y, double u, double A, double B, double C);
double s_linear(double y, double A);
double s_decept(double y, double A, double B, double C);
double s_multi(double y, int A, double B, double C);
double r_sum(std::span<const double> y, std::span<const double> w);
double r_nonsep(std::span<const double> y, std::size_t A);

// Shapes for M = 2 objectives; x is the single position parameter x_1.
double convex_first(double x);
double convex_last(double x);
double concave_first(double x);
double concave_last(double x);
double linear_first(double x);
double linear_last(double x);
double mixed_last(double x, int A, double alpha);
double disc_last(double x, int A, double alpha, double beta);

} // namespace wfg
} // namespace uhvga
