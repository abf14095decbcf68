#pragma once

#include "uhvga/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace uhvga {

struct AdamConstants {
    static constexpr double b0 = 0.9;
    static constexpr double b1 = 0.999;
    static constexpr double b2 = 0.99;
    static constexpr double epsilon = 1.0e-16;
};

struct AdamState {
    Vector m;
    Vector v;
    double gamma = 0.0;
    std::uint64_t t = 0;

    AdamState() = default;
    AdamState(std::size_t size, double gamma0);
};

/// One Adam move of x (in place) along the ascent direction `grad`:
/// updates the moments, applies the bias-corrected step and advances t.
/// Throws NumericError (carrying the offending iterate) if the result is not
/// finite.
void adam_update(AdamState& state, std::span<double> x, std::span<const double> grad);

/// gamma <- b2 * gamma unless g_new improves on g_old.
void adam_adapt_step_size(AdamState& state, double g_new, double g_old);

struct GaMoConstants {
    static constexpr double c = 0.1;
    static constexpr double alpha = 0.7;
    static constexpr double beta = 0.7;
};

struct GaMoState {
    Vector gamma;
    std::vector<Vector> direction;
    Vector momentum;
    /// gamma^UB of the most recent step.
    double gamma_upper = 0.0;

    GaMoState() = default;
    GaMoState(std::size_t p, std::size_t n, double gamma0);

    double gamma_sum() const;
    double gamma_max() const;
};

/// One GA-MO step on the decision vectors of X (in place), given the
/// per-solution ascent directions. Directions are normalized here; a zero
/// direction leaves its solution in place. Throws ConfigError for p < 2.
void gamo_update(GaMoState& state, SolutionSet& X, const std::vector<Vector>& directions);

/// Componentwise clamp into the box.
Vector boundary_repair(std::span<const double> x, const Box& box);
void boundary_repair_in_place(std::span<double> x, const Box& box);

} // namespace uhvga
