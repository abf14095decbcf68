#include "uhvga/optimizers.hpp"

#include "uhvga/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uhvga {

AdamState::AdamState(std::size_t size, double gamma0) : m(size, 0.0), v(size, 0.0), gamma(gamma0)
{
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
        throw ConfigError("initial step size must be positive and finite");
    }
}

void adam_update(AdamState& state, std::span<double> x, std::span<const double> grad)
{
    using C = AdamConstants;
    if (x.size() != grad.size() || x.size() != state.m.size()) {
        throw InvalidArgument("adam_update: size mismatch between state, iterate and gradient");
    }
    const double k = static_cast<double>(state.t + 1);
    const double c0 = 1.0 - std::pow(C::b0, k);
    const double c1 = 1.0 - std::pow(C::b1, k);
    for (std::size_t j = 0; j < x.size(); ++j) {
        state.m[j] = C::b0 * state.m[j] + (1.0 - C::b0) * grad[j];
        state.v[j] = C::b1 * state.v[j] + (1.0 - C::b1) * grad[j] * grad[j];
        x[j] += state.gamma * (state.m[j] / c0) / (std::sqrt(state.v[j] / c1) + C::epsilon);
    }
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
        throw NumericError("Adam step produced a non-finite iterate at t = " + std::to_string(state.t),
                           Vector(x.begin(), x.end()));
    }
    ++state.t;
}

void adam_adapt_step_size(AdamState& state, double g_new, double g_old)
{
    if (g_new <= g_old) {
        state.gamma *= AdamConstants::b2;
    }
}

GaMoState::GaMoState(std::size_t p, std::size_t n, double gamma0)
    : gamma(p, gamma0), direction(p, Vector(n, 0.0)), momentum(p, 0.0)
{
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
        throw ConfigError("initial step size must be positive and finite");
    }
}

double GaMoState::gamma_sum() const { return std::accumulate(gamma.begin(), gamma.end(), 0.0); }

double GaMoState::gamma_max() const
{
    return gamma.empty() ? 0.0 : *std::max_element(gamma.begin(), gamma.end());
}

void gamo_update(GaMoState& state, SolutionSet& X, const std::vector<Vector>& directions)
{
    using C = GaMoConstants;
    const std::size_t p = X.size();
    const std::size_t n = X.dimension();
    if (p < 2) {
        throw ConfigError("GA-MO needs at least two solutions (pairwise distances are undefined for p = 1)");
    }
    if (directions.size() != p || state.gamma.size() != p) {
        throw InvalidArgument("gamo_update: size mismatch between state, set and directions");
    }

    double d_min = std::numeric_limits<double>::infinity();
    double d_max = 0.0;
    for (std::size_t l = 0; l < p; ++l) {
        const auto xl = X.solution(l);
        for (std::size_t k = l + 1; k < p; ++k) {
            const auto xk = X.solution(k);
            double sq = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                sq += (xl[j] - xk[j]) * (xl[j] - xk[j]);
            }
            const double d = std::sqrt(sq);
            d_min = std::min(d_min, d);
            d_max = std::max(d_max, d);
        }
    }
    const double upper = C::beta * (d_max + d_min) / 2.0;
    state.gamma_upper = upper;

    for (std::size_t i = 0; i < p; ++i) {
        const Vector& g = directions[i];
        if (g.size() != n) {
            throw InvalidArgument("gamo_update: direction has the wrong dimension");
        }
        double norm = 0.0;
        for (double v : g) {
            norm += v * v;
        }
        norm = std::sqrt(norm);
        Vector unit(n, 0.0);
        if (norm > 0.0) {
            for (std::size_t j = 0; j < n; ++j) {
                unit[j] = g[j] / norm;
            }
        }

        double inner = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            inner += state.direction[i][j] * unit[j];
        }
        state.momentum[i] = (1.0 - C::c) * state.momentum[i] + C::c * inner;
        state.gamma[i] = std::min(upper, state.gamma[i] * std::exp(C::alpha * state.momentum[i]));
        state.direction[i] = unit;

        auto x = X.solution(i);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += state.gamma[i] * unit[j];
        }
        if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
            throw NumericError("GA-MO step produced a non-finite iterate for solution " + std::to_string(i),
                               Vector(x.begin(), x.end()));
        }
    }
}

Vector boundary_repair(std::span<const double> x, const Box& box)
{
    Vector out(x.begin(), x.end());
    boundary_repair_in_place(out, box);
    return out;
}

void boundary_repair_in_place(std::span<double> x, const Box& box)
{
    if (x.size() != box.dimension()) {
        throw InvalidArgument("boundary_repair: dimension mismatch");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::clamp(x[j], box.lower[j], box.upper[j]);
    }
}

} // namespace uhvga
