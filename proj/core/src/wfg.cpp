#include "uhvga/wfg.hpp"

#include "uhvga/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace uhvga {
namespace wfg {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double kEpsilon = 1.0e-10;
} // namespace

// Snaps values that left [0, 1] through rounding back onto the interval.
double correct_to_01(double a)
{
    if (a <= 0.0 && a >= -kEpsilon) {
        return 0.0;
    }
    if (a >= 1.0 && a <= 1.0 + kEpsilon) {
        return 1.0;
    }
    return a;
}

double b_poly(double y, double alpha) { return correct_to_01(std::pow(y, alpha)); }

double b_flat(double y, double A, double B, double C)
{
    const double t1 = std::min(0.0, std::floor(y - B)) * A * (B - y) / B;
    const double t2 = std::min(0.0, std::floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C);
    return correct_to_01(A + t1 - t2);
}

double b_param(double y, double u, double A, double B, double C)
{
    const double v = A - (1.0 - 2.0 * u) * std::fabs(std::floor(0.5 - u) + A);
    return correct_to_01(std::pow(y, B + (C - B) * v));
}

double s_linear(double y, double A) { return correct_to_01(std::fabs(y - A) / std::fabs(std::floor(A - y) + A)); }

double s_decept(double y, double A, double B, double C)
{
    const double t1 = std::floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B);
    const double t2 = std::floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B);
    return correct_to_01(1.0 + (std::fabs(y - A) - B) * (t1 + t2 + 1.0 / B));
}

double s_multi(double y, int A, double B, double C)
{
    const double t1 = std::fabs(y - C) / (2.0 * (std::floor(C - y) + C));
    const double t2 = (4.0 * A + 2.0) * pi * (0.5 - t1);
    return correct_to_01((1.0 + std::cos(t2) + 4.0 * B * t1 * t1) / (B + 2.0));
}

double r_sum(std::span<const double> y, std::span<const double> w)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += w[i] * y[i];
        den += w[i];
    }
    return correct_to_01(num / den);
}

double r_nonsep(std::span<const double> y, std::size_t A)
{
    const std::size_t size = y.size();
    double num = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
        num += y[j];
        for (std::size_t k = 0; k + 2 <= A; ++k) {
            num += std::fabs(y[j] - y[(1 + j + k) % size]);
        }
    }
    const double a = static_cast<double>(A);
    const double half = std::ceil(a / 2.0);
    const double den = static_cast<double>(size) * half * (1.0 + 2.0 * a - 2.0 * half) / a;
    return correct_to_01(num / den);
}

double convex_first(double x) { return correct_to_01(1.0 - std::cos(x * pi / 2.0)); }
double convex_last(double x) { return correct_to_01(1.0 - std::sin(x * pi / 2.0)); }
double concave_first(double x) { return correct_to_01(std::sin(x * pi / 2.0)); }
double concave_last(double x) { return correct_to_01(std::cos(x * pi / 2.0)); }
double linear_first(double x) { return correct_to_01(x); }
double linear_last(double x) { return correct_to_01(1.0 - x); }

double mixed_last(double x, int A, double alpha)
{
    const double t = 2.0 * A * pi;
    return correct_to_01(std::pow(1.0 - x - std::cos(t * x + pi / 2.0) / t, alpha));
}

double disc_last(double x, int A, double alpha, double beta)
{
    const double c = std::cos(A * std::pow(x, beta) * pi);
    return correct_to_01(1.0 - std::pow(x, alpha) * c * c);
}

} // namespace wfg

namespace {

using namespace wfg;

constexpr double kParamA = 0.98 / 49.98;

Vector ones(std::size_t n) { return Vector(n, 1.0); }

// Reduction to M = 2 parameters: one r_sum over the position block and one
// over the distance block.
Vector reduce_sum(const Vector& y, std::size_t k, std::span<const double> w)
{
    const std::span<const double> ys(y);
    return {r_sum(ys.subspan(0, k), w.subspan(0, k)), r_sum(ys.subspan(k), w.subspan(k))};
}

Vector reduce_sum_unit(const Vector& y, std::size_t k)
{
    const Vector w = ones(y.size());
    return reduce_sum(y, k, w);
}

Vector reduce_nonsep(const Vector& y, std::size_t k, std::size_t l)
{
    const std::span<const double> ys(y);
    return {r_nonsep(ys.subspan(0, k), k), r_nonsep(ys.subspan(k), l)};
}

void linear_distance(Vector& y, std::size_t k)
{
    for (std::size_t i = k; i < y.size(); ++i) {
        y[i] = s_linear(y[i], 0.35);
    }
}

// WFG2/3 pairwise non-separable reduction of the distance block.
Vector nonsep_pairs(const Vector& y, std::size_t k, std::size_t l)
{
    Vector t(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < l / 2; ++i) {
        const double pair[2] = {y[k + 2 * i], y[k + 2 * i + 1]};
        t.push_back(r_nonsep(pair, 2));
    }
    return t;
}

Vector b_param_from_tail(const Vector& y, std::size_t first, std::size_t last)
{
    Vector t = y;
    const std::span<const double> ys(y);
    for (std::size_t i = first; i < last; ++i) {
        const auto tail = ys.subspan(i + 1);
        const Vector w = ones(tail.size());
        t[i] = b_param(y[i], r_sum(tail, w), kParamA, 0.02, 50.0);
    }
    return t;
}

Box wfg_box(std::size_t n)
{
    Box b{Vector(n, 0.0), Vector(n)};
    for (std::size_t i = 0; i < n; ++i) {
        b.upper[i] = 2.0 * static_cast<double>(i + 1);
    }
    return b;
}

} // namespace

WfgProblem::WfgProblem(int index, std::size_t k, std::size_t l)
    : Problem("wfg" + std::to_string(index), wfg_box(k + l), wfg_box(k + l)),
      index_(index), k_(k), l_(l)
{
    if (index < 1 || index > 9) {
        throw InvalidArgument("WFG index must be in 1..9");
    }
    if (k == 0 || l == 0) {
        throw InvalidArgument("WFG needs at least one position and one distance parameter");
    }
    if ((index == 2 || index == 3) && l % 2 != 0) {
        throw InvalidArgument("WFG2 and WFG3 need an even number of distance parameters");
    }
}

std::string WfgProblem::description() const
{
    return id() + " (M = 2, k = " + std::to_string(k_) + ", l = " + std::to_string(l_) + ")";
}

ObjectivePoint WfgProblem::front_point(double x1) const
{
    double h0 = 0.0;
    double h1 = 0.0;
    switch (index_) {
    case 1:
        h0 = convex_first(x1);
        h1 = mixed_last(x1, 5, 1.0);
        break;
    case 2:
        h0 = convex_first(x1);
        h1 = disc_last(x1, 5, 1.0, 1.0);
        break;
    case 3:
        h0 = linear_first(x1);
        h1 = linear_last(x1);
        break;
    default:
        h0 = concave_first(x1);
        h1 = concave_last(x1);
        break;
    }
    return {2.0 * h0, 4.0 * h1};
}

ObjectivePoint WfgProblem::objectives(std::span<const double> z) const
{
    const std::size_t n = k_ + l_;
    const std::size_t k = k_;
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = correct_to_01(z[i] / (2.0 * static_cast<double>(i + 1)));
    }

    Vector t;
    switch (index_) {
    case 1: {
        linear_distance(y, k);
        for (std::size_t i = k; i < n; ++i) {
            y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
        }
        for (double& v : y) {
            v = b_poly(v, 0.02);
        }
        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 2.0 * static_cast<double>(i + 1);
        }
        t = reduce_sum(y, k, w);
        break;
    }
    case 2:
    case 3: {
        linear_distance(y, k);
        t = reduce_sum_unit(nonsep_pairs(y, k, l_), k);
        break;
    }
    case 4: {
        for (double& v : y) {
            v = s_multi(v, 30, 10.0, 0.35);
        }
        t = reduce_sum_unit(y, k);
        break;
    }
    case 5: {
        for (double& v : y) {
            v = s_decept(v, 0.35, 0.001, 0.05);
        }
        t = reduce_sum_unit(y, k);
        break;
    }
    case 6: {
        linear_distance(y, k);
        t = reduce_nonsep(y, k, l_);
        break;
    }
    case 7: {
        y = b_param_from_tail(y, 0, k);
        linear_distance(y, k);
        t = reduce_sum_unit(y, k);
        break;
    }
    case 8: {
        Vector b = y;
        const std::span<const double> ys(y);
        for (std::size_t i = k; i < n; ++i) {
            const auto head = ys.subspan(0, i);
            const Vector w = ones(head.size());
            b[i] = b_param(y[i], r_sum(head, w), kParamA, 0.02, 50.0);
        }
        y = std::move(b);
        linear_distance(y, k);
        t = reduce_sum_unit(y, k);
        break;
    }
    case 9: {
        y = b_param_from_tail(y, 0, n - 1);
        for (std::size_t i = 0; i < k; ++i) {
            y[i] = s_decept(y[i], 0.35, 0.001, 0.05);
        }
        for (std::size_t i = k; i < n; ++i) {
            y[i] = s_multi(y[i], 30, 95.0, 0.35);
        }
        t = reduce_nonsep(y, k, l_);
        break;
    }
    default:
        break;
    }

    // Degeneracy constant A_1 = 1 for every bi-objective WFG, so x_1 = t_1.
    const double x_last = t[1];
    const double x1 = std::max(x_last, 1.0) * (t[0] - 0.5) + 0.5;
    const ObjectivePoint h = front_point(x1);
    return {x_last + h.f0, x_last + h.f1};
}

} // namespace uhvga
