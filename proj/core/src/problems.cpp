#include "uhvga/problems.hpp"

#include "uhvga/errors.hpp"
#include "uhvga/wfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace uhvga {

// ---------------------------------------------------------------------------
// Box / SolutionSet

bool Box::contains(std::span<const double> x) const
{
    if (x.size() != dimension()) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) {
            return false;
        }
    }
    return true;
}

bool Box::contains(const Box& inner) const
{
    if (inner.dimension() != dimension()) {
        return false;
    }
    for (std::size_t j = 0; j < dimension(); ++j) {
        if (inner.lower[j] < lower[j] || inner.upper[j] > upper[j]) {
            return false;
        }
    }
    return true;
}

double Box::max_range() const
{
    double range = 0.0;
    for (std::size_t j = 0; j < dimension(); ++j) {
        const double r = upper[j] - lower[j];
        if (std::isfinite(r)) {
            range = std::max(range, r);
        }
    }
    return range;
}

bool Box::bounded() const
{
    return std::all_of(lower.begin(), lower.end(), [](double v) { return std::isfinite(v); })
        && std::all_of(upper.begin(), upper.end(), [](double v) { return std::isfinite(v); });
}

SolutionSet::SolutionSet(std::size_t n, std::size_t p) : n_(n), p_(p), x_(n * p, 0.0) {}

SolutionSet::SolutionSet(std::size_t n, Vector concatenated) : n_(n), x_(std::move(concatenated))
{
    if (n == 0 || x_.size() % n != 0) {
        throw InvalidArgument("solution set length is not a multiple of the dimension");
    }
    p_ = x_.size() / n;
}

// ---------------------------------------------------------------------------
// Problem

Problem::Problem(std::string id, Box bounds, Box init_bounds)
    : id_(std::move(id)), bounds_(std::move(bounds)), init_bounds_(std::move(init_bounds))
{
    if (bounds_.lower.size() != bounds_.upper.size() || init_bounds_.dimension() != bounds_.dimension()) {
        throw InvalidArgument("inconsistent bound dimensions for problem " + id_);
    }
    if (!bounds_.contains(init_bounds_)) {
        throw InvalidArgument("initialization box of " + id_ + " is not inside its constraint box");
    }
}

MoGradient Problem::gradients(std::span<const double>) const
{
    throw UnsupportedOperation("problem " + id_ + " has no analytic gradients");
}

namespace {

void check_dimension(const Problem& problem, std::span<const double> x)
{
    if (x.size() != problem.dimension()) {
        std::ostringstream msg;
        msg << problem.id() << ": expected a decision vector of length " << problem.dimension()
            << ", got " << x.size();
        throw InvalidArgument(msg.str());
    }
}

void check_finite(const Problem& problem, std::span<const double> x, const ObjectivePoint& y)
{
    if (!std::isfinite(y.f0) || !std::isfinite(y.f1)) {
        std::ostringstream msg;
        msg << problem.id() << ": non-finite objective value (" << y.f0 << ", " << y.f1 << ")";
        throw NumericError(msg.str(), Vector(x.begin(), x.end()));
    }
}

Box unbounded(std::size_t n)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {Vector(n, -inf), Vector(n, inf)};
}

Box uniform_box(std::size_t n, double lo, double hi) { return {Vector(n, lo), Vector(n, hi)}; }

double squared_norm(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

// |x - e_0|^2
double squared_distance_to_unit(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - (j == 0 ? 1.0 : 0.0);
        s += d * d;
    }
    return s;
}

void require_dimension(std::size_t n)
{
    if (n == 0) {
        throw InvalidArgument("problem dimension must be at least 1");
    }
}

} // namespace

ObjectivePoint evaluate(const Problem& problem, std::span<const double> x, EvaluationLedger& ledger)
{
    check_dimension(problem, x);
    const ObjectivePoint y = problem.objectives(x);
    ledger.charge();
    check_finite(problem, x, y);
    return y;
}

MoGradient gradient(const Problem& problem, std::span<const double> x)
{
    if (!problem.has_analytic_gradients()) {
        throw UnsupportedOperation("problem " + problem.id() + " has no analytic gradients");
    }
    check_dimension(problem, x);
    return problem.gradients(x);
}

Evaluation evaluate_with_gradients(const Problem& problem, std::span<const double> x, EvaluationLedger& ledger)
{
    if (!problem.has_analytic_gradients()) {
        throw UnsupportedOperation("problem " + problem.id() + " has no analytic gradients");
    }
    check_dimension(problem, x);
    Evaluation e{problem.objectives(x), problem.gradients(x)};
    ledger.charge();
    check_finite(problem, x, e.y);
    return e;
}

SolutionSet sample_initial_set(const Problem& problem, std::size_t p, std::uint64_t seed)
{
    if (p == 0) {
        throw InvalidArgument("solution set size p must be at least 1");
    }
    const Box& box = problem.init_bounds();
    const std::size_t n = problem.dimension();
    std::mt19937_64 rng(seed);
    SolutionSet set(n, p);
    Vector& x = set.concatenated();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // 53 random mantissa bits -> u in [0, 1); portable across standard libraries.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            x[i * n + j] = box.lower[j] + u * (box.upper[j] - box.lower[j]);
        }
    }
    return set;
}

// ---------------------------------------------------------------------------
// Problem 0

BiSphere::BiSphere(std::size_t n) : Problem("bisphere", unbounded(n), uniform_box(n, -2.0, 2.0))
{
    require_dimension(n);
}

ObjectivePoint BiSphere::objectives(std::span<const double> x) const
{
    return {squared_norm(x), squared_distance_to_unit(x)};
}

MoGradient BiSphere::gradients(std::span<const double> x) const
{
    MoGradient g{Vector(x.size()), Vector(x.size())};
    for (std::size_t j = 0; j < x.size(); ++j) {
        g.df0[j] = 2.0 * x[j];
        g.df1[j] = 2.0 * (x[j] - (j == 0 ? 1.0 : 0.0));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Problem 1

SphereRotatedEllipsoid::SphereRotatedEllipsoid(std::size_t n)
    : Problem("sphere-rot-ellipsoid", unbounded(n), uniform_box(n, -2.0, 2.0))
{
    require_dimension(n);
    rotation_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        rotation_[i * n + i] = 1.0;
    }
    // Left-multiply by G(i, i+1) for increasing i.
    const double c = std::cos(std::numbers::pi / 4.0);
    const double s = std::sin(std::numbers::pi / 4.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t col = 0; col < n; ++col) {
            const double a = rotation_[i * n + col];
            const double b = rotation_[(i + 1) * n + col];
            rotation_[i * n + col] = c * a - s * b;
            rotation_[(i + 1) * n + col] = s * a + c * b;
        }
    }
    weights_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        weights_[i] = n == 1 ? 1.0 : std::pow(10.0, -6.0 * static_cast<double>(i) / static_cast<double>(n - 1));
    }
}

ObjectivePoint SphereRotatedEllipsoid::objectives(std::span<const double> x) const
{
    const std::size_t n = x.size();
    double f1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rx = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            rx += rotation_[i * n + j] * x[j];
        }
        const double d = rx - (i == 0 ? 1.0 : 0.0);
        f1 += weights_[i] * d * d;
    }
    return {squared_norm(x) / static_cast<double>(n), f1};
}

MoGradient SphereRotatedEllipsoid::gradients(std::span<const double> x) const
{
    const std::size_t n = x.size();
    MoGradient g{Vector(n), Vector(n, 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        g.df0[j] = 2.0 * x[j] / static_cast<double>(n);
    }
    // df1 = 2 R^T W (R x - c)
    for (std::size_t i = 0; i < n; ++i) {
        double rx = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            rx += rotation_[i * n + j] * x[j];
        }
        const double wd = 2.0 * weights_[i] * (rx - (i == 0 ? 1.0 : 0.0));
        for (std::size_t j = 0; j < n; ++j) {
            g.df1[j] += rotation_[i * n + j] * wd;
        }
    }
    return g;
}

std::string SphereRotatedEllipsoid::description() const
{
    return id() + " (R = G(n-2)...G(0), Givens 45deg on axis pairs (i,i+1), c = e_0)";
}

// ---------------------------------------------------------------------------
// Problem 2

ConcaveBiSphere::ConcaveBiSphere(std::size_t n)
    : Problem("concave-bisphere", unbounded(n), uniform_box(n, -2.0, 2.0))
{
    require_dimension(n);
}

ObjectivePoint ConcaveBiSphere::objectives(std::span<const double> x) const
{
    return {std::pow(squared_norm(x), 0.25), std::pow(squared_distance_to_unit(x), 0.25)};
}

MoGradient ConcaveBiSphere::gradients(std::span<const double> x) const
{
    // d/dx s^(1/4) = s^(-3/4) x / 2; at s = 0 the gradient is unbounded and
    // the zero vector is returned instead.
    const double s0 = squared_norm(x);
    const double s1 = squared_distance_to_unit(x);
    const double w0 = s0 > 0.0 ? 0.5 * std::pow(s0, -0.75) : 0.0;
    const double w1 = s1 > 0.0 ? 0.5 * std::pow(s1, -0.75) : 0.0;
    MoGradient g{Vector(x.size()), Vector(x.size())};
    for (std::size_t j = 0; j < x.size(); ++j) {
        g.df0[j] = w0 * x[j];
        g.df1[j] = w1 * (x[j] - (j == 0 ? 1.0 : 0.0));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Problem 3

SphereRosenbrock::SphereRosenbrock(std::size_t n)
    : Problem("sphere-rosenbrock", unbounded(n), uniform_box(n, 0.0, 2.0))
{
    require_dimension(n);
}

ObjectivePoint SphereRosenbrock::objectives(std::span<const double> x) const
{
    const std::size_t n = x.size();
    double rosen = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        rosen += 100.0 * a * a + b * b;
    }
    return {squared_norm(x), n > 1 ? rosen / static_cast<double>(n - 1) : 0.0};
}

MoGradient SphereRosenbrock::gradients(std::span<const double> x) const
{
    const std::size_t n = x.size();
    MoGradient g{Vector(n), Vector(n, 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        g.df0[j] = 2.0 * x[j];
    }
    if (n > 1) {
        const double scale = 1.0 / static_cast<double>(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            g.df1[i] += scale * (-400.0 * a * x[i] - 2.0 * (1.0 - x[i]));
            g.df1[i + 1] += scale * 200.0 * a;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Factory

std::vector<std::string> problem_ids()
{
    std::vector<std::string> ids{"bisphere", "sphere-rot-ellipsoid", "concave-bisphere", "sphere-rosenbrock"};
    for (int k = 1; k <= 9; ++k) {
        ids.push_back("wfg" + std::to_string(k));
    }
    return ids;
}

namespace {

int wfg_index(std::string_view id)
{
    if (id.size() == 4 && id.substr(0, 3) == "wfg" && id[3] >= '1' && id[3] <= '9') {
        return id[3] - '0';
    }
    return 0;
}

} // namespace

std::size_t default_dimension(std::string_view id)
{
    return wfg_index(id) != 0 ? 24 : 10;
}

std::unique_ptr<Problem> make_problem(std::string_view id, std::size_t n)
{
    if (id == "bisphere") {
        return std::make_unique<BiSphere>(n);
    }
    if (id == "sphere-rot-ellipsoid") {
        return std::make_unique<SphereRotatedEllipsoid>(n);
    }
    if (id == "concave-bisphere") {
        return std::make_unique<ConcaveBiSphere>(n);
    }
    if (id == "sphere-rosenbrock") {
        return std::make_unique<SphereRosenbrock>(n);
    }
    if (const int k = wfg_index(id); k != 0) {
        constexpr std::size_t position = 4;
        if (n <= position) {
            throw InvalidArgument("WFG problems need n > 4 (k = 4 position variables)");
        }
        return std::make_unique<WfgProblem>(k, position, n - position);
    }
    throw InvalidArgument("unknown problem identifier '" + std::string(id) + "'");
}

} // namespace uhvga
