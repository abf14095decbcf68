#include "uhvga/errors.hpp"
#include "uhvga/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace uhvga;

namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    Vector x(n);
    for (double& v : x) {
        v = u(rng);
    }
    return x;
}

double norm(const Vector& v)
{
    double s = 0.0;
    for (double e : v) {
        s += e * e;
    }
    return std::sqrt(s);
}

// Problem whose objectives overflow for large inputs.
class Exploding final : public Problem {
public:
    Exploding() : Problem("exploding", Box{{-1e300}, {1e300}}, Box{{-1.0}, {1.0}}) {}
    ObjectivePoint objectives(std::span<const double> x) const override { return {x[0] * x[0], 1.0 / x[0]}; }
};

} // namespace

TEST_CASE("bisphere examples")
{
    EvaluationLedger ledger;
    BiSphere p0(10);
    Vector x(10, 0.0);
    CHECK(evaluate(p0, x, ledger) == ObjectivePoint{0.0, 1.0});
    x[0] = 1.0;
    CHECK(evaluate(p0, x, ledger) == ObjectivePoint{1.0, 0.0});
    CHECK(ledger.count() == 2);

    BiSphere p2d(2);
    const MoGradient g = gradient(p2d, Vector{1.0, 1.0});
    CHECK(g.df0 == Vector{2.0, 2.0});
    CHECK(g.df1 == Vector{0.0, 2.0});

    const MoGradient mid = gradient(p0, Vector{0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(mid.df0[j] == -mid.df1[j]);
    }
    CHECK(ledger.count() == 2);
}

TEST_CASE("concave bisphere and sphere-rosenbrock examples")
{
    EvaluationLedger ledger;
    Vector c(10, 0.0);
    c[0] = 1.0;
    CHECK(evaluate(ConcaveBiSphere(10), c, ledger) == ObjectivePoint{1.0, 0.0});
    CHECK(evaluate(SphereRosenbrock(10), Vector(10, 1.0), ledger) == ObjectivePoint{10.0, 0.0});
}

TEST_CASE("concave bisphere is the fourth root of bisphere")
{
    std::mt19937_64 rng(3);
    BiSphere p0(7);
    ConcaveBiSphere p2(7);
    for (int k = 0; k < 200; ++k) {
        const Vector x = random_vector(rng, 7, -2.0, 2.0);
        const ObjectivePoint a = p0.objectives(x);
        const ObjectivePoint b = p2.objectives(x);
        CHECK(b.f0 == doctest::Approx(std::pow(a.f0, 0.25)).epsilon(1e-14));
        CHECK(b.f1 == doctest::Approx(std::pow(a.f1, 0.25)).epsilon(1e-14));
    }
}

TEST_CASE("analytic gradients match central differences")
{
    std::mt19937_64 rng(11);
    for (const char* id : {"bisphere", "sphere-rot-ellipsoid", "concave-bisphere", "sphere-rosenbrock"}) {
        CAPTURE(id);
        const auto problem = make_problem(id, 10);
        for (int k = 0; k < 20; ++k) {
            Vector x = random_vector(rng, 10, -2.0, 2.0);
            const MoGradient g = gradient(*problem, x);
            const double h = 1e-6;
            for (std::size_t j = 0; j < 10; ++j) {
                const double keep = x[j];
                x[j] = keep + h;
                const ObjectivePoint fp = problem->objectives(x);
                x[j] = keep - h;
                const ObjectivePoint fm = problem->objectives(x);
                x[j] = keep;
                const double d0 = (fp.f0 - fm.f0) / (2 * h);
                const double d1 = (fp.f1 - fm.f1) / (2 * h);
                CHECK(std::abs(d0 - g.df0[j]) <= 1e-5 * std::max(1.0, std::abs(g.df0[j])));
                CHECK(std::abs(d1 - g.df1[j]) <= 1e-5 * std::max(1.0, std::abs(g.df1[j])));
            }
        }
    }
}

TEST_CASE("rotation is orthogonal")
{
    std::mt19937_64 rng(5);
    for (std::size_t n : {2u, 5u, 10u, 33u}) {
        SphereRotatedEllipsoid p1(n);
        const Vector& R = p1.rotation();
        for (int k = 0; k < 50; ++k) {
            const Vector x = random_vector(rng, n, -3.0, 3.0);
            Vector rx(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    rx[i] += R[i * n + j] * x[j];
                }
            }
            CHECK(std::abs(norm(rx) - norm(x)) <= 1e-12);
        }
    }
}

TEST_CASE("sphere-rot-ellipsoid formula")
{
    SphereRotatedEllipsoid p1(4);
    CHECK(p1.weights().front() == 1.0);
    CHECK(p1.weights().back() == doctest::Approx(1e-6).epsilon(1e-12));
    // R x = c for x = R^T c.
    Vector x(4);
    for (std::size_t j = 0; j < 4; ++j) {
        x[j] = p1.rotation()[j];
    }
    const ObjectivePoint y = p1.objectives(x);
    CHECK(y.f0 == doctest::Approx(0.25));
    CHECK(std::abs(y.f1) <= 1e-15);
}

TEST_CASE("bisphere Pareto set is mutually non-dominated")
{
    BiSphere p0(6);
    std::vector<ObjectivePoint> ys;
    for (int k = 0; k <= 100; ++k) {
        const double t = k / 100.0;
        Vector x(6, 0.0);
        x[0] = t;
        const ObjectivePoint y = p0.objectives(x);
        CHECK(y.f0 == doctest::Approx(t * t));
        CHECK(y.f1 == doctest::Approx((1 - t) * (1 - t)));
        ys.push_back(y);
    }
    for (const auto& a : ys) {
        for (const auto& b : ys) {
            CHECK_FALSE((a.f0 < b.f0 && a.f1 < b.f1));
        }
    }
}

TEST_CASE("initial sets follow the init box and the seed")
{
    for (const char* id : {"bisphere", "sphere-rot-ellipsoid", "concave-bisphere"}) {
        const auto problem = make_problem(id, 10);
        const SolutionSet X = sample_initial_set(*problem, 9, 42);
        CHECK(X.size() == 9);
        for (double v : X.concatenated()) {
            CHECK(v >= -2.0);
            CHECK(v <= 2.0);
        }
    }
    const auto p3 = make_problem("sphere-rosenbrock", 10);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const SolutionSet X = sample_initial_set(*p3, 9, seed);
        for (double v : X.concatenated()) {
            CHECK(v >= 0.0);
            CHECK(v <= 2.0);
        }
    }
    CHECK(sample_initial_set(*p3, 9, 7) == sample_initial_set(*p3, 9, 7));
    CHECK_FALSE(sample_initial_set(*p3, 9, 7) == sample_initial_set(*p3, 9, 8));
}

TEST_CASE("init box lies inside the constraint box")
{
    for (const auto& id : problem_ids()) {
        const auto problem = make_problem(id, default_dimension(id));
        CHECK(problem->bounds().contains(problem->init_bounds()));
        CHECK(problem->dimension() == default_dimension(id));
    }
    CHECK(make_problem("bisphere", 1)->dimension() == 1);
}

TEST_CASE("evaluation errors")
{
    EvaluationLedger ledger;
    BiSphere p0(3);
    CHECK_THROWS_AS(evaluate(p0, Vector{1.0, 2.0}, ledger), InvalidArgument);
    CHECK_THROWS_AS(make_problem("nope", 3), InvalidArgument);

    Exploding e;
    try {
        evaluate(e, Vector{1e200}, ledger);
        FAIL("expected NumericError");
    }
    catch (const NumericError& err) {
        CHECK(err.coordinates() == Vector{1e200});
    }
    CHECK_THROWS_AS(gradient(e, Vector{1.0}), UnsupportedOperation);
    CHECK_THROWS_AS(gradient(*make_problem("wfg3", 24), Vector(24, 0.5)), UnsupportedOperation);
}

TEST_CASE("evaluate_with_gradients charges one evaluation")
{
    EvaluationLedger ledger;
    SphereRosenbrock p3(5);
    const Evaluation e = evaluate_with_gradients(p3, Vector(5, 1.0), ledger);
    CHECK(ledger.count() == 1);
    CHECK(e.y == ObjectivePoint{5.0, 0.0});
    for (double v : e.gradient.df1) {
        CHECK(v == 0.0);
    }
}
