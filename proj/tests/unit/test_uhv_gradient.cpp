#include "uhvga/errors.hpp"
#include "uhvga/uhv_gradient.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace uhvga;

namespace {

const ObjectivePoint r11{11.0, 11.0};

class Square final : public Problem {
public:
    explicit Square(double upper) : Problem("square", Box{{-10.0}, {upper}}, Box{{-1.0}, {1.0}}) {}
    ObjectivePoint objectives(std::span<const double> x) const override { return {x[0] * x[0], -x[0]}; }
};

// Problem 0 with both objectives multiplied by a constant.
class ScaledBiSphere final : public Problem {
public:
    ScaledBiSphere(std::size_t n, double scale)
        : Problem("scaled", BiSphere(n).bounds(), BiSphere(n).init_bounds()), base_(n), scale_(scale) {}
    bool has_analytic_gradients() const noexcept override { return true; }
    ObjectivePoint objectives(std::span<const double> x) const override
    {
        const ObjectivePoint y = base_.objectives(x);
        return {scale_ * y.f0, scale_ * y.f1};
    }
    MoGradient gradients(std::span<const double> x) const override
    {
        MoGradient g = base_.gradients(x);
        for (std::size_t j = 0; j < g.df0.size(); ++j) {
            g.df0[j] *= scale_;
            g.df1[j] *= scale_;
        }
        return g;
    }

private:
    BiSphere base_;
    double scale_;
};

struct Config {
    SolutionSet X;
    std::vector<MoGradient> grads;
};

Config evaluated(const Problem& problem, SolutionSet X)
{
    Config c{std::move(X), {}};
    EvaluationLedger ledger;
    for (std::size_t i = 0; i < c.X.size(); ++i) {
        Evaluation e = evaluate_with_gradients(problem, c.X.solution(i), ledger);
        c.X.objectives().push_back(e.y);
        c.grads.push_back(std::move(e.gradient));
    }
    return c;
}

double uhv_at(const Problem& problem, const SolutionSet& X, const ObjectivePoint& r = r11)
{
    std::vector<ObjectivePoint> ys;
    for (std::size_t i = 0; i < X.size(); ++i) {
        ys.push_back(problem.objectives(X.solution(i)));
    }
    return uhv(ObjectiveMatrix(ys, r));
}

// No shared or nearly shared coordinates and nothing near the box edge, so
// uhv is smooth around the configuration.
bool generic(const std::vector<ObjectivePoint>& ys, const ObjectivePoint& r)
{
    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (std::abs(ys[i][k] - r[k]) < 1e-3) {
                return false;
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (std::abs(ys[i][k] - ys[j][k]) < 1e-3) {
                    return false;
                }
            }
        }
    }
    return true;
}

SolutionSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t p, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    SolutionSet X(n, p);
    for (double& v : X.concatenated()) {
        v = u(rng);
    }
    return X;
}

} // namespace

TEST_CASE("hypervolume gradient examples")
{
    const ObjectiveMatrix Y({{9, 10}, {10, 9}}, r11);
    const DominationReport report = classify(Y);
    CHECK(hv_objective_gradient(report, Y, 0) == ObjectivePoint{-1, -1});
    CHECK(hv_objective_gradient(report, Y, 1) == ObjectivePoint{-1, -1});

    const ObjectiveMatrix single({{10, 10}}, r11);
    CHECK(hv_objective_gradient(classify(single), single, 0) == ObjectivePoint{-1, -1});

    const ObjectiveMatrix with_dominated({{9, 10}, {10, 9}, {10.5, 10.5}}, r11);
    CHECK_THROWS_AS(hv_objective_gradient(classify(with_dominated), with_dominated, 2), ContractViolation);
    const ObjectiveMatrix outside({{12, 10}}, r11);
    CHECK_THROWS_AS(hv_objective_gradient(classify(outside), outside, 0), ContractViolation);
}

TEST_CASE("hypervolume gradient matches central differences of hypervolume")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        std::vector<ObjectivePoint> ys;
        for (int i = 0; i < 1 + k % 7; ++i) {
            const double t = u(rng);
            ys.push_back({3.0 + 9.0 * t, 12.0 - 9.0 * t + u(rng)});
        }
        if (!generic(ys, r11)) {
            continue;
        }
        const ObjectiveMatrix Y(ys, r11);
        const DominationReport report = classify(Y);
        for (std::size_t i : report.front) {
            if (ys[i].f0 > r11.f0 || ys[i].f1 > r11.f1) {
                continue;
            }
            const ObjectivePoint g = hv_objective_gradient(report, Y, i);
            for (std::size_t c = 0; c < 2; ++c) {
                const double h = 1e-6;
                auto plus = ys;
                auto minus = ys;
                plus[i][c] += h;
                minus[i][c] -= h;
                const double fd = (hypervolume(ObjectiveMatrix(plus, r11)) - hypervolume(ObjectiveMatrix(minus, r11))) / (2 * h);
                CHECK(fd == doctest::Approx(g[c]).epsilon(1e-6));
                CHECK(g[c] <= 0.0);
            }
        }
    }
}

TEST_CASE("uncrowded distance gradient examples")
{
    const ObjectivePoint a = ud_objective_gradient({10.5, 10.5}, {10, 10}, 3);
    CHECK(a.f0 == doctest::Approx(1.0 / 3.0));
    CHECK(a.f1 == doctest::Approx(1.0 / 3.0));
    const ObjectivePoint b = ud_objective_gradient({9.5, 10.5}, {9.5, 10}, 3);
    CHECK(b.f0 == 0.0);
    CHECK(b.f1 == doctest::Approx(1.0 / 3.0));
    CHECK(ud_objective_gradient({5.25, 4.0}, {5.0, 4.0}, 7).f1 == 0.0);
    CHECK_THROWS_AS(ud_objective_gradient({1, 1}, {1, 1}, 2), ContractViolation);
}

TEST_CASE("uncrowded distance gradient matches differences of uhv")
{
    // Moving only the dominated point changes only its ud term.
    std::vector<ObjectivePoint> ys{{9, 10}, {10, 9}, {10.5, 10.5}};
    const ObjectivePoint g = ud_objective_gradient(ys[2], {10, 10}, 3);
    for (std::size_t c = 0; c < 2; ++c) {
        auto plus = ys;
        auto minus = ys;
        plus[2][c] += 1e-6;
        minus[2][c] -= 1e-6;
        const double fd = (uhv(ObjectiveMatrix(plus, r11)) - uhv(ObjectiveMatrix(minus, r11))) / 2e-6;
        CHECK(fd == doctest::Approx(-g[c]).epsilon(1e-8));
    }
}

TEST_CASE("weak domination perturbation examples")
{
    const ObjectiveMatrix Y({{9, 10}, {9, 11}}, r11);
    const ObjectiveMatrix P = perturb_weakly_dominated(Y, classify(Y), 1e-9);
    CHECK(P[0] == Y[0]);
    CHECK(P[1] == ObjectivePoint{9 + 1e-9, 11});
    CHECK(classify(P).status[1] == Dominance::dominated);
    CHECK(Y[1] == ObjectivePoint{9, 11});

    const ObjectiveMatrix D({{5, 5}, {5, 5}}, r11);
    const ObjectiveMatrix Q = perturb_weakly_dominated(D, classify(D), 1e-9);
    CHECK(Q[1] == ObjectivePoint{5 + 1e-9, 5 + 1e-9});

    const ObjectiveMatrix N({{9, 10}, {10, 9}, {10.5, 10.5}}, r11);
    CHECK(perturb_weakly_dominated(N, classify(N), 1e-9).rows() == N.rows());
}

TEST_CASE("perturbation retries with a smaller epsilon")
{
    // With eps = 1e-3 the shifted point would fall behind (9.0005, 10.9).
    const ObjectiveMatrix Y({{9, 10}, {9, 11}, {9.0005, 10.9}}, r11);
    const ObjectiveMatrix P = perturb_weakly_dominated(Y, classify(Y), 1e-3);
    CHECK(P[1].f0 == doctest::Approx(9.0001).epsilon(1e-15));
    CHECK(P[2] == Y[2]);
}

TEST_CASE("perturbation gives up on inseparable points")
{
    // Every retry is below the resolution of doubles near 1e9.
    const ObjectiveMatrix Y({{1e9, 10}, {1e9, 11}}, {2e9, 20});
    try {
        perturb_weakly_dominated(Y, classify(Y), 1e-9);
        FAIL("expected DegenerateConfiguration");
    }
    catch (const DegenerateConfiguration& e) {
        CHECK(e.indices() == std::vector<std::size_t>{1});
    }
}

TEST_CASE("single solution direction")
{
    BiSphere p0(2);
    SolutionSet X(2, Vector{1.0, 1.0});
    Config c = evaluated(p0, X);
    const UhvGradient G = uhv_gradient(p0, c.X, c.grads, r11);
    CHECK(G.objective_space_gradient[0] == ObjectivePoint{-10, -9});
    CHECK(G.normalization_weights[0] == doctest::Approx(std::sqrt(181.0)));
    CHECK(G.per_solution_raw[0] == Vector{-20, -38});
    CHECK(G.per_solution_direction[0][0] == doctest::Approx(-20 / std::sqrt(181.0)));
    CHECK(G.per_solution_direction[0][1] == doctest::Approx(-38 / std::sqrt(181.0)));
    CHECK(G.concatenated() == G.per_solution_direction[0]);
}

TEST_CASE("zero MO gradients give a zero direction")
{
    const ObjectiveMatrix Y({{9, 10}, {10, 9}, {10.5, 10.5}}, r11);
    std::vector<MoGradient> grads(3, MoGradient{Vector(4, 0.0), Vector(4, 0.0)});
    grads[0].df0 = {1, 2, 3, 4};
    const UhvGradient G = uhv_gradient(Y, grads);
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(G.per_solution_direction[i] == Vector(4, 0.0));
        CHECK(G.normalization_weights[i] > 0.0);
    }
}

TEST_CASE("objective-space gradient structure")
{
    const ObjectiveMatrix Y({{9, 10}, {10, 9}, {10.5, 10.5}, {9, 11}}, r11);
    std::vector<MoGradient> grads(4, MoGradient{Vector(1, 1.0), Vector(1, 1.0)});
    const UhvGradient G = uhv_gradient(Y, grads);
    CHECK(G.status == std::vector{Dominance::nondominated, Dominance::nondominated, Dominance::dominated, Dominance::dominated});
    // Non-dominated points carry only their hypervolume gradient.
    CHECK(G.objective_space_gradient[0] == ObjectivePoint{-1, -1});
    CHECK(G.objective_space_gradient[1] == ObjectivePoint{-1, -1});
    CHECK(G.objective_space_gradient[2].f0 == doctest::Approx(-1.0 / 4.0));
    CHECK(G.objective_space_gradient[2].f1 == doctest::Approx(-1.0 / 4.0));
    // The perturbed copy projects onto (9, 10) from straight above.
    CHECK(std::abs(G.objective_space_gradient[3].f0) < 1e-8);
    CHECK(G.objective_space_gradient[3].f1 == doctest::Approx(-0.5));
    for (std::size_t i = 0; i < 4; ++i) {
        const double W = G.normalization_weights[i];
        CHECK(std::hypot(G.objective_space_gradient[i].f0, G.objective_space_gradient[i].f1) / W == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact mode matches decision-space differences")
{
    std::mt19937_64 rng(8);
    UhvGradientOptions exact;
    exact.zero_ud_for_nondominated = false;
    exact.steer_outside_reference = false;
    int checked = 0;
    for (int k = 0; k < 200 && checked < 40; ++k) {
        const auto problem = make_problem(k % 2 == 0 ? "bisphere" : "concave-bisphere", 4);
        Config c = evaluated(*problem, random_set(rng, 4, 5, -1.0, 2.0));
        if (!generic(c.X.objectives(), r11)) {
            continue;
        }
        ++checked;
        const UhvGradient G = uhv_gradient(*problem, c.X, c.grads, r11, exact);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                SolutionSet plus = c.X;
                SolutionSet minus = c.X;
                plus.solution(i)[j] += 1e-6;
                minus.solution(i)[j] -= 1e-6;
                const double fd = (uhv_at(*problem, plus) - uhv_at(*problem, minus)) / 2e-6;
                const double an = G.per_solution_raw[i][j];
                CHECK(std::abs(fd - an) <= std::max(1e-8, 1e-5 * std::abs(an)));
            }
        }
    }
    CHECK(checked == 40);
}

TEST_CASE("ascent along the direction")
{
    std::mt19937_64 rng(12);
    UhvGradientOptions exact;
    exact.zero_ud_for_nondominated = false;
    for (int k = 0; k < 100; ++k) {
        BiSphere p0(3);
        Config c = evaluated(p0, random_set(rng, 3, 6, -1.0, 2.0));
        if (!generic(c.X.objectives(), r11)) {
            continue;
        }
        const double base = uhv_at(p0, c.X);
        const UhvGradient plain = uhv_gradient(p0, c.X, c.grads, r11);
        const UhvGradient full = uhv_gradient(p0, c.X, c.grads, r11, exact);
        for (std::size_t i = 0; i < 6; ++i) {
            // Dominated points ascend with the default scheme; non-dominated
            // ones only with the full derivative, since the default one
            // ignores the ud terms they anchor.
            const UhvGradient& G = plain.status[i] == Dominance::dominated ? plain : full;
            if (G.normalization_weights[i] == 0.0) {
                continue;
            }
            bool improved = false;
            for (double delta = 1e-2; delta > 1e-9 && !improved; delta *= 0.5) {
                SolutionSet moved = c.X;
                for (std::size_t j = 0; j < 3; ++j) {
                    moved.solution(i)[j] += delta * G.per_solution_direction[i][j];
                }
                improved = uhv_at(p0, moved) > base;
            }
            CHECK(improved);
        }
    }
}

TEST_CASE("dominated points move toward the boundary")
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 200; ++k) {
        BiSphere p0(4);
        Config c = evaluated(p0, random_set(rng, 4, 5, -1.0, 2.0));
        const ObjectiveMatrix Y(c.X.objectives(), r11);
        const DominationReport report = classify(Y);
        if (!generic(c.X.objectives(), r11)) {
            continue;
        }
        const UhvGradient G = uhv_gradient(Y, c.grads);
        for (std::size_t i = 0; i < 5; ++i) {
            if (report.status[i] != Dominance::dominated) {
                continue;
            }
            SolutionSet moved = c.X;
            for (std::size_t j = 0; j < 4; ++j) {
                moved.solution(i)[j] += 1e-5 * G.per_solution_direction[i][j];
            }
            std::vector<ObjectivePoint> ys = c.X.objectives();
            ys[i] = p0.objectives(moved.solution(i));
            const double before = uncrowded_distance(Y[i], report).distance;
            const double after = uncrowded_distance(ys[i], classify(ObjectiveMatrix(ys, r11))).distance;
            CHECK(after < before);
        }
    }
}

TEST_CASE("scaling the objectives scales the direction by the same factor")
{
    // Normalization removes the objective-space factor; the one carried by the
    // MO gradients remains.
    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        BiSphere p0(3);
        ScaledBiSphere p0x2(3, 2.0);
        const SolutionSet X = random_set(rng, 3, 5, -1.0, 2.0);
        Config a = evaluated(p0, X);
        Config b = evaluated(p0x2, X);
        const UhvGradient Ga = uhv_gradient(p0, a.X, a.grads, r11);
        const UhvGradient Gb = uhv_gradient(p0x2, b.X, b.grads, {22.0, 22.0});
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(Gb.per_solution_direction[i][j] == doctest::Approx(2.0 * Ga.per_solution_direction[i][j]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("non-dominated points beyond the reference are steered back")
{
    const ObjectiveMatrix Y({{12, 5}, {13, 14}}, r11);
    std::vector<MoGradient> grads(2, MoGradient{Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    const UhvGradient G = uhv_gradient(Y, grads);
    CHECK(G.steered_outside == 1);
    CHECK(G.objective_space_gradient[0] == ObjectivePoint{-1, 0});
    UhvGradientOptions off;
    off.steer_outside_reference = false;
    const UhvGradient H = uhv_gradient(Y, grads, off);
    CHECK(H.steered_outside == 0);
    CHECK(H.per_solution_direction[0] == Vector{0.0, 0.0});
}

TEST_CASE("finite-difference MO gradients")
{
    Square sq(5.0);
    EvaluationLedger ledger;
    const MoGradient g = fd_mo_gradient(sq, Vector{1.0}, 1e-6, ledger);
    CHECK(g.df0[0] == doctest::Approx(2.0 + 1e-6).epsilon(1e-9));
    CHECK(g.df1[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(ledger.count() == 2);

    // At the upper bound the difference is taken backward.
    Square capped(1.0);
    const MoGradient b = fd_mo_gradient(capped, Vector{1.0}, 1e-6, ledger);
    CHECK(b.df0[0] == doctest::Approx(2.0 - 1e-6).epsilon(1e-9));

    EvaluationLedger ten;
    const auto p0 = make_problem("bisphere", 10);
    fd_mo_gradient(*p0, Vector(10, 0.3), 1e-6, ten);
    CHECK(ten.count() == 11);
    fd_mo_gradient(*p0, Vector(10, 0.3), p0->objectives(Vector(10, 0.3)), 1e-6, ten);
    CHECK(ten.count() == 21);

    Square wide(1e300);
    CHECK_THROWS_AS(fd_mo_gradient(wide, Vector{1e20}, 1e-6, ledger), NumericError);
    CHECK_THROWS_AS(fd_mo_gradient(sq, Vector{1.0}, 0.0, ledger), InvalidArgument);
}
