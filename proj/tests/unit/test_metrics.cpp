#include "uhvga/errors.hpp"
#include "uhvga/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace uhvga;

namespace {

const ObjectivePoint r11{11.0, 11.0};

ObjectiveMatrix matrix(std::vector<ObjectivePoint> rows) { return ObjectiveMatrix(std::move(rows), r11); }

ObjectivePoint bisphere_front(double t) { return {t * t, (1 - t) * (1 - t)}; }

double hv_on_curve(double a, double b)
{
    const ObjectivePoint y0 = bisphere_front(std::min(a, b));
    const ObjectivePoint y1 = bisphere_front(std::max(a, b));
    return hypervolume(matrix({y0, y1}));
}

} // namespace

TEST_CASE("delta hv examples")
{
    const ObjectiveMatrix A = matrix({{9, 10}, {10, 9}});
    CHECK(delta_hv(A, 3.0) == 0.0);
    CHECK(delta_hv(matrix({{12, 12}, {11.5, 13}}), 4.5) == 4.5);
    CHECK(delta_hv(A, 2.5) == -0.5);
    CHECK_THROWS_AS(delta_hv(A, -1.0), InvalidArgument);
}

TEST_CASE("generational distance examples")
{
    const ReferenceFront front({{0, 2}, {1, 1}, {2, 0}}, FrontSource::sampled);
    CHECK(generational_distance(matrix({{0, 2}, {2, 0}}), front) == 0.0);
    const ReferenceFront single({{1, 1}}, FrontSource::analytic);
    CHECK(generational_distance(matrix({{4, 5}}), single) == doctest::Approx(5.0));
    CHECK(generational_distance(matrix({{1, 2}, {2, 2}}), front) == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0));
    CHECK_THROWS_AS(generational_distance(matrix({{1, 1}}), ReferenceFront()), InvalidArgument);

    const ReferenceFront p0 = *default_front("bisphere", 10);
    CHECK(p0.size() == 100000);
    CHECK(p0.source() == FrontSource::analytic);
    CHECK(generational_distance(matrix({{0.25, 0.25}}), p0) <= 1e-5);
}

TEST_CASE("front distance agrees with a linear scan")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 3.0);
    const FrontCurve curve = *front_curve("concave-bisphere", 10);
    const ReferenceFront front = sample_front(curve, 3000, FrontSource::sampled);
    for (int k = 0; k < 300; ++k) {
        const ObjectivePoint y{u(rng), u(rng)};
        double best = INFINITY;
        for (const auto& f : front.points()) {
            best = std::min(best, std::hypot(f.f0 - y.f0, f.f1 - y.f1));
        }
        CHECK(front.distance(y) == best);
    }
}

TEST_CASE("generational distance is translation invariant")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<ObjectivePoint> f;
        std::vector<ObjectivePoint> a;
        for (int i = 0; i < 40; ++i) {
            const double t = u(rng);
            f.push_back({t, 4.0 - t});
        }
        for (int i = 0; i < 7; ++i) {
            a.push_back({u(rng), u(rng)});
        }
        const double gd = generational_distance(a, ReferenceFront(f, FrontSource::sampled));
        const ObjectivePoint v{u(rng) - 2.0, u(rng) - 2.0};
        for (auto* set : {&f, &a}) {
            for (auto& y : *set) {
                y = {y.f0 + v.f0, y.f1 + v.f1};
            }
        }
        CHECK(generational_distance(a, ReferenceFront(f, FrontSource::sampled)) == doctest::Approx(gd).epsilon(1e-12));
    }
}

TEST_CASE("non-dominated count")
{
    CHECK(nondominated_count(matrix({{3, 3}, {3, 3}, {3, 3}})) == 1);
    std::vector<ObjectivePoint> chain;
    for (int i = 0; i < 9; ++i) {
        chain.push_back({double(i), double(8 - i)});
    }
    CHECK(nondominated_count(matrix(chain)) == 9);
    CHECK(nondominated_count(matrix({{9, 10}, {10, 9}, {10.5, 10.5}})) == 2);
    CHECK(approximation_set(matrix({{10, 9}, {10.5, 10.5}, {9, 10}})) == std::vector<ObjectivePoint>{{9, 10}, {10, 9}});

    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> g(0, 6);
    for (int k = 0; k < 200; ++k) {
        std::vector<ObjectivePoint> ys(8);
        for (auto& y : ys) {
            y = {double(g(rng)), double(g(rng))};
        }
        const std::size_t count = nondominated_count(matrix(ys));
        std::shuffle(ys.begin(), ys.end(), rng);
        CHECK(nondominated_count(matrix(ys)) == count);
    }
}

TEST_CASE("reference fronts drop dominated points")
{
    const ReferenceFront f({{2, 0}, {1, 1}, {1.5, 1.5}, {0, 2}, {1, 1}}, FrontSource::sampled, "test");
    CHECK(f.points() == std::vector<ObjectivePoint>{{0, 2}, {1, 1}, {2, 0}});
    CHECK(f.provenance() == "test");
    CHECK(to_string(FrontSource::external_file) == "external-file");
}

TEST_CASE("front curves")
{
    for (const char* id : {"bisphere", "concave-bisphere", "sphere-rot-ellipsoid", "wfg3", "wfg6"}) {
        CAPTURE(id);
        const auto curve = front_curve(id, std::string(id).starts_with("wfg") ? 24 : 10);
        REQUIRE(curve.has_value());
        ObjectivePoint prev = (*curve)(0.0);
        for (int k = 1; k <= 200; ++k) {
            const ObjectivePoint y = (*curve)(k / 200.0);
            CHECK(y.f0 >= prev.f0 - 1e-12);
            CHECK(y.f1 <= prev.f1 + 1e-12);
            prev = y;
        }
    }
    CHECK_FALSE(front_curve("sphere-rosenbrock", 10).has_value());
    const FrontCurve p0 = *front_curve("bisphere", 10);
    CHECK(p0(0.5).f0 == doctest::Approx(0.25));
    CHECK(p0(0.5).f1 == doctest::Approx(0.25));

    // The sphere-rot-ellipsoid front runs between the two single-objective optima.
    const FrontCurve p1 = *front_curve("sphere-rot-ellipsoid", 10);
    CHECK(p1(0.0).f0 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(p1(1.0).f1 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("arc-length sampling")
{
    const FrontCurve line = [](double t) { return ObjectivePoint{std::pow(t, 3.0), 1.0 - std::pow(t, 3.0)}; };
    const ReferenceFront f = sample_front(line, 11, FrontSource::sampled);
    REQUIRE(f.size() == 11);
    for (std::size_t k = 0; k < 11; ++k) {
        CHECK(f.points()[k].f0 == doctest::Approx(k / 10.0).epsilon(1e-6));
    }
}

TEST_CASE("optimal distribution on the bisphere front")
{
    const FrontCurve curve = *front_curve("bisphere", 10);
    const OptimalDistribution one = optimal_distribution(curve, 1, r11);
    CHECK(one.hypervolume == doctest::Approx(10.75 * 10.75).epsilon(1e-14));
    CHECK(one.t[0] == doctest::Approx(0.5).epsilon(1e-6));

    // Grid search over the two curve parameters, then a finer local grid.
    double best = 0.0;
    double ba = 0.0;
    double bb = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        for (int j = i; j <= 1000; ++j) {
            const double v = hv_on_curve(i / 1000.0, j / 1000.0);
            if (v > best) {
                best = v;
                ba = i / 1000.0;
                bb = j / 1000.0;
            }
        }
    }
    for (double width = 1e-3; width > 1e-9; width *= 0.1) {
        const double ca = ba;
        const double cb = bb;
        for (int i = -20; i <= 20; ++i) {
            for (int j = -20; j <= 20; ++j) {
                const double a = std::clamp(ca + i * width / 10.0, 0.0, 1.0);
                const double b = std::clamp(cb + j * width / 10.0, 0.0, 1.0);
                const double v = hv_on_curve(a, b);
                if (v > best) {
                    best = v;
                    ba = a;
                    bb = b;
                }
            }
        }
    }
    const OptimalDistribution two = optimal_distribution(curve, 2, r11);
    CHECK(std::abs(two.hypervolume - best) <= 1e-10);
    CHECK(two.hypervolume >= best - 1e-12);

    // Spreading more points never loses area.
    double prev = two.hypervolume;
    for (std::size_t p : {3u, 5u, 9u}) {
        const double hv = optimal_distribution(curve, p, r11).hypervolume;
        CHECK(hv > prev);
        prev = hv;
    }
}

TEST_CASE("front files round-trip")
{
    const ReferenceFront f({{0.1, 0.9}, {1.0 / 3.0, 0.5}, {0.9, 1e-17}}, FrontSource::sampled, "seed 4");
    std::stringstream s;
    write_front(s, f);
    const ReferenceFront g = read_front(s);
    CHECK(g.points() == f.points());
    CHECK(g.source() == FrontSource::external_file);

    std::istringstream bad("# header\n1 2\n3 x\n");
    try {
        read_front(bad, "bad.txt");
        FAIL("expected InvalidArgument");
    }
    catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("bad.txt:3") != std::string::npos);
    }
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_front(empty), InvalidArgument);
    std::istringstream three("1 2 3\n");
    CHECK_THROWS_AS(read_front(three), InvalidArgument);
    CHECK_THROWS_AS(read_front_file("/nonexistent/front.txt"), InvalidArgument);
}

TEST_CASE("target tables")
{
    TargetTable t;
    t.comments().push_back("derived");
    t.set({"bisphere", 10, 9, 120.78767307497066, "front-oracle"});
    t.set({"bisphere", 10, 3, 1.0 / 3.0, ""});
    t.set({"bisphere", 10, 9, 120.5, "rerun"});
    CHECK(t.entries().size() == 2);
    std::stringstream s;
    t.write(s);
    const TargetTable u = TargetTable::read(s);
    CHECK(u.find("bisphere", 10, 9) == 120.5);
    CHECK(u.find("bisphere", 10, 3) == 1.0 / 3.0);
    CHECK_FALSE(u.find("bisphere", 5, 9).has_value());
    CHECK(u.entries()[0].method == "rerun");
    std::istringstream bad("bisphere 10 x 1.0\n");
    CHECK_THROWS_AS(TargetTable::read(bad), InvalidArgument);
}
