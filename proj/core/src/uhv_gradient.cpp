#include "uhvga/uhv_gradient.hpp"

#include "uhvga/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace uhvga {

namespace {

bool weakly_precedes(const ObjectivePoint& a, const ObjectivePoint& b) { return a.f0 <= b.f0 && a.f1 <= b.f1; }

bool strictly_dominates(const ObjectivePoint& a, const ObjectivePoint& b) { return a.f0 < b.f0 && a.f1 < b.f1; }

Vector concatenate(const std::vector<Vector>& parts)
{
    Vector out;
    for (const Vector& v : parts) {
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

} // namespace

Vector UhvGradient::concatenated() const { return concatenate(per_solution_direction); }

Vector UhvGradient::concatenated_raw() const { return concatenate(per_solution_raw); }

ObjectivePoint hv_objective_gradient(const DominationReport& report, const ObjectiveMatrix& Y, std::size_t i)
{
    if (i >= Y.size() || report.status.size() != Y.size()) {
        throw InvalidArgument("hv_objective_gradient: index or report does not match Y");
    }
    if (report.status[i] != Dominance::nondominated) {
        throw ContractViolation("hypervolume gradient requested for a dominated point (index " + std::to_string(i) + ")");
    }
    const ObjectivePoint& r = Y.reference();
    const ObjectivePoint& y = Y[i];
    if (y.f0 > r.f0 || y.f1 > r.f1) {
        throw ContractViolation("hypervolume gradient requested for a point outside the reference box");
    }
    const auto pos = static_cast<std::size_t>(std::find(report.front.begin(), report.front.end(), i) - report.front.begin());
    const auto& F = report.front_points;
    const double left_f1 = pos == 0 ? r.f1 : std::min(r.f1, F[pos - 1].f1);
    const double right_f0 = pos + 1 == F.size() ? r.f0 : std::min(r.f0, F[pos + 1].f0);
    return {-(left_f1 - y.f1), -(right_f0 - y.f0)};
}

ObjectivePoint ud_objective_gradient(const ObjectivePoint& y, const ObjectivePoint& s, std::size_t p)
{
    if (y == s) {
        throw ContractViolation("uncrowded-distance gradient is undefined at distance zero");
    }
    if (p == 0) {
        throw InvalidArgument("ud_objective_gradient: p must be positive");
    }
    const double scale = 2.0 / static_cast<double>(p);
    return {scale * (y.f0 - s.f0), scale * (y.f1 - s.f1)};
}

ObjectiveMatrix perturb_weakly_dominated(const ObjectiveMatrix& Y, const DominationReport& report, double epsilon)
{
    if (!(epsilon > 0.0)) {
        throw InvalidArgument("perturbation epsilon must be positive");
    }
    const std::size_t p = Y.size();

    // Coordinates each weakly dominated point shares with a point that weakly
    // dominates it.
    std::vector<std::size_t> targets;
    std::vector<std::array<bool, 2>> shared(p, {false, false});
    for (std::size_t i = 0; i < p; ++i) {
        if (report.status[i] != Dominance::weakly_dominated) {
            continue;
        }
        targets.push_back(i);
        for (std::size_t j = 0; j < p; ++j) {
            if (j != i && weakly_precedes(Y[j], Y[i])) {
                for (std::size_t k = 0; k < 2; ++k) {
                    shared[i][k] = shared[i][k] || Y[j][k] == Y[i][k];
                }
            }
        }
    }
    if (targets.empty()) {
        return Y;
    }

    double eps = epsilon;
    for (int attempt = 0; attempt <= 10; ++attempt, eps *= 0.1) {
        std::vector<ObjectivePoint> rows = Y.rows();
        for (std::size_t i : targets) {
            for (std::size_t k = 0; k < 2; ++k) {
                if (shared[i][k]) {
                    rows[i][k] += eps;
                }
            }
        }
        ObjectiveMatrix candidate(std::move(rows), Y.reference());
        const DominationReport after = classify(candidate);

        bool ok = after.count(Dominance::weakly_dominated) == 0;
        for (std::size_t i : targets) {
            for (std::size_t j = 0; ok && j < p; ++j) {
                if (j != i && strictly_dominates(candidate[j], candidate[i]) && !weakly_precedes(Y[j], Y[i])) {
                    ok = false;
                }
            }
        }
        if (ok) {
            return candidate;
        }
    }
    throw DegenerateConfiguration("could not separate weakly dominated points by perturbation", targets);
}

UhvGradient uhv_gradient(const ObjectiveMatrix& Y, std::span<const MoGradient> mo_gradients,
                         const UhvGradientOptions& options)
{
    const std::size_t p = Y.size();
    if (mo_gradients.size() != p) {
        throw InvalidArgument("uhv_gradient: expected " + std::to_string(p) + " MO gradients, got " +
                              std::to_string(mo_gradients.size()));
    }
    const std::size_t n = mo_gradients[0].df0.size();
    for (const MoGradient& g : mo_gradients) {
        if (g.df0.size() != n || g.df1.size() != n) {
            throw InvalidArgument("uhv_gradient: MO gradients have inconsistent dimensions");
        }
    }

    const DominationReport initial = classify(Y);
    ObjectiveMatrix work = Y;
    DominationReport report = initial;
    if (initial.count(Dominance::weakly_dominated) > 0) {
        double scale = 1.0;
        for (const ObjectivePoint& y : Y.rows()) {
            scale = std::max({scale, std::fabs(y.f0), std::fabs(y.f1)});
        }
        work = perturb_weakly_dominated(Y, initial, options.epsilon_scale * scale);
        report = classify(work);
    }

    UhvGradient out;
    out.objective_space_gradient.assign(p, ObjectivePoint{});
    out.status = report.status;
    auto& G = out.objective_space_gradient;
    const ObjectivePoint& r = Y.reference();

    for (std::size_t i = 0; i < p; ++i) {
        const ObjectivePoint& y = work[i];
        if (report.status[i] == Dominance::nondominated) {
            const bool outside = y.f0 > r.f0 || y.f1 > r.f1;
            if (!outside) {
                const ObjectivePoint hv = hv_objective_gradient(report, work, i);
                G[i].f0 += hv.f0;
                G[i].f1 += hv.f1;
            }
            else if (options.steer_outside_reference) {
                G[i].f0 += -std::max(0.0, y.f0 - r.f0);
                G[i].f1 += -std::max(0.0, y.f1 - r.f1);
                ++out.steered_outside;
            }
            continue;
        }
        const BoundaryProjection proj = uncrowded_distance(y, report);
        const ObjectivePoint ud = ud_objective_gradient(y, proj.nearest, p);
        G[i].f0 -= ud.f0;
        G[i].f1 -= ud.f1;
        if (!options.zero_ud_for_nondominated) {
            if (proj.f0_source) {
                G[*proj.f0_source].f0 += ud.f0;
            }
            if (proj.f1_source) {
                G[*proj.f1_source].f1 += ud.f1;
            }
        }
    }

    out.normalization_weights.resize(p);
    out.per_solution_raw.assign(p, Vector(n, 0.0));
    out.per_solution_direction.assign(p, Vector(n, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        const double W = std::hypot(G[i].f0, G[i].f1);
        out.normalization_weights[i] = W;
        const MoGradient& g = mo_gradients[i];
        for (std::size_t j = 0; j < n; ++j) {
            out.per_solution_raw[i][j] = G[i].f0 * g.df0[j] + G[i].f1 * g.df1[j];
        }
        if (W > 0.0) {
            for (std::size_t j = 0; j < n; ++j) {
                out.per_solution_direction[i][j] = out.per_solution_raw[i][j] / W;
            }
        }
    }
    return out;
}

UhvGradient uhv_gradient(const Problem& problem, const SolutionSet& X, std::span<const MoGradient> mo_gradients,
                         const ObjectivePoint& reference, const UhvGradientOptions& options)
{
    if (X.dimension() != problem.dimension()) {
        throw InvalidArgument("uhv_gradient: solution set dimension does not match the problem");
    }
    if (X.objectives().size() != X.size()) {
        throw InvalidState("uhv_gradient: solution set has not been evaluated");
    }
    return uhv_gradient(ObjectiveMatrix(X.objectives(), reference), mo_gradients, options);
}

MoGradient fd_mo_gradient(const Problem& problem, std::span<const double> x, const ObjectivePoint& base, double h,
                          EvaluationLedger& ledger)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidArgument("finite-difference step must be positive and finite");
    }
    const std::size_t n = problem.dimension();
    if (x.size() != n) {
        throw InvalidArgument("fd_mo_gradient: expected " + std::to_string(n) + " coordinates, got " +
                              std::to_string(x.size()));
    }
    const Vector& upper = problem.bounds().upper;

    MoGradient g{Vector(n), Vector(n)};
    Vector probe(x.begin(), x.end());
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[j];
        double step = xj + h;
        if (step > upper[j]) {
            step = xj - h;
        }
        const double delta = step - xj;
        if (delta == 0.0) {
            throw NumericError("finite-difference step vanishes at coordinate " + std::to_string(j), probe);
        }
        probe[j] = step;
        const ObjectivePoint y = evaluate(problem, probe, ledger);
        probe[j] = xj;
        g.df0[j] = (y.f0 - base.f0) / delta;
        g.df1[j] = (y.f1 - base.f1) / delta;
    }
    return g;
}

MoGradient fd_mo_gradient(const Problem& problem, std::span<const double> x, double h, EvaluationLedger& ledger)
{
    const ObjectivePoint base = evaluate(problem, x, ledger);
    return fd_mo_gradient(problem, x, base, h, ledger);
}

} // namespace uhvga
