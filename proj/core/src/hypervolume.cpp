#include "uhvga/hypervolume.hpp"

#include "uhvga/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace uhvga {

ObjectiveMatrix::ObjectiveMatrix(std::vector<ObjectivePoint> rows, ObjectivePoint reference)
    : rows_(std::move(rows)), reference_(reference)
{
    if (rows_.empty()) {
        throw InvalidArgument("objective matrix needs at least one point");
    }
    const auto finite = [](const ObjectivePoint& y) { return std::isfinite(y.f0) && std::isfinite(y.f1); };
    if (!finite(reference_)) {
        throw InvalidArgument("reference point must be finite");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!finite(rows_[i])) {
            throw InvalidArgument("objective row " + std::to_string(i) + " is not finite");
        }
    }
}

std::size_t DominationReport::count(Dominance d) const
{
    return static_cast<std::size_t>(std::count(status.begin(), status.end(), d));
}

DominationReport classify(const ObjectiveMatrix& Y)
{
    const std::size_t p = Y.size();
    DominationReport report;
    report.status.assign(p, Dominance::nondominated);

    for (std::size_t i = 0; i < p; ++i) {
        const ObjectivePoint& yi = Y[i];
        bool strict = false;
        bool weak = false;
        for (std::size_t j = 0; j < p && !strict; ++j) {
            if (j == i) {
                continue;
            }
            const ObjectivePoint& yj = Y[j];
            if (yj.f0 < yi.f0 && yj.f1 < yi.f1) {
                strict = true;
            }
            else if (yj.f0 <= yi.f0 && yj.f1 <= yi.f1) {
                // Ties in at least one objective. An exact duplicate only
                // demotes the later occurrence.
                if (!(yj == yi) || j < i) {
                    weak = true;
                }
            }
        }
        if (strict) {
            report.status[i] = Dominance::dominated;
        }
        else if (weak) {
            report.status[i] = Dominance::weakly_dominated;
        }
    }

    for (std::size_t i = 0; i < p; ++i) {
        if (report.status[i] == Dominance::nondominated) {
            report.front.push_back(i);
        }
    }
    std::sort(report.front.begin(), report.front.end(),
              [&](std::size_t a, std::size_t b) { return Y[a].f0 < Y[b].f0; });

    report.front_points.reserve(report.front.size());
    for (std::size_t idx : report.front) {
        report.front_points.push_back(Y[idx]);
    }
    for (std::size_t k = 1; k < report.front_points.size(); ++k) {
        const ObjectivePoint& left = report.front_points[k - 1];
        const ObjectivePoint& right = report.front_points[k];
        const ObjectivePoint corner{right.f0, left.f1};
        report.boundary.push_back({left, corner});
        report.boundary.push_back({corner, right});
    }
    return report;
}

double hypervolume(const ObjectiveMatrix& Y) { return hypervolume(Y, classify(Y)); }

double hypervolume(const ObjectiveMatrix& Y, const DominationReport& report)
{
    const ObjectivePoint& r = Y.reference();
    double area = 0.0;
    double previous_f1 = r.f1;
    for (const ObjectivePoint& y : report.front_points) {
        if (y.f0 >= r.f0 || y.f1 >= r.f1) {
            continue;
        }
        area += (r.f0 - y.f0) * (previous_f1 - y.f1);
        previous_f1 = y.f1;
    }
    return area;
}

BoundaryProjection uncrowded_distance(const ObjectivePoint& y, const DominationReport& report)
{
    const auto& F = report.front_points;
    if (F.empty()) {
        throw InvalidState("uncrowded distance needs a non-empty front");
    }
    const auto source = [&](std::size_t k) { return report.front[k]; };

    BoundaryProjection best;
    if (F.size() == 1) {
        best.nearest = F[0];
        best.distance = std::hypot(y.f0 - F[0].f0, y.f1 - F[0].f1);
        best.f0_source = source(0);
        best.f1_source = source(0);
        return best;
    }

    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < F.size(); ++k) {
        const ObjectivePoint& left = F[k - 1];
        const ObjectivePoint& right = F[k];

        // Horizontal piece at height left.f1, f0 in [left.f0, right.f0].
        {
            BoundaryProjection cand;
            const double s0 = std::clamp(y.f0, left.f0, right.f0);
            cand.nearest = {s0, left.f1};
            cand.distance = std::hypot(y.f0 - s0, y.f1 - left.f1);
            cand.f1_source = source(k - 1);
            if (s0 == left.f0) {
                cand.f0_source = source(k - 1);
            }
            else if (s0 == right.f0) {
                cand.f0_source = source(k);
            }
            if (cand.distance < best.distance) {
                best = cand;
            }
        }
        // Vertical piece at f0 = right.f0, f1 in [right.f1, left.f1].
        {
            BoundaryProjection cand;
            const double s1 = std::clamp(y.f1, right.f1, left.f1);
            cand.nearest = {right.f0, s1};
            cand.distance = std::hypot(y.f0 - right.f0, y.f1 - s1);
            cand.f0_source = source(k);
            if (s1 == left.f1) {
                cand.f1_source = source(k - 1);
            }
            else if (s1 == right.f1) {
                cand.f1_source = source(k);
            }
            if (cand.distance < best.distance) {
                best = cand;
            }
        }
    }
    return best;
}

double uncrowded_penalty(const ObjectiveMatrix& Y, const DominationReport& report)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if (report.status[i] != Dominance::nondominated) {
            const double d = uncrowded_distance(Y[i], report).distance;
            sum += d * d;
        }
    }
    return sum / static_cast<double>(Y.size());
}

double uhv(const ObjectiveMatrix& Y) { return uhv(Y, classify(Y)); }

double uhv(const ObjectiveMatrix& Y, const DominationReport& report)
{
    return hypervolume(Y, report) - uncrowded_penalty(Y, report);
}

} // namespace uhvga
