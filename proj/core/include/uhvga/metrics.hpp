#pragma once

#include "uhvga/hypervolume.hpp"
#include "uhvga/types.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uhvga {

enum class FrontSource { analytic, sampled, external_file };

std::string_view to_string(FrontSource source);

/// Mutually non-dominated objective-space points sorted ascending in f0.
class ReferenceFront {
public:
    ReferenceFront() = default;
    /// Keeps only the non-dominated points of `points`.
    ReferenceFront(std::vector<ObjectivePoint> points, FrontSource source, std::string provenance = {});

    const std::vector<ObjectivePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    FrontSource source() const noexcept { return source_; }
    const std::string& provenance() const noexcept { return provenance_; }

    /// Euclidean distance from y to the nearest front point.
    double distance(const ObjectivePoint& y) const;

private:
    std::vector<ObjectivePoint> points_;
    FrontSource source_ = FrontSource::sampled;
    std::string provenance_;
};

/// target_hv - HV(A). Throws InvalidArgument for a negative target.
double delta_hv(const ObjectiveMatrix& A, double target_hv);

/// Mean distance from the rows of A to the nearest front point (plain mean,
/// not the root-mean-square variant). Throws InvalidArgument on an empty
/// front.
double generational_distance(const ObjectiveMatrix& A, const ReferenceFront& front);
double generational_distance(std::span<const ObjectivePoint> A, const ReferenceFront& front);

std::size_t nondominated_count(const ObjectiveMatrix& A);

/// The non-dominated rows of A (the approximation set), ascending in f0.
std::vector<ObjectivePoint> approximation_set(const ObjectiveMatrix& A);

/// A Pareto front traced by t in [0, 1], f0 non-decreasing and f1
/// non-increasing in t.
using FrontCurve = std::function<ObjectivePoint(double)>;

/// Front curve of a problem with a known Pareto set (bisphere,
/// concave-bisphere, sphere-rot-ellipsoid, wfg1 ... wfg9), or nullopt.
std::optional<FrontCurve> front_curve(std::string_view problem_id, std::size_t n);

/// `count` points on the curve at equal arc-length spacing (endpoints
/// included), filtered to the non-dominated ones.
ReferenceFront sample_front(const FrontCurve& curve, std::size_t count, FrontSource source,
                            std::string provenance = {});

/// Front of a problem at GD resolution: 10^5 points for the analytic fronts
/// of bisphere and concave-bisphere, 5000 for the rest. Nullopt when the
/// problem has no known front.
std::optional<ReferenceFront> default_front(std::string_view problem_id, std::size_t n);

struct OptimalDistribution {
    std::vector<double> t;
    std::vector<ObjectivePoint> points;
    double hypervolume = 0.0;
    std::size_t sweeps = 0;
};

/// Largest hypervolume attainable by p points on the curve with respect to
/// r, found by coordinate ascent over the curve parameters.
OptimalDistribution optimal_distribution(const FrontCurve& curve, std::size_t p, const ObjectivePoint& r,
                                         double tolerance = 1.0e-15, std::size_t max_sweeps = 200000);

/// Plain-text front files: one "f0 f1" pair per line, '#' comment lines.
ReferenceFront read_front(std::istream& in, const std::string& name = "<stream>");
ReferenceFront read_front_file(const std::string& path);
void write_front(std::ostream& out, const ReferenceFront& front);

struct TargetEntry {
    std::string problem;
    std::size_t n = 0;
    std::size_t p = 0;
    double hypervolume = 0.0;
    std::string method;
};

/// Target hypervolumes per (problem, n, p), stored as whitespace-separated
/// columns `problem n p hv method` with '#' comment lines.
class TargetTable {
public:
    static TargetTable read(std::istream& in, const std::string& name = "<stream>");
    static TargetTable read_file(const std::string& path);
    void write(std::ostream& out) const;

    void set(TargetEntry entry);
    std::optional<double> find(std::string_view problem, std::size_t n, std::size_t p) const;
    const std::vector<TargetEntry>& entries() const noexcept { return entries_; }
    std::vector<std::string>& comments() noexcept { return comments_; }

private:
    std::vector<TargetEntry> entries_;
    std::vector<std::string> comments_;
};

} // namespace uhvga
