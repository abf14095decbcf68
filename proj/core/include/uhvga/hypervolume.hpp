#pragma once

#include "uhvga/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace uhvga {

/// p objective-space points together with the hypervolume reference point.
class ObjectiveMatrix {
public:
    /// Throws InvalidArgument if `rows` is empty or any entry (including the
    /// reference point) is not finite.
    ObjectiveMatrix(std::vector<ObjectivePoint> rows, ObjectivePoint reference);

    std::size_t size() const noexcept { return rows_.size(); }
    const ObjectivePoint& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<ObjectivePoint>& rows() const noexcept { return rows_; }
    const ObjectivePoint& reference() const noexcept { return reference_; }

private:
    std::vector<ObjectivePoint> rows_;
    ObjectivePoint reference_;
};

enum class Dominance { nondominated, dominated, weakly_dominated };

/// Axis-parallel piece of the interior domination boundary.
struct BoundarySegment {
    ObjectivePoint from;
    ObjectivePoint to;
};

struct DominationReport {
    std::vector<Dominance> status;
    /// Row indices of the non-dominated points, ascending in f0.
    std::vector<std::size_t> front;
    /// Staircase between consecutive front points: for each adjacent pair a
    /// horizontal piece to the corner followed by a vertical piece. Empty for
    /// a single-point front, whose boundary is that point.
    std::vector<BoundarySegment> boundary;
    std::vector<ObjectivePoint> front_points;

    std::size_t count(Dominance d) const;
};

/// Classifies every point: strictly dominated if some point is better in
/// both objectives; weakly dominated if not strictly dominated but another
/// point is no worse in both and ties in at least one (for exact duplicates
/// the first occurrence in index order stays non-dominated).
DominationReport classify(const ObjectiveMatrix& Y);

/// Area dominated by the front and bounded by the reference point. Points
/// outside the reference box contribute nothing.
double hypervolume(const ObjectiveMatrix& Y);
double hypervolume(const ObjectiveMatrix& Y, const DominationReport& report);

/// Nearest point s on the interior boundary, with the row indices of the
/// front points whose f0 / f1 value s takes (if s is pinned to one).
struct BoundaryProjection {
    double distance = 0.0;
    ObjectivePoint nearest;
    std::optional<std::size_t> f0_source;
    std::optional<std::size_t> f1_source;
};

/// Euclidean distance from y to the interior domination boundary of the
/// report's front (exact point-to-segment projection). Zero for points on
/// the front. Throws InvalidState if the front is empty.
BoundaryProjection uncrowded_distance(const ObjectivePoint& y, const DominationReport& report);

/// Mean of squared uncrowded distances over all non-NONDOMINATED points.
double uncrowded_penalty(const ObjectiveMatrix& Y, const DominationReport& report);

/// UHV = HV - (1/p) sum_i ud(y_i)^2.
double uhv(const ObjectiveMatrix& Y);
double uhv(const ObjectiveMatrix& Y, const DominationReport& report);

} // namespace uhvga
