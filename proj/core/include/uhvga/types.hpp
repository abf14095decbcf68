#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uhvga {

using Vector = std::vector<double>;

/// A point (f0, f1) in bi-objective space. Both objectives are minimized.
struct ObjectivePoint {
    double f0 = 0.0;
    double f1 = 0.0;

    double operator[](std::size_t k) const { return k == 0 ? f0 : f1; }
    double& operator[](std::size_t k) { return k == 0 ? f0 : f1; }

    friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

/// Gradients of both objectives at one decision vector.
struct MoGradient {
    Vector df0;
    Vector df1;
};

/// Axis-aligned box [lower, upper]; infinite bounds are allowed.
struct Box {
    Vector lower;
    Vector upper;

    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const;
    bool contains(const Box& inner) const;
    /// Largest finite edge length; the initial step-size scale.
    double max_range() const;
    bool bounded() const;
};

/// Counts MO-evaluations: one unit per computation of (f0, f1) and, when
/// available, their gradients at a single decision vector.
class EvaluationLedger {
public:
    void charge(std::uint64_t evaluations = 1) noexcept { count_ += evaluations; }
    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint64_t count_ = 0;
};

/// A fixed-size set of p decision vectors stored as one concatenated vector
/// X = [x_0 ... x_{p-1}] in R^{np}, together with cached objective values.
class SolutionSet {
public:
    SolutionSet() = default;
    SolutionSet(std::size_t n, std::size_t p);
    SolutionSet(std::size_t n, Vector concatenated);

    std::size_t dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return p_; }

    std::span<double> solution(std::size_t i) { return {x_.data() + i * n_, n_}; }
    std::span<const double> solution(std::size_t i) const { return {x_.data() + i * n_, n_}; }

    Vector& concatenated() noexcept { return x_; }
    const Vector& concatenated() const noexcept { return x_; }

    std::vector<ObjectivePoint>& objectives() noexcept { return y_; }
    const std::vector<ObjectivePoint>& objectives() const noexcept { return y_; }

    friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

private:
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    Vector x_;
    std::vector<ObjectivePoint> y_;
};

} // namespace uhvga
