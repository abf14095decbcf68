#pragma once

#include "uhvga/types.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uhvga {

/// A box-constrained bi-objective minimization problem.
///
/// Problems are immutable after construction: `objectives` and `gradients`
/// are pure and may be called concurrently. Evaluation counting happens in
/// the free functions below, against a per-run EvaluationLedger.
class Problem {
public:
    virtual ~Problem() = default;

    const std::string& id() const noexcept { return id_; }
    std::size_t dimension() const noexcept { return bounds_.dimension(); }
    const Box& bounds() const noexcept { return bounds_; }
    const Box& init_bounds() const noexcept { return init_bounds_; }

    virtual bool has_analytic_gradients() const noexcept { return false; }

    /// Raw objective values; no validation, no ledger.
    virtual ObjectivePoint objectives(std::span<const double> x) const = 0;

    /// Raw analytic gradients; throws UnsupportedOperation by default.
    virtual MoGradient gradients(std::span<const double> x) const;

    /// Free-form construction notes echoed into run metadata.
    virtual std::string description() const { return id_; }

protected:
    Problem(std::string id, Box bounds, Box init_bounds);

private:
    std::string id_;
    Box bounds_;
    Box init_bounds_;
};

struct Evaluation {
    ObjectivePoint y;
    MoGradient gradient;
};

/// Evaluates (f0, f1) at x and charges one MO-evaluation.
/// Throws InvalidArgument on a dimension mismatch and NumericError (carrying
/// x) if either objective is not finite.
ObjectivePoint evaluate(const Problem& problem, std::span<const double> x, EvaluationLedger& ledger);

/// Analytic gradients at x. Not charged: gradients are part of the
/// MO-evaluation that produced the paired objective values.
MoGradient gradient(const Problem& problem, std::span<const double> x);

/// Objectives and analytic gradients together for one MO-evaluation.
Evaluation evaluate_with_gradients(const Problem& problem, std::span<const double> x,
                                   EvaluationLedger& ledger);

/// Draws p decision vectors uniformly from the problem's initialization box.
/// Deterministic for a fixed seed. Objective values are left empty.
SolutionSet sample_initial_set(const Problem& problem, std::size_t p, std::uint64_t seed);

// Quadratic benchmarks. All are unconstrained; only the init box is finite.

/// Problem 0: f0 = |x|^2, f1 = |x - c|^2 with c = e_0.
class BiSphere final : public Problem {
public:
    explicit BiSphere(std::size_t n);
    bool has_analytic_gradients() const noexcept override { return true; }
    ObjectivePoint objectives(std::span<const double> x) const override;
    MoGradient gradients(std::span<const double> x) const override;
};

/// Problem 1: f0 = |x|^2 / n, f1 = (Rx - c)^T W (Rx - c) with
/// W_ii = 10^(-6 i / (n-1)) and R a 45 degree rotation.
///
/// R is the ordered product of Givens rotations G(i, i+1, 45deg) applied for
/// i = 0..n-2 in increasing order, i.e. R = G(n-2) ... G(1) G(0).
class SphereRotatedEllipsoid final : public Problem {
public:
    explicit SphereRotatedEllipsoid(std::size_t n);
    bool has_analytic_gradients() const noexcept override { return true; }
    ObjectivePoint objectives(std::span<const double> x) const override;
    MoGradient gradients(std::span<const double> x) const override;
    std::string description() const override;

    /// Row-major n x n rotation matrix.
    const Vector& rotation() const noexcept { return rotation_; }
    const Vector& weights() const noexcept { return weights_; }

private:
    Vector rotation_;
    Vector weights_;
};

/// Problem 2: the 1/4 powers of Problem 0's objectives (concave front).
class ConcaveBiSphere final : public Problem {
public:
    explicit ConcaveBiSphere(std::size_t n);
    bool has_analytic_gradients() const noexcept override { return true; }
    ObjectivePoint objectives(std::span<const double> x) const override;
    MoGradient gradients(std::span<const double> x) const override;
};

/// Problem 3: f0 = |x|^2, f1 = Rosenbrock(x) / (n - 1).
class SphereRosenbrock final : public Problem {
public:
    explicit SphereRosenbrock(std::size_t n);
    bool has_analytic_gradients() const noexcept override { return true; }
    ObjectivePoint objectives(std::span<const double> x) const override;
    MoGradient gradients(std::span<const double> x) const override;
};

/// Identifiers accepted by make_problem, in canonical order.
std::vector<std::string> problem_ids();

/// Builds a problem by identifier (`bisphere`, `sphere-rot-ellipsoid`,
/// `concave-bisphere`, `sphere-rosenbrock`, `wfg1` ... `wfg9`).
/// For WFG problems n = k + l with k = 4 position variables.
std::unique_ptr<Problem> make_problem(std::string_view id, std::size_t n);

/// Default decision-space dimension for an identifier (10 for the quadratic
/// problems, 24 for WFG).
std::size_t default_dimension(std::string_view id);

} // namespace uhvga
