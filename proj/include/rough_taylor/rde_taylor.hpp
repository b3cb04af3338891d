#pragma once

// Reference solutions of dY = f(Y) dX along piecewise-linear drivers, the
// Taylor approximant Y_s + sum_k f^{ok}(Y_s) X^k_{s,t}, and the remainder
// bound checks built on top of them.

#include "rough_taylor/execution.hpp"
#include "rough_taylor/path_signature.hpp"
#include "rough_taylor/report.hpp"
#include "rough_taylor/vector_field.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rough {

/// Thrown when the reference integrator cannot reach the requested tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(std::size_t segment, const std::string& what)
        : std::runtime_error(what), segment_(segment) {}
    [[nodiscard]] std::size_t segment() const noexcept { return segment_; }

private:
    std::size_t segment_;
};

struct SolverOptions {
    /// Substep cap per driver segment.
    std::int64_t max_substeps = std::int64_t{1} << 20;
    std::int64_t initial_substeps = 4;
};

/// Queryable reference solution. On each driver segment the equation is the
/// autonomous ODE dY/du = f(Y) dX/du, integrated with classical RK4.
class SolutionSampler {
public:
    SolutionSampler(VectorFieldJet f, PiecewiseLinearPath path, std::vector<Eigen::VectorXd> vertex_states,
                    std::int64_t substeps, double accuracy, std::vector<double> box_lo, std::vector<double> box_hi);

    /// Y_t for t in the path's time domain; exact y0 at the start time.
    [[nodiscard]] Eigen::VectorXd at(double t) const;

    /// Richardson estimate of the absolute error at vertex times.
    [[nodiscard]] double accuracy() const noexcept { return accuracy_; }
    [[nodiscard]] std::int64_t substeps() const noexcept { return substeps_; }
    /// Componentwise range of every integrator state visited.
    [[nodiscard]] const std::vector<double>& box_lo() const noexcept { return box_lo_; }
    [[nodiscard]] const std::vector<double>& box_hi() const noexcept { return box_hi_; }
    [[nodiscard]] const PiecewiseLinearPath& path() const noexcept { return path_; }
    [[nodiscard]] const VectorFieldJet& field() const noexcept { return field_; }

private:
    VectorFieldJet field_;
    PiecewiseLinearPath path_;
    std::vector<Eigen::VectorXd> vertex_states_;
    std::int64_t substeps_;
    double accuracy_;
    std::vector<double> box_lo_;
    std::vector<double> box_hi_;
};

/// Doubles the per-segment substep count until two successive sweeps agree
/// to tol/10 at every vertex (floored at relative round-off, 1e-13 (1 + |Y|)).
/// Throws SolverError naming the worst segment when the cap is reached.
[[nodiscard]] SolutionSampler solve_reference(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                              std::span<const double> y0, double tol,
                                              const SolverOptions& options = {});

/// y_s + sum_{k=1}^{N} f^{ok}(y_s) X^k with the hierarchy supplied (size >= N).
[[nodiscard]] Eigen::VectorXd taylor_approx(std::span<const MultilinearField> hierarchy, std::span<const double> y_s,
                                            const TruncatedTensor& sig, int order);

/// Same, building f^{o1..oN} on the fly. Throws std::invalid_argument when sig.depth() < N.
[[nodiscard]] Eigen::VectorXd taylor_approx(const VectorFieldJet& f, std::span<const double> y_s,
                                            const TruncatedTensor& sig, int order);

/// Remainders smaller than this multiple of the solver accuracy are not
/// distinguishable from zero.
inline constexpr double kSolverFloorFactor = 100.0;

struct RemainderResult {
    double value = 0.0;
    double solver_accuracy = 0.0;
    bool below_solver_floor = false;
};

/// |Y_t - taylor_approx(Y_s, X_{s,t}, N)| from an existing solution.
[[nodiscard]] RemainderResult measure_remainder(const SolutionSampler& sol, std::span<const MultilinearField> hierarchy,
                                                double s, double t, int order);

[[nodiscard]] RemainderResult remainder(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                        std::span<const double> y0, double s, double t, int order, double tol);

/// How sup norms are taken from the observed trajectory range.
struct BoxPolicy {
    /// Each face moves outward by inflation * max(|face value|, width).
    double inflation = 0.1;
    /// Lattice size target; samples per axis = clamp(budget^{1/e}, min, max).
    int sample_budget = 1000;
    int min_samples = 3;
    int max_samples = 65;
};

[[nodiscard]] Box trajectory_box(const SolutionSampler& sol, const BoxPolicy& policy = {});

/// Relative slack used when comparing a measured remainder with its bound.
inline constexpr double kBoundTolerance = 1e-9;

/// Checks |Y_t - Taylor_N| <= |f^{oN}|_inf |Df|_inf |X|_{1-var,[s,t]}^{N+1} / N!
/// with sup norms over the inflated trajectory box.
[[nodiscard]] BoundReport bound_check_1var(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                           std::span<const double> y0, double s, double t, int order,
                                           const BoxPolicy& policy = {}, double tol = 1e-12);

/// Several orders and intervals sharing one solve and one hierarchy; rows are
/// ordered by (interval, order).
[[nodiscard]] std::vector<BoundReport> bound_check_1var_batch(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                                              std::span<const double> y0,
                                                              std::span<const std::pair<double, double>> intervals,
                                                              std::span<const int> orders,
                                                              const BoxPolicy& policy = {}, double tol = 1e-12);

struct ProfileOptions {
    double tol = 1e-12;
    BoxPolicy box_policy{};
    /// Required margin below gamma/p for the log-log slope.
    double slope_margin = 0.05;
    Execution exec = Execution::kParallel;
};

struct ProfileResult {
    double p = 1.0;
    double gamma = 1.0;
    int order = 0;
    /// One row per grid pair s < t. bound is the structural factor S(s,t)
    /// (the inequality's right side with C_p = 1), slack_ratio the local
    /// constant measured / S.
    std::vector<BoundReport> rows;
    /// max measured / S over rows above the solver floor.
    double fitted_constant = 0.0;
    /// Least-squares slope of log measured against log omega.
    double slope = 0.0;
    bool slope_ok = false;
    std::size_t rows_used = 0;
    /// Constants entering S.
    double beta = 0.0;
    double lip_f = 0.0;          ///< |f|_{Lip(gamma ^ (floor(p)+1))}
    double lip_f_circ_max = 0.0; ///< max_m |f^{om}|_{Lip(1)}
    double p_variation = 0.0;    ///< |X|_{p-var,[0,T]}
    double structural_constant = 0.0;  ///< beta^N / (N/p)! * M_{p,gamma} / C_p
};

/// Property form of the uniform factorial decay estimate over every pair of
/// grid points. Throws std::invalid_argument unless gamma > p - 1 and gamma >= 1.
[[nodiscard]] ProfileResult remainder_profile(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                             std::span<const double> y0, double p, double gamma,
                                             std::span<const double> grid, const ProfileOptions& options = {});

}  // namespace rough
