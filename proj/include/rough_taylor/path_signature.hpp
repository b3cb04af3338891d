#pragma once

#include "rough_taylor/report.hpp"
#include "rough_taylor/tensor_algebra.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rough {

/// Continuous piecewise-linear path t -> X_t in R^d through the given vertices.
class PiecewiseLinearPath {
public:
    /// Throws std::invalid_argument unless times are strictly increasing,
    /// there are at least two vertices, and every point has the same d >= 1.
    PiecewiseLinearPath(std::vector<double> times, std::vector<std::vector<double>> points);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return times_.size(); }
    [[nodiscard]] std::size_t segment_count() const noexcept { return times_.size() - 1; }
    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double start_time() const noexcept { return times_.front(); }
    [[nodiscard]] double end_time() const noexcept { return times_.back(); }
    [[nodiscard]] std::span<const double> vertex(std::size_t i) const;

    /// Linear interpolation in time. Throws for t outside [t_0, t_n].
    [[nodiscard]] std::vector<double> value_at(double t) const;

    /// Index i of the segment [t_i, t_{i+1}] containing t (the last one for t = t_n).
    [[nodiscard]] std::size_t segment_index(double t) const;

    /// X_b - X_a.
    [[nodiscard]] std::vector<double> increment(double a, double b) const;

    /// Same times, points scaled about the starting point by lambda.
    [[nodiscard]] PiecewiseLinearPath dilated(double lambda) const;

    /// Same points, times mapped through a strictly increasing function.
    [[nodiscard]] PiecewiseLinearPath reparametrized(const std::function<double(double)>& phi) const;

    /// Vertices in reverse order on the same time grid.
    [[nodiscard]] PiecewiseLinearPath reversed() const;

    [[nodiscard]] const std::vector<std::vector<double>>& points() const noexcept { return points_; }

    /// Throws std::invalid_argument unless t_0 <= s <= t <= t_n.
    void require_interval(double s, double t) const;

private:
    std::vector<double> times_;
    std::vector<std::vector<double>> points_;
    int dim_ = 0;
};

/// X^k_{s,t} for k = 0..depth, segment-exact: Chen product of segment_exp over
/// the pieces of [s, t] cut at interior vertices.
[[nodiscard]] TruncatedTensor signature(const PiecewiseLinearPath& path, double s, double t, int depth);

/// truncated_mul restricted to group-like arguments (level 0 equal to 1).
[[nodiscard]] TruncatedTensor chen_concat(const TruncatedTensor& left, const TruncatedTensor& right);

/// max over (i, j) of |X^{2,(ij)} + X^{2,(ji)} - X^{1,(i)} X^{1,(j)}|.
[[nodiscard]] double level2_symmetry_defect(const TruncatedTensor& sig);

inline constexpr double kSymmetryTolerance = 1e-12;

/// Level-2 geometricity of the canonical lift on [s, t]; measured is the
/// defect, bound is kSymmetryTolerance.
[[nodiscard]] BoundReport level2_symmetry_check(const PiecewiseLinearPath& path, double s, double t);

/// Same check on an arbitrary depth >= 2 element.
[[nodiscard]] BoundReport level2_symmetry_check(const TruncatedTensor& sig);

struct DecayRow {
    int level = 0;
    double measured = 0.0;        ///< |X^n_{s,t}|
    double one_variation_ref = 0.0;  ///< |X|_{1-var}^n / n!
    double extension_ref = 0.0;   ///< beta^{n-1} |X|_{p-var}^n / (n/p)!
};

struct DecayTable {
    double s = 0.0;
    double t = 0.0;
    double p = 1.0;
    double one_variation = 0.0;
    double p_variation = 0.0;
    double beta = 0.0;
    std::vector<DecayRow> rows;
};

/// Norms of every signature level up to max_level next to the two factorial
/// reference columns. No inequality is asserted here.
[[nodiscard]] DecayTable decay_scan(const PiecewiseLinearPath& path, double s, double t, int max_level, double p);

}  // namespace rough
