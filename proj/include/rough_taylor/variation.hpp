#pragma once

// 1-variation, p-variation and the homogeneous rough-path p-variation of
// piecewise-linear paths, plus the control omega(s,t) = |X|_{p-var,[s,t]}^p
// tabulated on a grid.

#include "rough_taylor/execution.hpp"
#include "rough_taylor/path_signature.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rough {

struct VariationResult {
    double value = 0.0;
    /// Indices into the candidate grid of the maximizing partition.
    std::vector<std::size_t> optimal_partition;
    /// The same partition as times.
    std::vector<double> partition_times;
    /// False when the value is only a grid-restricted lower approximation.
    bool exact = true;
};

/// s, every vertex strictly inside (s, t), t.
[[nodiscard]] std::vector<double> default_grid(const PiecewiseLinearPath& path, double s, double t);

/// Total length of the path over [s, t].
[[nodiscard]] VariationResult one_variation(const PiecewiseLinearPath& path, double s, double t);

/// sup over partitions of (sum |X_{t_{i+1}} - X_{t_i}|^p)^{1/p}, by O(n^2)
/// dynamic programming over the vertices. Throws for p < 1.
[[nodiscard]] VariationResult p_variation_level1(const PiecewiseLinearPath& path, double p, double s, double t);

inline constexpr std::size_t kBruteForceMaxPoints = 20;

/// Exhaustive maximum over every subset of the candidate points. Test oracle;
/// throws std::invalid_argument when more than kBruteForceMaxPoints candidates.
[[nodiscard]] VariationResult brute_force_pvar(const PiecewiseLinearPath& path, double p, double s, double t);

/// max_{1<=k<=floor(p)} sup_P (sum |pi_k(X_{t_i}^{-1} X_{t_{i+1}})|^{p/k})^{1/p},
/// with partitions drawn from grid (empty grid = default_grid). Exact when
/// floor(p) = 1 and the grid holds every vertex, otherwise a lower
/// approximation flagged exact = false.
[[nodiscard]] VariationResult homogeneous_p_variation(const PiecewiseLinearPath& path, double p, double s, double t,
                                                      std::span<const double> grid = {});

/// omega(g_i, g_j) for every pair of grid points, computed once.
class ControlTable {
public:
    ControlTable(const PiecewiseLinearPath& path, double p, std::vector<double> grid,
                 Execution exec = Execution::kParallel);

    [[nodiscard]] const std::vector<double>& grid() const noexcept { return grid_; }
    [[nodiscard]] double p() const noexcept { return p_; }

    /// omega between grid indices i <= j.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const;

    /// omega(s, t) for grid times s <= t; throws std::invalid_argument off-grid.
    [[nodiscard]] double operator()(double s, double t) const;

    /// Index of a grid time; throws std::invalid_argument when absent.
    [[nodiscard]] std::size_t index_of(double time) const;

private:
    std::vector<double> grid_;
    double p_;
    std::vector<double> omega_;  // row-major G x G, upper triangle used
};

/// The control omega(s,t) = homogeneous_p_variation(...)^p on grid pairs.
[[nodiscard]] ControlTable control_omega(const PiecewiseLinearPath& path, double p, std::vector<double> grid,
                                         Execution exec = Execution::kParallel);

/// Pairwise weights |pi_k(X_{g_i}^{-1} X_{g_j})|^{p/k} for i < j and
/// k = 1..floor(p); result[k-1] is row-major G x G. Exposed for the kernel
/// benchmark and the serial/parallel equivalence tests.
[[nodiscard]] std::vector<std::vector<double>> pairwise_level_weights(const PiecewiseLinearPath& path, double p,
                                                                      std::span<const double> grid, Execution exec);

}  // namespace rough
