#pragma once

// The controlled tuple (Y, f^{o1}(Y), ..., f^{oN}(Y)) sampled on a grid and
// the compensated Riemann sums used to propagate its remainder estimates
// down the hierarchy by successive point removal.
//
// Y^(m) at a time is stored as an e x d^m matrix: a linear map from
// (R^d)^{xm} to R^e, column index = word index. Contracting Y^(m+l) with a
// level-l tensor X^l always consumes the first l slots, since the new slot of
// f^{o(k+1)} = D(f^{ok}) f is the first one.

#include "rough_taylor/rde_taylor.hpp"
#include "rough_taylor/variation.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace rough {

struct ControlledTuple {
    std::vector<double> grid;
    int order = 0;  ///< floor(gamma)
    int e = 0;
    int d = 0;
    /// values[i][m] = Y^(m) at grid[i], m = 0..order.
    std::vector<std::vector<Eigen::MatrixXd>> values;
    double solver_accuracy = 0.0;

    [[nodiscard]] std::size_t index_of(double time) const;
    [[nodiscard]] const Eigen::MatrixXd& at(double time, int m) const;
};

[[nodiscard]] ControlledTuple controlled_tuple(const VectorFieldJet& f, const PiecewiseLinearPath& path,
                                               std::span<const double> y0, double gamma, std::vector<double> grid,
                                               double tol);

/// Y (e x d^n) contracted on its first l slots with a level-l tensor.
[[nodiscard]] Eigen::MatrixXd contract_front(const Eigen::MatrixXd& y, std::span<const double> x);

/// Where the left-hand Y^(m) of the remainder is evaluated. kEndpoint uses
/// Y^(m)_t, which is what the Riemann-sum limit converges to; kLiteral uses
/// Y^(m)_s as the displayed estimate is typeset.
enum class ExpansionPoint { kEndpoint, kLiteral };

/// |Y^(m)_t - sum_{l=0}^{N-m} Y^(m+l)_s X^l_{s,t}| (operator norm).
[[nodiscard]] double tuple_remainder(const ControlledTuple& tuple, const PiecewiseLinearPath& path, int m, double s,
                                     double t, ExpansionPoint point = ExpansionPoint::kEndpoint);

struct CompensatedSum {
    /// sum_i sum_{l=1}^{N-k} (Y^(k+l)_{t_i} - sum_{l1} Y^(k+l+l1)_s X^{l1}_{s,t_i}) X^l_{t_i,t_{i+1}}
    Eigen::MatrixXd riemann_sum;
    /// The subtracted part summed along the partition.
    Eigen::MatrixXd algebraic_along_partition;
    /// Its telescoped value sum_{r=1}^{N-k} Y^(k+r)_s X^r_{s,t}.
    Eigen::MatrixXd algebraic_closed_form;
    /// Y^(k)_t - sum_{l=0}^{N-k} Y^(k+l)_s X^l_{s,t}, the mesh -> 0 limit.
    Eigen::MatrixXd limit;
};

/// partition must be a strictly increasing subset of the tuple grid with at
/// least two points; 0 <= k <= N - floor(p).
[[nodiscard]] CompensatedSum compensated_riemann_sum(const ControlledTuple& tuple, const PiecewiseLinearPath& path,
                                                     int k, std::span<const double> partition, double p = 1.0);

/// Change of the compensated sum when interior point partition[j] is removed.
[[nodiscard]] Eigen::MatrixXd point_removal_delta(const ControlledTuple& tuple, const PiecewiseLinearPath& path, int k,
                                                  std::span<const double> partition, std::size_t j);

struct RemovalChoice {
    std::size_t j = 0;
    double omega_j = 0.0;  ///< omega(t_{j-1}, t_{j+1})
    double bound = 0.0;    ///< min(2 / (|P| - 1), 1) omega(s, t), |P| = number of subintervals
    bool holds = false;
};

/// Interior index minimizing omega(t_{j-1}, t_{j+1}). Needs >= 3 points.
[[nodiscard]] RemovalChoice choose_removal_point(const ControlTable& omega, std::span<const double> partition);

}  // namespace rough
