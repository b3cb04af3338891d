#pragma once

// Independent reference computations used only by tests. None of these call
// the library routine they are checking.

#include "rough_taylor/path_signature.hpp"
#include "rough_taylor/polynomial.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// Iterated integrals up to depth by left-point Riemann sums on a uniform
/// time grid of `resolution` steps: S^k += S^{k-1} (x) dx. Error O(1/resolution).
inline std::vector<std::vector<double>> riemann_signature(const rough::PiecewiseLinearPath& path, double s, double t,
                                                          int depth, int resolution) {
    const auto d = static_cast<std::size_t>(path.dim());
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(depth) + 1);
    std::size_t size = 1;
    for (int k = 0; k <= depth; ++k, size *= d) levels[k].assign(size, 0.0);
    levels[0][0] = 1.0;
    auto prev = path.value_at(s);
    for (int step = 1; step <= resolution; ++step) {
        const double tau = step == resolution ? t : s + (t - s) * step / resolution;
        const auto cur = path.value_at(tau);
        std::vector<double> dx(d);
        for (std::size_t i = 0; i < d; ++i) dx[i] = cur[i] - prev[i];
        for (int k = depth; k >= 1; --k) {
            const auto& lower = levels[k - 1];
            auto& upper = levels[k];
            for (std::size_t u = 0; u < lower.size(); ++u) {
                for (std::size_t i = 0; i < d; ++i) upper[u * d + i] += lower[u] * dx[i];
            }
        }
        prev = cur;
    }
    return levels;
}

/// sup over subsets of the candidate points of (sum |increment|^p)^{1/p}, by bitmask enumeration.
inline double enumerate_pvar(const std::vector<std::vector<double>>& points, double p) {
    const std::size_t n = points.size();
    const std::size_t interior = n - 2;
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << interior); ++mask) {
        std::vector<std::size_t> chosen{0};
        for (std::size_t b = 0; b < interior; ++b) {
            if (mask & (std::size_t{1} << b)) chosen.push_back(b + 1);
        }
        chosen.push_back(n - 1);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < chosen.size(); ++i) {
            double sq = 0.0;
            for (std::size_t k = 0; k < points[0].size(); ++k) {
                const double dx = points[chosen[i + 1]][k] - points[chosen[i]][k];
                sq += dx * dx;
            }
            sum += std::pow(std::sqrt(sq), p);
        }
        best = std::max(best, sum);
    }
    return std::pow(best, 1.0 / p);
}

/// Y_T for dY = sum_i A_i Y dX^i along a piecewise-linear driver: the product
/// of matrix exponentials exp(sum_i A_i dx_i) over segments.
inline Eigen::VectorXd linear_flow(const std::vector<Eigen::MatrixXd>& a, const rough::PiecewiseLinearPath& path,
                                   const Eigen::VectorXd& y0) {
    Eigen::VectorXd y = y0;
    for (std::size_t seg = 0; seg + 1 < path.vertex_count(); ++seg) {
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(y0.size(), y0.size());
        for (std::size_t i = 0; i < a.size(); ++i) gen += a[i] * (path.vertex(seg + 1)[i] - path.vertex(seg)[i]);
        y = gen.exp() * y;
    }
    return y;
}

/// The polynomial entries of the linear field y -> (A_1 y, ..., A_d y), e x d row-major.
inline std::vector<rough::Polynomial> linear_field_entries(const std::vector<Eigen::MatrixXd>& a) {
    const int e = static_cast<int>(a.front().rows());
    const int d = static_cast<int>(a.size());
    std::vector<rough::Polynomial> entries;
    for (int r = 0; r < e; ++r) {
        for (int i = 0; i < d; ++i) {
            rough::Polynomial poly(e);
            for (int c = 0; c < e; ++c) {
                rough::Exponent ex(static_cast<std::size_t>(e), 0);
                ex[c] = 1;
                poly.add_term(ex, a[i](r, c));
            }
            entries.push_back(std::move(poly));
        }
    }
    return entries;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
