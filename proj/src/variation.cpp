#include "rough_taylor/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rough {

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<std::vector<double>> sample(const PiecewiseLinearPath& path, std::span<const double> grid) {
    std::vector<std::vector<double>> pts;
    pts.reserve(grid.size());
    for (double g : grid) pts.push_back(path.value_at(g));
    return pts;
}

void require_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("p-variation needs p >= 1, got " + std::to_string(p));
}

void validate_grid(std::span<const double> grid, double s, double t) {
    if (grid.empty() || grid.front() != s || grid.back() != t) {
        throw std::invalid_argument("grid must start at s and end at t");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("grid must be strictly increasing");
    }
}

// Longest-path DP on the complete DAG of grid points with edge weights w(i,j):
// best[j] = max_{i<j} best[i] + w(i,j). Returns the value and the path.
template <class Weight>
std::pair<double, std::vector<std::size_t>> longest_chain(std::size_t n, Weight&& w) {
    std::vector<double> best(n, 0.0);
    std::vector<std::size_t> prev(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
        double bj = -std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < j; ++i) {
            const double v = best[i] + w(i, j);
            if (v > bj) {
                bj = v;
                arg = i;
            }
        }
        best[j] = bj;
        prev[j] = arg;
    }
    std::vector<std::size_t> chain;
    if (n == 1) return {0.0, {0}};
    for (std::size_t j = n - 1;; j = prev[j]) {
        chain.push_back(j);
        if (j == 0) break;
    }
    std::reverse(chain.begin(), chain.end());
    return {best[n - 1], chain};
}

VariationResult finish(double sum_p, double p, std::vector<std::size_t> chain, std::span<const double> grid,
                       bool exact) {
    VariationResult r;
    r.value = std::pow(sum_p, 1.0 / p);
    r.partition_times.reserve(chain.size());
    for (std::size_t i : chain) r.partition_times.push_back(grid[i]);
    r.optimal_partition = std::move(chain);
    r.exact = exact;
    return r;
}

}  // namespace

std::vector<double> default_grid(const PiecewiseLinearPath& path, double s, double t) {
    path.require_interval(s, t);
    std::vector<double> g{s};
    for (double v : path.times()) {
        if (v > s && v < t) g.push_back(v);
    }
    if (t > s) g.push_back(t);
    return g;
}

VariationResult one_variation(const PiecewiseLinearPath& path, double s, double t) {
    const auto grid = default_grid(path, s, t);
    const auto pts = sample(path, grid);
    VariationResult r;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) r.value += euclid(pts[i], pts[i + 1]);
    for (std::size_t i = 0; i < grid.size(); ++i) r.optimal_partition.push_back(i);
    r.partition_times = grid;
    return r;
}

// Exactness of the vertex DP: for fixed neighbours, the summand
// |X(tau) - X(sigma)|^p is a convex function of a partition point's position
// along the segment carrying it, so its maximum over that segment sits at an
// endpoint. Sliding every partition point to a vertex never decreases the sum.
VariationResult p_variation_level1(const PiecewiseLinearPath& path, double p, double s, double t) {
    require_p(p);
    const auto grid = default_grid(path, s, t);
    const auto pts = sample(path, grid);
    auto [sum, chain] = longest_chain(grid.size(), [&](std::size_t i, std::size_t j) {
        return std::pow(euclid(pts[i], pts[j]), p);
    });
    return finish(sum, p, std::move(chain), grid, true);
}

VariationResult brute_force_pvar(const PiecewiseLinearPath& path, double p, double s, double t) {
    require_p(p);
    const auto grid = default_grid(path, s, t);
    if (grid.size() > kBruteForceMaxPoints) {
        throw std::invalid_argument("brute force p-variation refuses " + std::to_string(grid.size()) +
                                    " candidate points (limit " + std::to_string(kBruteForceMaxPoints) + ")");
    }
    const auto pts = sample(path, grid);
    const std::size_t n = grid.size();
    if (n == 1) return finish(0.0, p, {0}, grid, true);
    const std::size_t interior = n - 2;
    double best = -1.0;
    std::vector<std::size_t> best_chain;
    std::vector<std::size_t> chain;
    for (std::size_t mask = 0; mask < (std::size_t{1} << interior); ++mask) {
        chain.assign(1, 0);
        for (std::size_t b = 0; b < interior; ++b) {
            if (mask & (std::size_t{1} << b)) chain.push_back(b + 1);
        }
        chain.push_back(n - 1);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) sum += std::pow(euclid(pts[chain[i]], pts[chain[i + 1]]), p);
        if (sum > best) {
            best = sum;
            best_chain = chain;
        }
    }
    return finish(best, p, std::move(best_chain), grid, true);
}

std::vector<std::vector<double>> pairwise_level_weights(const PiecewiseLinearPath& path, double p,
                                                        std::span<const double> grid, Execution exec) {
    require_p(p);
    const int levels = static_cast<int>(std::floor(p));
    const std::size_t n = grid.size();
    std::vector<std::vector<double>> w(static_cast<std::size_t>(levels), std::vector<double>(n * n, 0.0));
    // Consecutive pieces once; row i is then built by Chen products along the grid.
    std::vector<TruncatedTensor> pieces;
    pieces.reserve(n);
    for (std::size_t j = 0; j + 1 < n; ++j) pieces.push_back(signature(path, grid[j], grid[j + 1], levels));

    auto row = [&](std::size_t i) {
        TruncatedTensor acc = TruncatedTensor::unit(path.dim(), levels);
        for (std::size_t j = i + 1; j < n; ++j) {
            acc = truncated_mul(acc, pieces[j - 1]);
            for (int k = 1; k <= levels; ++k) {
                w[k - 1][i * n + j] = std::pow(level_norm(acc, k), p / k);
            }
        }
    };
    const auto rows = static_cast<std::ptrdiff_t>(n);
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
    }
    return w;
}

VariationResult homogeneous_p_variation(const PiecewiseLinearPath& path, double p, double s, double t,
                                        std::span<const double> grid) {
    require_p(p);
    std::vector<double> own;
    if (grid.empty()) {
        own = default_grid(path, s, t);
        grid = own;
    }
    validate_grid(grid, s, t);
    const int levels = static_cast<int>(std::floor(p));
    bool covers_vertices = true;
    for (double v : path.times()) {
        if (v > s && v < t && !std::binary_search(grid.begin(), grid.end(), v)) covers_vertices = false;
    }
    const auto w = pairwise_level_weights(path, p, grid, Execution::kSerial);
    const std::size_t n = grid.size();
    double best = -1.0;
    std::vector<std::size_t> best_chain;
    for (int k = 1; k <= levels; ++k) {
        auto [sum, chain] = longest_chain(n, [&](std::size_t i, std::size_t j) { return w[k - 1][i * n + j]; });
        if (sum > best) {
            best = sum;
            best_chain = std::move(chain);
        }
    }
    return finish(best, p, std::move(best_chain), grid, levels == 1 && covers_vertices);
}

ControlTable::ControlTable(const PiecewiseLinearPath& path, double p, std::vector<double> grid, Execution exec)
    : grid_(std::move(grid)), p_(p) {
    require_p(p);
    if (grid_.empty()) throw std::invalid_argument("control grid is empty");
    validate_grid(grid_, grid_.front(), grid_.back());
    path.require_interval(grid_.front(), grid_.back());
    const std::size_t n = grid_.size();
    const auto w = pairwise_level_weights(path, p, grid_, exec);
    omega_.assign(n * n, 0.0);
    // A DP from start i yields omega(g_i, g_j) for every j > i at once.
    auto row = [&](std::size_t i) {
        std::vector<double> best(n);
        for (const auto& wk : w) {
            std::fill(best.begin(), best.end(), 0.0);
            for (std::size_t j = i + 1; j < n; ++j) {
                double bj = 0.0;
                for (std::size_t m = i; m < j; ++m) bj = std::max(bj, best[m] + wk[m * n + j]);
                best[j] = bj;
                omega_[i * n + j] = std::max(omega_[i * n + j], bj);
            }
        }
    };
    const auto rows = static_cast<std::ptrdiff_t>(n);
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
    }
}

double ControlTable::at(std::size_t i, std::size_t j) const {
    const std::size_t n = grid_.size();
    if (i >= n || j >= n || i > j) throw std::out_of_range("control index pair out of range");
    return omega_[i * n + j];
}

std::size_t ControlTable::index_of(double time) const {
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), time);
    if (it == grid_.end() || *it != time) {
        throw std::invalid_argument("time " + std::to_string(time) + " is not on the control grid");
    }
    return static_cast<std::size_t>(it - grid_.begin());
}

double ControlTable::operator()(double s, double t) const { return at(index_of(s), index_of(t)); }

ControlTable control_omega(const PiecewiseLinearPath& path, double p, std::vector<double> grid, Execution exec) {
    return ControlTable(path, p, std::move(grid), exec);
}

}  // namespace rough
