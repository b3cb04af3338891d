#include "rough_taylor/rde_taylor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rough {

namespace {

// RK4 for dY/dtau = f(Y) dx over tau in [0, 1] with n steps; optionally
// widens an observed box.
Eigen::VectorXd rk4_segment(const VectorFieldJet& f, Eigen::VectorXd y, const Eigen::VectorXd& dx, std::int64_t n,
                            std::vector<double>* lo = nullptr, std::vector<double>* hi = nullptr) {
    const double h = 1.0 / static_cast<double>(n);
    auto rhs = [&](const Eigen::VectorXd& state) -> Eigen::VectorXd {
        return f.evaluate({state.data(), static_cast<std::size_t>(state.size())}) * dx;
    };
    for (std::int64_t i = 0; i < n; ++i) {
        const Eigen::VectorXd k1 = rhs(y);
        const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1);
        const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2);
        const Eigen::VectorXd k4 = rhs(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (lo) {
            for (Eigen::Index a = 0; a < y.size(); ++a) {
                (*lo)[a] = std::min((*lo)[a], y[a]);
                (*hi)[a] = std::max((*hi)[a], y[a]);
            }
        }
    }
    return y;
}

Eigen::VectorXd to_vector(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

SolutionSampler::SolutionSampler(VectorFieldJet f, PiecewiseLinearPath path, std::vector<Eigen::VectorXd> vertex_states,
                                 std::int64_t substeps, double accuracy, std::vector<double> box_lo,
                                 std::vector<double> box_hi)
    : field_(std::move(f)),
      path_(std::move(path)),
      vertex_states_(std::move(vertex_states)),
      substeps_(substeps),
      accuracy_(accuracy),
      box_lo_(std::move(box_lo)),
      box_hi_(std::move(box_hi)) {}

Eigen::VectorXd SolutionSampler::at(double t) const {
    const std::size_t i = path_.segment_index(t);
    const auto times = path_.times();
    if (t == times[i]) return vertex_states_[i];
    if (t == times[i + 1]) return vertex_states_[i + 1];
    const double frac = (t - times[i]) / (times[i + 1] - times[i]);
    const auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(frac * static_cast<double>(substeps_))));
    return rk4_segment(field_, vertex_states_[i], to_vector(path_.increment(times[i], t)), n);
}

SolutionSampler solve_reference(const VectorFieldJet& f, const PiecewiseLinearPath& path, std::span<const double> y0,
                                double tol, const SolverOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    if (static_cast<int>(y0.size()) != f.e) throw std::invalid_argument("initial value has wrong dimension");
    if (path.dim() != f.d) throw std::invalid_argument("driver dimension does not match the vector field");

    const std::size_t segs = path.segment_count();
    const auto times = path.times();
    std::vector<Eigen::VectorXd> increments;
    increments.reserve(segs);
    for (std::size_t i = 0; i < segs; ++i) increments.push_back(to_vector(path.increment(times[i], times[i + 1])));

    auto sweep = [&](std::int64_t n, std::vector<double>* lo, std::vector<double>* hi) {
        std::vector<Eigen::VectorXd> states{to_vector(y0)};
        states.reserve(segs + 1);
        for (std::size_t i = 0; i < segs; ++i) states.push_back(rk4_segment(f, states.back(), increments[i], n, lo, hi));
        return states;
    };

    std::int64_t n = std::max<std::int64_t>(1, options.initial_substeps);
    auto prev = sweep(n, nullptr, nullptr);
    while (true) {
        if (2 * n > options.max_substeps) {
            std::size_t worst = 0;
            double worst_diff = -1.0;
            const auto finer = sweep(options.max_substeps, nullptr, nullptr);
            for (std::size_t i = 0; i < segs; ++i) {
                const double diff = (finer[i + 1] - prev[i + 1]).lpNorm<Eigen::Infinity>();
                if (diff > worst_diff) {
                    worst_diff = diff;
                    worst = i;
                }
            }
            throw SolverError(worst, "reference solver did not converge on segment " + std::to_string(worst) +
                                         " within " + std::to_string(options.max_substeps) + " substeps");
        }
        auto next = sweep(2 * n, nullptr, nullptr);
        double diff = 0.0;
        double scale = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i <= segs; ++i) {
            diff = std::max(diff, (next[i] - prev[i]).lpNorm<Eigen::Infinity>());
            scale = std::max(scale, next[i].lpNorm<Eigen::Infinity>());
            finite = finite && next[i].allFinite();
        }
        n *= 2;
        if (!finite && n >= 256) {
            std::size_t bad = 0;
            while (bad < segs && next[bad + 1].allFinite()) ++bad;
            throw SolverError(bad, "reference solution blows up on segment " + std::to_string(bad));
        }
        if (finite && diff < std::max(tol / 10.0, 1e-13 * (1.0 + scale))) {
            std::vector<double> lo(y0.begin(), y0.end()), hi(y0.begin(), y0.end());
            auto states = sweep(n, &lo, &hi);
            const double accuracy = std::max(diff / 15.0, 1e-15 * (1.0 + scale));
            return {f, path, std::move(states), n, accuracy, std::move(lo), std::move(hi)};
        }
        prev = std::move(next);
    }
}

}  // namespace rough
