#include "rough_taylor/path_signature.hpp"

#include "rough_taylor/inequalities.hpp"
#include "rough_taylor/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rough {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times, std::vector<std::vector<double>> points)
    : times_(std::move(times)), points_(std::move(points)) {
    if (times_.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    if (points_.size() != times_.size()) {
        throw std::invalid_argument("path has " + std::to_string(times_.size()) + " times but " +
                                    std::to_string(points_.size()) + " points");
    }
    dim_ = static_cast<int>(points_.front().size());
    if (dim_ < 1) throw std::invalid_argument("path points must have dimension >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (static_cast<int>(points_[i].size()) != dim_) {
            throw std::invalid_argument("path point " + std::to_string(i) + " has wrong dimension");
        }
        for (double x : points_[i]) {
            if (!std::isfinite(x)) throw std::invalid_argument("path point " + std::to_string(i) + " is not finite");
        }
    }
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        if (!(times_[i] < times_[i + 1])) throw std::invalid_argument("path times must be strictly increasing");
    }
}

std::span<const double> PiecewiseLinearPath::vertex(std::size_t i) const { return points_.at(i); }

void PiecewiseLinearPath::require_interval(double s, double t) const {
    if (s > t) throw std::invalid_argument("interval start exceeds end");
    if (s < times_.front() || t > times_.back()) throw std::invalid_argument("interval outside the path's time domain");
}

std::size_t PiecewiseLinearPath::segment_index(double t) const {
    if (t < times_.front() || t > times_.back()) throw std::invalid_argument("time outside the path's domain");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto i = static_cast<std::size_t>(it - times_.begin());
    return std::min(i == 0 ? 0 : i - 1, segment_count() - 1);
}

std::vector<double> PiecewiseLinearPath::value_at(double t) const {
    const std::size_t i = segment_index(t);
    const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
    std::vector<double> x(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a) x[a] = points_[i][a] + w * (points_[i + 1][a] - points_[i][a]);
    // Exact vertex values where the weight is 0 or 1.
    if (w == 1.0) x = points_[i + 1];
    return x;
}

std::vector<double> PiecewiseLinearPath::increment(double a, double b) const {
    auto xb = value_at(b);
    const auto xa = value_at(a);
    for (std::size_t i = 0; i < xb.size(); ++i) xb[i] -= xa[i];
    return xb;
}

PiecewiseLinearPath PiecewiseLinearPath::dilated(double lambda) const {
    auto pts = points_;
    for (auto& p : pts) {
        for (int a = 0; a < dim_; ++a) p[a] = points_[0][a] + lambda * (p[a] - points_[0][a]);
    }
    return {times_, std::move(pts)};
}

PiecewiseLinearPath PiecewiseLinearPath::reparametrized(const std::function<double(double)>& phi) const {
    std::vector<double> ts(times_.size());
    std::transform(times_.begin(), times_.end(), ts.begin(), phi);
    return {std::move(ts), points_};
}

PiecewiseLinearPath PiecewiseLinearPath::reversed() const {
    std::vector<std::vector<double>> pts(points_.rbegin(), points_.rend());
    return {times_, std::move(pts)};
}

TruncatedTensor signature(const PiecewiseLinearPath& path, double s, double t, int depth) {
    path.require_interval(s, t);
    TruncatedTensor sig = TruncatedTensor::unit(path.dim(), depth);
    if (s == t) return sig;
    const auto times = path.times();
    std::size_t i = path.segment_index(s);
    double a = s;
    while (a < t) {
        const double b = std::min(t, times[i + 1]);
        if (b > a) sig = truncated_mul(sig, segment_exp(path.increment(a, b), depth));
        a = b;
        ++i;
        if (i >= path.segment_count()) break;
    }
    return sig;
}

TruncatedTensor chen_concat(const TruncatedTensor& left, const TruncatedTensor& right) {
    if (left.scalar() != 1.0 || right.scalar() != 1.0) {
        throw std::invalid_argument("chen_concat expects group-like arguments");
    }
    return truncated_mul(left, right);
}

double level2_symmetry_defect(const TruncatedTensor& sig) {
    if (sig.depth() < 2) throw std::invalid_argument("level-2 symmetry needs depth >= 2");
    const auto x1 = sig.level(1);
    const auto x2 = sig.level(2);
    const std::size_t d = static_cast<std::size_t>(sig.dim());
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            worst = std::max(worst, std::abs(x2[i * d + j] + x2[j * d + i] - x1[i] * x1[j]));
        }
    }
    return worst;
}

BoundReport level2_symmetry_check(const TruncatedTensor& sig) {
    BoundReport r;
    r.order = 2;
    r.measured = level2_symmetry_defect(sig);
    r.bound = kSymmetryTolerance;
    finalize(r, 0.0);
    return r;
}

BoundReport level2_symmetry_check(const PiecewiseLinearPath& path, double s, double t) {
    BoundReport r = level2_symmetry_check(signature(path, s, t, 2));
    r.interval_s = s;
    r.interval_t = t;
    return r;
}

DecayTable decay_scan(const PiecewiseLinearPath& path, double s, double t, int max_level, double p) {
    if (max_level < 1) throw std::invalid_argument("decay_scan needs max_level >= 1");
    if (p < 1.0) throw std::invalid_argument("decay_scan needs p >= 1");
    DecayTable table;
    table.s = s;
    table.t = t;
    table.p = p;
    const TruncatedTensor sig = signature(path, s, t, max_level);
    table.one_variation = one_variation(path, s, t).value;
    table.p_variation = homogeneous_p_variation(path, p, s, t).value;
    table.beta = beta_constant(p);
    for (int n = 1; n <= max_level; ++n) {
        DecayRow row;
        row.level = n;
        row.measured = level_norm(sig, n);
        row.one_variation_ref = std::pow(table.one_variation, n) / gamma_factorial(n);
        row.extension_ref =
            std::pow(table.beta, n - 1) * std::pow(table.p_variation, n) / gamma_factorial(n / p);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace rough
