#include "rough_taylor/vector_field.hpp"

#include "rough_taylor/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rough {

VectorFieldJet::VectorFieldJet(int e_, int d_, std::vector<Polynomial> entries, int max_order_)
    : e(e_), d(d_), field(e_, d_, e_, std::move(entries)), max_order(max_order_) {}

VectorFieldJet::VectorFieldJet(PolynomialMatrix m, int max_order_)
    : e(m.rows()), d(m.cols()), field(std::move(m)), max_order(max_order_) {
    if (field.nvars() != e) throw std::invalid_argument("vector field must be a polynomial in e variables");
}

namespace {

MultilinearField next_order(const VectorFieldJet& f, const MultilinearField& prev, SlotOrder order) {
    const int e = f.e;
    const std::size_t d = static_cast<std::size_t>(f.d);
    const std::size_t words = prev.coeffs.cols();
    // Partial derivatives of every entry of the previous order, reused across letters.
    std::vector<Polynomial> partials;
    partials.reserve(static_cast<std::size_t>(e) * words * e);
    for (int a = 0; a < e; ++a) {
        for (std::size_t w = 0; w < words; ++w) {
            for (int b = 0; b < e; ++b) partials.push_back(prev.coeffs.entry(a, static_cast<int>(w)).derivative(b));
        }
    }
    const std::size_t cols = words * d;
    std::vector<Polynomial> entries(static_cast<std::size_t>(e) * cols, Polynomial(e));
    for (int a = 0; a < e; ++a) {
        for (std::size_t w = 0; w < words; ++w) {
            for (std::size_t i = 0; i < d; ++i) {
                Polynomial sum(e);
                for (int b = 0; b < e; ++b) {
                    const auto& dp = partials[(static_cast<std::size_t>(a) * words + w) * e + b];
                    if (dp.is_zero()) continue;
                    sum += dp * f.field.entry(b, static_cast<int>(i));
                }
                const std::size_t col = order == SlotOrder::kNewSlotFirst ? i * words + w : w * d + i;
                entries[static_cast<std::size_t>(a) * cols + col] = std::move(sum);
            }
        }
    }
    return {prev.order + 1, f.d, PolynomialMatrix(e, static_cast<int>(cols), e, std::move(entries))};
}

}  // namespace

std::vector<MultilinearField> f_circ_hierarchy(const VectorFieldJet& f, int m, SlotOrder order) {
    if (m < 1) throw std::invalid_argument("f_circ needs order >= 1");
    if (m - 1 > f.max_order) {
        throw std::invalid_argument("f_circ order " + std::to_string(m) + " exceeds the jet's max_order");
    }
    std::vector<MultilinearField> out;
    out.reserve(static_cast<std::size_t>(m));
    out.push_back({1, f.d, f.field});
    for (int k = 1; k < m; ++k) out.push_back(next_order(f, out.back(), order));
    return out;
}

MultilinearField f_circ(const VectorFieldJet& f, int m, SlotOrder order) {
    return std::move(f_circ_hierarchy(f, m, order).back());
}

Eigen::VectorXd apply_multilinear(const MultilinearField& F, std::span<const double> y, std::span<const double> v) {
    if (static_cast<int>(v.size()) != F.coeffs.cols()) {
        throw std::invalid_argument("apply_multilinear: expected " + std::to_string(F.coeffs.cols()) +
                                    " tensor coefficients, got " + std::to_string(v.size()));
    }
    const Eigen::Map<const Eigen::VectorXd> vec(v.data(), static_cast<Eigen::Index>(v.size()));
    return F.evaluate(y) * vec;
}

PolynomialMatrix derivative_tensor(const VectorFieldJet& f, int j) {
    if (j < 0 || j > f.max_order) throw std::invalid_argument("derivative order outside the jet's range");
    PolynomialMatrix m = f.field;
    for (int k = 0; k < j; ++k) m = jacobian(m);
    return m;
}

void Box::validate() const {
    if (lower.empty() || lower.size() != upper.size()) throw std::invalid_argument("box bounds have mismatched size");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) throw std::invalid_argument("box needs lower < upper on every axis");
    }
    if (samples_per_axis < 2) throw std::invalid_argument("box needs at least two samples per axis");
}

std::size_t Box::point_count() const { return ipow(static_cast<std::size_t>(samples_per_axis), dim()); }

std::vector<double> Box::point(std::size_t index) const {
    std::vector<double> y(lower.size());
    const auto n = static_cast<std::size_t>(samples_per_axis);
    for (std::size_t a = 0; a < y.size(); ++a) {
        const std::size_t k = index % n;
        index /= n;
        y[a] = k + 1 == n ? upper[a] : lower[a] + (upper[a] - lower[a]) * static_cast<double>(k) / (n - 1);
    }
    return y;
}

double operator_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    // Largest eigenvalue of the small side's Gram matrix.
    const Eigen::MatrixXd g = m.rows() <= m.cols() ? Eigen::MatrixXd(m * m.transpose())
                                                   : Eigen::MatrixXd(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

namespace {

template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
}

}  // namespace

SupNormEstimate sup_norm_estimate(const PolynomialMatrix& F, const Box& box, Execution exec) {
    box.validate();
    if (box.dim() != F.nvars()) throw std::invalid_argument("box dimension does not match the field");
    const std::size_t n = box.point_count();
    std::vector<double> op(n), fro(n);
    for_each_index(n, exec, [&](std::size_t i) {
        const auto y = box.point(i);
        const Eigen::MatrixXd m = F.evaluate(y);
        op[i] = operator_norm(m);
        fro[i] = m.norm();
    });
    return {*std::max_element(op.begin(), op.end()), *std::max_element(fro.begin(), fro.end())};
}

SupNormEstimate sup_norm_estimate(const MultilinearField& F, const Box& box, Execution exec) {
    return sup_norm_estimate(F.coeffs, box, exec);
}

double holder_quotient_estimate(const PolynomialMatrix& G, double theta, const Box& box, Execution exec) {
    box.validate();
    if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("Hoelder exponent must lie in (0, 1]");
    const std::size_t n = box.point_count();
    std::vector<std::vector<double>> pts(n);
    std::vector<Eigen::MatrixXd> vals(n);
    for_each_index(n, exec, [&](std::size_t i) {
        pts[i] = box.point(i);
        vals[i] = G.evaluate(pts[i]);
    });
    std::vector<double> row_max(n, 0.0);
    for_each_index(n, exec, [&](std::size_t i) {
        double best = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist2 = 0.0;
            for (std::size_t a = 0; a < pts[i].size(); ++a) dist2 += (pts[i][a] - pts[j][a]) * (pts[i][a] - pts[j][a]);
            if (dist2 == 0.0) continue;
            best = std::max(best, operator_norm(vals[i] - vals[j]) / std::pow(std::sqrt(dist2), theta));
        }
        row_max[i] = best;
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

LipEstimate lip_norm_estimate(const PolynomialMatrix& G, double gamma, const Box& box, Execution exec) {
    if (!(gamma > 0.0)) throw std::invalid_argument("Lip(gamma) needs gamma > 0");
    const int top = static_cast<int>(std::floor(gamma));
    const double theta = gamma - top;
    LipEstimate est;
    PolynomialMatrix m = G;
    for (int j = 0; j <= top; ++j) {
        if (j > 0) m = jacobian(m);
        est.derivative_sups.push_back(sup_norm_estimate(m, box, exec).sampled_max);
    }
    // For integer gamma the top derivative bound is already the Lipschitz
    // condition on D^{gamma-1}; no separate Hoelder term.
    if (theta > 0.0) est.holder = holder_quotient_estimate(m, theta, box, exec);
    est.value = std::max(est.holder, *std::max_element(est.derivative_sups.begin(), est.derivative_sups.end()));
    return est;
}

LipEstimate lip_norm_estimate(const VectorFieldJet& f, double gamma, const Box& box, Execution exec) {
    if (std::floor(gamma) > f.max_order) throw std::invalid_argument("gamma exceeds the jet's max_order");
    return lip_norm_estimate(f.field, gamma, box, exec);
}

}  // namespace rough
