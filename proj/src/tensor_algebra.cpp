#include "rough_taylor/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rough {

std::size_t ipow(std::size_t d, int k) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r *= d;
    return r;
}

std::size_t word_index(std::span<const int> word, int dim) {
    std::size_t idx = 0;
    for (int letter : word) {
        if (letter < 0 || letter >= dim) throw std::out_of_range("word letter out of range");
        idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(letter);
    }
    return idx;
}

TruncatedTensor::TruncatedTensor(int dim, int depth) : dim_(dim), depth_(depth) {
    if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1");
    if (depth < 0) throw std::invalid_argument("tensor depth must be >= 0");
    offsets_.resize(static_cast<std::size_t>(depth) + 2);
    offsets_[0] = 0;
    for (int k = 0; k <= depth; ++k) offsets_[k + 1] = offsets_[k] + ipow(dim, k);
    coeffs_.assign(offsets_.back(), 0.0);
}

TruncatedTensor TruncatedTensor::unit(int dim, int depth) {
    TruncatedTensor t(dim, depth);
    t.coeffs_[0] = 1.0;
    return t;
}

std::span<const double> TruncatedTensor::level(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("tensor level " + std::to_string(k) + " out of range");
    return {coeffs_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

std::span<double> TruncatedTensor::level(int k) {
    if (k < 0 || k > depth_) throw std::out_of_range("tensor level " + std::to_string(k) + " out of range");
    return {coeffs_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

namespace {

void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b) {
    if (a.dim() != b.dim() || a.depth() != b.depth()) {
        throw std::invalid_argument("tensor shape mismatch: (d=" + std::to_string(a.dim()) + ", N=" +
                                    std::to_string(a.depth()) + ") vs (d=" + std::to_string(b.dim()) +
                                    ", N=" + std::to_string(b.depth()) + ")");
    }
}

}  // namespace

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& other) {
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& other) {
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double scale) {
    for (double& c : coeffs_) c *= scale;
    return *this;
}

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b) { return a += b; }
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b) { return a -= b; }

TruncatedTensor truncated_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    const int depth = a.depth();
    const std::size_t d = static_cast<std::size_t>(a.dim());
    TruncatedTensor out(a.dim(), depth);
    for (int k = 0; k <= depth; ++k) {
        auto dst = out.level(k);
        for (int j = 0; j <= k; ++j) {
            const auto lhs = a.level(j);
            const auto rhs = b.level(k - j);
            const std::size_t stride = ipow(d, k - j);
            for (std::size_t u = 0; u < lhs.size(); ++u) {
                const double x = lhs[u];
                if (x == 0.0) continue;
                double* row = dst.data() + u * stride;
                for (std::size_t w = 0; w < rhs.size(); ++w) row[w] += x * rhs[w];
            }
        }
    }
    return out;
}

TruncatedTensor truncated_inverse(const TruncatedTensor& x) {
    if (x.scalar() != 1.0) {
        throw std::invalid_argument("truncated_inverse requires level-0 entry equal to 1");
    }
    // y = 1 - x has zero scalar part, so y^{N+1} vanishes in the truncation.
    TruncatedTensor y = TruncatedTensor::unit(x.dim(), x.depth()) - x;
    TruncatedTensor term = TruncatedTensor::unit(x.dim(), x.depth());
    TruncatedTensor sum = term;
    for (int k = 1; k <= x.depth(); ++k) {
        term = truncated_mul(term, y);
        sum += term;
    }
    return sum;
}

TruncatedTensor segment_exp(std::span<const double> increment, int depth) {
    const int dim = static_cast<int>(increment.size());
    TruncatedTensor out = TruncatedTensor::unit(dim, depth);
    const std::size_t d = increment.size();
    for (int k = 1; k <= depth; ++k) {
        const auto prev = out.level(k - 1);
        auto cur = out.level(k);
        const double inv_k = 1.0 / k;
        for (std::size_t u = 0; u < prev.size(); ++u) {
            const double x = prev[u] * inv_k;
            for (std::size_t i = 0; i < d; ++i) cur[u * d + i] = x * increment[i];
        }
    }
    return out;
}

double level_norm(const TruncatedTensor& x, int k) {
    double s = 0.0;
    for (double c : x.level(k)) s += c * c;
    return std::sqrt(s);
}

double homogeneous_norm(const TruncatedTensor& x) {
    if (x.depth() < 1) throw std::invalid_argument("homogeneous_norm needs depth >= 1");
    double best = 0.0;
    for (int k = 1; k <= x.depth(); ++k) {
        best = std::max(best, std::pow(level_norm(x, k), 1.0 / k));
    }
    return best;
}

std::vector<double> project(const TruncatedTensor& x, int k) {
    const auto lvl = x.level(k);
    return {lvl.begin(), lvl.end()};
}

void inject(TruncatedTensor& x, int k, std::span<const double> coeffs) {
    auto lvl = x.level(k);
    if (coeffs.size() != lvl.size()) throw std::invalid_argument("inject: level size mismatch");
    std::copy(coeffs.begin(), coeffs.end(), lvl.begin());
}

double max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    double m = 0.0;
    const auto ca = a.coefficients();
    const auto cb = b.coefficients();
    for (std::size_t i = 0; i < ca.size(); ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
    return m;
}

TruncatedTensor dilate(const TruncatedTensor& x, double scale) {
    TruncatedTensor out = x;
    double factor = 1.0;
    for (int k = 1; k <= x.depth(); ++k) {
        factor *= scale;
        for (double& c : out.level(k)) c *= factor;
    }
    return out;
}

}  // namespace rough
