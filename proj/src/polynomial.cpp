#include "rough_taylor/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace rough {

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p(nvars);
    p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::out_of_range("polynomial variable index out of range");
    Polynomial p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    e[index] = 1;
    p.add_term(e, 1.0);
    return p;
}

int Polynomial::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        deg = std::max(deg, s);
    }
    return deg;
}

void Polynomial::add_term(const Exponent& exponent, double coeff) {
    if (static_cast<int>(exponent.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
    for (int x : exponent) {
        if (x < 0) throw std::invalid_argument("negative exponent");
    }
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::out_of_range("derivative variable out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

double Polynomial::evaluate(std::span<const double> y) const {
    if (static_cast<int>(y.size()) != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (int v = 0; v < nvars_; ++v) {
            for (int k = 0; k < e[v]; ++k) term *= y[v];
        }
        sum += term;
    }
    return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator*=(double c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
    Polynomial out(a.nvars_);
    Exponent e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolynomialMatrix::PolynomialMatrix(int rows, int cols, int nvars, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("polynomial matrix needs positive shape");
    if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("polynomial matrix entry count mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& p = entries_[i];
        if (p.nvars() != nvars) throw std::invalid_argument("polynomial matrix variable count mismatch");
        max_degree_ = std::max(max_degree_, p.degree());
        for (const auto& [e, c] : p.terms()) {
            term_entry_.push_back(i);
            term_coeff_.push_back(c);
            term_exp_.insert(term_exp_.end(), e.begin(), e.end());
        }
    }
}

Eigen::MatrixXd PolynomialMatrix::evaluate(std::span<const double> y) const {
    if (static_cast<int>(y.size()) != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
    const int stride = max_degree_ + 1;
    std::vector<double> powers(static_cast<std::size_t>(nvars_) * stride);
    for (int v = 0; v < nvars_; ++v) {
        double x = 1.0;
        for (int k = 0; k <= max_degree_; ++k) {
            powers[v * stride + k] = x;
            x *= y[v];
        }
    }
    // Row-major accumulation, mapped into the column-major result at the end.
    std::vector<double> acc(entries_.size(), 0.0);
    const std::size_t nterms = term_coeff_.size();
    for (std::size_t t = 0; t < nterms; ++t) {
        double term = term_coeff_[t];
        const int* e = term_exp_.data() + t * nvars_;
        for (int v = 0; v < nvars_; ++v) term *= powers[v * stride + e[v]];
        acc[term_entry_[t]] += term;
    }
    Eigen::MatrixXd m(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m(r, c) = acc[static_cast<std::size_t>(r) * cols_ + c];
    }
    return m;
}

PolynomialMatrix jacobian(const PolynomialMatrix& m) {
    const int cols = m.nvars() * m.cols();
    std::vector<Polynomial> entries;
    entries.reserve(static_cast<std::size_t>(m.rows()) * cols);
    for (int r = 0; r < m.rows(); ++r) {
        for (int b = 0; b < m.nvars(); ++b) {
            for (int c = 0; c < m.cols(); ++c) entries.push_back(m.entry(r, c).derivative(b));
        }
    }
    return {m.rows(), cols, m.nvars(), std::move(entries)};
}

}  // namespace rough
