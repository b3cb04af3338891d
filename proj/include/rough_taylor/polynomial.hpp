#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace rough {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial with real coefficients. Arithmetic and
/// differentiation are exact; terms whose coefficient cancels to 0 are dropped.
class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    [[nodiscard]] static Polynomial constant(int nvars, double c);
    [[nodiscard]] static Polynomial variable(int nvars, int index);

    [[nodiscard]] int nvars() const noexcept { return nvars_; }
    [[nodiscard]] const std::map<Exponent, double>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] int degree() const;

    void add_term(const Exponent& exponent, double coeff);

    [[nodiscard]] Polynomial derivative(int var) const;
    [[nodiscard]] double evaluate(std::span<const double> y) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator*=(double c);

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int nvars_;
    std::map<Exponent, double> terms_;
};

/// rows x cols matrix of polynomials in the same variables, with a flattened
/// term list for fast evaluation. Immutable after construction.
class PolynomialMatrix {
public:
    PolynomialMatrix() = default;
    PolynomialMatrix(int rows, int cols, int nvars, std::vector<Polynomial> entries);

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] int nvars() const noexcept { return nvars_; }
    [[nodiscard]] const Polynomial& entry(int r, int c) const { return entries_.at(static_cast<std::size_t>(r) * cols_ + c); }
    [[nodiscard]] const std::vector<Polynomial>& entries() const noexcept { return entries_; }
    [[nodiscard]] int degree() const noexcept { return max_degree_; }

    [[nodiscard]] Eigen::MatrixXd evaluate(std::span<const double> y) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    int max_degree_ = 0;
    std::vector<Polynomial> entries_;
    // term t: entry index, coefficient, exponents at [t * nvars, (t+1) * nvars)
    std::vector<std::size_t> term_entry_;
    std::vector<double> term_coeff_;
    std::vector<int> term_exp_;
};

/// Jacobian of a polynomial matrix: rows x (nvars * cols), where column
/// b * cols + c holds d/dy_b of entry (r, c).
[[nodiscard]] PolynomialMatrix jacobian(const PolynomialMatrix& m);

}  // namespace rough
