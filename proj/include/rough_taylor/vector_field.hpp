#pragma once

// Polynomial vector fields f : R^e -> L(R^d, R^e), the hierarchy
// f^{o1} = f, f^{o(k+1)} = D(f^{ok}) f, and sampled norm estimates.
//
// Every object here is a polynomial matrix with e rows whose columns index a
// tensor basis: words in {0..d-1}^k for f^{ok}, derivative directions times
// driver letters for D^j f. The operator norm is the spectral norm of the
// e x cols matrix, i.e. the norm of the linear map from the Euclidean tensor
// space into R^e.

#include "rough_taylor/execution.hpp"
#include "rough_taylor/polynomial.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace rough {

struct VectorFieldJet {
    int e = 0;
    int d = 0;
    /// e x d; column i is the field driven by the i-th driver coordinate.
    PolynomialMatrix field;
    /// Highest derivative order requested from this jet.
    int max_order = 24;

    /// Throws std::invalid_argument on shape mismatch.
    VectorFieldJet(int e, int d, std::vector<Polynomial> entries_row_major, int max_order = 24);
    explicit VectorFieldJet(PolynomialMatrix m, int max_order = 24);

    [[nodiscard]] Eigen::MatrixXd evaluate(std::span<const double> y) const { return field.evaluate(y); }
};

/// F(y) : (R^d)^{xk} -> R^e as an e x d^k polynomial matrix.
struct MultilinearField {
    int order = 0;
    int d = 0;
    PolynomialMatrix coeffs;

    [[nodiscard]] Eigen::MatrixXd evaluate(std::span<const double> y) const { return coeffs.evaluate(y); }
};

/// Which tensor slot the new driver letter occupies in D(f^{ok}) f.
/// kNewSlotFirst is the convention matching the iterated integrals
/// int_{s<s_1<...<s_k<t} dX_{s_1} (x) ... (x) dX_{s_k}; kNewSlotLast is kept
/// only as a negative control.
enum class SlotOrder { kNewSlotFirst, kNewSlotLast };

/// f^{om} for m >= 1. Throws std::invalid_argument for m < 1 or m - 1 > f.max_order.
[[nodiscard]] MultilinearField f_circ(const VectorFieldJet& f, int m, SlotOrder order = SlotOrder::kNewSlotFirst);

/// f^{o1}, ..., f^{om}, sharing the recursion.
[[nodiscard]] std::vector<MultilinearField> f_circ_hierarchy(const VectorFieldJet& f, int m,
                                                             SlotOrder order = SlotOrder::kNewSlotFirst);

/// sum_w F_w(y) v_w. Throws std::invalid_argument unless v has d^k entries.
[[nodiscard]] Eigen::VectorXd apply_multilinear(const MultilinearField& F, std::span<const double> y,
                                                std::span<const double> v);

/// D^j f as an e x (e^j d) matrix.
[[nodiscard]] PolynomialMatrix derivative_tensor(const VectorFieldJet& f, int j);

/// Axis-aligned box sampled on a uniform lattice including both faces.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
    int samples_per_axis = 9;

    /// Throws std::invalid_argument unless lower < upper componentwise and samples_per_axis >= 2.
    void validate() const;
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(lower.size()); }
    [[nodiscard]] std::size_t point_count() const;
    /// Lattice point with the given flat index (first axis fastest).
    [[nodiscard]] std::vector<double> point(std::size_t index) const;
};

[[nodiscard]] double operator_norm(const Eigen::MatrixXd& m);

struct SupNormEstimate {
    /// max over lattice points of the operator norm: a lower bound of the
    /// true supremum over the box.
    double sampled_max = 0.0;
    /// max over lattice points of the Frobenius norm, which bounds the
    /// sampled operator norm from above.
    double frobenius_max = 0.0;
};

[[nodiscard]] SupNormEstimate sup_norm_estimate(const PolynomialMatrix& F, const Box& box,
                                                Execution exec = Execution::kParallel);
[[nodiscard]] SupNormEstimate sup_norm_estimate(const MultilinearField& F, const Box& box,
                                                Execution exec = Execution::kParallel);

/// max over distinct lattice pairs of |G(y) - G(z)| / |y - z|^theta, theta in (0, 1].
[[nodiscard]] double holder_quotient_estimate(const PolynomialMatrix& G, double theta, const Box& box,
                                              Execution exec = Execution::kParallel);

struct LipEstimate {
    double value = 0.0;
    /// sampled sup of D^j for j = 0..floor(gamma)
    std::vector<double> derivative_sups;
    /// Hoelder quotient of the top derivative; 0 when gamma is an integer.
    double holder = 0.0;
};

/// Sampled lower estimate of |G|_{Lip(gamma)}: the largest of the sup norms
/// of D^j G for j <= floor(gamma) and, for non-integer gamma, the
/// (gamma - floor(gamma))-Hoelder quotient of D^{floor(gamma)} G.
[[nodiscard]] LipEstimate lip_norm_estimate(const PolynomialMatrix& G, double gamma, const Box& box,
                                            Execution exec = Execution::kParallel);
[[nodiscard]] LipEstimate lip_norm_estimate(const VectorFieldJet& f, double gamma, const Box& box,
                                            Execution exec = Execution::kParallel);

}  // namespace rough
