#pragma once

// Truncated tensor algebra 1 + R^d + (R^d)^{x2} + ... + (R^d)^{xN}.
//
// Level k is stored densely as d^k coefficients. A word (i_1, ..., i_k) with
// 0-based letters i_j in [0, d) lives at index i_1 d^{k-1} + ... + i_k, i.e.
// lexicographic order with the first letter most significant. The tensor
// product of a level-j word u and a level-m word w is therefore the level
// j+m word at index u * d^m + w.

#include <cstddef>
#include <span>
#include <vector>

namespace rough {

/// d^k for small non-negative k.
[[nodiscard]] std::size_t ipow(std::size_t d, int k);

/// Flat index of a word of 0-based letters.
[[nodiscard]] std::size_t word_index(std::span<const int> word, int dim);

class TruncatedTensor {
public:
    /// Zero element (every level, including level 0, is zero).
    TruncatedTensor(int dim, int depth);

    /// The multiplicative identity (1, 0, ..., 0).
    [[nodiscard]] static TruncatedTensor unit(int dim, int depth);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }

    [[nodiscard]] std::span<const double> level(int k) const;
    [[nodiscard]] std::span<double> level(int k);

    /// Level 0 coefficient.
    [[nodiscard]] double scalar() const noexcept { return coeffs_[0]; }

    /// All coefficients, levels concatenated in order.
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }

    TruncatedTensor& operator+=(const TruncatedTensor& other);
    TruncatedTensor& operator-=(const TruncatedTensor& other);
    TruncatedTensor& operator*=(double scale);

private:
    int dim_;
    int depth_;
    std::vector<std::size_t> offsets_;
    std::vector<double> coeffs_;
};

[[nodiscard]] TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b);
[[nodiscard]] TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b);

/// Level k of the result is sum_{j=0}^{k} a_j (x) b_{k-j}.
/// Throws std::invalid_argument on dimension or depth mismatch.
[[nodiscard]] TruncatedTensor truncated_mul(const TruncatedTensor& a, const TruncatedTensor& b);

/// Inverse of a group-like element via the finite Neumann series
/// sum_{k=0}^{N} (1 - x)^k, exact in the truncated algebra.
/// Throws std::invalid_argument unless the level-0 entry is exactly 1.
[[nodiscard]] TruncatedTensor truncated_inverse(const TruncatedTensor& x);

/// exp of a pure level-1 element: level k is increment^{xk} / k!.
[[nodiscard]] TruncatedTensor segment_exp(std::span<const double> increment, int depth);

/// max_{1<=k<=N} |pi_k(x)|^{1/k}, Euclidean norm on each level.
/// Throws std::invalid_argument for depth 0.
[[nodiscard]] double homogeneous_norm(const TruncatedTensor& x);

/// Euclidean norm of a single level.
[[nodiscard]] double level_norm(const TruncatedTensor& x, int k);

/// Copy of level k. Throws std::out_of_range for k outside [0, depth].
[[nodiscard]] std::vector<double> project(const TruncatedTensor& x, int k);

/// Replaces level k by the given coefficients (inverse of project).
void inject(TruncatedTensor& x, int k, std::span<const double> coeffs);

/// Largest absolute coefficient difference over all levels.
[[nodiscard]] double max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b);

/// Multiplies level k by scale^k (the dilation automorphism).
[[nodiscard]] TruncatedTensor dilate(const TruncatedTensor& x, double scale);

}  // namespace rough
