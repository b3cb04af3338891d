#pragma once

#include <cstdint>

namespace rough {

/// x! := Gamma(x + 1). Throws std::invalid_argument for x < 0.
[[nodiscard]] double gamma_factorial(double x);

struct NeoclassicalSample {
    double a = 0.0;
    double b = 0.0;
    int n = 0;
    double p = 1.0;
    /// sum_{k=0}^{n} a^{k/p} b^{(n-k)/p} / ((k/p)! ((n-k)/p)!)
    double lhs = 0.0;
    /// p (a + b)^{n/p} / (n/p)!
    double rhs = 0.0;
    bool pass = false;
};

inline constexpr double kNeoclassicalTolerance = 1e-12;

/// Evaluates both sides of the neoclassical inequality; pass iff
/// lhs <= rhs (1 + kNeoclassicalTolerance). Throws for p < 1, a < 0, b < 0 or n < 0.
[[nodiscard]] NeoclassicalSample neoclassical_check(double a, double b, int n, double p);

/// Default number of directly summed terms before the Euler-Maclaurin tail.
inline constexpr std::int64_t kBetaDirectTerms = 64;

/// beta = p (1 + sum_{r>=2} min(2/(r-1), 1)^{(floor(p)+1)/p}).
///
/// Terms r = 2, 3 equal 1. The remaining series is 2^q sum_{n>=3} n^{-q},
/// q = (floor(p)+1)/p > 1; it is summed directly up to n < 3 + direct_terms
/// and the tail is closed by Euler-Maclaurin (integral term, endpoint
/// correction and Bernoulli corrections), whose truncation error is far
/// below 1e-12 once direct_terms >= 32.
[[nodiscard]] double beta_constant(double p, std::int64_t direct_terms = kBetaDirectTerms);

}  // namespace rough
