#include "rough_taylor/inequalities.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rough {

double gamma_factorial(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("gamma_factorial needs x >= 0, got " + std::to_string(x));
    return std::tgamma(x + 1.0);
}

NeoclassicalSample neoclassical_check(double a, double b, int n, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("neoclassical inequality needs p >= 1, got " + std::to_string(p));
    if (a < 0.0 || b < 0.0 || n < 0) throw std::invalid_argument("neoclassical inequality needs a, b, n >= 0");
    NeoclassicalSample s{a, b, n, p};
    double lhs = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double u = k / p;
        const double v = (n - k) / p;
        lhs += std::pow(a, u) * std::pow(b, v) / (gamma_factorial(u) * gamma_factorial(v));
    }
    s.lhs = lhs;
    s.rhs = p * std::pow(a + b, n / p) / gamma_factorial(n / p);
    s.pass = s.lhs <= s.rhs * (1.0 + kNeoclassicalTolerance);
    return s;
}

namespace {

// sum_{n>=m} n^{-q} for q > 1 by Euler-Maclaurin at m.
long double zeta_tail(long double q, long double m) {
    constexpr std::array<long double, 7> bernoulli{1.0L / 6,        -1.0L / 30, 1.0L / 42,       -1.0L / 30,
                                                   5.0L / 66,       -691.0L / 2730, 7.0L / 6};
    long double sum = std::pow(m, 1 - q) / (q - 1) + std::pow(m, -q) / 2;
    // rising = q (q+1) ... (q+2k-2), fact = (2k)!
    long double rising = q;
    long double fact = 2;
    for (std::size_t k = 1; k <= bernoulli.size(); ++k) {
        sum += bernoulli[k - 1] / fact * rising * std::pow(m, -q - 2 * static_cast<long double>(k) + 1);
        rising *= (q + 2 * k - 1) * (q + 2 * k);
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return sum;
}

}  // namespace

double beta_constant(double p, std::int64_t direct_terms) {
    if (!(p >= 1.0)) throw std::invalid_argument("beta_constant needs p >= 1, got " + std::to_string(p));
    if (direct_terms < 1) throw std::invalid_argument("beta_constant needs at least one direct term");
    const long double q = (std::floor(p) + 1.0L) / p;
    // r >= 4 contributes (2/(r-1))^q = 2^q n^{-q} with n = r - 1 >= 3.
    const long double stop = 3.0L + static_cast<long double>(direct_terms);
    long double direct = 0.0L;
    for (long double n = stop - 1; n >= 3; n -= 1) direct += std::pow(n, -q);
    const long double series = std::pow(2.0L, q) * (direct + zeta_tail(q, stop));
    return static_cast<double>(static_cast<long double>(p) * (3.0L + series));
}

}  // namespace rough
