#include "rough_taylor/random.hpp"

#include <cmath>

namespace rough {

namespace {

void exponents_up_to(int vars, int degree, Exponent& current, int slot, std::vector<Exponent>& out) {
    if (slot == vars) {
        out.push_back(current);
        return;
    }
    for (int a = 0; a <= degree; ++a) {
        current[slot] = a;
        exponents_up_to(vars, degree - a, current, slot + 1, out);
    }
    current[slot] = 0;
}

}  // namespace

PiecewiseLinearPath random_path(Rng& rng, const PathSpec& spec) {
    const int n = rng.integer(spec.min_vertices, spec.max_vertices);
    std::vector<double> times(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> steps(static_cast<std::size_t>(n - 1), std::vector<double>(spec.d));
    times[0] = 0.0;
    for (int i = 1; i < n; ++i) times[i] = times[i - 1] + rng.uniform(0.1, 1.0);
    double length = 0.0;
    for (auto& step : steps) {
        double sq = 0.0;
        for (auto& x : step) {
            x = rng.uniform(-1.0, 1.0);
            sq += x * x;
        }
        length += std::sqrt(sq);
    }
    const double target = rng.uniform(spec.min_length, spec.max_length);
    const double scale = length > 0.0 ? target / length : 0.0;
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n), std::vector<double>(spec.d, 0.0));
    for (int i = 1; i < n; ++i) {
        for (int k = 0; k < spec.d; ++k) points[i][k] = points[i - 1][k] + scale * steps[i - 1][k];
    }
    return {std::move(times), std::move(points)};
}

VectorFieldJet random_field(Rng& rng, int e, int d, int degree) {
    std::vector<Exponent> monomials;
    Exponent scratch(static_cast<std::size_t>(e), 0);
    exponents_up_to(e, degree, scratch, 0, monomials);
    std::vector<Polynomial> entries;
    entries.reserve(static_cast<std::size_t>(e * d));
    for (int k = 0; k < e * d; ++k) {
        Polynomial poly(e);
        for (const auto& m : monomials) {
            if (rng.coin()) poly.add_term(m, rng.uniform(-1.0, 1.0));
        }
        entries.push_back(std::move(poly));
    }
    return {e, d, std::move(entries)};
}

std::vector<double> random_subpartition(Rng& rng, const std::vector<double>& grid, double keep) {
    std::vector<double> out{grid.front()};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (rng.uniform() < keep) out.push_back(grid[i]);
    }
    if (grid.size() > 1) out.push_back(grid.back());
    return out;
}

}  // namespace rough
