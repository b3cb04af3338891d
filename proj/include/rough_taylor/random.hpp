#pragma once

// Seeded generators for random paths, vector fields and partitions. Every draw
// goes through Rng so sequences are identical across standard libraries.

#include "rough_taylor/path_signature.hpp"
#include "rough_taylor/vector_field.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rough {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }
    bool coin() { return (engine_() >> 63) != 0; }
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

struct PathSpec {
    int d = 2;
    int min_vertices = 2;
    int max_vertices = 20;
    /// The path is rescaled to a 1-variation drawn uniformly from [min, max].
    double min_length = 0.1;
    double max_length = 1.0;
};

/// Random times starting at 0 with increments in [0.1, 1], random steps in [-1, 1]^d.
[[nodiscard]] PiecewiseLinearPath random_path(Rng& rng, const PathSpec& spec);

/// Every entry gets each monomial of total degree <= degree with probability 1/2,
/// coefficient uniform in [-1, 1].
[[nodiscard]] VectorFieldJet random_field(Rng& rng, int e, int d, int degree);

/// Sorted subset of grid containing both ends, each interior point kept with probability keep.
[[nodiscard]] std::vector<double> random_subpartition(Rng& rng, const std::vector<double>& grid, double keep = 0.5);

}  // namespace rough
