#pragma once

// JSON input formats.
//
// Path:    { "times": [t0, ...], "points": [[x, ...], ...] }
// Field:   { "e": E, "d": D, "components": [[ {"coeffs": {"(a1,...,ae)": c, ...}}, ... D entries ], ... E rows] }
//          components[a][i] is the polynomial coefficient of output a driven by letter i.

#include "rough_taylor/path_signature.hpp"
#include "rough_taylor/vector_field.hpp"

#include <json.hpp>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rough {

/// Schema or value error in user-supplied configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError naming the first key of obj not in allowed.
void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

[[nodiscard]] PiecewiseLinearPath parse_path(const nlohmann::json& j);
[[nodiscard]] nlohmann::json path_to_json(const PiecewiseLinearPath& path);

[[nodiscard]] VectorFieldJet parse_field(const nlohmann::json& j);
[[nodiscard]] nlohmann::json field_to_json(const VectorFieldJet& f);

/// "(a1,...,ae)" <-> exponent.
[[nodiscard]] Exponent parse_exponent_key(std::string_view key, int e);
[[nodiscard]] std::string exponent_key(const Exponent& exponent);

[[nodiscard]] std::vector<double> parse_real_array(const nlohmann::json& j, std::string_view what);

}  // namespace rough
