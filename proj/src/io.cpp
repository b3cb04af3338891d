#include "rough_taylor/io.hpp"

#include <cctype>
#include <charconv>

namespace rough {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view context) {
    if (!obj.is_object()) throw ConfigError(std::string(context) + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ConfigError(std::string(context) + ": unknown key \"" + key + "\"");
    }
}

std::vector<double> parse_real_array(const json& j, std::string_view what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(std::string(what) + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

PiecewiseLinearPath parse_path(const json& j) {
    reject_unknown_keys(j, {"times", "points"}, "path");
    if (!j.contains("times")) throw ConfigError("path: missing key \"times\"");
    if (!j.contains("points")) throw ConfigError("path: missing key \"points\"");
    auto times = parse_real_array(j["times"], "path.times");
    if (!j["points"].is_array()) throw ConfigError("path.points: expected an array of points");
    std::vector<std::vector<double>> points;
    for (const auto& p : j["points"]) points.push_back(parse_real_array(p, "path.points[]"));
    try {
        return {std::move(times), std::move(points)};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("path: ") + e.what());
    }
}

json path_to_json(const PiecewiseLinearPath& path) {
    return {{"times", std::vector<double>(path.times().begin(), path.times().end())}, {"points", path.points()}};
}

Exponent parse_exponent_key(std::string_view key, int e) {
    auto fail = [&] { return ConfigError("field: bad exponent key \"" + std::string(key) + "\""); };
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < key.size() && std::isspace(static_cast<unsigned char>(key[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= key.size() || key[pos] != '(') throw fail();
    ++pos;
    Exponent out;
    while (true) {
        skip_ws();
        int v = 0;
        const auto [ptr, ec] = std::from_chars(key.data() + pos, key.data() + key.size(), v);
        if (ec != std::errc() || v < 0) throw fail();
        pos = static_cast<std::size_t>(ptr - key.data());
        out.push_back(v);
        skip_ws();
        if (pos >= key.size()) throw fail();
        if (key[pos] == ',') {
            ++pos;
            continue;
        }
        if (key[pos] == ')') {
            ++pos;
            break;
        }
        throw fail();
    }
    skip_ws();
    if (pos != key.size() || static_cast<int>(out.size()) != e) throw fail();
    return out;
}

std::string exponent_key(const Exponent& exponent) {
    std::string s = "(";
    for (std::size_t i = 0; i < exponent.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(exponent[i]);
    }
    return s + ")";
}

VectorFieldJet parse_field(const json& j) {
    reject_unknown_keys(j, {"e", "d", "components"}, "field");
    for (const char* key : {"e", "d", "components"}) {
        if (!j.contains(key)) throw ConfigError(std::string("field: missing key \"") + key + "\"");
    }
    if (!j["e"].is_number_integer() || !j["d"].is_number_integer()) throw ConfigError("field: e and d must be integers");
    const int e = j["e"].get<int>();
    const int d = j["d"].get<int>();
    if (e < 1 || d < 1) throw ConfigError("field: e and d must be positive");
    const auto& comps = j["components"];
    if (!comps.is_array() || static_cast<int>(comps.size()) != e) {
        throw ConfigError("field.components: expected " + std::to_string(e) + " rows");
    }
    std::vector<Polynomial> entries;
    for (const auto& row : comps) {
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw ConfigError("field.components: every row needs " + std::to_string(d) + " entries");
        }
        for (const auto& entry : row) {
            reject_unknown_keys(entry, {"coeffs"}, "field.components[][]");
            if (!entry.contains("coeffs") || !entry["coeffs"].is_object()) {
                throw ConfigError("field.components[][]: missing object \"coeffs\"");
            }
            Polynomial poly(e);
            for (const auto& [key, c] : entry["coeffs"].items()) {
                if (!c.is_number()) throw ConfigError("field: coefficient for " + key + " is not a number");
                poly.add_term(parse_exponent_key(key, e), c.get<double>());
            }
            entries.push_back(std::move(poly));
        }
    }
    return {e, d, std::move(entries)};
}

json field_to_json(const VectorFieldJet& f) {
    json comps = json::array();
    for (int a = 0; a < f.e; ++a) {
        json row = json::array();
        for (int i = 0; i < f.d; ++i) {
            json coeffs = json::object();
            for (const auto& [exp, c] : f.field.entry(a, i).terms()) coeffs[exponent_key(exp)] = c;
            row.push_back({{"coeffs", coeffs}});
        }
        comps.push_back(row);
    }
    return {{"e", f.e}, {"d", f.d}, {"components", comps}};
}

}  // namespace rough
