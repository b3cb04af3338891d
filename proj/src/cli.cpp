#include "rough_taylor/cli.hpp"

#include "rough_taylor/controlled_path.hpp"
#include "rough_taylor/inequalities.hpp"
#include "rough_taylor/io.hpp"
#include "rough_taylor/random.hpp"
#include "rough_taylor/rde_taylor.hpp"
#include "rough_taylor/report.hpp"
#include "rough_taylor/variation.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace rough {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kDecaySlack = 1e-12;

struct Globals {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
};

json load_config(const std::string& path, bool required) {
    if (path.empty()) {
        if (required) throw ConfigError("--config PATH is required for this subcommand");
        return json::object();
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
}

// Typed config accessors; every failure is a ConfigError.

std::optional<double> find_real(const json& c, const char* key) {
    if (!c.contains(key)) return std::nullopt;
    if (!c[key].is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
    return c[key].get<double>();
}

double get_real(const json& c, const char* key, double fallback) { return find_real(c, key).value_or(fallback); }

double require_real(const json& c, const char* key) {
    const auto v = find_real(c, key);
    if (!v) throw ConfigError(std::string("missing key \"") + key + "\"");
    return *v;
}

int get_int(const json& c, const char* key, int fallback) {
    if (!c.contains(key)) return fallback;
    if (!c[key].is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
    return c[key].get<int>();
}

std::vector<int> get_int_list(const json& c, const char* key, std::vector<int> fallback) {
    if (!c.contains(key)) return fallback;
    if (!c[key].is_array()) throw ConfigError(std::string("\"") + key + "\" must be an array of integers");
    std::vector<int> out;
    for (const auto& v : c[key]) {
        if (!v.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

PiecewiseLinearPath require_path(const json& c) {
    if (!c.contains("path")) throw ConfigError("missing key \"path\"");
    return parse_path(c["path"]);
}

VectorFieldJet require_field(const json& c) {
    if (!c.contains("field")) throw ConfigError("missing key \"field\"");
    return parse_field(c["field"]);
}

std::vector<double> require_y0(const json& c, int e) {
    if (!c.contains("y0")) throw ConfigError("missing key \"y0\"");
    auto y0 = parse_real_array(c["y0"], "y0");
    if (static_cast<int>(y0.size()) != e) throw ConfigError("y0 must have e = " + std::to_string(e) + " entries");
    return y0;
}

std::vector<std::pair<double, double>> get_intervals(const json& c, const PiecewiseLinearPath& path) {
    if (!c.contains("intervals")) return {{path.start_time(), path.end_time()}};
    if (!c["intervals"].is_array()) throw ConfigError("\"intervals\" must be an array of [s, t] pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto& iv : c["intervals"]) {
        const auto st = parse_real_array(iv, "intervals[]");
        if (st.size() != 2) throw ConfigError("\"intervals\" entries must be [s, t] pairs");
        try {
            path.require_interval(st[0], st[1]);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("intervals: ") + e.what());
        }
        out.emplace_back(st[0], st[1]);
    }
    return out;
}

std::vector<double> uniform_grid(double a, double b, int points) {
    if (points < 2) throw ConfigError("\"grid_points\" must be at least 2");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = a + (b - a) * static_cast<double>(i) / (points - 1);
    g.back() = b;
    return g;
}

std::vector<double> merged_with_vertices(std::vector<double> grid, const PiecewiseLinearPath& path) {
    for (double v : path.times()) {
        if (v >= grid.front() && v <= grid.back()) grid.push_back(v);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::uint64_t resolve_seed(const Globals& g, const json& c) {
    if (g.seed) return *g.seed;
    if (c.contains("seed")) {
        if (!c["seed"].is_number_unsigned()) throw ConfigError("\"seed\" must be a non-negative integer");
        return c["seed"].get<std::uint64_t>();
    }
    if (const char* env = std::getenv("ROUGH_TAYLOR_SEED"); env && *env) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw ConfigError("ROUGH_TAYLOR_SEED must be a non-negative integer");
        return v;
    }
    return kDefaultSeed;
}

std::string word_label(std::size_t index, int level, int d) {
    std::string s = "\"(";
    for (int j = 0; j < level; ++j) {
        const auto digit = (index / ipow(static_cast<std::size_t>(d), level - 1 - j)) % static_cast<std::size_t>(d);
        if (j) s += ',';
        s += std::to_string(digit + 1);
    }
    return s + ")\"";
}

std::string join_times(std::span<const double> times) {
    std::string s;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i) s += ';';
        s += format_real(times[i]);
    }
    return s;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------- signature

int cmd_signature(const json& c, std::ostream& csv) {
    reject_unknown_keys(c, {"path", "depth", "intervals", "mode", "out", "seed"}, "signature config");
    const auto path = require_path(c);
    const int depth = get_int(c, "depth", 2);
    if (depth < 0) throw ConfigError("\"depth\" must be non-negative");
    std::string mode = "coefficients";
    if (c.contains("mode")) {
        if (!c["mode"].is_string()) throw ConfigError("\"mode\" must be a string");
        mode = c["mode"].get<std::string>();
    }
    if (mode != "coefficients" && mode != "norms") throw ConfigError("\"mode\" must be \"coefficients\" or \"norms\"");
    const auto intervals = get_intervals(c, path);

    csv << (mode == "norms" ? "interval_s,interval_t,level,norm\n" : "interval_s,interval_t,level,word,value\n");
    for (const auto& [s, t] : intervals) {
        const auto sig = signature(path, s, t, depth);
        for (int k = 0; k <= depth; ++k) {
            const auto lvl = sig.level(k);
            if (mode == "norms") {
                csv << format_real(s) << ',' << format_real(t) << ',' << k << ',' << format_real(level_norm(sig, k))
                    << '\n';
                continue;
            }
            for (std::size_t w = 0; w < lvl.size(); ++w) {
                csv << format_real(s) << ',' << format_real(t) << ',' << k << ',' << word_label(w, k, path.dim()) << ','
                    << format_real(lvl[w]) << '\n';
            }
        }
    }
    return kExitPass;
}

// ---------------------------------------------------------------- pvar

int cmd_pvar(const json& c, std::optional<double> flag_p, bool brute_check, std::ostream& csv, std::ostream& err) {
    reject_unknown_keys(c, {"path", "p", "intervals", "out", "seed"}, "pvar config");
    const auto path = require_path(c);
    const double p = flag_p ? *flag_p : get_real(c, "p", 1.0);
    if (!(p >= 1.0)) throw ConfigError("p-variation needs p >= 1");
    const auto intervals = get_intervals(c, path);
    if (brute_check) {
        for (const auto& [s, t] : intervals) {
            const auto n = default_grid(path, s, t).size();
            if (n > kBruteForceMaxPoints) {
                throw ConfigError("--brute-force-check refuses " + std::to_string(n) + " candidate points on [" +
                                  format_real(s) + ", " + format_real(t) + "] (limit " +
                                  std::to_string(kBruteForceMaxPoints) + ")");
            }
        }
    }

    csv << "interval_s,interval_t,p,value,one_variation,homogeneous,homogeneous_exact,partition";
    if (brute_check) csv << ",brute_force,abs_diff,pass";
    csv << '\n';
    int failures = 0;
    for (const auto& [s, t] : intervals) {
        const auto dp = p_variation_level1(path, p, s, t);
        const auto hom = homogeneous_p_variation(path, p, s, t);
        csv << format_real(s) << ',' << format_real(t) << ',' << format_real(p) << ',' << format_real(dp.value) << ','
            << format_real(one_variation(path, s, t).value) << ',' << format_real(hom.value) << ','
            << (hom.exact ? "true" : "false") << ',' << join_times(dp.partition_times);
        if (brute_check) {
            const auto bf = brute_force_pvar(path, p, s, t);
            const double diff = std::abs(bf.value - dp.value);
            const bool ok = diff <= kIdentityTolerance * std::max(1.0, bf.value);
            failures += ok ? 0 : 1;
            csv << ',' << format_real(bf.value) << ',' << format_real(diff) << ',' << (ok ? "true" : "false");
        }
        csv << '\n';
    }
    if (brute_check) err << "pvar: " << intervals.size() << " intervals, " << failures << " oracle mismatches\n";
    return failures ? kExitCheckFailed : kExitPass;
}

// ---------------------------------------------------------------- remainder

struct RemainderFlags {
    bool p1 = false;
    bool profile = false;
    std::vector<int> orders;
    std::vector<double> gamma_sweep;
};

int cmd_remainder(const json& c, const RemainderFlags& flags, std::ostream& csv, std::ostream& err) {
    reject_unknown_keys(c,
                        {"field", "path", "y0", "p", "gamma", "orders", "tol", "intervals", "grid_points",
                         "gamma_sweep", "out", "seed"},
                        "remainder config");
    if (flags.p1 && flags.profile) throw ConfigError("--p1 and --profile are exclusive");
    const bool profile = flags.profile;
    const auto field = require_field(c);
    const auto path = require_path(c);
    if (path.dim() != field.d) throw ConfigError("path dimension does not match field d");
    const auto y0 = require_y0(c, field.e);
    const double tol = get_real(c, "tol", 1e-12);
    if (!(tol > 0.0)) throw ConfigError("\"tol\" must be positive");

    if (!profile) {
        if (!flags.gamma_sweep.empty() || c.contains("gamma_sweep")) {
            throw ConfigError("gamma sweeps apply to --profile");
        }
        const auto orders = flags.orders.empty() ? get_int_list(c, "orders", {1, 2, 3, 4, 5}) : flags.orders;
        if (orders.empty()) throw ConfigError("\"orders\" must not be empty");
        for (int n : orders) {
            if (n < 1) throw ConfigError("orders must be >= 1");
        }
        const auto intervals = get_intervals(c, path);
        const auto rows = bound_check_1var_batch(field, path, y0, intervals, orders, BoxPolicy{}, tol);
        write_report_header(csv);
        int failed = 0;
        int floor_rows = 0;
        double worst = 0.0;
        for (const auto& r : rows) {
            write_report_row(csv, r);
            failed += r.pass ? 0 : 1;
            floor_rows += r.below_solver_floor ? 1 : 0;
            if (!r.below_solver_floor) worst = std::max(worst, r.slack_ratio);
        }
        err << "p1: rows=" << rows.size() << " failed=" << failed << " below_solver_floor=" << floor_rows
            << " max_slack=" << format_real(worst) << '\n';
        return failed ? kExitCheckFailed : kExitPass;
    }

    if (!flags.orders.empty()) throw ConfigError("--orders applies to --p1; the profile order is floor(gamma)");
    if (c.contains("intervals")) throw ConfigError("\"intervals\" applies to --p1; the profile uses \"grid_points\"");
    const double p = get_real(c, "p", 1.0);
    if (!(p >= 1.0)) throw ConfigError("\"p\" must be >= 1");
    std::vector<double> gammas = flags.gamma_sweep;
    if (gammas.empty() && c.contains("gamma_sweep")) gammas = parse_real_array(c["gamma_sweep"], "gamma_sweep");
    if (gammas.empty()) gammas.push_back(require_real(c, "gamma"));
    for (double g : gammas) {
        if (!(g > p - 1.0)) throw ConfigError("gamma = " + format_real(g) + " must exceed p - 1");
        if (!(g >= 1.0)) throw ConfigError("gamma = " + format_real(g) + " must be >= 1");
    }
    const auto grid = uniform_grid(path.start_time(), path.end_time(), get_int(c, "grid_points", 9));
    ProfileOptions options;
    options.tol = tol;

    write_report_header(csv);
    bool ok = true;
    for (double g : gammas) {
        const auto res = remainder_profile(field, path, y0, p, g, grid, options);
        for (const auto& r : res.rows) {
            write_report_row(csv, r);
            ok = ok && r.pass;
        }
        ok = ok && res.slope_ok;
        err << "profile: p=" << format_real(p) << " gamma=" << format_real(g) << " order=" << res.order
            << " C_hat=" << format_real(res.fitted_constant) << " slope=" << format_real(res.slope)
            << " required_slope=" << format_real(g / p - options.slope_margin) << " rows_used=" << res.rows_used
            << " structural_constant=" << format_real(res.structural_constant)
            << " bound_at_full_omega=" << format_real(res.fitted_constant * res.structural_constant) << '\n';
    }
    return ok ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- decay

int cmd_decay(const json& c, std::ostream& csv, std::ostream& err) {
    reject_unknown_keys(c, {"path", "max_level", "p", "intervals", "out", "seed"}, "decay config");
    const auto path = require_path(c);
    const int max_level = get_int(c, "max_level", 8);
    if (max_level < 1) throw ConfigError("\"max_level\" must be >= 1");
    const double p = get_real(c, "p", 1.0);
    if (!(p >= 1.0)) throw ConfigError("\"p\" must be >= 1");
    const auto intervals = get_intervals(c, path);

    csv << "interval_s,interval_t,level,measured,one_variation_ref,extension_ref,pass\n";
    int failed = 0;
    for (const auto& [s, t] : intervals) {
        const auto table = decay_scan(path, s, t, max_level, p);
        for (const auto& row : table.rows) {
            const bool ok = row.measured <= row.one_variation_ref * (1.0 + kDecaySlack) + kDecaySlack;
            failed += ok ? 0 : 1;
            csv << format_real(s) << ',' << format_real(t) << ',' << row.level << ',' << format_real(row.measured)
                << ',' << format_real(row.one_variation_ref) << ',' << format_real(row.extension_ref) << ','
                << (ok ? "true" : "false") << '\n';
        }
    }
    err << "decay: levels 1.." << max_level << " over " << intervals.size() << " intervals, " << failed
        << " failures\n";
    return failed ? kExitCheckFailed : kExitPass;
}

// ---------------------------------------------------------------- neoclassical

int cmd_neoclassical(const json& c, std::optional<double> flag_p, std::optional<int> flag_samples, std::uint64_t seed,
                     std::ostream& csv, std::ostream& err) {
    reject_unknown_keys(c, {"p", "samples", "n_max", "a_max", "out", "seed"}, "neoclassical config");
    const std::optional<double> fixed_p = flag_p ? flag_p : find_real(c, "p");
    if (fixed_p && !(*fixed_p >= 1.0)) throw ConfigError("neoclassical inequality needs p >= 1");
    const int samples = flag_samples ? *flag_samples : get_int(c, "samples", 10000);
    const int n_max = get_int(c, "n_max", 20);
    const double a_max = get_real(c, "a_max", 10.0);
    if (samples < 0 || n_max < 0 || !(a_max > 0.0)) throw ConfigError("samples, n_max must be >= 0 and a_max > 0");

    struct Draw {
        double a, b, p;
        int n;
    };
    Rng rng(seed);
    std::vector<Draw> draws(static_cast<std::size_t>(samples));
    for (auto& dr : draws) {
        dr.a = rng.uniform(0.0, a_max);
        dr.b = rng.uniform(0.0, a_max);
        dr.n = rng.integer(0, n_max);
        dr.p = fixed_p ? *fixed_p : rng.uniform(1.0, 5.0);
    }
    std::vector<NeoclassicalSample> results(draws.size());
    const auto count = static_cast<std::ptrdiff_t>(draws.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto& dr = draws[static_cast<std::size_t>(i)];
        results[static_cast<std::size_t>(i)] = neoclassical_check(dr.a, dr.b, dr.n, dr.p);
    }

    csv << "a,b,n,p,lhs,rhs,pass\n";
    int failed = 0;
    for (const auto& r : results) {
        failed += r.pass ? 0 : 1;
        csv << format_real(r.a) << ',' << format_real(r.b) << ',' << r.n << ',' << format_real(r.p) << ','
            << format_real(r.lhs) << ',' << format_real(r.rhs) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    if (fixed_p) {
        err << "beta(" << format_real(*fixed_p) << ")=" << format_real(beta_constant(*fixed_p)) << '\n';
    } else {
        for (int q = 1; q <= 5; ++q) err << "beta(" << q << ")=" << format_real(beta_constant(q)) << '\n';
    }
    err << "neoclassical: samples=" << samples << " failed=" << failed << '\n';
    return failed ? kExitCheckFailed : kExitPass;
}

// ---------------------------------------------------------------- removal

struct RemovalRow {
    std::string kind;
    std::size_t id = 0;
    double s = 0.0;
    double t = 0.0;
    std::size_t points = 0;
    int k = 0;
    double riemann_sum = 0.0;
    double limit_gap = 0.0;
    double invariance_defect = 0.0;
    double removal_defect = 0.0;
    std::optional<RemovalChoice> removal;
    bool pass = false;
};

RemovalRow removal_row(const ControlledTuple& tuple, const PiecewiseLinearPath& path, const ControlTable& omega,
                     double p, int k, const std::vector<double>& partition) {
    RemovalRow row;
    row.s = partition.front();
    row.t = partition.back();
    row.points = partition.size();
    row.k = k;
    const auto full = compensated_riemann_sum(tuple, path, k, partition, p);
    row.riemann_sum = operator_norm(full.riemann_sum);
    row.limit_gap = operator_norm(full.riemann_sum - full.limit);
    row.invariance_defect = max_abs(full.algebraic_along_partition - full.algebraic_closed_form);
    for (std::size_t j = 1; j + 1 < partition.size(); ++j) {
        std::vector<double> without = partition;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(j));
        const auto reduced = compensated_riemann_sum(tuple, path, k, without, p);
        const auto delta = point_removal_delta(tuple, path, k, partition, j);
        row.removal_defect =
            std::max(row.removal_defect, max_abs(delta - (full.riemann_sum - reduced.riemann_sum)));
    }
    bool ok = row.invariance_defect < kIdentityTolerance && row.removal_defect < kIdentityTolerance;
    if (partition.size() >= 3) {
        row.removal = choose_removal_point(omega, partition);
        ok = ok && row.removal->holds;
    } else {
        ok = ok && row.riemann_sum == 0.0;
    }
    row.pass = ok;
    return row;
}

int cmd_removal(const json& c, std::uint64_t seed, std::ostream& csv, std::ostream& err) {
    reject_unknown_keys(
        c, {"field", "path", "y0", "p", "gamma", "tol", "grid_points", "partitions", "k", "out", "seed"},
        "removal config");
    const auto field = require_field(c);
    const auto path = require_path(c);
    if (path.dim() != field.d) throw ConfigError("path dimension does not match field d");
    const auto y0 = require_y0(c, field.e);
    const double p = get_real(c, "p", 1.0);
    const double gamma = require_real(c, "gamma");
    const double tol = get_real(c, "tol", 1e-12);
    if (!(p >= 1.0)) throw ConfigError("\"p\" must be >= 1");
    if (!(gamma > p - 1.0) || !(gamma >= 1.0)) throw ConfigError("gamma must exceed p - 1 and be >= 1");
    const int order = static_cast<int>(std::floor(gamma));
    const int top = order - static_cast<int>(std::floor(p));
    if (top < 0) throw ConfigError("removal needs floor(gamma) >= floor(p)");
    std::vector<int> ks;
    if (c.contains("k")) {
        const int k = get_int(c, "k", 0);
        if (k < 0 || k > top) throw ConfigError("\"k\" must lie in [0, floor(gamma) - floor(p)]");
        ks.push_back(k);
    } else {
        for (int k = 0; k <= top; ++k) ks.push_back(k);
    }
    const int partitions = get_int(c, "partitions", 100);
    if (partitions < 1) throw ConfigError("\"partitions\" must be >= 1");
    const auto grid =
        merged_with_vertices(uniform_grid(path.start_time(), path.end_time(), get_int(c, "grid_points", 17)), path);

    const auto tuple = controlled_tuple(field, path, y0, gamma, grid, tol);
    const ControlTable omega(path, p, grid);

    // Partition 0 is {t_0, t_n}; the rest are random sub-intervals with random interior points.
    struct Job {
        std::string kind;
        std::size_t id;
        std::vector<double> partition;
        int k;
    };
    std::vector<Job> jobs;
    Rng rng(seed);
    for (int r = 0; r < partitions; ++r) {
        std::vector<double> part;
        if (r == 0) {
            part = {grid.front(), grid.back()};
        } else {
            int i = rng.integer(0, static_cast<int>(grid.size()) - 1);
            int j = rng.integer(0, static_cast<int>(grid.size()) - 1);
            if (i == j) j = i == 0 ? static_cast<int>(grid.size()) - 1 : 0;
            if (i > j) std::swap(i, j);
            const std::vector<double> sub(grid.begin() + i, grid.begin() + j + 1);
            part = random_subpartition(rng, sub);
        }
        for (int k : ks) jobs.push_back({"random", static_cast<std::size_t>(r), part, k});
    }
    // Nested refinements of the whole interval: every stride-th grid point.
    std::size_t id = static_cast<std::size_t>(partitions);
    for (std::size_t stride = std::bit_floor(grid.size() - 1); stride >= 1; stride /= 2, ++id) {
        std::vector<double> part;
        for (std::size_t i = 0; i < grid.size(); i += stride) part.push_back(grid[i]);
        if (part.back() != grid.back()) part.push_back(grid.back());
        for (int k : ks) jobs.push_back({"refine", id, part, k});
    }

    std::vector<RemovalRow> rows(jobs.size());
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t q = 0; q < count; ++q) {
        const auto& job = jobs[static_cast<std::size_t>(q)];
        rows[static_cast<std::size_t>(q)] = removal_row(tuple, path, omega, p, job.k, job.partition);
        rows[static_cast<std::size_t>(q)].kind = job.kind;
        rows[static_cast<std::size_t>(q)].id = job.id;
    }

    csv << "kind,partition_id,s,t,points,k,riemann_sum,limit_gap,invariance_defect,removal_defect,omega_j,"
           "omega_bound,pass\n";
    int failed = 0;
    double worst_invariance = 0.0;
    double worst_removal = 0.0;
    for (const auto& r : rows) {
        failed += r.pass ? 0 : 1;
        worst_invariance = std::max(worst_invariance, r.invariance_defect);
        worst_removal = std::max(worst_removal, r.removal_defect);
        csv << r.kind << ',' << r.id << ',' << format_real(r.s) << ',' << format_real(r.t) << ',' << r.points << ','
            << r.k << ',' << format_real(r.riemann_sum) << ',' << format_real(r.limit_gap) << ','
            << format_real(r.invariance_defect) << ',' << format_real(r.removal_defect) << ',';
        if (r.removal) csv << format_real(r.removal->omega_j) << ',' << format_real(r.removal->bound);
        else csv << ',';
        csv << ',' << (r.pass ? "true" : "false") << '\n';
    }
    err << "removal: rows=" << rows.size() << " failed=" << failed << " max_invariance_defect="
        << format_real(worst_invariance) << " max_removal_defect=" << format_real(worst_removal)
        << " solver_accuracy=" << format_real(tuple.solver_accuracy) << '\n';
    return failed ? kExitCheckFailed : kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated-signature Taylor remainder verification runner", "rough_taylor"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON experiment config");
    app.add_option("--out", g.out_path, "CSV output file (default: stdout)");
    app.add_option("--seed", g.seed, "RNG seed (fallback: config \"seed\", then ROUGH_TAYLOR_SEED)");
    app.add_option("--jobs", g.jobs, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

    auto* sig = app.add_subcommand("signature", "signature coefficients or level norms over intervals");

    auto* pvar = app.add_subcommand("pvar", "p-variation with optimal partition");
    std::optional<double> pvar_p;
    bool brute = false;
    pvar->add_option("--p", pvar_p, "variation exponent (overrides config)");
    pvar->add_flag("--brute-force-check", brute, "compare with exhaustive search (<= 20 candidate points)");

    auto* rem = app.add_subcommand("remainder", "Taylor remainder bound checks");
    RemainderFlags rflags;
    rem->add_flag("--p1", rflags.p1, "1-variation bound per interval and order (default)");
    rem->add_flag("--profile", rflags.profile, "factorial-decay profile over grid pairs");
    rem->add_option("--orders", rflags.orders, "comma-separated Taylor orders for --p1")->delimiter(',');
    rem->add_option("--gamma-sweep", rflags.gamma_sweep, "comma-separated gamma values for --profile")
        ->delimiter(',');

    auto* decay = app.add_subcommand("decay", "signature level norms against factorial references");

    auto* neo = app.add_subcommand("neoclassical", "random samples of the neoclassical inequality");
    std::optional<double> neo_p;
    std::optional<int> neo_samples;
    neo->add_option("--p", neo_p, "fixed exponent (default: uniform in [1, 5])");
    neo->add_option("--samples", neo_samples, "number of samples");

    auto* rm = app.add_subcommand("removal", "compensated Riemann sums and point removal");

    std::vector<const char*> argv{"rough_taylor"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (g.jobs > 0) omp_set_num_threads(g.jobs);
        const bool needs_config = !neo->parsed();
        json cfg = load_config(g.config_path, needs_config);
        std::string out_path = g.out_path;
        if (out_path.empty() && cfg.contains("out")) {
            if (!cfg["out"].is_string()) throw ConfigError("\"out\" must be a string");
            out_path = cfg["out"].get<std::string>();
        }
        const std::uint64_t seed = resolve_seed(g, cfg);

        std::ostringstream csv;
        int code = kExitPass;
        if (sig->parsed()) code = cmd_signature(cfg, csv);
        else if (pvar->parsed()) code = cmd_pvar(cfg, pvar_p, brute, csv, err);
        else if (rem->parsed()) code = cmd_remainder(cfg, rflags, csv, err);
        else if (decay->parsed()) code = cmd_decay(cfg, csv, err);
        else if (neo->parsed()) code = cmd_neoclassical(cfg, neo_p, neo_samples, seed, csv, err);
        else if (rm->parsed()) code = cmd_removal(cfg, seed, csv, err);

        if (out_path.empty()) {
            out << csv.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw ConfigError("cannot write " + out_path);
            file << csv.str();
        }
        return code;
    } catch (const SolverError& e) {
        err << "error: reference solver failed on segment " << e.segment() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace rough
