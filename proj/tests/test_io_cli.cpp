#include "rough_taylor/cli.hpp"
#include "rough_taylor/io.hpp"
#include "rough_taylor/random.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rough;
using nlohmann::json;

namespace {

const std::string kConfigDir = ROUGH_TAYLOR_CONFIG_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const json& j, const std::string& name) {
    const auto path = std::filesystem::temp_directory_path() / ("rough_taylor_test_" + name + ".json");
    std::ofstream(path) << j.dump();
    return path.string();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            else if (c == ',' && !quoted) {
                fields.push_back(cur);
                cur.clear();
            } else cur += c;
        }
        fields.push_back(cur);
        rows.push_back(fields);
    }
    return rows;
}

json scalar_exp_config() {
    return json::parse(R"J({
      "field": {"e": 1, "d": 1, "components": [[{"coeffs": {"(1)": 1.0}}]]},
      "path": {"times": [0, 1], "points": [[0], [1]]},
      "y0": [1.0], "orders": [2], "tol": 1e-13})J");
}

}  // namespace

TEST_CASE("path and field parsing") {
    const auto path = parse_path(json::parse(R"J({"times":[0,1,3],"points":[[0,0],[1,0],[1,2]]})J"));
    CHECK(path.vertex_count() == 3);
    CHECK(path.dim() == 2);
    CHECK_THROWS_AS((void)parse_path(json::parse(R"J({"points":[[0],[1]]})J")), ConfigError);
    CHECK_THROWS_AS((void)parse_path(json::parse(R"J({"times":[0,1],"points":[[0],[1]],"extra":1})J")), ConfigError);
    CHECK_THROWS_AS((void)parse_path(json::parse(R"J({"times":[1,0],"points":[[0],[1]]})J")), ConfigError);

    const auto f = parse_field(json::parse(
        R"J({"e":2,"d":1,"components":[[{"coeffs":{"(1,0)":2.0,"(0,2)":-1}}],[{"coeffs":{}}]]})J"));
    CHECK(f.e == 2);
    CHECK(f.d == 1);
    const double y[] = {3.0, 0.5};
    CHECK(f.evaluate(y)(0, 0) == doctest::Approx(6.0 - 0.25));
    CHECK(f.evaluate(y)(1, 0) == 0.0);
    CHECK_THROWS_AS((void)parse_field(json::parse(R"J({"e":1,"d":1,"components":[[{"coeffs":{"(1,0)":1}}]]})J")),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_field(json::parse(R"J({"e":1,"d":2,"components":[[{"coeffs":{}}]]})J")), ConfigError);
    CHECK_THROWS_AS((void)parse_exponent_key("(1,", 1), ConfigError);
    CHECK(parse_exponent_key(" ( 2 , 0 ) ", 2) == Exponent{2, 0});

    Rng rng(3);
    const auto g = random_field(rng, 3, 2, 3);
    const auto back = parse_field(field_to_json(g));
    const double z[] = {0.1, -0.4, 0.9};
    CHECK((back.evaluate(z) - g.evaluate(z)).norm() == 0.0);
    const auto p2 = parse_path(path_to_json(path));
    CHECK(p2.points() == path.points());
}

TEST_CASE("usage and config errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({"signature"}).code == kExitUsage);
    CHECK(run({"signature", "--config", "/nonexistent/file.json"}).code == kExitUsage);
    const auto missing_times = write_temp(json::parse(R"J({"path":{"points":[[0],[1]]}})J"), "missing_times");
    const auto r = run({"signature", "--config", missing_times});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("times") != std::string::npos);
    auto cfg = scalar_exp_config();
    cfg["tpyo"] = 1;
    CHECK(run({"remainder", "--config", write_temp(cfg, "typo")}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("signature subcommand") {
    const auto line = write_temp(json::parse(R"J({"path":{"times":[0,1],"points":[[0,0],[1,1]]}})J"), "line");
    const auto r = run({"signature", "--config", line});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"interval_s", "interval_t", "level", "word", "value"});
    int level2 = 0;
    for (const auto& row : rows) {
        if (row[2] == "2") {
            CHECK(row[4] == "0.5");
            ++level2;
        }
    }
    CHECK(level2 == 4);

    const auto lp = run({"signature", "--config", kConfigDir + "/l_path.json"});
    CHECK(lp.out.find("0,2,2,\"(1,2)\",1\n") != std::string::npos);
    CHECK(lp.out.find("0,2,2,\"(2,1)\",0\n") != std::string::npos);
}

TEST_CASE("pvar subcommand") {
    const auto r = run({"pvar", "--config", kConfigDir + "/zigzag.json", "--brute-force-check"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(rows[1].back() == "true");

    const auto p1 = parse_csv(run({"pvar", "--config", kConfigDir + "/zigzag.json", "--p", "1"}).out);
    CHECK(p1[1][3] == p1[1][4]);

    json many = {{"path", {{"times", json::array()}, {"points", json::array()}}}};
    for (int i = 0; i < 25; ++i) {
        many["path"]["times"].push_back(i);
        many["path"]["points"].push_back({i % 3});
    }
    const auto refused = run({"pvar", "--config", write_temp(many, "many"), "--brute-force-check"});
    CHECK(refused.code == kExitUsage);
    CHECK(refused.err.find("refuses") != std::string::npos);
    CHECK(run({"pvar", "--config", write_temp(many, "many"), "--p", "0.5"}).code == kExitUsage);
}

TEST_CASE("remainder subcommand") {
    const auto r = run({"remainder", "--p1", "--config", kConfigDir + "/scalar_exponential.json"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"interval_s", "interval_t", "order", "measured", "bound", "slack_ratio",
                                              "pass", "box_lo", "box_hi"});
    CHECK(std::abs(std::stod(rows[1][3]) - (std::exp(1.0) - 2.5)) < 1e-9);
    CHECK(rows[1][6] == "true");

    json zero = scalar_exp_config();
    zero["field"]["components"][0][0]["coeffs"] = json::object();
    const auto z = run({"remainder", "--config", write_temp(zero, "zero"), "--orders", "1,2,3"});
    CHECK(z.code == 0);
    const auto zrows = parse_csv(z.out);
    CHECK(zrows.size() == 4);
    for (std::size_t i = 1; i < zrows.size(); ++i) {
        CHECK(zrows[i][3] == "0");
        CHECK(zrows[i][4] == "0");
        CHECK(zrows[i][6] == "true");
    }

    json bad = scalar_exp_config();
    bad["p"] = 2.5;
    bad["gamma"] = 1.0;
    CHECK(run({"remainder", "--profile", "--config", write_temp(bad, "bad_gamma")}).code == kExitUsage);

    const auto prof = run({"remainder", "--profile", "--config", kConfigDir + "/non_commuting_linear.json"});
    CHECK(prof.code == 0);
    CHECK(prof.err.find("C_hat=") != std::string::npos);
    const auto sweep = run({"remainder", "--profile", "--gamma-sweep", "2,3", "--config",
                            kConfigDir + "/non_commuting_linear.json"});
    CHECK(parse_csv(sweep.out).size() == 1 + 2 * 36);

    json blow = json::parse(R"J({
      "field": {"e": 1, "d": 1, "components": [[{"coeffs": {"(2)": 1.0}}]]},
      "path": {"times": [0, 1, 2], "points": [[0], [0.001], [1]]},
      "y0": [10.0], "orders": [1]})J");
    const auto b = run({"remainder", "--config", write_temp(blow, "blowup")});
    CHECK(b.code == kExitUsage);
    CHECK(b.err.find("segment 1") != std::string::npos);
}

TEST_CASE("decay subcommand") {
    const auto mono = write_temp(json::parse(R"J({"path":{"times":[0,1,2],"points":[[0],[0.4],[1]]},"max_level":6})J"),
                                 "mono");
    const auto r = run({"decay", "--config", mono});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][3]) == doctest::Approx(std::stod(rows[i][4])).epsilon(1e-13));
    }
    const auto zero = write_temp(json::parse(R"J({"path":{"times":[0,1],"points":[[0],[1]]},"max_level":0})J"), "lvl0");
    CHECK(run({"decay", "--config", zero}).code == kExitUsage);
}

TEST_CASE("neoclassical subcommand") {
    const auto eq = run({"neoclassical", "--p", "1", "--samples", "50", "--seed", "3"});
    CHECK(eq.code == 0);
    for (const auto& row : parse_csv(eq.out)) {
        if (row[0] == "a") continue;
        CHECK(std::stod(row[4]) == doctest::Approx(std::stod(row[5])).epsilon(1e-12));
    }
    CHECK(eq.err.find("beta(1)=4.5797") != std::string::npos);
    const auto many = run({"neoclassical", "--samples", "10000", "--seed", "7"});
    CHECK(many.code == 0);
    CHECK(parse_csv(many.out).size() == 10001);
    CHECK(run({"neoclassical", "--p", "0.5"}).code == kExitUsage);
}

TEST_CASE("removal subcommand") {
    const auto r = run({"removal", "--config", kConfigDir + "/non_commuting_linear.json", "--seed", "11"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[1][4] == "2");
    CHECK(rows[1][6] == "0");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][8]) < 1e-12);
        CHECK(std::stod(rows[i][9]) < 1e-12);
        CHECK(rows[i].back() == "true");
    }
}

TEST_CASE("output is deterministic and honours --out and the seed fallback") {
    const std::vector<std::string> args{"removal", "--config", kConfigDir + "/non_commuting_linear.json", "--seed", "5"};
    CHECK(run(args).out == run(args).out);
    const auto file = (std::filesystem::temp_directory_path() / "rough_taylor_test_out.csv").string();
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", file, "--jobs", "1"});
    CHECK(run(with_out).out.empty());
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run(args).out);

    setenv("ROUGH_TAYLOR_SEED", "5", 1);
    CHECK(run({"removal", "--config", kConfigDir + "/non_commuting_linear.json"}).out == run(args).out);
    setenv("ROUGH_TAYLOR_SEED", "6", 1);
    CHECK(run({"removal", "--config", kConfigDir + "/non_commuting_linear.json"}).out != run(args).out);
    unsetenv("ROUGH_TAYLOR_SEED");
}
