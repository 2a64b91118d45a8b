#include "commands.hpp"
#include "config.hpp"
#include "svg.hpp"

#include "hexlat/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hexlat;
using namespace hexlat::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hexlat_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json report(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "check.json")); }

RunConfig config(std::vector<std::string> overrides, const fs::path& out) {
    overrides.push_back("out=" + out.string());
    return load_config(std::nullopt, overrides);
}

}  // namespace

TEST_CASE("key-value parsing") {
    const auto kv = parse_key_values("# comment\n a = 2  \n\nsigma1=3 # trailing\n", "cfg");
    CHECK(kv.at("a") == "2");
    CHECK(kv.at("sigma1") == "3");
    CHECK_THROWS_AS(parse_key_values("bogus = 1\n", "cfg"), ConfigurationError);
    CHECK_THROWS_AS(parse_key_values("a = 1\na = 2\n", "cfg"), ConfigurationError);
    CHECK_THROWS_AS(parse_key_values("a 1\n", "cfg"), ConfigurationError);
    CHECK_THROWS_AS(parse_key_values("a =\n", "cfg"), ConfigurationError);
    try {
        parse_key_values("a = 1\n\nwhat = 2\n", "file.cfg");
    } catch (const ConfigurationError& e) {
        CHECK(std::string(e.what()).find("file.cfg:3") != std::string::npos);
    }
}

TEST_CASE("configuration defaults and layering") {
    const RunConfig d = make_config({});
    CHECK(d.a == 246.0);
    CHECK(d.hole_radius() == doctest::Approx(0.2 * 246.0));
    CHECK(d.sigma1 == 2.0);
    CHECK(d.sigma2 == 1.0);
    CHECK(d.K == 16);
    CHECK(d.shells == 64);
    CHECK(std::abs(d.lattice().alpha) < 1e-15);

    const RunConfig c = make_config({{{"lambda", "30"}, {"m", "0"}, {"n", "1"}}, {{"lambda_ratio", "0.1"}, {"alpha", "0.2"}}});
    CHECK(c.hole_radius() == doctest::Approx(24.6));
    CHECK(c.lattice().alpha == 0.2);
    CHECK_FALSE(c.m.has_value());
    const RunConfig e = make_config({{{"nu", "0.2"}}, {{"nu_eff", "0.3"}}});
    CHECK_FALSE(e.nu.has_value());
    CHECK(*e.nu_eff == 0.3);
}

TEST_CASE("configuration validation") {
    auto bad = [](std::map<std::string, std::string> kv) { return make_config({kv}); };
    CHECK_THROWS_AS(bad({{"a", "-1"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"a", "abc"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"lambda_ratio", "0.5"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"K", "3"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"K", "4.5"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"m", "1"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"m", "0"}, {"n", "0"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"nu", "0.5"}}), ConfigurationError);
    CHECK_THROWS_AS(bad({{"sweep_min", "0.3"}, {"sweep_max", "0.2"}}), ConfigurationError);
    CHECK_THROWS_AS(load_config(fs::path("/nonexistent/hexlat.cfg"), {}), ConfigurationError);
}

TEST_CASE("config file with command-line overrides") {
    const fs::path dir = scratch("cfgfile");
    fs::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "a = 100\nsigma1 = 5\n";
    const RunConfig c = load_config(dir / "run.cfg", {"sigma1=7", "K=12"});
    CHECK(c.a == 100.0);
    CHECK(c.sigma1 == 7.0);
    CHECK(c.K == 12);
}

TEST_CASE("sums command") {
    const fs::path dir = scratch("sums");
    CHECK(run_command("sums", config({}, dir)) == kExitOk);
    const auto j = report(dir);
    CHECK(j["schema"] == "hexlat.check");
    CHECK(j["schema_version"] == kCheckSchemaVersion);
    CHECK(j["status"] == "ok");
    CHECK(j["checks"]["legendre_residual"].get<double>() <= 1e-10);
    CHECK(j["checks"]["c6_recursion_gap"].get<double>() <= 1e-8);
    CHECK(fs::exists(dir / "sums.csv"));
}

TEST_CASE("c3 scales with the lattice constant") {
    auto c3 = [](const fs::path& dir) {
        std::istringstream in(slurp(dir / "sums.csv"));
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("c,3,", 0) == 0) return std::stod(line.substr(4, line.find(',', 4) - 4));
        return 0.0;
    };
    const fs::path small = scratch("sums_a2"), big = scratch("sums_a246");
    REQUIRE(run_command("sums", config({"a=2", "s_max=8"}, small)) == kExitOk);
    REQUIRE(run_command("sums", config({"a=246", "s_max=8"}, big)) == kExitOk);
    CHECK(c3(small) / c3(big) == doctest::Approx(std::pow(123.0, 6)).epsilon(1e-12));
}

TEST_CASE("starved run reports a precision failure") {
    const fs::path dir = scratch("starved");
    CHECK(run_command("sums", config({"s_max=3", "shells=4"}, dir)) == kExitPrecision);
    const auto j = report(dir);
    CHECK(j["status"] == "precision_failure");
    CHECK(j["error"]["tail_estimate"].get<double>() > 0.0);
}

TEST_CASE("unknown command") {
    const fs::path dir = scratch("unknown");
    CHECK(run_command("plot", config({}, dir)) == kExitConfig);
}

TEST_CASE("solve command") {
    const fs::path dir = scratch("solve");
    REQUIRE(run_command("solve", config({"alpha=0.3927"}, dir)) == kExitOk);
    const auto c = report(dir)["checks"];
    CHECK(c["boundary_residual_relative"].get<double>() <= 1e-6);
    CHECK(c["truncation_drift"].get<double>() <= 1e-6);
    const auto coeffs = nlohmann::json::parse(slurp(dir / "coeffs.json"));
    CHECK(coeffs["alpha"].size() == 16);
}

TEST_CASE("field command and figure trends") {
    const fs::path dir = scratch("field");
    REQUIRE(run_command("field", config({"field_points=21"}, dir)) == kExitOk);
    const auto c = report(dir)["checks"];
    CHECK(c["fig2_rim_stress"].get<double>() <= 1e-6);
    CHECK(c["fig2_sigma_r_max_at_vertex"] == true);
    CHECK(c["fig3_amplitude_grows_with_r"] == true);
    CHECK(c["fig6_hole_part_variation_largest_at_rim"] == true);
    for (const char* f : {"field.csv", "fig2.svg", "fig3.svg", "fig6.svg"}) CHECK(fs::exists(dir / f));
    std::istringstream csv(slurp(dir / "field.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "figure,curve,r,theta,alpha,sigma_r,tau_rtheta,sigma_theta,sigma_x,sigma_y,tau_xy,2Gu,2Gv");
}

TEST_CASE("moduli command in both directions") {
    const fs::path fwd = scratch("moduli_bond"), inv = scratch("moduli_eff");
    REQUIRE(run_command("moduli", config({"nu_eff=0.3", "sweep_min=0.001", "sweep_points=5", "sweep_max=0.2"}, fwd)) ==
            kExitOk);
    auto c = report(fwd)["checks"];
    CHECK(c["fig4_nu_decreasing"] == true);
    CHECK(c["round_trip_max"].get<double>() <= 1e-8);
    CHECK(fs::exists(fwd / "fig4.svg"));
    std::istringstream in(slurp(fwd / "moduli.csv"));
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    // smallest hole: nu and E/E_eff unchanged
    std::vector<double> cols;
    std::stringstream ss(first);
    for (std::string cell; std::getline(ss, cell, ',');) cols.push_back(std::stod(cell));
    CHECK(cols[8] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(cols[9] == doctest::Approx(1.0).epsilon(1e-5));

    REQUIRE(run_command("moduli", config({"nu=0.2668", "sweep_points=6"}, inv)) == kExitOk);
    c = report(inv)["checks"];
    CHECK(c["fig5_nu_eff_increasing"] == true);
    CHECK(c["fig5_E_ratio_decreasing"] == true);
    CHECK(fs::exists(inv / "fig5.svg"));
}

TEST_CASE("output is deterministic") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(run_command("solve", config({"lambda_ratio=0.15"}, a)) == kExitOk);
    REQUIRE(run_command("solve", config({"lambda_ratio=0.15"}, b)) == kExitOk);
    CHECK(slurp(a / "coeffs.json") == slurp(b / "coeffs.json"));
    CHECK(slurp(a / "check.json") == slurp(b / "check.json"));
    const fs::path c = scratch("det_c"), d = scratch("det_d");
    REQUIRE(run_command("sums", config({"s_max=12"}, c)) == kExitOk);
    REQUIRE(run_command("sums", config({"s_max=12"}, d)) == kExitOk);
    CHECK(slurp(c / "sums.csv") == slurp(d / "sums.csv"));
}

TEST_CASE("svg emitter") {
    const Panel p{"t<1>", "x", "y", {Series{"s", {0.0, 1.0, 2.0}, {1.0, 4.0, 9.0}}, Series{"d", {0, 2}, {0, 0}, true}}};
    const std::string s1 = render_svg({p, p}, "banner");
    CHECK(s1 == render_svg({p, p}, "banner"));
    CHECK(s1.find("<!-- banner -->") != std::string::npos);
    CHECK(s1.find("t&lt;1&gt;") != std::string::npos);
    CHECK(s1.find("stroke-dasharray") != std::string::npos);
    CHECK(s1.find("width=\"840\"") != std::string::npos);
    CHECK(num(0.1) == "0.10000000000000001");
}
