#include "config.hpp"

#include "hexlat/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hexlat::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"a",      "lambda", "lambda_ratio", "m",         "n",         "alpha",
                                            "sigma1", "sigma2", "K",            "shells",    "s_max",     "nu",
                                            "nu_eff", "out",    "field_points", "sweep_min", "sweep_max", "sweep_points"};
    return keys;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigurationError("key '" + key + "': not a number: '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigurationError("key '" + key + "': not an integer: '" + v + "'");
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigurationError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().contains(key)) throw ConfigurationError(where + ": unknown key '" + key + "'");
        if (value.empty()) throw ConfigurationError(where + ": empty value for '" + key + "'");
        if (out.contains(key)) throw ConfigurationError(where + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

RunConfig make_config(const std::vector<std::map<std::string, std::string>>& layers) {
    std::map<std::string, std::string> merged;
    for (const auto& layer : layers) {
        for (const auto& [k, v] : layer) {
            // A later layer choosing one of an exclusive pair drops the other.
            if (k == "lambda") merged.erase("lambda_ratio");
            if (k == "lambda_ratio") merged.erase("lambda");
            if (k == "alpha") merged.erase("m"), merged.erase("n");
            if (k == "m" || k == "n") merged.erase("alpha");
            if (k == "nu") merged.erase("nu_eff");
            if (k == "nu_eff") merged.erase("nu");
            merged[k] = v;
        }
    }

    RunConfig c;
    for (const auto& [k, v] : merged) {
        if (k == "a") c.a = to_double(k, v);
        else if (k == "lambda") c.lambda = to_double(k, v);
        else if (k == "lambda_ratio") c.lambda_ratio = to_double(k, v);
        else if (k == "m") c.m = to_int(k, v);
        else if (k == "n") c.n = to_int(k, v);
        else if (k == "alpha") c.alpha = to_double(k, v);
        else if (k == "sigma1") c.sigma1 = to_double(k, v);
        else if (k == "sigma2") c.sigma2 = to_double(k, v);
        else if (k == "K") c.K = to_int(k, v);
        else if (k == "shells") c.shells = to_int(k, v);
        else if (k == "s_max") c.s_max = to_int(k, v);
        else if (k == "nu") c.nu = to_double(k, v);
        else if (k == "nu_eff") c.nu_eff = to_double(k, v);
        else if (k == "out") c.out = v;
        else if (k == "field_points") c.field_points = to_int(k, v);
        else if (k == "sweep_min") c.sweep_min = to_double(k, v);
        else if (k == "sweep_max") c.sweep_max = to_double(k, v);
        else if (k == "sweep_points") c.sweep_points = to_int(k, v);
    }

    if (!(c.a > 0.0)) throw ConfigurationError("a must be positive");
    if (c.m.has_value() != c.n.has_value()) throw ConfigurationError("chiral indices m and n must be given together");
    if (c.m && *c.m == 0 && *c.n == 0) throw ConfigurationError("chiral vector (0, 0) is not allowed");
    const double ratio = c.hole_radius() / c.a;
    if (!(ratio > 0.0 && ratio < 0.5)) throw ConfigurationError("hole radius must satisfy 0 < lambda < a/2");
    if (c.K < 4) throw ConfigurationError("K must be at least 4");
    if (c.shells < 1) throw ConfigurationError("shells must be positive");
    if (c.s_max && *c.s_max < 3) throw ConfigurationError("s_max must be at least 3");
    if (c.nu && !(*c.nu > -1.0 && *c.nu < 0.5)) throw ConfigurationError("nu must lie in (-1, 0.5)");
    if (c.nu_eff && !(*c.nu_eff > -1.0 && *c.nu_eff < 0.5)) throw ConfigurationError("nu_eff must lie in (-1, 0.5)");
    if (c.field_points < 2) throw ConfigurationError("field_points must be at least 2");
    if (c.sweep_points < 2) throw ConfigurationError("sweep_points must be at least 2");
    if (!(c.sweep_min > 0.0 && c.sweep_min < c.sweep_max && c.sweep_max < 0.5))
        throw ConfigurationError("sweep range must satisfy 0 < sweep_min < sweep_max < 0.5");
    return c;
}

RunConfig load_config(const std::optional<std::filesystem::path>& path, const std::vector<std::string>& overrides) {
    std::vector<std::map<std::string, std::string>> layers;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigurationError("cannot read config file " + path->string());
        std::stringstream buf;
        buf << in.rdbuf();
        layers.push_back(parse_key_values(buf.str(), path->string()));
    }
    std::map<std::string, std::string> cli;
    for (const auto& o : overrides) {
        const auto one = parse_key_values(o, "argument '" + o + "'");
        for (const auto& [k, v] : one) cli[k] = v;
    }
    layers.push_back(cli);
    return make_config(layers);
}

double RunConfig::hole_radius() const {
    if (lambda) return *lambda;
    return a * lambda_ratio.value_or(0.2);
}

LatticeSpec RunConfig::lattice() const {
    if (alpha) return build_lattice_with_angle(a, *alpha);
    return build_lattice(a, m.value_or(1), n.value_or(1));
}

LoadCase RunConfig::load() const { return LoadCase{sigma1, sigma2, lattice().alpha}; }

ProblemSpec RunConfig::problem() const {
    ProblemSpec p;
    p.spec = lattice();
    p.lambda = hole_radius();
    p.load = load();
    p.K = K;
    return p;
}

}  // namespace hexlat::app
