#pragma once

#include "hexlat/solver.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hexlat::app {

/// Run parameters. Lengths in pm, angles in radians, stresses in any unit.
///
/// Keys (flat `key = value`, `#` starts a comment):
///   a             lattice constant, default 246
///   lambda        hole radius; or lambda_ratio = lambda / a (default 0.2)
///   m, n          chiral indices (default 1, 1); or alpha (rad) directly
///   sigma1, sigma2  remote stresses, default 2 and 1
///   K             truncation order, default 16
///   shells        hexagonal shells in the lattice sums, default 64
///   s_max         lattice-sum order (sums command), default from K
///   nu            bond Poisson ratio; or nu_eff (effective)
///   out           output directory, default "."
///   field_points  samples per curve for field plots, default 61
///   sweep_min, sweep_max, sweep_points  lambda/a range for moduli sweeps,
///                 defaults 0.01, 0.225, 44
struct RunConfig {
    double a = 246.0;
    std::optional<double> lambda;
    std::optional<double> lambda_ratio;
    std::optional<int> m, n;
    std::optional<double> alpha;
    double sigma1 = 2.0;
    double sigma2 = 1.0;
    int K = kDefaultTruncation;
    int shells = kDefaultShells;
    std::optional<int> s_max;
    std::optional<double> nu;
    std::optional<double> nu_eff;
    std::filesystem::path out = ".";
    int field_points = 61;
    double sweep_min = 0.01;
    double sweep_max = 0.225;
    int sweep_points = 44;

    double hole_radius() const;
    LatticeSpec lattice() const;
    LoadCase load() const;
    ProblemSpec problem() const;
};

/// Parses `key = value` lines. Throws ConfigurationError with the line
/// number on malformed input or unknown keys.
std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin);

/// Applies entries in order, then validates the physical constraints.
RunConfig make_config(const std::vector<std::map<std::string, std::string>>& layers);

/// Reads the file (if any) and overlays `key=value` overrides.
RunConfig load_config(const std::optional<std::filesystem::path>& path, const std::vector<std::string>& overrides);

}  // namespace hexlat::app
