#pragma once

#include "hexlat/solver.hpp"

#include <array>

namespace hexlat {

/// Bond (E, nu) and effective (E_eff, nu_eff) elastic constants.
/// E and E_eff share whatever unit the caller uses.
struct ModuliSet {
    double E = 0.0;
    double nu = 0.0;
    double E_eff = 0.0;
    double nu_eff = 0.0;

    double G() const { return E / (2.0 * (1.0 + nu)); }
    double kappa() const { return (3.0 - nu) / (1.0 + nu); }
    double kappa_plus() const { return (1.0 + nu_eff) / E_eff; }
    double kappa_minus() const { return (1.0 - nu_eff) / E_eff; }
};

/// Load- and material-independent inputs of the homogenization formulas.
struct HomogenizationData {
    double alpha0_plus = 0.0;
    double beta1_plus = 0.0;
    double alpha1_minus = 0.0;
    double beta0_minus = 0.0;
    double delta = 0.0;   ///< pm^-2
    double lambda = 0.0;  ///< pm
    double a = 0.0;       ///< pm
    Complex delta1, delta2;  ///< pm^-1
    Complex omega1, omega2;  ///< pm

    /// lambda^2 delta, equal to the porosity b.
    double b() const { return lambda * lambda * delta; }
};

/// Builds the data from unit-load solves. Results are cached per
/// (a, lambda, K, shells); the cache is safe for concurrent readers.
HomogenizationData homogenization_data(const LatticeSpec& spec, double lambda, int K = kDefaultTruncation,
                                       int shells = kDefaultShells);

/// From precomputed sums and unit-load sets (no caching).
HomogenizationData homogenization_data(const LatticeSums& sums, const LatticeSpec& spec, double lambda,
                                       const UnitLoadSets& sets);

/// Bond constants from effective ones: nu = D1/D0, E/E_eff = 2 D2/D0.
/// DegenerateError when D0 vanishes.
ModuliSet bond_from_effective(double E_eff, double nu_eff, const HomogenizationData& data);

/// Effective constants from bond ones:
///   E_eff/E = 2 / [1 - nu + (1+nu)(L- + L+)]
///   nu_eff  = [nu - 1 + (1+nu)(L- - L+)] / [1 - nu + (1+nu)(L- + L+)]
/// with L+ = alpha0+ (kappa - 1) + beta1+ b, L- = 1 - alpha1- b kappa - beta0-.
ModuliSet effective_from_bond(double E, double nu, const HomogenizationData& data);

/// Direct solve of the four complex jump-matching equations for the
/// directional constants kappa_j+- = (1 +- nu_j)/E_j.
struct IsotropyReport {
    Complex determinant;
    double expected_determinant = 0.0;   ///< -12 a^4
    double determinant_rel_error = 0.0;
    std::array<double, 2> kappa_plus{};   ///< kappa_1+, kappa_2+
    std::array<double, 2> kappa_minus{};  ///< kappa_1-, kappa_2-
    double max_imag = 0.0;                ///< largest imaginary part of the solution
    double kappa_plus_closed = 0.0;       ///< (1 + nu_eff)/E_eff from effective_from_bond
    double kappa_minus_closed = 0.0;
    double anisotropy = 0.0;              ///< max |k1 - k2| / |k|
    double closed_form_mismatch = 0.0;    ///< max relative gap to the closed forms
};

IsotropyReport isotropy_check(const HomogenizationData& data, double E, double nu);

}  // namespace hexlat
