#pragma once

#include "hexlat/elliptic.hpp"
#include "hexlat/fields.hpp"
#include "hexlat/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace hexlat::test {

inline constexpr double kA = 246.0;
inline constexpr double kPi = std::numbers::pi;

inline double rel(Complex x, Complex ref) { return std::abs(x - ref) / std::abs(ref); }
inline double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

/// Armchair lattice at a = 246 pm with sums sized for the default truncation.
inline const LatticeSums& default_sums() {
    static const LatticeSums sums = compute_lattice_sums(build_lattice(kA, 1, 1), required_s_max(20));
    return sums;
}

inline ProblemSpec problem(double lambda_ratio, double sigma1, double sigma2, double alpha,
                           int K = kDefaultTruncation) {
    ProblemSpec p;
    p.spec = build_lattice_with_angle(kA, alpha);
    p.lambda = lambda_ratio * kA;
    p.load = LoadCase{sigma1, sigma2, alpha};
    p.K = K;
    return p;
}

inline Solution solve(double lambda_ratio, double sigma1, double sigma2, double alpha, int K = kDefaultTruncation) {
    return solve_problem(problem(lambda_ratio, sigma1, sigma2, alpha, K), default_sums());
}

/// Uniformly random point in the fundamental cell outside the disc of
/// radius r_min.
inline Complex random_cell_point(std::mt19937_64& rng, double r_min) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const LatticeSpec spec = build_lattice(kA, 1, 1);
    for (;;) {
        const Complex z(U(rng) * kA / std::sqrt(3.0), U(rng) * kA / 2.0);
        if (std::abs(z) < r_min) continue;
        if (std::abs(fold_to_cell(z, spec).z - z) > 0.0) continue;
        return z;
    }
}

/// Potentials assembled term by term from direct lattice sums, without the
/// Laurent tables or any folding. Serves as the oracle for the field module.
struct DirectPotentials {
    Complex Phi, dPhi, Psi, phi, psi;
};

inline DirectPotentials direct_potentials(Complex z, const Solution& sol, int shells = 48) {
    const LatticeSpec& spec = sol.prob.spec;
    const auto& c = sol.coeffs;
    const double lam = sol.prob.lambda;
    DirectPotentials out;
    out.Phi = c.alpha0;
    out.Psi = c.beta0;
    out.phi = c.alpha0 * z;
    out.psi = c.beta0 * z;
    const Complex zeta = zeta_direct(z, spec, shells);
    out.phi -= c.alpha[0] * lam * lam * zeta;
    out.psi -= c.beta[0] * lam * lam * zeta;
    for (int k = 1; k <= c.K(); ++k) {
        const double w = std::pow(lam, 2 * k) / factorial(2 * k - 1);
        const Complex ak = c.alpha[k - 1], bk = c.beta[k - 1];
        const Complex p0 = wp_deriv_direct(z, 2 * k - 2, spec, shells);
        const Complex p1 = wp_deriv_direct(z, 2 * k - 1, spec, shells);
        out.Phi += ak * w * p0;
        out.dPhi += ak * w * p1;
        out.Psi += bk * w * p0 - ak * w * natanzon_deriv_direct(z, 2 * k - 1, spec, shells);
        if (k >= 2) {
            const Complex pm = wp_deriv_direct(z, 2 * k - 3, spec, shells);
            out.phi += ak * w * pm;
            out.psi += bk * w * pm;
        }
        out.psi -= ak * w * natanzon_deriv_direct(z, 2 * k - 2, spec, shells);
    }
    return out;
}

/// 2G (u + i v) from the direct potentials.
inline Complex direct_displacement(Complex z, const Solution& sol, double nu, int shells = 48) {
    const DirectPotentials d = direct_potentials(z, sol, shells);
    const double kappa = (3.0 - nu) / (1.0 + nu);
    const LoadCase& L = sol.prob.load;
    const Complex e2a = std::polar(1.0, 2.0 * L.alpha);
    return (kappa - 1.0) * L.sigma_plus() * z / 2.0 + L.sigma_minus() * e2a * std::conj(z) + kappa * d.phi -
           z * std::conj(d.Phi) - std::conj(d.psi);
}

}  // namespace hexlat::test
