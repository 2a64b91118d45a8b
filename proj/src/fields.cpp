#include "hexlat/fields.hpp"

#include "hexlat/elliptic.hpp"
#include "hexlat/errors.hpp"

#include <cmath>
#include <numbers>

namespace hexlat {

Solution solve_problem(const ProblemSpec& prob, int shells) {
    prob.validate();
    return solve_problem(prob, compute_lattice_sums(prob.spec, required_s_max(prob.K), shells));
}

Solution solve_problem(const ProblemSpec& prob, const LatticeSums& sums) {
    prob.validate();
    SeriesTables tables = series_tables(sums, prob.lambda, prob.K);
    PotentialCoefficients coeffs = solve_coefficients(prob, tables);
    PotentialField field(tables, coeffs);
    return Solution{prob, sums, std::move(tables), std::move(coeffs), std::move(field)};
}

std::pair<double, double> uniform_polar_stress(double /*r*/, double theta, const LoadCase& load) {
    const double psi = theta - load.alpha;
    return {load.sigma_plus() + load.sigma_minus() * std::cos(2.0 * psi), -load.sigma_minus() * std::sin(2.0 * psi)};
}

PotentialValues potentials_eval(Complex z, const Solution& sol) { return sol.field.at(z); }

FieldSample total_stress(Complex z, const Solution& sol) {
    const FoldedPoint f = fold_to_cell(z, sol.field.lattice());
    const PotentialValues v = sol.field.local(f.z);
    const LoadCase& load = sol.prob.load;

    const Complex Phi = v.Phi + load.sigma_plus() / 2.0;
    const Complex Psi = v.Psi - load.sigma_minus() * std::polar(1.0, -2.0 * load.alpha);
    const Complex K = std::conj(f.z) * v.dPhi + Psi;

    FieldSample s;
    s.z = z;
    s.r = std::abs(f.z);
    s.theta = std::arg(f.z);
    const double sum = 4.0 * Phi.real();
    const Complex dev = 2.0 * K;  // sigma_y - sigma_x + 2i tau_xy
    s.sigma_x = 0.5 * (sum - dev.real());
    s.sigma_y = 0.5 * (sum + dev.real());
    s.tau_xy = 0.5 * dev.imag();

    const Complex polar = 2.0 * Phi.real() - K * std::polar(1.0, 2.0 * s.theta);  // sigma_r - i tau
    s.sigma_r = polar.real();
    s.tau_rtheta = -polar.imag();
    s.sigma_theta = sum - s.sigma_r;
    return s;
}

FieldSample total_stress(double r, double theta, const Solution& sol) {
    FieldSample s = total_stress(std::polar(r, theta), sol);
    s.r = r;
    s.theta = theta;
    return s;
}

double boundary_residual(const Solution& sol, int n_theta) {
    if (n_theta < 64) throw InvalidArgument("boundary residual needs at least 64 angles");
    return rim_traction_residual(sol.field, sol.prob.load, n_theta);
}

namespace {

double kolosov(double nu) {
    if (!(nu > -1.0 && nu < 0.5)) throw InvalidArgument("Poisson ratio must lie in (-1, 0.5)");
    return (3.0 - nu) / (1.0 + nu);
}

}  // namespace

Complex total_displacement(Complex z, const Solution& sol, double nu) {
    const double kappa = kolosov(nu);
    const LoadCase& load = sol.prob.load;
    const PotentialValues v = sol.field.at(z);
    const Primitives p = sol.field.primitives_at(z);
    return (kappa - 1.0) * load.sigma_plus() * z / 2.0 +
           load.sigma_minus() * std::polar(1.0, 2.0 * load.alpha) * std::conj(z) + kappa * p.phi -
           z * std::conj(v.Phi) - std::conj(p.psi);
}

Complex displacement_jump(int j, const Solution& sol, double nu) {
    if (j != 1 && j != 2) throw InvalidArgument("period index must be 1 or 2");
    const double kappa = kolosov(nu);
    const LoadCase& load = sol.prob.load;
    const Complex w = j == 1 ? sol.prob.spec.omega1 : sol.prob.spec.omega2;
    const Complex dj = (j == 1 ? sol.tables.delta1 : sol.tables.delta2) / sol.tables.a;
    const double lam2 = sol.prob.lambda * sol.prob.lambda;
    const PotentialCoefficients& c = sol.coeffs;
    return (kappa - 1.0) * load.sigma_plus() * w / 2.0 +
           load.sigma_minus() * std::polar(1.0, 2.0 * load.alpha) * std::conj(w) +
           (kappa * c.alpha0 - std::conj(c.alpha0)) * w - std::conj(c.beta0) * std::conj(w) -
           kappa * c.alpha[0] * lam2 * dj + std::conj(c.beta[0]) * lam2 * std::conj(dj);
}

PolarStress isolated_hole_reference(double r, double theta, double lambda, const LoadCase& load) {
    if (!(lambda > 0.0)) throw InvalidArgument("hole radius must be positive");
    if (r < lambda * (1.0 - 1e-12)) throw DomainError("point lies inside the hole");
    const double q = lambda * lambda / (r * r);
    const double c = std::cos(2.0 * (theta - load.alpha));
    const double s = std::sin(2.0 * (theta - load.alpha));
    const double sp = load.sigma_plus();
    const double sm = load.sigma_minus();
    PolarStress out;
    out.sigma_r = sp * (1.0 - q) + sm * (1.0 - 4.0 * q + 3.0 * q * q) * c;
    out.sigma_theta = sp * (1.0 + q) - sm * (1.0 + 3.0 * q * q) * c;
    out.tau = -sm * (1.0 + 2.0 * q - 3.0 * q * q) * s;
    return out;
}

double CellGeometry::boundary_radius(double theta) const {
    const double sector = std::numbers::pi / 3.0;
    double t = std::fmod(theta, sector);
    if (t < 0.0) t += sector;
    return spec.a / (std::sin(t) + std::numbers::sqrt3 * std::cos(t));
}

bool CellGeometry::contains(Complex z) const {
    const double r = std::abs(z);
    if (r < lambda) return false;
    return r <= boundary_radius(std::arg(z)) * (1.0 + 1e-12);
}

}  // namespace hexlat
