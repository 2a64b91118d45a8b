#include "hexlat/homogenize.hpp"

#include "hexlat/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace hexlat {

namespace {

void check_moduli(double E, double nu) {
    if (!(E > 0.0) || !std::isfinite(E)) throw InvalidArgument("Young modulus must be positive");
    if (!(nu > -1.0 && nu < 0.5)) throw InvalidArgument("Poisson ratio must lie in (-1, 0.5)");
}

using CacheKey = std::tuple<double, double, int, int>;

std::shared_mutex& cache_mutex() {
    static std::shared_mutex m;
    return m;
}

std::map<CacheKey, HomogenizationData>& cache() {
    static std::map<CacheKey, HomogenizationData> c;
    return c;
}

}  // namespace

HomogenizationData homogenization_data(const LatticeSums& sums, const LatticeSpec& spec, double lambda,
                                       const UnitLoadSets& sets) {
    const Complex ratio = std::conj(sums.delta1) / spec.omega1;
    if (std::abs(ratio.imag()) > 1e-10 * std::abs(ratio.real()))
        throw ConsistencyError("conj(delta1)/omega1 is not real", std::abs(ratio.imag()));

    HomogenizationData d;
    d.alpha0_plus = sets.plus.alpha0.real();
    d.beta1_plus = sets.plus.beta[0].real();
    d.alpha1_minus = sets.minus.alpha[0].real();
    d.beta0_minus = sets.minus.beta0.real();
    d.delta = sums.delta;
    d.lambda = lambda;
    d.a = spec.a;
    d.delta1 = sums.delta1;
    d.delta2 = sums.delta2;
    d.omega1 = spec.omega1;
    d.omega2 = spec.omega2;
    return d;
}

HomogenizationData homogenization_data(const LatticeSpec& spec, double lambda, int K, int shells) {
    const CacheKey key{spec.a, lambda, K, shells};
    {
        std::shared_lock lock(cache_mutex());
        const auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    const LatticeSpec base = build_lattice_with_angle(spec.a, 0.0);
    const LatticeSums sums = compute_lattice_sums(base, required_s_max(K), shells);
    const UnitLoadSets sets = unit_load_coefficients(series_tables(sums, lambda, K));
    const HomogenizationData data = homogenization_data(sums, base, lambda, sets);

    std::unique_lock lock(cache_mutex());
    cache().emplace(key, data);
    return data;
}

ModuliSet bond_from_effective(double E_eff, double nu_eff, const HomogenizationData& d) {
    check_moduli(E_eff, nu_eff);
    const double b = d.b();
    const double D0 = 2.0 - (1.0 - nu_eff) * (d.beta0_minus - d.alpha1_minus * b) -
                      (1.0 + nu_eff) * (d.beta1_plus * b - 2.0 * d.alpha0_plus);
    const double D1 = 2.0 * nu_eff + (1.0 - nu_eff) * (d.beta0_minus + 3.0 * d.alpha1_minus * b) +
                      (1.0 + nu_eff) * (d.beta1_plus * b + 2.0 * d.alpha0_plus);
    const double D2 = 2.0 * d.alpha1_minus * d.beta1_plus * b * b -
                      (1.0 + 2.0 * d.alpha0_plus) * (d.alpha1_minus * b + d.beta0_minus - 1.0);
    if (std::abs(D0) < 1e-12) throw DegenerateError("bond-moduli determinant vanishes");

    ModuliSet m;
    m.E_eff = E_eff;
    m.nu_eff = nu_eff;
    m.nu = D1 / D0;
    m.E = E_eff * 2.0 * D2 / D0;
    return m;
}

ModuliSet effective_from_bond(double E, double nu, const HomogenizationData& d) {
    check_moduli(E, nu);
    const double kappa = (3.0 - nu) / (1.0 + nu);
    const double b = d.b();
    const double Lp = d.alpha0_plus * (kappa - 1.0) + d.beta1_plus * b;
    const double Lm = 1.0 - d.alpha1_minus * b * kappa - d.beta0_minus;
    const double den = 1.0 - nu + (1.0 + nu) * (Lm + Lp);
    if (std::abs(den) < 1e-12) throw DegenerateError("effective-moduli denominator vanishes");

    ModuliSet m;
    m.E = E;
    m.nu = nu;
    m.E_eff = E * 2.0 / den;
    m.nu_eff = (nu - 1.0 + (1.0 + nu) * (Lm - Lp)) / den;
    return m;
}

IsotropyReport isotropy_check(const HomogenizationData& d, double E, double nu) {
    check_moduli(E, nu);
    const double kappa = (3.0 - nu) / (1.0 + nu);
    const double lam2 = d.lambda * d.lambda;
    const std::array<Complex, 2> w{d.omega1, d.omega2};
    const std::array<Complex, 2> dl{d.delta1, d.delta2};

    // Unknowns (kappa1-, kappa2-, kappa1+, kappa2+). The jump of the
    // homogenized displacement is half of each row times the load.
    Eigen::Matrix4cd M;
    Eigen::Vector4cd rhs;
    for (int j = 0; j < 2; ++j) {
        const Complex wc = std::conj(w[j]);
        M.row(j) << w[j], w[j], wc, -wc;
        M.row(2 + j) << -w[j], w[j], -wc, -wc;
        const Complex bp = (1.0 - nu) / E * w[j] +
                           (1.0 + nu) / E * (d.alpha0_plus * (kappa - 1.0) * w[j] + d.beta1_plus * lam2 * std::conj(dl[j]));
        const Complex bm = (1.0 + nu) / E * (-wc + d.alpha1_minus * lam2 * kappa * dl[j] + d.beta0_minus * wc);
        rhs(j) = 2.0 * bp;
        rhs(2 + j) = 2.0 * bm;
    }

    IsotropyReport rep;
    const Eigen::PartialPivLU<Eigen::Matrix4cd> lu(M);
    rep.determinant = lu.determinant();
    rep.expected_determinant = -12.0 * std::pow(d.a, 4);
    rep.determinant_rel_error = std::abs(rep.determinant - rep.expected_determinant) / std::abs(rep.expected_determinant);
    const Eigen::Vector4cd x = lu.solve(rhs);
    rep.kappa_minus = {x(0).real(), x(1).real()};
    rep.kappa_plus = {x(2).real(), x(3).real()};
    rep.max_imag = x.imag().cwiseAbs().maxCoeff();

    const ModuliSet eff = effective_from_bond(E, nu, d);
    rep.kappa_plus_closed = eff.kappa_plus();
    rep.kappa_minus_closed = eff.kappa_minus();
    rep.anisotropy = std::max(std::abs(x(2).real() - x(3).real()) / std::abs(x(2).real()),
                              std::abs(x(0).real() - x(1).real()) / std::abs(x(0).real()));
    double gap = 0.0;
    for (int j = 0; j < 2; ++j) {
        gap = std::max(gap, std::abs(rep.kappa_plus[j] - rep.kappa_plus_closed) / std::abs(rep.kappa_plus_closed));
        gap = std::max(gap, std::abs(rep.kappa_minus[j] - rep.kappa_minus_closed) / std::abs(rep.kappa_minus_closed));
    }
    rep.closed_form_mismatch = gap;
    return rep;
}

}  // namespace hexlat
