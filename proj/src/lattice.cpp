#include "hexlat/lattice.hpp"

#include "hexlat/elliptic.hpp"
#include "hexlat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hexlat {

namespace {

LatticeSpec make_spec(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("lattice constant must be positive");
    LatticeSpec spec;
    spec.a = a;
    spec.omega1 = Complex(a * std::numbers::sqrt3 / 2.0, -a / 2.0);
    spec.omega2 = Complex(a * std::numbers::sqrt3 / 2.0, a / 2.0);
    return spec;
}

// Point at which the Natanzon period constants are sampled (units of a).
constexpr Complex kGammaProbe{0.1, 0.05};

}  // namespace

double LatticeSpec::cell_area() const { return std::abs(std::imag(omega1 * std::conj(omega2))); }

double chiral_angle(int m, int n) {
    if (m == 0 && n == 0) throw InvalidArgument("chiral vector (0, 0) has no direction");
    const double norm = 2.0 * std::sqrt(double(n) * n + double(m) * m + double(n) * m);
    const double cosine = std::clamp((2.0 * n + m) / norm, -1.0, 1.0);
    return std::numbers::pi / 6.0 - std::acos(cosine);
}

LatticeSpec build_lattice(double a, int m, int n) {
    LatticeSpec spec = make_spec(a);
    spec.alpha = chiral_angle(m, n);
    spec.chiral = ChiralIndices{m, n};
    return spec;
}

LatticeSpec build_lattice_with_angle(double a, double alpha) {
    if (!std::isfinite(alpha)) throw InvalidArgument("angle must be finite");
    LatticeSpec spec = make_spec(a);
    spec.alpha = alpha;
    return spec;
}

double LatticeSums::c(int s) const { return c_norm.at(s) * std::pow(a, -2.0 * s); }
double LatticeSums::d(int s) const { return d_norm.at(s) * std::pow(a, -2.0 * s); }
double LatticeSums::c_direct(int s) const { return c_direct_norm.at(s) * std::pow(a, -2.0 * s); }

std::vector<double> c_from_recursion(double c3, int s_max) {
    std::vector<double> c(std::max(s_max, 3) + 1, 0.0);
    c[3] = c3;
    for (int s = 2; 3 * s <= s_max; ++s) {
        double acc = 0.0;
        for (int t = 1; t <= s - 1; ++t) acc += c[3 * t] * c[3 * (s - t)];
        c[3 * s] = acc / ((6.0 * s + 1.0) * (s - 1.0));
    }
    c.resize(s_max + 1);
    return c;
}

LatticeSums compute_lattice_sums(const LatticeSpec& spec, int s_max, int shells) {
    if (s_max < 3) throw InvalidArgument("s_max must be at least 3");
    if (shells < 1) throw InvalidArgument("shells must be positive");

    const LatticeSpec unit = build_lattice_with_angle(1.0, spec.alpha);
    const std::size_t count = std::size_t(s_max - 1);  // s = 2..s_max

    // Components [0, count) hold c_s / (2s - 1), [count, 2 count) hold d_s.
    auto per_shell = accumulate_shells(unit.omega1, unit.omega2, shells, 2 * count,
                                       [&](Complex w, std::span<Complex> out) {
                                           const Complex iw = 1.0 / w;
                                           const Complex iw2 = iw * iw;
                                           Complex p = iw2 * iw2;        // w^-4
                                           Complex q = std::conj(w) * p * iw;  // conj(w) w^-5
                                           for (std::size_t i = 0; i < count; ++i) {
                                               out[i] += p;
                                               out[count + i] += q;
                                               p *= iw2;
                                               q *= iw2;
                                           }
                                       });

    LatticeSums sums;
    sums.a = spec.a;
    sums.s_max = s_max;
    sums.shells = shells;
    sums.c_direct_norm.assign(s_max + 1, 0.0);
    sums.d_norm.assign(s_max + 1, 0.0);

    double worst = 0.0;
    bool fitted = true;
    for (std::size_t i = 0; i < count; ++i) {
        const int s = int(i) + 2;
        const ShellSum cs = finish_shell_sum(per_shell[i], 2 * s - 1);
        const ShellSum ds = finish_shell_sum(per_shell[count + i], 2 * s - 1);
        sums.c_direct_norm[s] = (2.0 * s - 1.0) * cs.value.real();
        sums.d_norm[s] = ds.value.real();
        worst = std::max({worst, (2.0 * s - 1.0) * cs.tail_estimate / std::max(1.0, std::abs(sums.c_direct_norm[s])),
                          ds.tail_estimate / std::max(1.0, std::abs(sums.d_norm[s]))});
        fitted = fitted && cs.tail_fitted && ds.tail_fitted;
    }
    sums.tail_estimate = worst;
    if (!fitted || worst > kTailTolerance) {
        std::ostringstream msg;
        msg << "lattice sums not converged over " << shells << " shells (relative tail estimate " << worst << ")";
        throw PrecisionError(msg.str(), worst);
    }

    // Production c_s: direct below 6, recursion from c_3 above.
    sums.c_norm = c_from_recursion(sums.c_direct_norm[3], s_max);
    for (int s = 2; s < std::min(6, s_max + 1); ++s) sums.c_norm[s] = sums.c_direct_norm[s];

    const double a = spec.a;
    sums.g2 = 20.0 * sums.c_direct_norm[2] * std::pow(a, -4.0);
    sums.g3 = 28.0 * sums.c_direct_norm[3] * std::pow(a, -6.0);

    sums.delta1 = 2.0 * zeta_direct(unit.omega1 / 2.0, unit, shells) / a;
    sums.delta2 = 2.0 * zeta_direct(unit.omega2 / 2.0, unit, shells) / a;
    sums.delta = std::real(std::conj(sums.delta1) / spec.omega1);

    const Complex probe = kGammaProbe;
    const Complex wp0 = wp_deriv_direct(probe, 0, unit, shells);
    const Complex n0 = natanzon_deriv_direct(probe, 0, unit, shells);
    sums.gamma1 = (natanzon_deriv_direct(probe + unit.omega1, 0, unit, shells) - n0 - std::conj(unit.omega1) * wp0) / a;
    sums.gamma2 = (natanzon_deriv_direct(probe + unit.omega2, 0, unit, shells) - n0 - std::conj(unit.omega2) * wp0) / a;
    return sums;
}

}  // namespace hexlat
