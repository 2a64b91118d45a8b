#include "hexlat/elliptic.hpp"

#include "hexlat/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace hexlat {

namespace {

Complex ipow(Complex z, int p) {
    if (p < 0) return 1.0 / ipow(z, -p);
    Complex result{1.0, 0.0};
    while (p > 0) {
        if (p & 1) result *= z;
        z *= z;
        p >>= 1;
    }
    return result;
}

// p (p-1) ... (p-k+1); zero once a factor hits zero.
double falling(int p, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        if (p - i == 0) return 0.0;
        out *= double(p - i);
    }
    return out;
}

double factorial(int n) { return std::tgamma(double(n) + 1.0); }

LatticeSpec normalized(const LatticeSpec& spec) {
    LatticeSpec unit = spec;
    unit.a = 1.0;
    unit.omega1 = spec.omega1 / spec.a;
    unit.omega2 = spec.omega2 / spec.a;
    return unit;
}

void require_not_pole(Complex zn, const LatticeSpec& unit) {
    const FoldedPoint f = fold_to_cell(zn, unit);
    if (std::abs(f.z) < 1e-12) throw PoleError("evaluation point is a lattice point");
}

}  // namespace

// --- Laurent path ---------------------------------------------------------

EllipticEvaluator::EllipticEvaluator(LatticeSums sums)
    : EllipticEvaluator(sums, Annulus{0.0, sums.a / std::numbers::sqrt3}) {}

EllipticEvaluator::EllipticEvaluator(LatticeSums sums, Annulus annulus, int max_order)
    : sums_(std::move(sums)), annulus_(annulus) {
    const double a = sums_.a;
    if (!(annulus_.r_min >= 0.0) || !(annulus_.r_max > annulus_.r_min))
        throw InvalidArgument("annulus must satisfy 0 <= r_min < r_max");
    if (annulus_.r_max >= 0.95 * a)
        throw InvalidArgument("annulus r_max must stay below 0.95 a (Laurent disc radius is a)");
    if (max_order < 0) throw InvalidArgument("max_order must be non-negative");

    const double r = annulus_.r_max / a;
    int last_needed = 2;
    for (int k = 0; k <= max_order; ++k) {
        double scale = factorial(k + 1) * std::pow(r, -k - 2);
        int last = 2;
        const int s_top = std::min(sums_.s_max, kMaxLaurentTerms + 1);
        for (int s = 2; s <= s_top; ++s) {
            const double tc = std::abs(sums_.c_norm[s]) * falling(2 * s - 2, k) *
                              std::pow(r, 2 * s - 2 - k);
            const double td = 2.0 * s * std::abs(sums_.d_norm[s]) * falling(2 * s - 1, k) *
                              std::pow(r, 2 * s - 1 - k);
            scale = std::max({scale, tc, td});
            if (tc > 1e-16 * scale || td > 1e-16 * scale) last = s;
        }
        last_needed = std::max(last_needed, last);
    }
    if (last_needed > kMaxLaurentTerms)
        throw ConfigurationError("Laurent truncation exceeds the cap of 64 terms; reduce r_max");
    if (last_needed >= sums_.s_max && sums_.s_max <= kMaxLaurentTerms)
        throw ConfigurationError("lattice sums too short for the requested annulus (s_max = " +
                                 std::to_string(sums_.s_max) + ")");
    terms_ = std::max(4, last_needed - 1);
    if (terms_ + 1 > sums_.s_max) throw ConfigurationError("need s_max >= 5 for the Laurent evaluator");
}

void EllipticEvaluator::check_domain(Complex z, bool pole_at_origin) const {
    const double r = std::abs(z);
    if (r == 0.0 && pole_at_origin) throw PoleError("z = 0 is a pole");
    if (r < annulus_.r_min * (1.0 - 1e-12) || r > annulus_.r_max * (1.0 + 1e-12))
        throw DomainError("|z| outside the Laurent annulus");
}

Complex EllipticEvaluator::wp(Complex z, int k) const {
    if (k < 0) throw InvalidArgument("derivative order must be non-negative");
    check_domain(z, true);
    const double a = sums_.a;
    const Complex zn = z / a;
    Complex acc = (k % 2 == 0 ? 1.0 : -1.0) * factorial(k + 1) * ipow(zn, -(k + 2));
    for (int s = 2; s <= terms_ + 1; ++s) {
        const double f = falling(2 * s - 2, k);
        if (f == 0.0 || sums_.c_norm[s] == 0.0) continue;
        acc += sums_.c_norm[s] * f * ipow(zn, 2 * s - 2 - k);
    }
    return acc * std::pow(a, -(k + 2));
}

Complex EllipticEvaluator::zeta(Complex z) const {
    const double a = sums_.a;
    Complex shift{};
    if (std::abs(z) > annulus_.r_max * (1.0 + 1e-12)) {
        LatticeSpec spec = build_lattice_with_angle(a, 0.0);
        const FoldedPoint f = fold_to_cell(z, spec);
        shift = double(f.m) * sums_.delta1 + double(f.n) * sums_.delta2;
        z = f.z;
    }
    check_domain(z, true);
    const Complex zn = z / a;
    Complex acc = 1.0 / zn;
    for (int s = 2; s <= terms_ + 1; ++s) {
        if (sums_.c_norm[s] == 0.0) continue;
        acc -= sums_.c_norm[s] * ipow(zn, 2 * s - 1) / double(2 * s - 1);
    }
    return acc / a + shift;
}

Complex EllipticEvaluator::natanzon(Complex z, int k) const {
    if (k < 0) throw InvalidArgument("derivative order must be non-negative");
    check_domain(z, false);
    const double a = sums_.a;
    const Complex zn = z / a;
    Complex acc{};
    for (int s = 2; s <= terms_ + 1; ++s) {
        const double f = falling(2 * s - 1, k);
        if (f == 0.0 || sums_.d_norm[s] == 0.0) continue;
        acc += 2.0 * s * sums_.d_norm[s] * f * ipow(zn, 2 * s - 1 - k);
    }
    return acc * std::pow(a, -(k + 1));
}

Complex wp_deriv(Complex z, int k, const EllipticEvaluator& ev) { return ev.wp(z, k); }
Complex zeta_fn(Complex z, const EllipticEvaluator& ev) { return ev.zeta(z); }
Complex natanzon_deriv(Complex z, int k, const EllipticEvaluator& ev) { return ev.natanzon(z, k); }

// --- Direct path ------------------------------------------------------------

Complex wp_deriv_direct(Complex z, int k, const LatticeSpec& spec, int shells) {
    if (k < 0) throw InvalidArgument("derivative order must be non-negative");
    const LatticeSpec unit = normalized(spec);
    const Complex zn = z / spec.a;
    require_not_pole(zn, unit);
    const int p = k + 2;
    auto per_shell = accumulate_shells(unit.omega1, unit.omega2, shells, 1, [&](Complex w, std::span<Complex> out) {
        Complex term = ipow(zn - w, -p);
        if (k == 0) term -= 1.0 / (w * w);
        out[0] += term;
    });
    const ShellSum sum = finish_shell_sum(per_shell[0], 5);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex value = sign * factorial(k + 1) * (ipow(zn, -p) + sum.value);
    return value * std::pow(spec.a, -p);
}

Complex zeta_direct(Complex z, const LatticeSpec& spec, int shells) {
    const LatticeSpec unit = normalized(spec);
    const Complex zn = z / spec.a;
    require_not_pole(zn, unit);
    auto per_shell = accumulate_shells(unit.omega1, unit.omega2, shells, 1, [&](Complex w, std::span<Complex> out) {
        const Complex iw = 1.0 / w;
        out[0] += 1.0 / (zn - w) + iw + zn * iw * iw;
    });
    const ShellSum sum = finish_shell_sum(per_shell[0], 5);
    return (1.0 / zn + sum.value) / spec.a;
}

Complex natanzon_deriv_direct(Complex z, int k, const LatticeSpec& spec, int shells) {
    if (k < 0) throw InvalidArgument("derivative order must be non-negative");
    const LatticeSpec unit = normalized(spec);
    const Complex zn = z / spec.a;
    require_not_pole(zn, unit);
    auto per_shell = accumulate_shells(unit.omega1, unit.omega2, shells, 1, [&](Complex w, std::span<Complex> out) {
        const Complex wc = std::conj(w);
        const Complex iw = 1.0 / w;
        if (k == 0) {
            const Complex d = 1.0 / (zn - w);
            out[0] += wc * (d * d - 2.0 * zn * iw * iw * iw - iw * iw);
        } else if (k == 1) {
            const Complex d = 1.0 / (zn - w);
            out[0] += -2.0 * (wc * d * d * d + wc * iw * iw * iw);
        } else {
            out[0] += wc * ipow(zn - w, -(k + 2));
        }
    });
    const ShellSum sum = finish_shell_sum(per_shell[0], 3);
    Complex value = sum.value;
    if (k >= 2) value *= ((k % 2 == 0) ? 1.0 : -1.0) * factorial(k + 1);
    return value * std::pow(spec.a, -(k + 1));
}

FoldedPoint fold_to_cell(Complex z, const LatticeSpec& spec) {
    const double a = spec.a;
    const double tol = 1e-13 * a;
    auto dist = [&](int m, int n) { return std::abs(z - (double(m) * spec.omega1 + double(n) * spec.omega2)); };

    // Already in the closed cell: keep the point (edge points stay put).
    const double d0 = std::abs(z);
    bool inside = true;
    static constexpr std::array<std::array<int, 2>, 6> kNeighbours{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    for (const auto& nb : kNeighbours) {
        if (dist(nb[0], nb[1]) < d0 - tol) {
            inside = false;
            break;
        }
    }
    if (inside) return {z, 0, 0};

    // Fractional coordinates in the (omega1, omega2) basis.
    const double x = z.real() / (std::numbers::sqrt3 * a) - z.imag() / a;
    const double y = z.real() / (std::numbers::sqrt3 * a) + z.imag() / a;
    int bm = int(std::lround(x));
    int bn = int(std::lround(y));
    double best = dist(bm, bn);
    for (bool improved = true; improved;) {
        improved = false;
        const int cm = bm, cn = bn;
        for (int dm = -1; dm <= 1; ++dm) {
            for (int dn = -1; dn <= 1; ++dn) {
                const double d = dist(cm + dm, cn + dn);
                if (d < best - tol) {
                    best = d;
                    bm = cm + dm;
                    bn = cn + dn;
                    improved = true;
                }
            }
        }
    }
    return {z - (double(bm) * spec.omega1 + double(bn) * spec.omega2), bm, bn};
}

}  // namespace hexlat
