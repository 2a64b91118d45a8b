#include "hexlat/potentials.hpp"

#include "hexlat/elliptic.hpp"
#include "hexlat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hexlat {

PotentialField::PotentialField(const SeriesTables& t, const PotentialCoefficients& c)
    : a_(t.a), lambda_(t.lambda), lam_(t.lam), lattice_(build_lattice_with_angle(t.a, 0.0)) {
    const int K = c.K();
    if (K > t.K) throw InvalidArgument("coefficient set is longer than the tables");
    alpha0_ = c.alpha0;
    beta0_ = c.beta0;
    alpha1_ = K > 0 ? c.alpha[0] : Complex{};
    beta1_ = K > 0 ? c.beta[0] : Complex{};
    delta1_ = t.delta1;
    delta2_ = t.delta2;
    alpha_ = c.alpha;
    beta_ = c.beta;

    const double lam2 = lam_ * lam_;
    f_.assign(t.J + 1, Complex{});
    g_.assign(t.J + 1, Complex{});
    for (int j = 0; j <= t.J; ++j) {
        double w = 1.0;
        for (int k = 0; k < K; ++k) {
            w *= lam2;
            f_[j] += w * t.r(j, k) * c.alpha[k];
            g_[j] += w * (t.r(j, k) * c.beta[k] - t.rho(j, k) * c.alpha[k]);
        }
    }
}

void PotentialField::check_local(Complex z) const {
    const double r = std::abs(z);
    if (r < lambda_ * (1.0 - 1e-12)) throw DomainError("point lies inside the hole");
    if (r > a_ / std::numbers::sqrt3 * (1.0 + 1e-9)) throw DomainError("point lies outside the fundamental cell");
}

PotentialValues PotentialField::local(Complex z) const {
    check_local(z);
    const Complex zn = z / a_;
    const Complex z2 = zn * zn;
    const Complex t = (lam_ * lam_) / z2;

    // Singular parts, Horner in t = (lam/z)^2.
    Complex phi_s{}, dphi_s{}, psi_s{};
    for (int k = int(alpha_.size()); k >= 1; --k) {
        phi_s = (phi_s + alpha_[k - 1]) * t;
        psi_s = (psi_s + beta_[k - 1]) * t;
        dphi_s = (dphi_s - 2.0 * k * alpha_[k - 1]) * t;
    }
    dphi_s /= zn;

    // Regular parts, Horner in z^2.
    Complex phi_r{}, psi_r{}, dphi_r{};
    const int J = int(f_.size()) - 1;
    for (int j = J; j >= 0; --j) {
        phi_r = phi_r * z2 + f_[j];
        psi_r = psi_r * z2 + g_[j];
        if (j >= 1) dphi_r = dphi_r * z2 + 2.0 * j * f_[j];
    }
    dphi_r *= zn;

    return {alpha0_ + phi_s + phi_r, (dphi_s + dphi_r) / a_, beta0_ + psi_s + psi_r};
}

Primitives PotentialField::local_primitives(Complex z) const {
    check_local(z);
    const Complex zn = z / a_;
    const Complex z2 = zn * zn;
    const Complex t = (lam_ * lam_) / z2;

    Complex phi_s{}, psi_s{};
    for (int k = int(alpha_.size()); k >= 1; --k) {
        phi_s = (phi_s + alpha_[k - 1] / (1.0 - 2.0 * k)) * t;
        psi_s = (psi_s + beta_[k - 1] / (1.0 - 2.0 * k)) * t;
    }
    Complex phi_r{}, psi_r{};
    for (int j = int(f_.size()) - 1; j >= 0; --j) {
        phi_r = phi_r * z2 + f_[j] / (2.0 * j + 1.0);
        psi_r = psi_r * z2 + g_[j] / (2.0 * j + 1.0);
    }
    const Complex phi = zn * (alpha0_ + phi_s + phi_r);
    const Complex psi = zn * (beta0_ + psi_s + psi_r);
    return {phi * a_, psi * a_};
}

PotentialValues PotentialField::at(Complex z) const {
    const FoldedPoint f = fold_to_cell(z, lattice_);
    PotentialValues v = local(f.z);
    const Complex w = z - f.z;
    v.Psi -= std::conj(w) * v.dPhi;
    return v;
}

Primitives PotentialField::primitives_at(Complex z) const {
    const FoldedPoint f = fold_to_cell(z, lattice_);
    Primitives p = local_primitives(f.z);
    if (f.m == 0 && f.n == 0) return p;
    const Complex wn = (z - f.z) / a_;
    const Complex dw = double(f.m) * delta1_ + double(f.n) * delta2_;
    const double lam2 = lam_ * lam_;
    const Complex Phi = local(f.z).Phi;
    p.phi += a_ * (alpha0_ * wn - alpha1_ * lam2 * dw);
    p.psi += a_ * (beta0_ * wn - beta1_ * lam2 * dw - std::conj(wn) * (Phi - alpha0_));
    return p;
}

double rim_traction_residual(const PotentialField& field, const LoadCase& load, int n_theta) {
    if (n_theta < 1) throw InvalidArgument("need at least one rim angle");
    const double sp = load.sigma_plus();
    const double sm = load.sigma_minus();
    double worst = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n_theta;
        const Complex e = std::polar(1.0, theta);
        const Complex t = field.lambda() * e;
        const PotentialValues v = field.local(t);
        const Complex traction = 2.0 * v.Phi.real() - (std::conj(t) * v.dPhi + v.Psi) * e * e + sp +
                                 sm * std::polar(1.0, 2.0 * (theta - load.alpha));
        worst = std::max(worst, std::abs(traction));
    }
    return worst;
}

}  // namespace hexlat
