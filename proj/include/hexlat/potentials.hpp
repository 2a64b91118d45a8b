#pragma once

#include "hexlat/solver.hpp"

#include <vector>

namespace hexlat {

/// Phi, Phi' and Psi at one point (Phi' in stress / pm).
struct PotentialValues {
    Complex Phi;
    Complex dPhi;
    Complex Psi;
};

/// phi and psi with phi' = Phi, psi' = Psi (stress * pm).
struct Primitives {
    Complex phi;
    Complex psi;
};

/// Laurent form of the solved potentials around the hole centre.
///
/// Inside the fundamental cell
///   Phi(z) = alpha0 + sum_k alpha_k (lambda/z)^2k + sum_j f_j z^2j
///   Psi(z) = beta0  + sum_k beta_k  (lambda/z)^2k + sum_j g_j z^2j
/// and arbitrary points are folded back with the quasi-periodicity of
/// Psi, phi and psi. Lengths are in pm; the series run on z / a.
class PotentialField {
public:
    PotentialField(const SeriesTables& tables, const PotentialCoefficients& coeffs);

    /// Evaluation at a point of the closed cell, without folding.
    /// DomainError when |z| < lambda or z lies outside the circumcircle.
    PotentialValues local(Complex z) const;
    Primitives local_primitives(Complex z) const;

    /// Evaluation anywhere outside the holes.
    PotentialValues at(Complex z) const;
    Primitives primitives_at(Complex z) const;

    double a() const noexcept { return a_; }
    double lambda() const noexcept { return lambda_; }
    const LatticeSpec& lattice() const noexcept { return lattice_; }

private:
    void check_local(Complex z) const;

    double a_ = 0.0;
    double lambda_ = 0.0;
    double lam_ = 0.0;
    LatticeSpec lattice_;
    Complex alpha0_, beta0_, alpha1_, beta1_;
    Complex delta1_, delta2_;           // normalized (a = 1)
    std::vector<Complex> alpha_, beta_;  // k = 1..K
    std::vector<Complex> f_, g_;         // regular parts, j = 0..J
};

/// Largest rim traction |sigma_r - i tau| of the total field over n_theta
/// equally spaced angles at r = lambda.
double rim_traction_residual(const PotentialField& field, const LoadCase& load, int n_theta);

}  // namespace hexlat
