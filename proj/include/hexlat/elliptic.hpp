#pragma once

#include "hexlat/lattice.hpp"

namespace hexlat {

/// Radii (pm) between which the Laurent expansions at the origin are used.
struct Annulus {
    double r_min = 0.0;
    double r_max = 0.0;
};

/// Laurent-series evaluation of the Weierstrass functions and the Natanzon
/// function around the origin:
///
///   wp(z)   = z^-2 + sum_{s>=2} c_s z^(2s-2)
///   zeta(z) = z^-1 - sum_{s>=2} c_s z^(2s-1) / (2s-1)
///   N(z)    = sum_{s>=2} 2s d_s z^(2s-1)
///
/// The series converge for |z| < a (the nearest pole). The number of
/// retained powers is chosen so that the last term is below 1e-16 of the
/// leading one at r_max for every derivative order up to `max_order`.
class EllipticEvaluator {
public:
    static constexpr int kMaxLaurentTerms = 64;

    /// Annulus defaults to (0, a/sqrt3], the circumradius of the cell.
    explicit EllipticEvaluator(LatticeSums sums);
    EllipticEvaluator(LatticeSums sums, Annulus annulus, int max_order = 8);

    const LatticeSums& sums() const noexcept { return sums_; }
    const Annulus& annulus() const noexcept { return annulus_; }
    int laurent_terms() const noexcept { return terms_; }

    /// k-th derivative of wp. DomainError outside the annulus, PoleError at 0.
    Complex wp(Complex z, int k = 0) const;

    /// zeta(z). Points beyond r_max are reduced into the cell with
    /// zeta(z + w) = zeta(z) + m delta1 + n delta2.
    Complex zeta(Complex z) const;

    /// k-th derivative of N, with N(0) = 0.
    Complex natanzon(Complex z, int k = 0) const;

private:
    void check_domain(Complex z, bool pole_at_origin) const;

    LatticeSums sums_;
    Annulus annulus_;
    int terms_ = 0;  // powers s = 2 .. terms_ + 1
};

/// Free-function forms of the evaluator members.
Complex wp_deriv(Complex z, int k, const EllipticEvaluator& ev);
Complex zeta_fn(Complex z, const EllipticEvaluator& ev);
Complex natanzon_deriv(Complex z, int k, const EllipticEvaluator& ev);

/// Direct lattice sums (shell-truncated, tail corrected). Independent of the
/// Laurent tables; used as oracles and for the period constants.
///
///   wp^(k)(z) = (-1)^k (k+1)! [z^-(k+2) + sum' (z - w)^-(k+2)]   (k >= 1)
///   N^(k)(z)  = (-1)^k (k+1)! sum' conj(w) (z - w)^-(k+2)       (k >= 2)
///
/// k = 0 for wp and k = 0, 1 for N use the subtracted forms. PoleError when
/// z is a lattice point.
Complex wp_deriv_direct(Complex z, int k, const LatticeSpec& spec, int shells = kDefaultShells);
Complex zeta_direct(Complex z, const LatticeSpec& spec, int shells = kDefaultShells);
Complex natanzon_deriv_direct(Complex z, int k, const LatticeSpec& spec, int shells = kDefaultShells);

/// Result of reducing a point into the Voronoi cell of the origin.
struct FoldedPoint {
    Complex z;   ///< z - (m omega1 + n omega2)
    int m = 0;
    int n = 0;
};

/// Nearest-lattice-point reduction. Points on the cell boundary stay put.
FoldedPoint fold_to_cell(Complex z, const LatticeSpec& spec);

}  // namespace hexlat
