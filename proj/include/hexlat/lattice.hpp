#pragma once

#include "hexlat/shell_sum.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace hexlat {

/// Chiral indices (m, n) of C_h = m*omega1 + n*omega2.
struct ChiralIndices {
    int m = 0;
    int n = 0;
};

/// Hexagonal lattice with periods omega1 = a(sqrt3/2 - i/2),
/// omega2 = a(sqrt3/2 + i/2), and the angle between the sigma1 load and the
/// x axis. Lengths are in pm.
struct LatticeSpec {
    double a = 0.0;
    Complex omega1;
    Complex omega2;
    std::optional<ChiralIndices> chiral;
    double alpha = 0.0;

    /// Cell area |Im(omega1 conj(omega2))| = a^2 sqrt3 / 2.
    double cell_area() const;
};

/// Lattice from chiral indices; alpha = pi/6 - acos((2n + m) / (2 sqrt(n^2 + m^2 + nm))).
/// Throws InvalidArgument for a <= 0 or (m, n) = (0, 0).
LatticeSpec build_lattice(double a, int m, int n);

/// Lattice with the load angle given directly (angle sweeps).
LatticeSpec build_lattice_with_angle(double a, double alpha);

/// Raw chiral angle formula, exposed for reporting.
double chiral_angle(int m, int n);

/// Lattice-sum constants of the hexagonal lattice.
///
/// All arrays are stored for the normalized lattice a = 1 and rescaled on
/// access: c_s(a) = c_s(1) a^-2s, likewise d_s. Index s runs 0..s_max with
/// entries 0 and 1 unused.
struct LatticeSums {
    double a = 0.0;
    int s_max = 0;
    int shells = 0;

    std::vector<double> c_norm;         ///< production c_s (recursion for s >= 6)
    std::vector<double> c_direct_norm;  ///< direct shell sums for every s
    std::vector<double> d_norm;         ///< direct shell sums

    Complex delta1, delta2;  ///< cyclic constants 2 zeta(omega_j / 2), pm^-1
    double delta = 0.0;      ///< Re(conj(delta1) / omega1), pm^-2
    Complex gamma1, gamma2;  ///< Natanzon period constants, pm^-1 (vanish)
    double g2 = 0.0;         ///< 60 sum' w^-4, pm^-4
    double g3 = 0.0;         ///< 140 sum' w^-6, pm^-6

    double tail_estimate = 0.0;  ///< worst relative tail estimate over all sums

    double c(int s) const;
    double d(int s) const;
    double c_direct(int s) const;
};

/// Default number of hexagonal shells summed.
inline constexpr int kDefaultShells = 64;

/// Relative tail tolerance above which compute_lattice_sums throws.
inline constexpr double kTailTolerance = 1e-9;

/// Computes c_s, d_s (s = 2..s_max), delta_j, gamma_j, g2, g3.
///
/// Direct sums run over hexagonal shells 1..shells with an asymptotic
/// tail correction. c_s for s >= 6 come from the hexagonal recursion seeded
/// by the direct c_3; the direct values are kept in c_direct_norm.
/// Throws InvalidArgument (s_max < 3) or PrecisionError (tail not certified).
LatticeSums compute_lattice_sums(const LatticeSpec& spec, int s_max, int shells = kDefaultShells);

/// Hexagonal recursion c_{3s} = sum_{t=1}^{s-1} c_{3t} c_{3(s-t)} / ((6s+1)(s-1)),
/// filling every index up to s_max (non-multiples of 3 are zero).
std::vector<double> c_from_recursion(double c3, int s_max);

}  // namespace hexlat
