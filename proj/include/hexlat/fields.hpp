#pragma once

#include "hexlat/potentials.hpp"
#include "hexlat/solver.hpp"

namespace hexlat {

/// A solved cell problem: sums, tables, coefficients and the evaluator.
struct Solution {
    ProblemSpec prob;
    LatticeSums sums;
    SeriesTables tables;
    PotentialCoefficients coeffs;
    PotentialField field;
};

/// Computes sums and tables for `prob` and solves it.
Solution solve_problem(const ProblemSpec& prob, int shells = kDefaultShells);

/// Reuses precomputed sums (their s_max must cover prob.K).
Solution solve_problem(const ProblemSpec& prob, const LatticeSums& sums);

struct PolarStress {
    double sigma_r = 0.0;
    double tau = 0.0;
    double sigma_theta = 0.0;
};

struct FieldSample {
    double r = 0.0;
    double theta = 0.0;
    Complex z;
    double sigma_r = 0.0, tau_rtheta = 0.0, sigma_theta = 0.0;
    double sigma_x = 0.0, sigma_y = 0.0, tau_xy = 0.0;
    double u2G = 0.0, v2G = 0.0;  ///< 2G u, 2G v (filled by total_displacement callers)
};

/// Remote field in polar components: sigma_r = s+ + s- cos 2psi,
/// tau = -s- sin 2psi, psi = theta - alpha.
std::pair<double, double> uniform_polar_stress(double r, double theta, const LoadCase& load);

/// Phi, Phi', Psi at z (folded into the cell). DomainError inside a hole.
PotentialValues potentials_eval(Complex z, const Solution& sol);

/// Total stresses at z (Cartesian and polar about the hole centre of z's cell).
FieldSample total_stress(Complex z, const Solution& sol);
FieldSample total_stress(double r, double theta, const Solution& sol);

/// Largest rim traction over n_theta angles (n_theta >= 64).
double boundary_residual(const Solution& sol, int n_theta = 256);

/// 2G (u + i v) of the total field for bond Poisson ratio nu (-1 < nu < 0.5).
/// Rigid-body terms are zero.
Complex total_displacement(Complex z, const Solution& sol, double nu);

/// Closed-form jump 2G [(u + i v)(z + omega_j) - (u + i v)(z)], j = 1, 2.
Complex displacement_jump(int j, const Solution& sol, double nu);

/// Traction-free circular hole of radius lambda in an infinite plane.
/// DomainError for r < lambda.
PolarStress isolated_hole_reference(double r, double theta, double lambda, const LoadCase& load);

/// Hexagonal Voronoi cell around the origin and the hole it contains.
struct CellGeometry {
    LatticeSpec spec;
    double lambda = 0.0;

    /// Distance from the centre to the cell edge at polar angle theta.
    double boundary_radius(double theta) const;
    /// True for points in the closed cell and outside the open hole.
    bool contains(Complex z) const;
};

}  // namespace hexlat
