#pragma once

#include "hexlat/lattice.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hexlat {

/// Remote principal stresses sigma1 (at angle alpha to x) and sigma2.
struct LoadCase {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double alpha = 0.0;

    double sigma_plus() const noexcept { return 0.5 * (sigma1 + sigma2); }
    double sigma_minus() const noexcept { return 0.5 * (sigma1 - sigma2); }
    double scale() const noexcept;

    static LoadCase from_plus_minus(double sigma_plus, double sigma_minus, double alpha = 0.0);
};

inline constexpr int kDefaultTruncation = 16;

struct ProblemSpec {
    LatticeSpec spec;
    double lambda = 0.0;  ///< hole radius, pm
    LoadCase load;
    int K = kDefaultTruncation;

    /// Throws InvalidArgument unless 0 < lambda < a/2 and K >= 4.
    void validate() const;
};

/// Dimensionless coefficient tables for a hole of radius lambda.
///
/// Entries are stored for the normalized lattice (a = 1):
///   r(j, k)   = C(2k+2j, 2j) c_{j+k+1} / (2k+1)
///   rho(j, k) = (2k+2+2j)! d_{j+k+1} / ((2k+1)! (2j)!)
/// with j = 0..J and k = 0..K. `dplus`/`dminus` are the K x K matrices of
/// the two real systems for alpha'_k and alpha''_k (row j, column k, 1-based
/// in the math, 0-based here).
struct SeriesTables {
    double a = 0.0;
    double lambda = 0.0;  ///< pm
    double lam = 0.0;     ///< lambda / a
    int K = 0;
    int J = 0;
    double b = 0.0;       ///< 2 pi lambda^2 / (sqrt3 a^2), the porosity
    Complex delta1, delta2;  ///< cyclic constants of the normalized lattice
    Eigen::MatrixXd r;
    Eigen::MatrixXd rho;
    Eigen::MatrixXd dplus;
    Eigen::MatrixXd dminus;
    double m_tail = 0.0;  ///< largest dropped term of the inner m-sum, relative
};

/// Builds the tables. J (number of Laurent rows) defaults to max(K + 24, 36) so that
/// Phi and Psi can be evaluated at the cell vertex. Needs sums.s_max >= J + K + 2.
SeriesTables series_tables(const LatticeSums& sums, double lambda, int K, int J = -1);

/// Lattice-sum order needed by series_tables for a given K (and default J).
int required_s_max(int K, int J = -1);

/// Complex coefficients of the potentials, in units of the load.
///
///   Phi(z) = alpha0 + sum_k alpha_k lambda^2k wp^(2k-2)(z) / (2k-1)!
///   Psi(z) = beta0  + sum_k [beta_k lambda^2k wp^(2k-2)(z) / (2k-1)!
///                            - alpha_k lambda^2k N^(2k-1)(z) / (2k-1)!]
///
/// alpha[k - 1] holds alpha_k.
struct PotentialCoefficients {
    std::vector<Complex> alpha;
    std::vector<Complex> beta;
    Complex alpha0;
    Complex beta0;
    double rcond_plus = 0.0;   ///< reciprocal condition of the alpha' system
    double rcond_minus = 0.0;  ///< same for alpha''

    int K() const noexcept { return int(alpha.size()); }
};

/// Solves the truncated boundary system for the given load.
/// Throws NumericalError on a singular system and ConsistencyError when the
/// rim traction residual exceeds `residual_tolerance` times the load scale.
PotentialCoefficients solve_coefficients(const ProblemSpec& prob, const SeriesTables& tables,
                                         double residual_tolerance = 1e-6);

struct UnitLoadSets {
    PotentialCoefficients plus;   ///< (sigma+, sigma-) = (1, 0)
    PotentialCoefficients minus;  ///< (sigma+, sigma-) = (0, 1)
};

/// Unit-load coefficient sets at alpha = 0. Throws ConsistencyError when
/// alpha1+, beta0+, alpha0- or beta1- exceeds 1e-10.
UnitLoadSets unit_load_coefficients(const LatticeSpec& spec, double lambda, int K = kDefaultTruncation,
                                    int shells = kDefaultShells);

/// Same, from precomputed sums and tables.
UnitLoadSets unit_load_coefficients(const SeriesTables& tables);

}  // namespace hexlat
