#include "hexlat/solver.hpp"

#include "hexlat/errors.hpp"
#include "hexlat/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hexlat {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * double(n - k + i) / double(i);
    return out;
}

int default_rows(int K) { return std::max(K + 24, 36); }

constexpr int kResidualAngles = 256;

}  // namespace

double LoadCase::scale() const noexcept { return std::max(std::abs(sigma1), std::abs(sigma2)); }

LoadCase LoadCase::from_plus_minus(double sigma_plus, double sigma_minus, double alpha) {
    return LoadCase{sigma_plus + sigma_minus, sigma_plus - sigma_minus, alpha};
}

void ProblemSpec::validate() const {
    if (!(spec.a > 0.0)) throw InvalidArgument("lattice constant must be positive");
    if (!(lambda > 0.0) || !(lambda < 0.5 * spec.a)) throw InvalidArgument("hole radius must satisfy 0 < lambda < a/2");
    if (K < 4) throw InvalidArgument("truncation K must be at least 4");
}

int required_s_max(int K, int J) {
    if (J < 0) J = default_rows(K);
    return J + K + 2;
}

SeriesTables series_tables(const LatticeSums& sums, double lambda, int K, int J) {
    if (K < 4) throw InvalidArgument("truncation K must be at least 4");
    if (!(lambda > 0.0) || !(lambda < 0.5 * sums.a)) throw InvalidArgument("hole radius must satisfy 0 < lambda < a/2");
    if (J < 0) J = default_rows(K);
    if (J < K) throw InvalidArgument("Laurent rows J must be at least K");
    if (sums.s_max < J + K + 1) {
        std::ostringstream msg;
        msg << "lattice sums up to s = " << sums.s_max << " but the tables need s = " << J + K + 1;
        throw ConfigurationError(msg.str());
    }

    SeriesTables t;
    t.a = sums.a;
    t.lambda = lambda;
    t.lam = lambda / sums.a;
    t.K = K;
    t.J = J;
    t.b = 2.0 * std::numbers::pi * t.lam * t.lam / std::numbers::sqrt3;
    t.delta1 = sums.delta1 * sums.a;
    t.delta2 = sums.delta2 * sums.a;

    t.r.resize(J + 1, K + 1);
    t.rho.resize(J + 1, K + 1);
    for (int j = 0; j <= J; ++j) {
        for (int k = 0; k <= K; ++k) {
            const int s = j + k + 1;
            t.r(j, k) = binomial(2 * k + 2 * j, 2 * j) * sums.c_norm[s] / (2.0 * k + 1.0);
            t.rho(j, k) = (2.0 * k + 2.0 * j + 2.0) * binomial(2 * k + 2 * j + 1, 2 * j) * sums.d_norm[s];
        }
    }

    const double lam2 = t.lam * t.lam;
    const double lam4 = lam2 * lam2;
    t.dplus.resize(K, K);
    t.dminus.resize(K, K);
    double tail = 0.0;
    for (int j = 1; j <= K; ++j) {
        for (int k = 1; k <= K; ++k) {
            const double base = (1.0 - 2.0 * j) * t.r(j, k - 1) - (1.0 + 2.0 * k) * t.r(j - 1, k) +
                                t.rho(j - 1, k - 1) / lam2;
            double cross = 0.0;
            double weight = 1.0;
            double last = 0.0;
            for (int m = 1; m <= K; ++m) {
                weight *= lam4;
                last = weight * t.r(j - 1, m) * t.r(m, k - 1);
                cross += last;
            }
            t.dplus(j - 1, k - 1) = base + cross;
            t.dminus(j - 1, k - 1) = base - cross;
            tail = std::max(tail, std::abs(last) / std::max({1.0, std::abs(base), std::abs(cross)}));
        }
    }
    t.m_tail = tail;
    return t;
}

PotentialCoefficients solve_coefficients(const ProblemSpec& prob, const SeriesTables& t, double residual_tolerance) {
    prob.validate();
    if (prob.K != t.K) throw InvalidArgument("tables were built for a different truncation K");
    if (std::abs(prob.lambda - t.lambda) > 1e-12 * t.lambda || std::abs(prob.spec.a - t.a) > 1e-12 * t.a)
        throw InvalidArgument("tables were built for a different geometry");

    const int K = t.K;
    const double lam2 = t.lam * t.lam;
    const double b = t.b;
    const double sp = prob.load.sigma_plus();
    const double sm = prob.load.sigma_minus();
    const double c2a = std::cos(2.0 * prob.load.alpha);
    const double s2a = std::sin(2.0 * prob.load.alpha);

    // lam^(2n) for n = 0..2K+1.
    std::vector<double> lp(2 * K + 2, 1.0);
    for (std::size_t n = 1; n < lp.size(); ++n) lp[n] = lp[n - 1] * lam2;

    Eigen::MatrixXd Mre = Eigen::MatrixXd::Identity(K, K);
    Eigen::MatrixXd Mim = Eigen::MatrixXd::Identity(K, K);
    Eigen::VectorXd rre = Eigen::VectorXd::Zero(K);
    Eigen::VectorXd rim = Eigen::VectorXd::Zero(K);
    for (int j = 1; j <= K; ++j) {
        for (int k = 1; k <= K; ++k) {
            const double w = lp[j + k];
            Mre(j - 1, k - 1) += w * (t.dminus(j - 1, k - 1) + 2.0 / (b - 1.0) * t.r(j - 1, 0) * t.r(0, k - 1));
            Mim(j - 1, k - 1) -= w * t.dplus(j - 1, k - 1);
        }
        rre(j - 1) = -sp * lp[j] * t.r(j - 1, 0) / (b - 1.0);
    }
    Mre(0, 0) -= b;
    Mim(0, 0) -= b;
    rre(0) -= sm * c2a;
    rim(0) -= sm * s2a;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lre(Mre);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lim(Mim);
    PotentialCoefficients out;
    out.rcond_plus = lre.rcond();
    out.rcond_minus = lim.rcond();
    for (double rc : {out.rcond_plus, out.rcond_minus}) {
        if (!(rc > 1e-14)) throw NumericalError("truncated boundary system is singular", rc);
    }
    const Eigen::VectorXd xre = lre.solve(rre);
    const Eigen::VectorXd xim = lim.solve(rim);

    out.alpha.resize(K);
    out.beta.assign(K, Complex{});
    for (int k = 0; k < K; ++k) out.alpha[k] = Complex(xre(k), xim(k));

    double a0sum = 0.0;
    for (int k = 0; k < K; ++k) a0sum += lp[k + 1] * t.r(0, k) * xre(k);
    const double beta1 = (sp + 2.0 * a0sum) / (1.0 - b);
    out.beta[0] = beta1;
    for (int j = 1; j < K; ++j) {
        Complex acc = (2.0 * j + 1.0) * out.alpha[j - 1];
        for (int k = 0; k < K; ++k) acc += lp[k + j + 1] * t.r(j, k) * std::conj(out.alpha[k]);
        out.beta[j] = acc;
    }
    out.alpha0 = 0.5 * b * beta1;
    out.beta0 = b * std::conj(out.alpha[0]);

    const PotentialField field(t, out);
    const double residual = rim_traction_residual(field, prob.load, kResidualAngles);
    if (!std::isfinite(residual) || residual > residual_tolerance * prob.load.scale()) {
        std::ostringstream msg;
        msg << "rim traction residual " << residual << " exceeds " << residual_tolerance << " of the load";
        throw ConsistencyError(msg.str(), residual);
    }
    return out;
}

UnitLoadSets unit_load_coefficients(const SeriesTables& tables) {
    ProblemSpec prob;
    prob.spec = build_lattice_with_angle(tables.a, 0.0);
    prob.lambda = tables.lambda;
    prob.K = tables.K;

    UnitLoadSets sets;
    prob.load = LoadCase::from_plus_minus(1.0, 0.0);
    sets.plus = solve_coefficients(prob, tables);
    prob.load = LoadCase::from_plus_minus(0.0, 1.0);
    sets.minus = solve_coefficients(prob, tables);

    const double worst = std::max({std::abs(sets.plus.alpha[0]), std::abs(sets.plus.beta0),
                                   std::abs(sets.minus.alpha0), std::abs(sets.minus.beta[0])});
    if (worst > 1e-10) throw ConsistencyError("unit-load coefficient sets lack the expected zeros", worst);
    return sets;
}

UnitLoadSets unit_load_coefficients(const LatticeSpec& spec, double lambda, int K, int shells) {
    const LatticeSums sums = compute_lattice_sums(spec, required_s_max(K), shells);
    return unit_load_coefficients(series_tables(sums, lambda, K));
}

}  // namespace hexlat
