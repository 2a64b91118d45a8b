#include "support.hpp"

#include "hexlat/errors.hpp"

#include <doctest.h>

using namespace hexlat;
using namespace hexlat::test;

namespace {

// Entries rebuilt from factorials and the raw sums.
double r_entry(const LatticeSums& S, int j, int k) {
    return factorial(2 * k + 2 * j) / (factorial(2 * j) * factorial(2 * k) * (2 * k + 1)) * S.c_norm[j + k + 1];
}

double rho_entry(const LatticeSums& S, int j, int k) {
    return factorial(2 * k + 2 + 2 * j) / (factorial(2 * k + 1) * factorial(2 * j)) * S.d_norm[j + k + 1];
}

double d_entry(const LatticeSums& S, double lam, int K, int j, int k, double sign) {
    double cross = 0.0;
    for (int m = 1; m <= K; ++m) cross += std::pow(lam, 4 * m) * r_entry(S, j - 1, m) * r_entry(S, m, k - 1);
    return (1 - 2 * j) * r_entry(S, j, k - 1) - (1 + 2 * k) * r_entry(S, j - 1, k) +
           rho_entry(S, j - 1, k - 1) / (lam * lam) + sign * cross;
}

PotentialCoefficients coefficients(double ratio, double s1, double s2, double alpha, int K = kDefaultTruncation,
                                   double tol = 1e-6) {
    const ProblemSpec p = problem(ratio, s1, s2, alpha, K);
    return solve_coefficients(p, series_tables(default_sums(), p.lambda, K), tol);
}

}  // namespace

TEST_CASE("table entries") {
    const LatticeSums& S = default_sums();
    const SeriesTables t = series_tables(S, 0.2 * kA, 16);
    CHECK(t.r(0, 0) == 0.0);
    CHECK(t.rho(0, 0) == 0.0);
    CHECK(t.J == 40);
    CHECK(t.b == doctest::Approx(2.0 * kPi * 0.04 / std::sqrt(3.0)).epsilon(1e-14));
    for (int j = 0; j <= 10; ++j)
        for (int k = 0; k <= 10; ++k) {
            CAPTURE(j);
            CAPTURE(k);
            CHECK(std::abs(t.r(j, k) - r_entry(S, j, k)) <= 1e-12 * std::max(1.0, std::abs(t.r(j, k))));
            CHECK(std::abs(t.rho(j, k) - rho_entry(S, j, k)) <= 1e-12 * std::max(1.0, std::abs(t.rho(j, k))));
            if ((j + k + 1) % 3 != 0) CHECK(std::abs(t.r(j, k)) <= 1e-12 * std::abs(t.r(0, 2)));
        }
}

TEST_CASE("system matrices recomputed from their definitions") {
    const LatticeSums& S = default_sums();
    const double lam = 0.2;
    const SeriesTables t = series_tables(S, lam * kA, 16);
    // j = k = 1 reduces to the cross sum over c_{m+1}^2 / (2m+1)
    double d11 = 0.0;
    for (int m = 1; m <= 16; ++m) d11 += std::pow(lam, 4 * m) * S.c_norm[m + 1] * S.c_norm[m + 1] / (2 * m + 1);
    CHECK(std::abs(t.dplus(0, 0) - d11) <= 1e-12);
    CHECK(std::abs(t.dminus(0, 0) + d11) <= 1e-12);
    CHECK(rel(t.dplus(0, 0), d11) < 1e-9);
    for (auto [j, k] : {std::pair{2, 2}, {3, 1}, {1, 5}, {4, 8}, {7, 3}}) {
        CAPTURE(j);
        CAPTURE(k);
        const double p = d_entry(S, lam, 16, j, k, 1.0), m = d_entry(S, lam, 16, j, k, -1.0);
        CHECK(std::abs(t.dplus(j - 1, k - 1) - p) <= 1e-12 * std::max(1.0, std::abs(p)));
        CHECK(std::abs(t.dminus(j - 1, k - 1) - m) <= 1e-12 * std::max(1.0, std::abs(m)));
    }
    CHECK(t.m_tail < 1e-12);
}

TEST_CASE("table construction errors") {
    const LatticeSums& S = default_sums();
    CHECK_THROWS_AS(series_tables(S, 0.2 * kA, 3), InvalidArgument);
    CHECK_THROWS_AS(series_tables(S, 0.5 * kA, 16), InvalidArgument);
    CHECK_THROWS_AS(series_tables(S, 0.2 * kA, 40), ConfigurationError);
    CHECK(required_s_max(16) == 58);
    const ProblemSpec p = problem(0.2, 2, 1, 0);
    CHECK_THROWS_AS(solve_coefficients(p, series_tables(S, 0.2 * kA, 12)), InvalidArgument);
    CHECK_THROWS_AS(solve_coefficients(p, series_tables(S, 0.1 * kA, 16)), InvalidArgument);
    ProblemSpec bad = p;
    bad.lambda = 0.6 * kA;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("symmetric and aligned loads have no imaginary part") {
    for (double alpha : {0.0, 0.3, kPi / 4}) {
        const auto c = coefficients(0.2, 1.5, 1.5, alpha);
        for (int k = 0; k < c.K(); ++k) {
            CHECK(std::abs(c.alpha[k].imag()) <= 1e-12);
            CHECK(std::abs(c.beta[k].imag()) <= 1e-12);
        }
    }
    const auto c = coefficients(0.2, 2.0, 1.0, 0.0);
    for (int k = 0; k < c.K(); ++k) CHECK(std::abs(c.alpha[k].imag()) <= 1e-12);
}

TEST_CASE("constant terms follow from the leading coefficients") {
    const auto c = coefficients(0.2, 2.0, 1.0, kPi / 8);
    const double b = 2.0 * kPi * 0.04 / std::sqrt(3.0);
    CHECK(std::abs(c.alpha0 - b * c.beta[0] / 2.0) < 1e-14);
    CHECK(std::abs(c.beta0 - b * std::conj(c.alpha[0])) < 1e-14);
    CHECK(std::abs(c.beta[0].imag()) < 1e-12);
    CHECK(c.rcond_plus > 0.1);
    CHECK(c.rcond_minus > 0.1);
}

TEST_CASE("small hole limit") {
    const double s1 = 2.0, s2 = 1.0, alpha = 0.4;
    const auto c = coefficients(1e-3, s1, s2, alpha);
    const double sp = 0.5 * (s1 + s2), sm = 0.5 * (s1 - s2);
    CHECK(std::abs(c.alpha[0] + sm * std::polar(1.0, 2.0 * alpha)) < 1e-5);
    CHECK(std::abs(c.beta[0] - sp) < 1e-5);
    // beta_2 carries the lambda^4 / z^4 term of the isolated-hole solution
    CHECK(std::abs(c.beta[1] - 3.0 * c.alpha[0]) < 1e-5);
    for (int k = 1; k < c.K(); ++k) CHECK(std::abs(c.alpha[k]) < 1e-5);
    for (int k = 2; k < c.K(); ++k) CHECK(std::abs(c.beta[k]) < 1e-5);
}

// The two real systems have different matrices, so the response to the
// deviatoric load is linear over the reals in (cos 2a, sin 2a) but is not a
// single complex multiple of exp(-2ia).
TEST_CASE("load superposition") {
    const auto plus = coefficients(0.2, 1.0, 1.0, 0.0);
    const auto m0 = coefficients(0.2, 1.0, -1.0, 0.0);
    const auto m45 = coefficients(0.2, 1.0, -1.0, kPi / 4);
    const double s1 = 3.0, s2 = -0.5, alpha = 0.35;
    const double sp = 0.5 * (s1 + s2), sm = 0.5 * (s1 - s2);
    const auto c = coefficients(0.2, s1, s2, alpha);
    double gap = 0.0;
    for (int k = 0; k < c.K(); ++k) {
        const Complex expect = sp * plus.alpha[k] +
                               sm * Complex(std::cos(2 * alpha) * m0.alpha[k].real(),
                                            std::sin(2 * alpha) * m45.alpha[k].imag());
        CHECK(std::abs(c.alpha[k] - expect) < 1e-12);
        gap = std::max(gap, std::abs(m45.alpha[k].imag() - m0.alpha[k].real()));
    }
    CHECK(gap > 1e-6);
}

TEST_CASE("unit load sets") {
    const SeriesTables t = series_tables(default_sums(), 0.2 * kA, 16);
    const UnitLoadSets u = unit_load_coefficients(t);
    CHECK(std::abs(u.plus.alpha[0]) <= 1e-10);
    CHECK(std::abs(u.plus.beta0) <= 1e-10);
    CHECK(std::abs(u.minus.alpha0) <= 1e-10);
    CHECK(std::abs(u.minus.beta[0]) <= 1e-10);
    CHECK(u.plus.alpha0.real() == doctest::Approx(0.08486656817).epsilon(1e-9));
    CHECK(u.plus.beta[0].real() == doctest::Approx(1.169734782).epsilon(1e-9));
    CHECK(u.minus.alpha[0].real() == doctest::Approx(-1.173583834).epsilon(1e-9));
    CHECK(u.minus.beta0.real() == doctest::Approx(-0.170291649).epsilon(1e-9));
}

TEST_CASE("truncation drift") {
    for (double ratio : {0.1, 0.2, 0.225}) {
        const auto c16 = coefficients(ratio, 2.0, 1.0, kPi / 8, 16);
        const auto c20 = coefficients(ratio, 2.0, 1.0, kPi / 8, 20);
        CAPTURE(ratio);
        CHECK(std::abs(c16.alpha0 - c20.alpha0) < 1e-8);
        CHECK(std::abs(c16.beta0 - c20.beta0) < 1e-8);
        for (int k = 0; k < 16; ++k) {
            CHECK(std::abs(c16.alpha[k] - c20.alpha[k]) < 1e-8);
            CHECK(std::abs(c16.beta[k] - c20.beta[k]) < 1e-8);
        }
    }
}

TEST_CASE("rim residual decreases with the truncation order") {
    const double ratio = 0.225;
    const ProblemSpec p4 = problem(ratio, 2.0, 1.0, kPi / 8, 4);
    const ProblemSpec p8 = problem(ratio, 2.0, 1.0, kPi / 8, 8);
    const SeriesTables t4 = series_tables(default_sums(), p4.lambda, 4);
    const SeriesTables t8 = series_tables(default_sums(), p8.lambda, 8);
    const double r4 = rim_traction_residual(PotentialField(t4, solve_coefficients(p4, t4, 1.0)), p4.load, 256);
    const double r8 = rim_traction_residual(PotentialField(t8, solve_coefficients(p8, t8, 1.0)), p8.load, 256);
    CHECK(r4 > r8);
    const ProblemSpec p16 = problem(ratio, 2.0, 1.0, kPi / 8, 16);
    const SeriesTables t16 = series_tables(default_sums(), p16.lambda, 16);
    const double r16 = rim_traction_residual(PotentialField(t16, solve_coefficients(p16, t16)), p16.load, 256);
    CHECK(r8 > r16);
    CHECK(r16 < 1e-10);
}

TEST_CASE("residual arbiter") {
    const ProblemSpec p = problem(0.2, 2.0, 1.0, kPi / 8);
    const SeriesTables t = series_tables(default_sums(), p.lambda, 16);
    auto c = solve_coefficients(p, t);
    c.beta0 = -c.beta0;
    CHECK(rim_traction_residual(PotentialField(t, c), p.load, 256) > 1e-3);

    PotentialCoefficients zero;
    zero.alpha.assign(16, 0.0);
    zero.beta.assign(16, 0.0);
    CHECK(rim_traction_residual(PotentialField(t, zero), LoadCase{}, 256) == 0.0);
}
