#include "hexlat/shell_sum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace hexlat {

int hex_shell(int m, int n) noexcept {
    return std::max({std::abs(m), std::abs(n), std::abs(m + n)});
}

double power_tail(double p, int N) {
    // Direct part up to M - 1, then Euler-Maclaurin for sum_{n >= M}.
    const int M = N + 16;
    double direct = 0.0;
    for (int n = M - 1; n > N; --n) direct += std::pow(double(n), -p);
    const double m = M;
    const double em = std::pow(m, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(m, -p) +
                      p * std::pow(m, -p - 1.0) / 12.0 -
                      p * (p + 1.0) * (p + 2.0) * std::pow(m, -p - 3.0) / 720.0 +
                      p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0) * std::pow(m, -p - 5.0) / 30240.0;
    return direct + em;
}

Complex pairwise_sum(std::span<const Complex> values) {
    if (values.size() <= 8) {
        Complex acc{};
        for (const auto& v : values) acc += v;
        return acc;
    }
    const auto half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Fits S(n) = sum_i A_i n^-(q + 2i), i < terms, at shells N, N-2, ..., and
// returns sum_{n > N} of the fitted model.
Complex fitted_tail(std::span<const Complex> per_shell, int q, int terms) {
    const int N = int(per_shell.size());
    Eigen::MatrixXd A(terms, terms);
    Eigen::MatrixXcd rhs(terms, 1);
    for (int r = 0; r < terms; ++r) {
        const int n = N - 2 * r;
        for (int i = 0; i < terms; ++i) A(r, i) = std::pow(double(n), -(q + 2.0 * i)) * std::pow(double(N), q + 2.0 * i);
        rhs(r, 0) = per_shell[n - 1];
    }
    const Eigen::MatrixXcd coef = A.cast<Complex>().partialPivLu().solve(rhs);
    Complex tail{};
    for (int i = 0; i < terms; ++i) {
        const double p = q + 2.0 * i;
        tail += coef(i, 0) * std::pow(double(N), p) * power_tail(p, N);
    }
    return tail;
}

}  // namespace

ShellSum finish_shell_sum(std::span<const Complex> per_shell, int leading_power) {
    ShellSum out{};
    out.truncated = pairwise_sum(per_shell);
    const int N = int(per_shell.size());
    if (N < 8) {
        const double last = N > 0 ? std::abs(per_shell[N - 1]) : 0.0;
        out.value = out.truncated;
        out.tail_estimate = last * N / std::max(1, leading_power - 1);
        out.tail_fitted = false;
        return out;
    }
    const Complex tail3 = fitted_tail(per_shell, leading_power, 3);
    const Complex tail2 = fitted_tail(per_shell, leading_power, 2);
    out.value = out.truncated + tail3;
    out.tail_estimate = std::abs(tail3 - tail2);
    out.tail_fitted = true;
    return out;
}

}  // namespace hexlat
