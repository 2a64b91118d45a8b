#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hexlat {

using Complex = std::complex<double>;

/// Hexagonal shell number of w = m*omega1 + n*omega2 for the 60-degree
/// basis used throughout: max(|m|, |n|, |m + n|).
int hex_shell(int m, int n) noexcept;

/// Calls f(m, n) for the 6*shell points of the given shell (shell >= 1),
/// always in the same order.
template <class F>
void for_each_on_shell(int shell, F&& f) {
    // Neighbour steps ordered by angle: omega1, omega2, omega2 - omega1, ...
    static constexpr int dm[6] = {1, 0, -1, -1, 0, 1};
    static constexpr int dn[6] = {0, 1, 1, 0, -1, -1};
    int m = shell * dm[4];
    int n = shell * dn[4];
    for (int side = 0; side < 6; ++side) {
        for (int step = 0; step < shell; ++step) {
            f(m, n);
            m += dm[side];
            n += dn[side];
        }
    }
}

/// Sum over n > N of n^-p (p > 1), via a short direct sum and an
/// Euler-Maclaurin remainder.
double power_tail(double p, int N);

/// Deterministic pairwise sum.
Complex pairwise_sum(std::span<const Complex> values);

/// Result of a shell-truncated lattice sum.
struct ShellSum {
    Complex value;          ///< truncated sum plus fitted tail
    Complex truncated;      ///< plain sum over the retained shells
    double tail_estimate;   ///< uncertainty of the tail correction
    bool tail_fitted;       ///< false when too few shells for a fit
};

/// Collapses per-shell contributions S(1..N) into a corrected sum.
///
/// The shell contributions of a homogeneous lattice summand decay like
/// S(n) ~ n^-q (A0 + A1 n^-2 + A2 n^-4 + ...). The last shells are fitted
/// to that form and the tail sum over n > N is added analytically.
/// `leading_power` is q. With fewer than 8 shells no fit is attempted and
/// the estimate falls back to |S(N)| * N / (q - 1).
ShellSum finish_shell_sum(std::span<const Complex> per_shell, int leading_power);

/// Accumulates a vector-valued summand over shells 1..shells.
///
/// `summand(w, out)` adds its components for lattice point w to `out`
/// (a span of `components` values). Returns per-component shell
/// contributions indexed [component][shell - 1].
template <class Summand>
std::vector<std::vector<Complex>> accumulate_shells(Complex omega1, Complex omega2, int shells,
                                                    std::size_t components, Summand&& summand) {
    std::vector<std::vector<Complex>> out(components, std::vector<Complex>(shells, Complex{}));
    std::vector<Complex> scratch(components);
    for (int s = 1; s <= shells; ++s) {
        std::fill(scratch.begin(), scratch.end(), Complex{});
        for_each_on_shell(s, [&](int m, int n) {
            const Complex w = double(m) * omega1 + double(n) * omega2;
            summand(w, std::span<Complex>(scratch));
        });
        for (std::size_t c = 0; c < components; ++c) out[c][s - 1] = scratch[c];
    }
    return out;
}

}  // namespace hexlat
