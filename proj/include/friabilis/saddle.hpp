#pragma once

// Saddle point alpha(x, y), the partial Euler product zeta(s, y), the prime
// sums S and T, w_sigma, f(sigma) with its minimiser beta, and the
// saddle-point approximation to Psi(x, y).
//
// x is always carried as log_x so that astronomically large x are usable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "common.hpp"
#include "dickman.hpp"
#include "prime_table.hpp"

namespace friabilis {

struct SaddleState {
    double log_x = 0;
    double y = 0;
    double u = 0;
    double c = 0;      // log y / log_2 x, reporting only (NaN when log_x <= 1)
    double alpha = 0;
    double beta = 0;   // 1 - xi(u)/log y (NaN when u < 1)
    double solver_residual = 0;
    int iterations = 0;
};

struct PrimePowerSums {
    double S = 0;  // sum_{p<=y} p^-s
    double T = 0;  // sum_{p<=y} p^-2s
};

struct FAtBeta {
    double lhs = 0;  // f(beta)
    double rhs = 0;  // log x - u xi(u) + int_1^u t xi'(t) dt
};

namespace detail {

inline std::span<const double> log_primes_upto(const char* what, double y, const PrimeTable& table)
{
    if (!(y >= 2.0)) fail_domain(what, ": y must be >= 2 (got ", y, ")");
    if (y >= static_cast<double>(table.limit) + 1.0)
        fail_range(what, ": y = ", y, " exceeds prime table limit ", table.limit);
    const std::size_t n = table.count_upto(y);
    if (n == 0) fail_domain(what, ": no primes <= y");
    return {table.log_primes.data(), n};
}

// sum log p / (p^a - 1) and its derivative in a.
struct AlphaEquation {
    std::span<const double> lp;

    double value(double a) const
    {
        CompensatedSum s;
        for (double l : lp) s += l / std::expm1(a * l);
        return s.value();
    }

    double derivative(double a) const
    {
        CompensatedSum s;
        for (double l : lp) {
            const double em = std::expm1(a * l);
            s += -l * l * (em + 1.0) / (em * em);
        }
        return s.value();
    }
};

}  // namespace detail

// Unique alpha > 0 with sum_{p<=y} log p / (p^alpha - 1) = log_x. The left
// side decreases from +inf to 0, so: bracket by doubling, bisect to width
// 1e-3, then safeguarded Newton.
inline SaddleState solve_alpha(double log_x, const PrimeTable& table, double y)
{
    const auto lp = detail::log_primes_upto("solve_alpha", y, table);
    if (!(log_x >= constants::log2 * (1 - 1e-15)))
        fail_domain("solve_alpha: log_x must be >= log 2 (got ", log_x, ")");

    const detail::AlphaEquation eq{lp};
    double lo = 1.0, hi = 1.0;
    if (eq.value(1.0) > log_x) {
        while (eq.value(hi) > log_x) {
            lo = hi;
            hi *= 2.0;
        }
    } else {
        while (eq.value(lo) <= log_x) {
            hi = lo;
            lo /= 2.0;
        }
    }

    int iterations = 0;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (eq.value(mid) > log_x ? lo : hi) = mid;
        ++iterations;
    }

    double a = 0.5 * (lo + hi);
    const double tol = 1e-13 * log_x;
    for (;; ++iterations) {
        if (iterations >= 200)
            throw numeric_error("solve_alpha: no convergence within 200 iterations");
        const double r = eq.value(a) - log_x;
        if (std::fabs(r) <= tol) break;
        (r > 0 ? lo : hi) = a;
        double next = a - r / eq.derivative(a);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == a) break;
        a = next;
    }

    SaddleState st;
    st.log_x = log_x;
    st.y = y;
    st.u = log_x / std::log(y);
    st.c = log_x > 1.0 ? std::log(y) / std::log(log_x) : std::numeric_limits<double>::quiet_NaN();
    st.alpha = a;
    st.beta = st.u >= 1.0 ? 1.0 - xi(st.u).xi / std::log(y) : std::numeric_limits<double>::quiet_NaN();
    st.solver_residual = eq.value(a) - log_x;
    st.iterations = iterations;
    return st;
}

// log(1 + y/log x) / log y.
inline double alpha_approx(double log_x, double y)
{
    if (!(y >= 2.0)) fail_domain("alpha_approx: y must be >= 2 (got ", y, ")");
    if (!(log_x > 0.0)) fail_domain("alpha_approx: log_x must be > 0 (got ", log_x, ")");
    if (y > log_x * log_x)
        fail_domain("alpha_approx: y must be <= (log x)^2 (got y = ", y, ", log x = ", log_x, ")");
    return std::log1p(y / log_x) / std::log(y);
}

// log zeta(s, y) = -sum_{p<=y} log(1 - p^-s).
inline double zeta_partial(double s, const PrimeTable& table, double y)
{
    if (!(s > 0.0)) fail_domain("zeta_partial: s must be > 0 (got ", s, ")");
    CompensatedSum sum;
    for (double l : detail::log_primes_upto("zeta_partial", y, table))
        sum += -std::log1p(-std::exp(-s * l));
    return sum.value();
}

inline PrimePowerSums prime_power_sums(double s, const PrimeTable& table, double y)
{
    if (!(s > 0.0)) fail_domain("prime_power_sums: s must be > 0 (got ", s, ")");
    CompensatedSum S, T;
    for (double l : detail::log_primes_upto("prime_power_sums", y, table)) {
        const double v = std::exp(-s * l);
        S += v;
        T += v * v;
    }
    return {S.value(), T.value()};
}

// w_sigma = (y^(1-sigma) - 1) / ((1 - sigma) log y); equals 1 at sigma = 1.
inline double w_sigma(double sigma, double y)
{
    if (!(y > 1.0)) fail_domain("w_sigma: y must be > 1 (got ", y, ")");
    const double a = (1.0 - sigma) * std::log(y);
    if (std::fabs(a) < 1e-6) return 1.0 + a / 2.0 + a * a / 6.0;
    return std::expm1(a) / a;
}

// f(sigma) = sigma log x + I((1 - sigma) log y).
inline double f_sigma(double sigma, double log_x, double y)
{
    if (!(sigma >= 0.0 && sigma <= 1.0))
        fail_domain("f_sigma: sigma must lie in [0, 1] (got ", sigma, ")");
    if (!(y > 1.0)) fail_domain("f_sigma: y must be > 1 (got ", y, ")");
    return sigma * log_x + int_exp((1.0 - sigma) * std::log(y));
}

inline double beta_of(double log_x, double y)
{
    const double u = log_x / std::log(y);
    if (!(u >= 1.0)) fail_domain("beta: u = log x / log y must be >= 1 (got ", u, ")");
    return 1.0 - xi(u).xi / std::log(y);
}

inline FAtBeta f_at_beta_identity(double log_x, double y)
{
    if (!(y > 1.0)) fail_domain("f_at_beta_identity: y must be > 1 (got ", y, ")");
    const double u = log_x / std::log(y);
    if (!(u >= 1.0)) fail_domain("f_at_beta_identity: u = log x / log y must be >= 1 (got ", u, ")");
    // beta < 0 is possible for small y; (1 - beta) log y = xi(u) >= 0 keeps
    // f well defined there, so f is evaluated without the [0, 1] check.
    const double x = xi(u).xi;
    const double beta = 1.0 - x / std::log(y);
    return {beta * log_x + int_exp(x), log_x - u * x + xi_integral(u)};
}

// log of x^alpha zeta(alpha, y) / (alpha log y sqrt(2 pi u)).
inline double psi_saddle(double log_x, const PrimeTable& table, double y)
{
    const auto st = solve_alpha(log_x, table, y);
    if (!(st.u >= 2.0)) fail_domain("psi_saddle: u must be >= 2 (got ", st.u, ")");
    return st.alpha * log_x + zeta_partial(st.alpha, table, y) - std::log(st.alpha) -
           std::log(std::log(y)) - 0.5 * std::log(2.0 * constants::pi * st.u);
}

// log zeta(alpha, y) - I((1 - alpha) log y), the exponent in the lower bound
// for Psi / (x rho(u)) when 1 < c < 2.
inline double lower_bound_exponent(const SaddleState& st, const PrimeTable& table)
{
    const double s = (1.0 - st.alpha) * std::log(st.y);
    if (!(s >= 0.0)) fail_domain("lower_bound_exponent: requires alpha <= 1 (got ", st.alpha, ")");
    return zeta_partial(st.alpha, table, st.y) - int_exp(s);
}

}  // namespace friabilis
