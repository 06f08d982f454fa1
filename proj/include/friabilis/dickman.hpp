#pragma once

// Dickman's function rho, the saddle function xi(u), the exponential
// integral I(s) = int_0^s (e^v - 1) dv / v and the asymptotic formula for
// rho built from them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "common.hpp"

namespace friabilis {

struct RhoGrid {
    double u_max = 0;
    double h = 0;                  // 1 / nodes_per_unit
    std::int64_t nodes_per_unit = 0;
    int quadrature_order = 0;
    std::vector<double> log_rho;   // log rho(n * h), n = 0 .. size-1

    double node(std::size_t n) const noexcept
    {
        return static_cast<double>(n) / static_cast<double>(nodes_per_unit);
    }
};

struct XiValue {
    double u = 0;
    double xi = 0;
    double residual = 0;  // |e^xi - 1 - u xi|
};

namespace detail {

struct GaussRule {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre rule mapped to [0, 1], nodes found by Newton on P_n.
inline GaussRule gauss_legendre_unit(int order)
{
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double x = std::cos(constants::pi * (i + 0.75) / (order + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1 - x);
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

// log rho on [0, 2] in closed form: rho = 1 on [0, 1], rho = 1 - log u on
// [1, 2] (one integration of u rho'(u) = -rho(u - 1)).
inline double log_rho_closed(double u)
{
    if (u <= 1.0) return 0.0;
    return std::log1p(-std::log(u));
}

// Lagrange interpolation through four equally spaced samples at offsets
// 0,1,2,3 evaluated at offset s.
inline double cubic4(const double* f, double s)
{
    const double a = s, b = s - 1, c = s - 2, d = s - 3;
    return -f[0] * b * c * d / 6 + f[1] * a * c * d / 2 - f[2] * a * b * d / 2 + f[3] * a * b * c / 6;
}

// First index of a 4-point stencil covering the cell [k, k+1], kept inside
// [0, last] and not straddling any breakpoint (indices where rho loses
// smoothness).
inline std::int64_t stencil_start(std::int64_t k, std::int64_t last, std::int64_t n_unit)
{
    std::int64_t s = k - 1;
    for (std::int64_t bp : {n_unit, 2 * n_unit, 3 * n_unit}) {
        if (s < bp && s + 3 > bp) s = (k >= bp) ? bp : bp - 3;
    }
    s = std::clamp<std::int64_t>(s, 0, std::max<std::int64_t>(last - 3, 0));
    return s;
}

// Interpolated log rho at fractional node position pos, using only nodes
// with index <= last.
inline double interp_log_rho(const std::vector<double>& lr, double pos, std::int64_t last,
                             std::int64_t n_unit)
{
    auto k = static_cast<std::int64_t>(std::floor(pos));
    k = std::clamp<std::int64_t>(k, 0, last - 1);
    const std::int64_t s = stencil_start(k, last, n_unit);
    return cubic4(&lr[static_cast<std::size_t>(s)], pos - static_cast<double>(s));
}

}  // namespace detail

// Tabulates log rho on a uniform grid by marching the integral identity
//
//     u rho(u) = int_{u-1}^{u} rho(t) dt        (u >= 1),
//
// which follows from the delay equation u rho'(u) + rho(u-1) = 0: both sides
// have derivative rho(u) - rho(u-1) and agree (= 1) at u = 1.
//
// The whole window is summed at every node. Differencing the identity between
// consecutive nodes would turn it back into the delay equation, whose slowly
// decaying ~1/u solution absorbs every rounding error and swamps rho within a
// few units of u. The window holds stored panel integrals (a fixed-order
// Gauss-Legendre rule applied to cubic interpolants of log rho) plus a short
// trailing stretch integrated with Newton-Cotes weights that are linear in the
// unknown rho(u). Window sums are carried as ratios to a reference value of
// rho and recomputed from the stored panels every nodes_per_unit/32 steps.
//
// h is snapped to 1/round(1/h) so that u - 1 always falls on a node.
inline RhoGrid build_rho_grid(double u_max, double h, int quadrature_order = 4)
{
    if (!(u_max >= 1.0 && u_max <= 500.0))
        fail_domain("build_rho_grid: u_max must lie in [1, 500] (got ", u_max, ")");
    if (!(h >= 1e-4 && h <= 1e-1))
        fail_domain("build_rho_grid: h must lie in [1e-4, 1e-1] (got ", h, ")");
    if (quadrature_order < 1 || quadrature_order > 16)
        fail_domain("build_rho_grid: quadrature_order must lie in [1, 16] (got ", quadrature_order, ")");

    RhoGrid g;
    g.u_max = u_max;
    g.nodes_per_unit = std::llround(1.0 / h);
    g.h = 1.0 / static_cast<double>(g.nodes_per_unit);
    g.quadrature_order = quadrature_order;

    const std::int64_t N = g.nodes_per_unit;
    const double hh = g.h;
    const auto last = static_cast<std::int64_t>(std::ceil(u_max * static_cast<double>(N) - 1e-9));
    g.log_rho.assign(static_cast<std::size_t>(last + 1), 0.0);
    auto& lr = g.log_rho;
    const auto rule = detail::gauss_legendre_unit(quadrature_order);
    auto at = [N](std::int64_t i) { return static_cast<double>(i) / static_cast<double>(N); };

    // log of int over cell [k, k+1]; cells below u = 2 are exact.
    std::vector<double> log_panel(static_cast<std::size_t>(last + 1), 0.0);
    auto exact_panel = [&](std::int64_t k) {
        if (k + 1 <= N) return std::log(hh);
        auto F = [](double t) { return 2.0 * t - t * std::log(t); };  // int (1 - log t)
        return std::log(F(at(k + 1)) - F(at(k)));
    };
    auto gauss_panel = [&](std::int64_t k, std::int64_t known_last) {
        const double ref = lr[static_cast<std::size_t>(k)];
        double acc = 0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double pos = static_cast<double>(k) + rule.nodes[j];
            acc += rule.weights[j] * std::exp(detail::interp_log_rho(lr, pos, known_last, N) - ref);
        }
        return ref + std::log(acc * hh);
    };

    for (std::int64_t n = 1; n <= std::min(last, 2 * N); ++n) lr[static_cast<std::size_t>(n)] = detail::log_rho_closed(at(n));
    for (std::int64_t k = 0; k < std::min(last, 2 * N); ++k) log_panel[static_cast<std::size_t>(k)] = exact_panel(k);

    std::int64_t first_open = 2 * N;  // cells below this have a stored integral
    std::int64_t window_lo = 0;       // first cell in the running sum
    double base = 0;                  // running sum is relative to exp(base)
    CompensatedSum running;
    std::int64_t since_refresh = -1;
    const std::int64_t refresh_every = std::max<std::int64_t>(1, N / 32);

    for (std::int64_t n = 2 * N + 1; n <= last; ++n) {
        // Close every cell whose interpolation stencil is fully known.
        while (detail::stencil_start(first_open, last, N) + 3 <= n - 1) {
            log_panel[static_cast<std::size_t>(first_open)] = gauss_panel(first_open, n - 1);
            running += std::exp(log_panel[static_cast<std::size_t>(first_open)] - base);
            ++first_open;
        }
        const std::int64_t lo = n - N;
        if (since_refresh < 0 || ++since_refresh >= refresh_every) {
            since_refresh = 0;
            base = lr[static_cast<std::size_t>(n - 1)];
            running = CompensatedSum{};
            for (std::int64_t k = lo; k < first_open; ++k)
                running += std::exp(log_panel[static_cast<std::size_t>(k)] - base);
        } else {
            for (std::int64_t k = window_lo; k < lo; ++k)
                running += -std::exp(log_panel[static_cast<std::size_t>(k)] - base);
        }
        window_lo = lo;

        // Trailing stretch [first_open, n] holds 1..3 cells.
        const double ref = lr[static_cast<std::size_t>(n - 1)];
        auto q = [&](std::int64_t i) { return std::exp(lr[static_cast<std::size_t>(i)] - ref); };
        const std::int64_t len = n - first_open;
        double known = 0, coef = 0;
        switch (len) {
        case 1:  // trapezoid
            known = hh / 2.0;
            coef = hh / 2.0;
            break;
        case 2:  // Simpson
            known = hh / 3.0 * (q(n - 2) + 4.0);
            coef = hh / 3.0;
            break;
        case 3:  // Simpson 3/8
            known = 3.0 * hh / 8.0 * (q(n - 3) + 3.0 * q(n - 2) + 3.0);
            coef = 3.0 * hh / 8.0;
            break;
        default:
            throw numeric_error("build_rho_grid: internal stencil bookkeeping failed");
        }
        const double closed = running.value() * std::exp(base - ref);
        const double ratio = (closed + known) / (at(n) - coef);
        if (!(ratio > 0.0)) throw numeric_error("build_rho_grid: non-positive window sum");
        lr[static_cast<std::size_t>(n)] = ref + std::log(ratio);
    }
    return g;
}

// log rho(u). Exact for u <= 2, cubic interpolation of log rho beyond.
inline double rho(double u, const RhoGrid& grid)
{
    if (!(u >= 0.0)) fail_domain("rho: u must be >= 0 (got ", u, ")");
    if (u > grid.u_max + 1e-12) fail_range("rho: u = ", u, " exceeds grid u_max ", grid.u_max);
    if (u <= 2.0) return detail::log_rho_closed(u);
    const auto last = static_cast<std::int64_t>(grid.log_rho.size()) - 1;
    const double pos = u * static_cast<double>(grid.nodes_per_unit);
    const double nearest = std::round(pos);
    if (std::fabs(pos - nearest) < 1e-9 && nearest <= static_cast<double>(last))
        return grid.log_rho[static_cast<std::size_t>(nearest)];
    return detail::interp_log_rho(grid.log_rho, pos, last, grid.nodes_per_unit);
}

inline void write_rho_grid_csv(std::ostream& os, const RhoGrid& grid)
{
    os << "u,log_rho\n";
    for (std::size_t n = 0; n < grid.log_rho.size(); ++n)
        os << format_real(grid.node(n)) << ',' << format_real(grid.log_rho[n]) << '\n';
}

namespace detail {

// (e^x - 1 - x) / x and its derivative; both strictly increasing on x > 0.
inline double xi_phi(double x)
{
    if (x < 0.1) {
        double term = x / 2, sum = 0;
        for (int k = 2; k < 30 && term > 1e-18 * sum; ++k) {
            sum += term;
            term *= x / (k + 1);
        }
        return sum;
    }
    return (std::expm1(x) - x) / x;
}

inline double xi_phi_prime(double x)
{
    if (x < 0.1) {
        // sum_{k>=1} k x^(k-1) / (k+1)!
        double pw = 1, fact = 2, sum = 0;
        for (int k = 1; k < 30; ++k) {
            const double term = k * pw / fact;
            sum += term;
            if (term < 1e-18 * sum) break;
            pw *= x;
            fact *= (k + 2);
        }
        return sum;
    }
    return (std::exp(x) * (x - 1) + 1) / (x * x);
}

}  // namespace detail

// Nonzero root of e^xi = 1 + u xi (xi(1) = 0). Dividing out the trivial root
// leaves phi(xi) = u - 1 with phi(x) = (e^x - 1 - x)/x increasing and convex,
// so Newton from the seeds log u + log_2 u (u >= e) or 2(u - 1) (u < e),
// safeguarded by a bracket, converges to the wanted root and never to 0.
inline XiValue xi(double u)
{
    if (!(u >= 1.0)) fail_domain("xi: u must be >= 1 (got ", u, ")");
    XiValue out{u, 0.0, 0.0};
    if (u == 1.0) return out;

    const double d = u - 1.0;
    double x = (u >= std::exp(1.0)) ? std::log(u) + std::log(std::log(u)) : 2.0 * d;
    double lo = 0.0, hi = std::max(2.0 * x, 1.0);
    while (detail::xi_phi(hi) < d) hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        const double gx = detail::xi_phi(x) - d;
        if (gx > 0) hi = std::min(hi, x);
        else lo = std::max(lo, x);
        if (gx == 0) break;
        double next = x - gx / detail::xi_phi_prime(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 4e-16 * x) {
            x = next;
            break;
        }
        x = next;
    }
    out.xi = x;
    out.residual = std::fabs(std::expm1(x) - u * x);
    return out;
}

// log u + log_2 u + log_2 u / log u, the explicit terms of the large-u
// expansion of xi(u).
inline double xi_expansion(double u)
{
    if (!(u >= 10.0)) fail_domain("xi_expansion: u must be >= 10 (got ", u, ")");
    const double l1 = std::log(u), l2 = std::log(l1);
    return l1 + l2 + l2 / l1;
}

namespace detail {

inline double int_exp_series(double s)
{
    CompensatedSum sum;
    double term = 1.0;  // s^k / k!
    for (int k = 1; k < 400; ++k) {
        term *= s / k;
        const double add = term / k;
        sum += add;
        if (add < 1e-18 * sum.value()) break;
    }
    return sum.value();
}

inline double int_exp_quadrature(double a, double b)
{
    using boost::math::quadrature::gauss_kronrod;
    double err = 0;
    return gauss_kronrod<double, 31>::integrate(
        [](double v) { return v == 0.0 ? 1.0 : std::expm1(v) / v; }, a, b, 20, 1e-14, &err);
}

}  // namespace detail

// I(s) = int_0^s (e^v - 1) dv / v = sum_{k>=1} s^k / (k k!).
inline double int_exp(double s)
{
    if (!(s >= 0.0)) fail_domain("int_exp: s must be >= 0 (got ", s, ")");
    if (s <= 30.0) return detail::int_exp_series(s);
    return detail::int_exp_series(30.0) + detail::int_exp_quadrature(30.0, s);
}

// int_1^u t xi'(t) dt, integrated by parts as u xi(u) - int_1^u xi(t) dt.
inline double xi_integral(double u)
{
    if (!(u >= 1.0)) fail_domain("xi_integral: u must be >= 1 (got ", u, ")");
    if (u == 1.0) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0;
    const double area = gauss_kronrod<double, 31>::integrate(
        [](double t) { return xi(t).xi; }, 1.0, u, 25, 1e-13, &err);
    return u * xi(u).xi - area;
}

// log of the asymptotic rho(u) ~ exp(gamma - u xi + int_1^u t xi') / sqrt(2 pi u).
inline double rho_asymptotic(double u)
{
    if (!(u >= 2.0)) fail_domain("rho_asymptotic: u must be >= 2 (got ", u, ")");
    return constants::euler_gamma - u * xi(u).xi + xi_integral(u) -
           0.5 * std::log(2.0 * constants::pi * u);
}

}  // namespace friabilis
