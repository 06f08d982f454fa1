#pragma once

// Both sides of the comparison Psi(x, y) versus x rho(u) along
// y = (log x)^c in the three regimes c in (1,2), c = 1, c in (0,1), the
// expansions of log(x rho(u)) and of de Bruijn's Z(x, y), and the numerics
// behind the oscillation of S(alpha, y) - I((1 - alpha) log y).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "common.hpp"
#include "dickman.hpp"
#include "parallel.hpp"
#include "prime_table.hpp"
#include "psi_exact.hpp"
#include "saddle.hpp"

namespace friabilis {

enum class Regime { c_in_1_2, c_eq_1, c_lt_1 };

inline const char* to_string(Regime r)
{
    switch (r) {
    case Regime::c_in_1_2: return "c_in_1_2";
    case Regime::c_eq_1: return "c_eq_1";
    case Regime::c_lt_1: return "c_lt_1";
    }
    return "?";
}

inline std::optional<Regime> regime_from_string(std::string_view s)
{
    if (s == "c_in_1_2") return Regime::c_in_1_2;
    if (s == "c_eq_1") return Regime::c_eq_1;
    if (s == "c_lt_1") return Regime::c_lt_1;
    return std::nullopt;
}

inline Regime regime_of(double c)
{
    if (!(c > 0.0 && c < 2.0)) fail_domain("regime: c must lie in (0, 2) (got ", c, ")");
    if (std::fabs(c - 1.0) <= 1e-12) return Regime::c_eq_1;
    return c < 1.0 ? Regime::c_lt_1 : Regime::c_in_1_2;
}

struct RegimeRecord {
    double log_x = 0;
    double c = 0;
    double y = 0;
    double u = 0;
    double alpha = 0;
    double log_psi_exact = 0;
    double log_x_rho = 0;
    double measured_gap = 0;   // log Psi - log(x rho(u))
    double predicted_gap = 0;  // main term for the regime
    Regime regime = Regime::c_lt_1;
    bool alpha_condition_unmet = false;  // c in (1,2) with alpha >= 1/2
};

struct OscillationRecord {
    double y = 0;
    double alpha = 0;
    double s_sum = 0;
    double i_term = 0;
    double diff = 0;
    double normalizer = 0;
    double normalized_diff = 0;
};

struct LogXRho {
    double exact = 0;
    double expansion = 0;
};

struct QIntegral {
    double q_part = 0;
    double pi_part = 0;
};

// Main term of log(Psi / (x rho(u))) for the regime of c:
//   1 < c < 2:  (1/2) y^(1-2 alpha) / ((1 - 2 alpha) log y)   (NaN if alpha >= 1/2)
//   c = 1:      (log 4 - 1) log x / log_2 x
//   0 < c < 1:  (1/c - 1) log x
inline double predicted_gap(double log_x, double c, const SaddleState& state)
{
    switch (regime_of(c)) {
    case Regime::c_in_1_2: {
        if (!(state.alpha < 0.5)) return std::numeric_limits<double>::quiet_NaN();
        const double e = 1.0 - 2.0 * state.alpha;
        return 0.5 * std::exp(e * std::log(state.y)) / (e * std::log(state.y));
    }
    case Regime::c_eq_1:
        return (std::log(4.0) - 1.0) * log_x / std::log(log_x);
    case Regime::c_lt_1:
        return (1.0 / c - 1.0) * log_x;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

inline LogXRho log_x_rho(double log_x, double c, const RhoGrid& grid)
{
    if (!(c > 0.0 && c <= 1.0 + 1e-12)) fail_domain("log_x_rho: c must lie in (0, 1] (got ", c, ")");
    if (!(log_x > std::exp(1.0))) fail_domain("log_x_rho: log_2 x must be > 1 (got log x = ", log_x, ")");
    const double l2 = std::log(log_x);
    const double u = log_x / (c * l2);
    LogXRho out;
    out.exact = log_x + rho(u, grid);
    const double lc = std::log(c);
    out.expansion = (c - 1.0) / c * log_x + (1.0 + lc) * log_x / (c * l2) + (1.0 - lc) * log_x / (c * l2 * l2);
    return out;
}

// de Bruijn's Z(x, y) = u log(1 + y/log x) + (y / log y) log(1 + log x / y).
inline double z_bruijn(double log_x, double y)
{
    if (!(y >= 3.0)) fail_domain("z_bruijn: y must be >= 3 (got ", y, ")");
    if (!(std::log(y) <= log_x)) fail_domain("z_bruijn: requires x >= y");
    const double ly = std::log(y);
    return log_x / ly * std::log1p(y / log_x) + y / ly * std::log1p(log_x / y);
}

// Explicit terms of the case expansions of Z along y = (log x)^c.
inline double z_cases(double log_x, double c)
{
    const Regime r = regime_of(c);
    if (!(log_x > std::exp(1.0))) fail_domain("z_cases: log_2 x must be > 1 (got log x = ", log_x, ")");
    const double l2 = std::log(log_x);
    switch (r) {
    case Regime::c_in_1_2:
        return (c - 1.0) / c * log_x + log_x / (c * l2) + std::pow(log_x, 2.0 - c) / (2.0 * c * l2);
    case Regime::c_eq_1:
        return std::log(4.0) * log_x / l2;
    case Regime::c_lt_1: {
        const double lc = std::pow(log_x, c);
        return (1.0 - c) * lc / c + lc / (c * l2);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

struct RegimeOptions {
    EnumerateOptions enumerate{};
};

// One comparison row at (x, c). x may be exact (preferred) or given by log x.
inline RegimeRecord regime_record(double log_x, const std::optional<BigInt>& exact_x, double c,
                                  const PrimeTable& table, const RhoGrid& grid, const RegimeOptions& opts = {})
{
    const Regime regime = regime_of(c);
    if (!(log_x > 1.0)) fail_domain("regime_record: log x must be > 1 (got ", log_x, ")");
    RegimeRecord rec;
    rec.log_x = log_x;
    rec.c = c;
    rec.y = std::pow(log_x, c);
    rec.u = log_x / std::log(rec.y);
    rec.regime = regime;
    if (!(rec.y >= 2.0)) fail_domain("regime_record: y = (log x)^c must be >= 2 (got ", rec.y, ")");

    const PsiResult psi = exact_x ? psi_enumerate(*exact_x, table, rec.y, opts.enumerate)
                                  : psi_enumerate(log_x, table, rec.y, opts.enumerate);
    rec.log_psi_exact = log_of(psi.count);
    rec.log_x_rho = log_x + rho(rec.u, grid);
    rec.measured_gap = rec.log_psi_exact - rec.log_x_rho;

    const SaddleState st = solve_alpha(log_x, table, rec.y);
    rec.alpha = st.alpha;
    rec.predicted_gap = predicted_gap(log_x, c, st);
    rec.alpha_condition_unmet = regime == Regime::c_in_1_2 && !(st.alpha < 0.5);
    return rec;
}

// Largest log x = k log 10 (k integer, k <= max_decade) whose estimated
// Psi(x, (log x)^c) stays within `cap`; nullopt if even 10^min_decade fails.
inline std::optional<int> largest_feasible_decade(double c, const PrimeTable& table, double cap,
                                                  int min_decade, int max_decade)
{
    std::optional<int> best;
    for (int k = min_decade; k <= max_decade; ++k) {
        const double lx = k * std::log(10.0);
        const double y = std::pow(lx, c);
        if (y >= static_cast<double>(table.limit)) break;
        if (detail::psi_estimate(lx, table, y) > cap) break;
        best = k;
    }
    return best;
}

inline OscillationRecord make_oscillation_record(double y, double alpha, double s_sum, double i_term)
{
    if (!(y > std::exp(std::exp(1.0))))
        fail_domain("oscillation: y must exceed e^e so that log_3 y > 0 (got ", y, ")");
    OscillationRecord r;
    r.y = y;
    r.alpha = alpha;
    r.s_sum = s_sum;
    r.i_term = i_term;
    r.diff = s_sum - i_term;
    r.normalizer = std::exp((0.5 - alpha) * std::log(y)) * log_iter(y, 3) / std::log(y);
    r.normalized_diff = r.diff / r.normalizer;
    return r;
}

// For each y: log x = y^(1/c), alpha = alpha(x, y), then S(alpha, y) and
// I((1 - alpha) log y). Rows come back in grid order.
inline std::vector<OscillationRecord> oscillation_scan(double c, const std::vector<double>& y_grid,
                                                       const PrimeTable& table, unsigned threads = 1)
{
    if (!(c > 1.0 && c < 2.0)) fail_domain("oscillation_scan: c must lie in (1, 2) (got ", c, ")");
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        if (!(y_grid[i] > std::exp(std::exp(1.0))))
            fail_domain("oscillation_scan: every y must exceed e^e (got ", y_grid[i], ")");
        if (i > 0 && !(y_grid[i] > y_grid[i - 1]))
            fail_domain("oscillation_scan: y grid must be strictly increasing");
        if (y_grid[i] >= static_cast<double>(table.limit) + 1.0)
            fail_range("oscillation_scan: y = ", y_grid[i], " exceeds prime table limit ", table.limit);
    }
    return parallel_map(y_grid.size(), threads, [&](std::size_t i) {
        const double y = y_grid[i];
        const double log_x = std::pow(y, 1.0 / c);
        const SaddleState st = solve_alpha(log_x, table, y);
        const double S = prime_power_sums(st.alpha, table, y).S;
        const double I = int_exp((1.0 - st.alpha) * std::log(y));
        return make_oscillation_record(y, st.alpha, S, I);
    });
}

// Geometric grid of `steps` points from y_min to y_max inclusive.
inline std::vector<double> geometric_grid(double y_min, double y_max, int steps)
{
    if (steps < 1) fail_domain("grid: steps must be >= 1 (got ", steps, ")");
    if (!(y_min > 0.0 && y_max >= y_min)) fail_domain("grid: need 0 < y_min <= y_max");
    std::vector<double> g;
    if (steps == 1) return {y_min};
    // Interpolating log10 keeps decade endpoints exact.
    const double a = std::log10(y_min), b = std::log10(y_max);
    for (int i = 0; i < steps; ++i) g.push_back(std::pow(10.0, a + (b - a) * i / (steps - 1)));
    g.front() = y_min;
    g.back() = y_max;
    return g;
}

// int_2^y t^-alpha d li(t) = int_{log 2}^{log y} e^{(1-alpha) w} / w dw,
// split into `panels` equal pieces in w.
inline double li_moment(double y, double alpha, int panels = 1)
{
    using boost::math::quadrature::gauss_kronrod;
    const double a = constants::log2, b = std::log(y);
    CompensatedSum sum;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * i / panels;
        const double hi = (i + 1 == panels) ? b : a + (b - a) * (i + 1) / panels;
        double err = 0;
        sum += gauss_kronrod<double, 31>::integrate(
            [alpha](double w) { return std::exp((1.0 - alpha) * w) / w; }, lo, hi, 25, 1e-14, &err);
    }
    return sum.value();
}

// Stieltjes integrals int_2^y dQ(t)/t^alpha (prime powers p^k weighted 1/k)
// and int_2^y d(pi(t) - li(t))/t^alpha (primes only), with the common smooth
// part done by quadrature.
inline QIntegral q_integral(double y, double alpha, const PrimeTable& table, int panels = 1)
{
    require_in_table("q_integral", y, table);
    const auto n = static_cast<std::uint64_t>(std::floor(y));
    const std::size_t count = table.count_upto(n);
    CompensatedSum primes_only, powers;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t p = table.primes[i];
        const double lp = table.log_primes[i];
        const double v = std::exp(-alpha * lp);
        primes_only += v;
        powers += v;
        unsigned k = 2;
        for (std::uint64_t pk = p; pk <= n / p; pk *= p, ++k)
            powers += std::exp(-alpha * k * lp) / k;
    }
    const double smooth = li_moment(y, alpha, panels);
    return {powers.value() - smooth, primes_only.value() - smooth};
}

}  // namespace friabilis
