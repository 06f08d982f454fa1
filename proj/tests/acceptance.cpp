// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "friabilis/cli.hpp"
#include "friabilis/friabilis.hpp"

using namespace friabilis;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
        pass = pass && ok;
    }
};

template <class... A>
std::string fmt(const char* f, A... a)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

const PrimeTable& table()
{
    static const PrimeTable t = sieve_primes(10000000);
    return t;
}

Outcome exact_counts()
{
    Outcome o;
    BuchstabOptions bo;
    bo.max_y = 1e6;
    o.check(psi_enumerate(BigInt(100), table(), 5).count == 34 && psi_sieve(100, 5).count == 34 &&
                psi_buchstab(100, table(), 5, bo).count == 34,
            "Psi(100, 5) = 34 by all three methods");
    int agree = 0, total = 0;
    for (std::uint64_t x : {1000ull, 10000ull, 100000ull, 1000000ull}) {
        for (double y : {3.0, 7.0, 20.0, 50.0, 100.0, static_cast<double>(x)}) {
            const BigInt e = psi_enumerate(BigInt(x), table(), y).count;
            const BigInt s = psi_sieve(x, y).count;
            const BigInt b = psi_buchstab(x, table(), y, bo).count;
            ++total;
            if (e == s && s == b) ++agree;
            else o.notes.push_back(fmt("disagree at x=%llu y=%g", static_cast<unsigned long long>(x), y));
        }
    }
    o.check(agree == total, fmt("%d/%d grid points agree exactly", agree, total));
    return o;
}

Outcome dickman_closed_forms()
{
    Outcome o;
    const auto g = build_rho_grid(12, 1e-3);
    double worst = 0;
    for (double u = 0; u <= 2.0; u += 1.0 / 512) {
        const double exact = u <= 1 ? 1.0 : 1.0 - std::log(u);
        worst = std::max(worst, std::fabs(std::exp(rho(u, g)) - exact));
    }
    o.check(worst <= 1e-12, fmt("max |rho - closed form| on [0,2] = %.3g (<= 1e-12)", worst));

    auto residual = [](double h) {
        const auto gh = build_rho_grid(12, h);
        double w = 0;
        for (double u = 2.5; u <= 10.0; u += 0.25) {
            const double d = (std::exp(rho(u + h, gh)) - std::exp(rho(u - h, gh))) / (2 * h);
            const double prev = std::exp(rho(u - 1, gh));
            w = std::max(w, std::fabs(u * d + prev) / prev);
        }
        return w;
    };
    const double r1 = residual(0.02), r2 = residual(0.01), r3 = residual(0.005);
    const double q1 = r1 / r2, q2 = r2 / r3;
    o.check(std::fabs(q1 - 4) <= 0.6 && std::fabs(q2 - 4) <= 0.6,
            fmt("residual reduction per halving %.3f, %.3f (~4)", q1, q2));
    return o;
}

Outcome rho_asymptotic_ratio()
{
    Outcome o;
    const auto g = build_rho_grid(100, 1e-3);
    auto ratio = [&](double u) { return std::exp(rho_asymptotic(u) - rho(u, g)); };
    const double r20 = ratio(20), r50 = ratio(50);
    o.check(std::fabs(r20 - 1) <= 0.10, fmt("ratio at u=20 = %.5f (within 10%%)", r20));
    o.check(std::fabs(r50 - 1) <= 0.03, fmt("ratio at u=50 = %.5f (within 3%%)", r50));
    double last = 1e300;
    bool mono = true;
    std::string seq;
    for (double u : {10.0, 20.0, 40.0, 80.0}) {
        const double d = std::fabs(ratio(u) - 1);
        mono = mono && d <= last;
        last = d;
        seq += fmt(" %.5f", ratio(u));
    }
    o.check(mono, "|ratio - 1| non-increasing over u=10,20,40,80:" + seq);
    return o;
}

Outcome saddle_identities()
{
    Outcome o;
    // Ten (x, y) pairs with y = (log x)^c, c in (1, 2).
    std::vector<std::pair<double, double>> grid;
    for (double c : {1.2, 1.5, 1.8})
        for (double k : {8.0, 12.0, 16.0}) grid.emplace_back(k * std::log(10.0), std::pow(k * std::log(10.0), c));
    grid.emplace_back(20 * std::log(10.0), std::pow(20 * std::log(10.0), 1.3));

    double worst_fp = 0, worst_id = 0, worst_conv = 0;
    for (auto [lx, y] : grid) {
        const double beta = beta_of(lx, y);
        const double d = 1e-5;
        const double fp = (f_sigma(beta + d, lx, y) - f_sigma(beta - d, lx, y)) / (2 * d);
        worst_fp = std::max(worst_fp, std::fabs(fp) / lx);
        const auto id = f_at_beta_identity(lx, y);
        worst_id = std::max(worst_id, std::fabs(id.lhs - id.rhs) / lx);
        const int n = 400;
        for (int i = 1; i < n; ++i) {
            const double s = static_cast<double>(i) / n, h = 1.0 / n;
            const double second = f_sigma(s - h, lx, y) + f_sigma(s + h, lx, y) - 2 * f_sigma(s, lx, y);
            worst_conv = std::min(worst_conv, second / lx);
        }
    }
    o.check(worst_fp <= 1e-6, fmt("max |f'(beta)| / log x = %.3g", worst_fp));
    o.check(worst_id <= 1e-6, fmt("max |f(beta) - closed form| / log x = %.3g", worst_id));
    o.check(worst_conv >= -1e-9, fmt("min second difference / log x = %.3g (>= -1e-9)", worst_conv));
    return o;
}

Outcome saddle_accuracy()
{
    Outcome o;
    const double c = 1.5;
    std::vector<double> err;
    for (int k : {8, 9, 10}) {
        const double lx = k * std::log(10.0);
        const double y = std::pow(lx, c);
        const auto x = static_cast<std::uint64_t>(std::llround(std::pow(10.0, k)));
        const double exact = log_of(psi_buchstab(x, table(), y).count);
        const double ratio = std::exp(psi_saddle(lx, table(), y) - exact);
        err.push_back(std::fabs(ratio - 1));
        o.notes.push_back(fmt("x=1e%d y=%.2f ratio=%.5f", k, y, ratio));
    }
    const BigInt e8 = psi_enumerate(parse_x("1e8"), table(), 79).count;
    o.check(e8 == psi_buchstab(100000000ull, table(), 79).count, "Psi(1e8, 79) enumerate = buchstab");
    o.check(err[0] <= 0.25, fmt("|ratio - 1| at 1e8 = %.4f (<= 0.25)", err[0]));
    o.check(err[1] <= err[0] && err[2] <= err[1],
            fmt("error non-increasing to 1e10: %.4f, %.4f, %.4f", err[0], err[1], err[2]));
    return o;
}

Outcome theorem_c_lt_1()
{
    Outcome o;
    const auto g = build_rho_grid(20, 1e-3);
    const double lx = 12 * std::log(10.0);
    const auto r = regime_record(lx, parse_x("1e12"), 0.7, table(), g);
    const double measured = r.measured_gap / lx;
    o.check(std::fabs(measured - (1 / 0.7 - 1)) <= 0.12,
            fmt("measured_gap/log x = %.5f vs 1/c - 1 = %.5f (+-0.12)", measured, 1 / 0.7 - 1));
    return o;
}

Outcome theorem_c_eq_1()
{
    Outcome o;
    const auto g = build_rho_grid(20, 1e-3);
    RegimeOptions opts;
    opts.enumerate.max_count = 1e9;
    std::vector<double> ratios;
    for (const char* xs : {"1e9", "1e13", "1e18"}) {
        const BigInt x = parse_x(xs);
        const auto r = regime_record(log_of(x), x, 1.0, table(), g, opts);
        ratios.push_back(r.measured_gap / r.predicted_gap);
        o.notes.push_back(fmt("x=%s measured=%.5f predicted=%.5f ratio=%.5f", xs, r.measured_gap, r.predicted_gap,
                              ratios.back()));
    }
    bool band = true;
    for (double q : ratios) band = band && q >= 0.3 && q <= 3.0;
    o.check(band, "all ratios in [0.3, 3.0]");
    o.check(std::fabs(ratios.back() - 1) <= std::fabs(ratios.front() - 1), "ratio does not drift away from 1");
    return o;
}

Outcome alpha_approx_fit()
{
    Outcome o;
    double fitted = 0;
    for (double c : {0.5, 1.0, 1.5}) {
        for (int k = 6; k <= 16; ++k) {
            const double lx = k * std::log(10.0);
            const double y = std::pow(lx, c);
            const double d = std::fabs(solve_alpha(lx, table(), y).alpha - alpha_approx(lx, y));
            fitted = std::max(fitted, d * std::log(y));
        }
    }
    o.check(fitted <= 5, fmt("fitted C = %.4f (<= 5)", fitted));
    return o;
}

Outcome t_versus_w()
{
    Outcome o;
    const double a = 0.3;
    std::vector<double> r;
    for (double y : {1e5, 1e6, 1e7}) {
        r.push_back(prime_power_sums(a, table(), y).T / w_sigma(2 * a, y));
        o.notes.push_back(fmt("y=%g T/w=%.5f", y, r.back()));
    }
    o.check(r[0] >= 0.7 && r[0] <= 1.3, fmt("ratio at y=1e5 = %.5f in [0.7, 1.3]", r[0]));
    o.check(std::fabs(r[1] - 1) <= std::fabs(r[0] - 1) && std::fabs(r[2] - 1) <= std::fabs(r[1] - 1),
            "ratio moves toward 1 as y grows");
    return o;
}

Outcome q_gap_and_oscillation()
{
    Outcome o;
    double worst = 0;
    for (double y : {1e3, 1e4, 1e5, 1e6}) {
        for (double a : {0.2, 0.3, 0.4}) {
            const auto q = q_integral(y, a, table());
            const double bound = 3 * std::pow(y, 0.5 - a) / std::log(y);
            const double ratio = std::fabs(q.q_part - q.pi_part) / bound;
            worst = std::max(worst, ratio);
            if (ratio > 1) o.notes.push_back(fmt("y=%g alpha=%.1f |gap|/bound = %.3f", y, a, ratio));
        }
    }
    o.check(worst <= 1, fmt("max |q - pi| / (3 y^(1/2-alpha)/log y) = %.4f (<= 1)", worst));
    const auto rows = oscillation_scan(1.5, geometric_grid(1e3, 1e7, 9), table());
    double most = 0;
    bool finite = true;
    for (const auto& r : rows) {
        finite = finite && std::isfinite(r.normalized_diff);
        most = std::max(most, std::fabs(r.normalized_diff));
    }
    o.check(finite && most <= 20, fmt("oscillation scan 1e3..1e7: max |normalized_diff| = %.4f (<= 20)", most));
    return o;
}

std::string cli_out(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0) throw std::runtime_error("cli failed: " + err.str());
    return out.str();
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    Outcome o;
    const std::vector<std::vector<std::string>> cmds{
        {"primes", "--limit", "100000", "--t", "1000", "--t", "99991"},
        {"rho", "--u", "2.5", "--u", "10", "--u", "40"},
        {"rho-grid", "export", "--u-max", "5", "--step", "0.01"},
        {"xi", "--u", "3", "--u", "300", "--format", "json"},
        {"alpha", "--x", "1e12", "--y", "200"},
        {"psi", "--x", "1e7", "--y", "100", "--method", "all"},
        {"compare", "--c", "0.7", "--x", "1e10", "--x", "1e12", "--format", "json"},
        {"compare", "--c", "1.5", "--x", "1e8", "--x", "1e9"},
        {"oscillate", "--c", "1.5", "--y-min", "1e3", "--y-max", "1e6", "--y-steps", "7"},
    };
    int same = 0;
    for (const auto& c : cmds)
        if (cli_out(c) == cli_out(c)) ++same;
    o.check(same == static_cast<int>(cmds.size()), fmt("%d/%zu commands byte-identical on rerun", same, cmds.size()));

    const std::string dir = "acceptance_determinism_";
    int files = 0, equal = 0;
    for (auto c : {cmds[6], cmds[7], cmds[8]}) {
        const std::string a = dir + std::to_string(files) + "_serial", b = dir + std::to_string(files) + "_par";
        auto serial = c, par = c;
        serial.insert(serial.end(), {"--threads", "1", "--output", a});
        par.insert(par.end(), {"--threads", "4", "--output", b});
        cli_out(serial);
        cli_out(par);
        const std::string sa = slurp(a), sb = slurp(b);
        if (!sa.empty() && sa == sb) ++equal;
        std::remove(a.c_str());
        std::remove(b.c_str());
        ++files;
    }
    o.check(equal == files, fmt("%d/%d serial vs parallel files identical", equal, files));
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact-count cross-validation", exact_counts},
        {"dickman closed forms and refinement", dickman_closed_forms},
        {"rho asymptotic ratio", rho_asymptotic_ratio},
        {"saddle identities", saddle_identities},
        {"saddle-point count accuracy", saddle_accuracy},
        {"regime c<1 exponent", theorem_c_lt_1},
        {"regime c=1 gap", theorem_c_eq_1},
        {"alpha approximation constant", alpha_approx_fit},
        {"T against w_2alpha", t_versus_w},
        {"q gap bound and oscillation band", q_gap_and_oscillation},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    secs);
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
