#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes to the given streams, so the whole CLI is testable in-process.
//
// Exit codes: 0 ok, 1 numeric failure or method mismatch, 2 usage,
// 3 domain/range violation, 4 resource cap.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "common.hpp"
#include "dickman.hpp"
#include "io.hpp"
#include "prime_table.hpp"
#include "psi_exact.hpp"
#include "saddle.hpp"
#include "theorem.hpp"

namespace friabilis::cli {

inline constexpr const char* version = "1.0.0";

namespace detail {

using nlohmann::json;

// x as typed by the user, normalised to log x plus the exact value when one
// is available.
struct XInput {
    std::string text;
    std::string form;  // "decimal", "scientific" or "log"
    std::optional<BigInt> exact;
    double log_x = 0;
};

inline XInput x_from_text(const std::string& text)
{
    XInput in;
    in.text = text;
    in.form = text.find_first_of("eE.") == std::string::npos ? "decimal" : "scientific";
    in.exact = parse_x(text);
    if (*in.exact < 1) fail_domain("x must be >= 1 (got '", text, "')");
    in.log_x = log_of(*in.exact);
    return in;
}

inline XInput x_from_log(double log_x)
{
    if (!std::isfinite(log_x) || log_x < 0.0) fail_domain("log x must be finite and >= 0 (got ", log_x, ")");
    XInput in;
    in.text = format_real(log_x);
    in.form = "log";
    in.log_x = log_x;
    return in;
}

inline std::vector<XInput> collect_x(const std::vector<std::string>& xs, const std::vector<double>& log_xs)
{
    std::vector<XInput> out;
    for (const auto& t : xs) out.push_back(x_from_text(t));
    for (double l : log_xs) out.push_back(x_from_log(l));
    return out;
}

// A result table whose cells are JSON scalars; CSV and JSON are both
// rendered from it.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

inline std::string csv_cell(const json& v)
{
    switch (v.type()) {
    case json::value_t::null: return "nan";
    case json::value_t::boolean: return v.get<bool>() ? "1" : "0";
    case json::value_t::number_float: return format_real(v.get<double>());
    case json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case json::value_t::string: return v.get<std::string>();
    default: return v.dump();
    }
}

inline json real(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

inline json big(const BigInt& v)
{
    if (v <= std::numeric_limits<std::uint64_t>::max()) return json(static_cast<std::uint64_t>(v));
    return json(v.str());
}

struct Output {
    std::function<void(std::ostream&)> csv;
    json rows = json::array();
    json extra_meta = json::object();
};

inline Output from_table(Table t)
{
    Output o;
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        o.rows.push_back(std::move(obj));
    }
    o.csv = [t = std::move(t)](std::ostream& os) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
    };
    return o;
}

struct Common {
    std::string format = "csv";
    std::string output;
    unsigned threads = 1;
    double max_count = 1e8;
    double max_sieve = 1e8;
};

inline void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", c.output, "write to this path instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
    sub->add_option("--max-count", c.max_count, "cap on the estimated enumeration count")->capture_default_str();
    sub->add_option("--max-sieve", c.max_sieve, "cap on sieve and prime-table sizes")->capture_default_str();
}

inline void validate_common(const Common& c)
{
    if (c.threads < 1) fail_domain("--threads must be >= 1");
    if (!(c.max_count >= 1.0)) fail_domain("--max-count must be >= 1 (got ", c.max_count, ")");
    if (!(c.max_sieve >= 2.0)) fail_domain("--max-sieve must be >= 2 (got ", c.max_sieve, ")");
}

// Primes up to floor(limit), refusing anything beyond --max-sieve.
inline PrimeTable table_upto(double limit, const Common& c)
{
    const double l = std::max(2.0, std::floor(limit));
    if (l > c.max_sieve) fail_resource("prime table up to ", l, " exceeds --max-sieve ", c.max_sieve);
    return sieve_primes(static_cast<std::uint64_t>(l));
}

inline void require_y(const char* what, double y)
{
    if (!std::isfinite(y) || y < 2.0) fail_domain(what, ": y must be >= 2 (got ", y, ")");
}

inline double grid_limit(double u)
{
    const double top = std::max(2.0, std::ceil(u) + 1.0);
    if (top > 500.0) fail_range("u = ", u, " exceeds the largest supported grid (u <= 499)");
    return top;
}

inline json config_echo(const CLI::App* sub)
{
    json cfg = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        // Execution-only settings do not change results, so they stay out of
        // the echo and serial and threaded runs write identical files.
        if (name == "help" || name.empty() || name == "threads" || name == "output") continue;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            cfg[name] = r.size() == 1 ? json(r.front()) : json(r);
        } else if (!opt->get_default_str().empty()) {
            cfg[name] = opt->get_default_str();
        }
    }
    return cfg;
}

inline void emit(const Output& o, const std::string& command, const json& config, const Common& c,
                 std::ostream& out)
{
    std::ostringstream buf;
    if (c.format == "json") {
        json doc;
        doc["meta"] = json{{"version", version}, {"command", command}, {"config", config}};
        for (const auto& [k, v] : o.extra_meta.items()) doc["meta"][k] = v;
        doc["rows"] = o.rows;
        buf << doc.dump(2) << '\n';
    } else {
        o.csv(buf);
    }
    if (c.output.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + c.output + "'");
    f << buf.str();
    if (!f) throw std::runtime_error("failed writing '" + c.output + "'");
}

inline json x_meta(const std::vector<XInput>& xs)
{
    json arr = json::array();
    for (const auto& x : xs) arr.push_back(json{{"x", x.text}, {"form", x.form}, {"log_x", x.log_x}});
    return arr;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace detail;

    CLI::App app{"friabilis: friable integer counts, Dickman rho and saddle-point comparisons"};
    app.name("friabilis");
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    Common common;

    // primes
    auto* primes_cmd = app.add_subcommand("primes", "prime table summary or psi/pi/li/Pi samples");
    add_common(primes_cmd, common);
    double primes_limit = 0;
    std::vector<double> primes_t;
    std::string primes_save, primes_load;
    primes_cmd->add_option("--limit", primes_limit, "sieve limit");
    primes_cmd->add_option("--t", primes_t, "sample points (repeatable)");
    primes_cmd->add_option("--save", primes_save, "write the table as an FRB1 cache");
    primes_cmd->add_option("--load", primes_load, "read the table from an FRB1 cache");

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho at given u");
    add_common(rho_cmd, common);
    std::vector<double> rho_u;
    double rho_h = 1e-3;
    int rho_order = 4;
    rho_cmd->add_option("--u", rho_u, "arguments (repeatable)")->required();
    rho_cmd->add_option("--step", rho_h, "grid step")->capture_default_str();
    rho_cmd->add_option("--order", rho_order, "Gauss-Legendre points per panel")->capture_default_str();

    // rho-grid export
    auto* grid_cmd = app.add_subcommand("rho-grid", "rho grid utilities");
    grid_cmd->require_subcommand(1);
    auto* export_cmd = grid_cmd->add_subcommand("export", "write log rho at every grid node");
    add_common(export_cmd, common);
    double grid_u_max = 20, grid_h = 1e-3;
    int grid_order = 4;
    export_cmd->add_option("--u-max", grid_u_max, "grid end")->capture_default_str();
    export_cmd->add_option("--step", grid_h, "grid step")->capture_default_str();
    export_cmd->add_option("--order", grid_order, "Gauss-Legendre points per panel")->capture_default_str();

    // xi
    auto* xi_cmd = app.add_subcommand("xi", "xi(u), its expansion, int t xi'(t) and the rho asymptotic");
    add_common(xi_cmd, common);
    std::vector<double> xi_u;
    xi_cmd->add_option("--u", xi_u, "arguments (repeatable)")->required();

    // alpha
    auto* alpha_cmd = app.add_subcommand("alpha", "saddle point alpha(x, y) and related quantities");
    add_common(alpha_cmd, common);
    std::vector<std::string> alpha_x;
    std::vector<double> alpha_log_x;
    double alpha_y = 0;
    alpha_cmd->add_option("--x", alpha_x, "x as decimal or 1eN");
    alpha_cmd->add_option("--log-x", alpha_log_x, "x given by its logarithm");
    alpha_cmd->add_option("--y", alpha_y, "friability bound")->required();

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "exact Psi(x, y)");
    add_common(psi_cmd, common);
    std::vector<std::string> psi_x;
    std::vector<double> psi_log_x;
    double psi_y = 0;
    std::string psi_method = "enum";
    psi_cmd->add_option("--x", psi_x, "x as decimal or 1eN");
    psi_cmd->add_option("--log-x", psi_log_x, "x given by its logarithm (enum only)");
    psi_cmd->add_option("--y", psi_y, "friability bound")->required();
    psi_cmd->add_option("--method", psi_method, "enum, sieve, buchstab or all")
        ->check(CLI::IsMember({"enum", "sieve", "buchstab", "all"}))
        ->capture_default_str();

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Psi(x, (log x)^c) against x rho(u)");
    add_common(cmp_cmd, common);
    double cmp_c = 0;
    std::vector<std::string> cmp_x;
    std::vector<double> cmp_log_x;
    cmp_cmd->add_option("--c", cmp_c, "y = (log x)^c")->required();
    cmp_cmd->add_option("--x", cmp_x, "x values (repeatable); for 1 < c < 2 defaults to the largest feasible 10^k");
    cmp_cmd->add_option("--log-x", cmp_log_x, "log x values (repeatable)");

    // oscillate
    auto* osc_cmd = app.add_subcommand("oscillate", "S(alpha, y) - I((1 - alpha) log y) over a y grid");
    add_common(osc_cmd, common);
    double osc_c = 0, osc_y_min = 0, osc_y_max = 0;
    int osc_steps = 0;
    osc_cmd->add_option("--c", osc_c, "log x = y^(1/c)")->required();
    osc_cmd->add_option("--y-min", osc_y_min, "first y")->required();
    osc_cmd->add_option("--y-max", osc_y_max, "last y")->required();
    osc_cmd->add_option("--y-steps", osc_steps, "number of geometric steps")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "friabilis: usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        validate_common(common);
        Output result;
        const CLI::App* active = nullptr;
        std::string command;

        if (primes_cmd->parsed()) {
            active = primes_cmd;
            command = "primes";
            if (!primes_load.empty() && primes_limit > 0) fail_domain("primes: --limit and --load are exclusive");
            double limit = primes_limit;
            for (double t : primes_t) {
                if (!(t >= 1.0) || !std::isfinite(t)) fail_domain("primes: t must be >= 1 (got ", t, ")");
                if (primes_load.empty() && primes_limit <= 0) limit = std::max(limit, std::floor(t));
            }
            if (primes_load.empty() && !(limit >= 2.0))
                fail_domain("primes: --limit must be >= 2 (or give --t / --load)");

            PrimeTable table;
            if (!primes_load.empty()) {
                std::ifstream f(primes_load, std::ios::binary);
                if (!f) fail_domain("primes: cannot open '", primes_load, "'");
                table = load_prime_table(f);
            } else {
                table = table_upto(limit, common);
            }
            if (!primes_save.empty()) {
                std::ofstream f(primes_save, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open '" + primes_save + "'");
                save_prime_table(f, table);
            }

            Table t;
            if (primes_t.empty()) {
                t.columns = {"limit", "count", "largest"};
                t.rows.push_back({json(table.limit), json(static_cast<std::uint64_t>(table.size())),
                                  json(table.primes.empty() ? std::uint64_t{0}
                                                            : std::uint64_t{table.primes.back()})});
            } else {
                t.columns = {"t", "psi", "pi", "li", "Pi", "R", "Q"};
                for (double x : primes_t) {
                    const auto s = remainder_sample(x, table);
                    t.rows.push_back({real(s.t), real(s.psi_t), real(s.pi_t), real(s.li_t), real(s.big_pi_t),
                                      real(s.r_t), real(s.q_t)});
                }
            }
            result = from_table(std::move(t));
        } else if (rho_cmd->parsed()) {
            active = rho_cmd;
            command = "rho";
            double top = 0;
            for (double u : rho_u) {
                if (!std::isfinite(u) || u < 0.0) fail_domain("rho: u must be >= 0 (got ", u, ")");
                top = std::max(top, grid_limit(u));
            }
            if (!(rho_h >= 1e-4 && rho_h <= 0.1)) fail_domain("rho: step must lie in [1e-4, 0.1] (got ", rho_h, ")");
            if (rho_order < 1 || rho_order > 16) fail_domain("rho: order must lie in [1, 16]");
            const RhoGrid grid = build_rho_grid(top, rho_h, rho_order);
            Table t{{"u", "rho", "log_rho"}, {}};
            for (double u : rho_u) {
                const double lr = rho(u, grid);
                t.rows.push_back({real(u), real(std::exp(lr)), real(lr)});
            }
            result = from_table(std::move(t));
        } else if (export_cmd->parsed()) {
            active = export_cmd;
            command = "rho-grid export";
            if (!(grid_u_max >= 1.0 && grid_u_max <= 500.0))
                fail_domain("rho-grid: u-max must lie in [1, 500] (got ", grid_u_max, ")");
            if (!(grid_h >= 1e-4 && grid_h <= 0.1)) fail_domain("rho-grid: step must lie in [1e-4, 0.1] (got ", grid_h, ")");
            if (grid_order < 1 || grid_order > 16) fail_domain("rho-grid: order must lie in [1, 16]");
            auto grid = std::make_shared<RhoGrid>(build_rho_grid(grid_u_max, grid_h, grid_order));
            for (std::size_t n = 0; n < grid->log_rho.size(); ++n)
                result.rows.push_back(json{{"u", grid->node(n)}, {"log_rho", real(grid->log_rho[n])}});
            result.csv = [grid](std::ostream& os) { write_rho_grid_csv(os, *grid); };
        } else if (xi_cmd->parsed()) {
            active = xi_cmd;
            command = "xi";
            for (double u : xi_u)
                if (!std::isfinite(u) || u < 1.0) fail_domain("xi: u must be >= 1 (got ", u, ")");
            Table t{{"u", "xi", "residual", "xi_expansion", "xi_integral", "log_rho_asymptotic"}, {}};
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (double u : xi_u) {
                const XiValue v = xi(u);
                t.rows.push_back({real(u), real(v.xi), real(v.residual), real(u >= 10.0 ? xi_expansion(u) : nan),
                                  real(xi_integral(u)), real(u >= 2.0 ? rho_asymptotic(u) : nan)});
            }
            result = from_table(std::move(t));
        } else if (alpha_cmd->parsed()) {
            active = alpha_cmd;
            command = "alpha";
            const auto xs = collect_x(alpha_x, alpha_log_x);
            if (xs.size() != 1) fail_domain("alpha: give exactly one of --x or --log-x");
            require_y("alpha", alpha_y);
            if (!(xs[0].log_x >= constants::log2)) fail_domain("alpha: x must be >= 2");
            const PrimeTable table = table_upto(alpha_y, common);
            const SaddleState st = solve_alpha(xs[0].log_x, table, alpha_y);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const double approx = alpha_y <= st.log_x * st.log_x ? alpha_approx(st.log_x, alpha_y) : nan;
            const double saddle = st.u >= 2.0 ? psi_saddle(st.log_x, table, alpha_y) : nan;
            Table t{{"log_x", "y", "u", "c", "alpha", "beta", "solver_residual", "iterations", "alpha_approx",
                     "log_psi_saddle"},
                    {}};
            t.rows.push_back({real(st.log_x), real(st.y), real(st.u), real(st.c), real(st.alpha), real(st.beta),
                              real(st.solver_residual), json(st.iterations), real(approx), real(saddle)});
            result = from_table(std::move(t));
            result.extra_meta["x"] = x_meta(xs);
        } else if (psi_cmd->parsed()) {
            active = psi_cmd;
            command = "psi";
            const auto xs = collect_x(psi_x, psi_log_x);
            if (xs.size() != 1) fail_domain("psi: give exactly one of --x or --log-x");
            require_y("psi", psi_y);
            const XInput& x = xs[0];
            if (x.form == "log" && psi_method != "enum")
                fail_domain("psi: --log-x only works with --method enum");

            std::vector<PsiMethod> methods;
            if (psi_method == "enum" || psi_method == "all") methods.push_back(PsiMethod::enumerate);
            if (psi_method == "sieve" || psi_method == "all") methods.push_back(PsiMethod::sieve);
            if (psi_method == "buchstab" || psi_method == "all") methods.push_back(PsiMethod::buchstab);

            std::uint64_t x64 = 0;
            const bool needs_u64 = psi_method != "enum";
            if (needs_u64) {
                if (*x.exact > std::numeric_limits<std::uint64_t>::max())
                    fail_domain("psi: x must fit in 64 bits for --method ", psi_method);
                x64 = static_cast<std::uint64_t>(*x.exact);
                if (psi_method == "sieve" || psi_method == "all") {
                    if (static_cast<double>(x64) > common.max_sieve)
                        fail_resource("psi: x = ", x64, " exceeds --max-sieve ", common.max_sieve);
                }
            }

            // The table only needs primes up to min(y, x).
            const double x_top = x.exact ? (*x.exact > BigInt(1e18) ? 1e18 : static_cast<double>(*x.exact))
                                         : std::exp(std::min(x.log_x, 700.0)) + 1.0;
            const PrimeTable table = table_upto(std::min(psi_y, x_top), common);

            Table t{{"x", "log_x", "y", "method", "count", "boundary_ambiguous"}, {}};
            std::optional<BigInt> first;
            for (PsiMethod m : methods) {
                PsiResult r;
                switch (m) {
                case PsiMethod::enumerate: {
                    EnumerateOptions eo;
                    eo.max_count = common.max_count;
                    eo.threads = common.threads;
                    r = x.exact ? psi_enumerate(*x.exact, table, psi_y, eo) : psi_enumerate(x.log_x, table, psi_y, eo);
                    break;
                }
                case PsiMethod::sieve: {
                    SieveCountOptions so;
                    so.max_x = static_cast<std::uint64_t>(common.max_sieve);
                    r = psi_sieve(x64, psi_y, so);
                    break;
                }
                case PsiMethod::buchstab: {
                    BuchstabOptions bo;
                    bo.max_y = common.max_sieve;
                    r = psi_buchstab(x64, table, psi_y, bo);
                    break;
                }
                }
                if (first && *first != r.count)
                    throw numeric_error("psi: methods disagree: " + first->str() + " vs " + r.count.str() + " (" +
                                        to_string(m) + ")");
                if (!first) first = r.count;
                t.rows.push_back({json(x.text), real(x.log_x), real(psi_y), json(to_string(m)), big(r.count),
                                  json(r.boundary_ambiguous)});
            }
            result = from_table(std::move(t));
            result.extra_meta["x"] = x_meta(xs);
        } else if (cmp_cmd->parsed()) {
            active = cmp_cmd;
            command = "compare";
            regime_of(cmp_c);
            auto xs = collect_x(cmp_x, cmp_log_x);
            if (xs.empty() && regime_of(cmp_c) == Regime::c_in_1_2) {
                // Largest decade whose pre-flight estimate fits --max-count.
                const PrimeTable probe = table_upto(std::pow(30 * std::log(10.0), cmp_c), common);
                const auto d = largest_feasible_decade(cmp_c, probe, common.max_count, 4, 30);
                if (!d) fail_resource("compare: no x = 10^k (4 <= k <= 30) fits the count cap ", common.max_count);
                xs.push_back(x_from_text("1e" + std::to_string(*d)));
            }
            if (xs.empty()) fail_domain("compare: give at least one --x or --log-x (optional only for 1 < c < 2)");
            double y_top = 2.0, u_top = 0.0;
            for (const auto& x : xs) {
                if (!(x.log_x > std::exp(1.0))) fail_domain("compare: log log x must be > 1 (got x = ", x.text, ")");
                const double y = std::pow(x.log_x, cmp_c);
                require_y("compare", y);
                y_top = std::max(y_top, y);
                u_top = std::max(u_top, grid_limit(x.log_x / std::log(y)));
            }
            const PrimeTable table = table_upto(y_top, common);
            const RhoGrid grid = build_rho_grid(u_top, 1e-3);
            RegimeOptions ro;
            ro.enumerate.max_count = common.max_count;
            ro.enumerate.threads = common.threads;
            std::vector<RegimeRecord> records;
            for (const auto& x : xs) records.push_back(regime_record(x.log_x, x.exact, cmp_c, table, grid, ro));
            for (const auto& r : records) result.rows.push_back(r);
            result.csv = [records](std::ostream& os) { write_regime_csv(os, records); };
            result.extra_meta["x"] = x_meta(xs);
        } else if (osc_cmd->parsed()) {
            active = osc_cmd;
            command = "oscillate";
            if (!(osc_c > 1.0 && osc_c < 2.0)) fail_domain("oscillate: c must lie in (1, 2) (got ", osc_c, ")");
            if (osc_steps < 1) fail_domain("oscillate: y-steps must be >= 1 (got ", osc_steps, ")");
            const double ee = std::exp(std::exp(1.0));
            if (!(osc_y_min > ee)) fail_domain("oscillate: y-min must exceed e^e (got ", osc_y_min, ")");
            if (!(osc_y_max >= osc_y_min)) fail_domain("oscillate: y-max must be >= y-min");
            if (osc_steps > 1 && !(osc_y_max > osc_y_min))
                fail_domain("oscillate: y-max must exceed y-min when y-steps > 1");
            const PrimeTable table = table_upto(osc_y_max, common);
            const auto grid = geometric_grid(osc_y_min, osc_y_max, osc_steps);
            const auto records = oscillation_scan(osc_c, grid, table, common.threads);
            for (const auto& r : records) result.rows.push_back(r);
            result.csv = [records](std::ostream& os) { write_oscillation_csv(os, records); };
        }

        emit(result, command, config_echo(active), common, out);
        return 0;
    } catch (const resource_error& e) {
        err << "friabilis: resource cap: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        err << "friabilis: domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::out_of_range& e) {
        err << "friabilis: range error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "friabilis: error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace friabilis::cli
