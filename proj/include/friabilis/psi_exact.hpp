#pragma once

// Exact Psi(x, y) by three independent methods:
//   enumerate  depth-first walk over exponent vectors in log space, with
//              exact big-integer resolution of points near the boundary;
//   sieve      segmented sieve dividing out every prime power <= y;
//   buchstab   memoised Psi(x, p_k) = Psi(x, p_{k-1}) + Psi(x/p_k, p_k).

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "common.hpp"
#include "prime_table.hpp"
#include "saddle.hpp"

namespace friabilis {

using BigInt = boost::multiprecision::cpp_int;

enum class PsiMethod { enumerate, sieve, buchstab };

inline const char* to_string(PsiMethod m)
{
    switch (m) {
    case PsiMethod::enumerate: return "enum";
    case PsiMethod::sieve: return "sieve";
    case PsiMethod::buchstab: return "buchstab";
    }
    return "?";
}

// How guard-band points are counted when x is known only through log x.
enum class BoundaryRule { nominal, include, exclude };

struct PsiResult {
    double log_x = 0;
    double y = 0;
    BigInt count = 0;
    PsiMethod method = PsiMethod::enumerate;
    std::uint64_t boundary_ambiguous = 0;
};

struct EnumerateOptions {
    double max_count = 1e8;     // pre-flight cap on the estimated count
    double guard_scale = 1.0;   // guard band is guard_scale * 1e-9 * (1 + log x)
    BoundaryRule rule = BoundaryRule::nominal;
    unsigned threads = 1;
};

struct SieveCountOptions {
    std::uint64_t max_x = 100'000'000;
    std::size_t segment_size = 1u << 16;
};

struct BuchstabOptions {
    std::uint64_t max_x = 1'000'000'000'000;
    double max_y = 1e5;
    std::size_t memo_capacity = std::size_t{1} << 24;
};

// Natural log of a positive big integer.
inline double log_of(const BigInt& x)
{
    if (x <= 0) fail_domain("log_of: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 62) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
    const std::size_t shift = bits - 62;
    const auto top = static_cast<std::uint64_t>(BigInt(x >> shift));
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * constants::log2;
}

// Parses "12345", "1e18", "2.5e3" or "1E40" into floor(value) exactly.
inline BigInt parse_x(std::string_view text)
{
    std::string mant;
    long long exp10 = 0;
    std::size_t i = 0;
    bool seen_point = false, any_digit = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mant += ch;
            any_digit = true;
            if (seen_point) --exp10;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) fail_domain("x: not a number: '", std::string(text), "'");
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') fail_domain("x: not a number: '", std::string(text), "'");
        const std::string_view ex = text.substr(i + 1);
        if (ex.empty()) fail_domain("x: missing exponent in '", std::string(text), "'");
        std::size_t j = (ex[0] == '+' || ex[0] == '-') ? 1 : 0;
        if (j == ex.size()) fail_domain("x: missing exponent in '", std::string(text), "'");
        long long e = 0;
        for (; j < ex.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(ex[j])))
                fail_domain("x: bad exponent in '", std::string(text), "'");
            e = e * 10 + (ex[j] - '0');
            if (e > 100000) fail_domain("x: exponent too large in '", std::string(text), "'");
        }
        exp10 += (ex[0] == '-') ? -e : e;
    }
    BigInt v(mant);
    if (exp10 >= 0) {
        v *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10));
    } else {
        v /= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-exp10));
    }
    return v;
}

namespace detail {

// Rough count used to refuse hopeless enumerations up front.
inline double psi_estimate(double log_x, const PrimeTable& table, double y)
{
    const double u = log_x / std::log(y);
    if (u <= 1.0) return std::exp(log_x);
    if (u < 2.0) return std::exp(log_x) * (1.0 - std::log(u));
    return std::exp(psi_saddle(log_x, table, y));
}

class Enumerator {
public:
    Enumerator(std::span<const std::uint32_t> primes, std::span<const double> logs, double log_x,
               double eps, const BigInt* exact_x, BoundaryRule rule)
        : primes_(primes), logs_(logs), log_x_(log_x), eps_(eps), exact_x_(exact_x), rule_(rule),
          exps_(primes.size(), 0)
    {
    }

    // Count all points below `top` (exclusive prime index) given the
    // exponents already fixed above it.
    void run(std::size_t top, double partial)
    {
        if (top == 1) {
            last_level(partial);
            return;
        }
        const std::size_t i = top - 1;
        for (std::uint32_t a = 0;; ++a) {
            const double s = partial + a * logs_[i];
            if (s > log_x_ + eps_) break;
            exps_[i] = a;
            run(i, s);
        }
        exps_[i] = 0;
    }

    void set_exponent(std::size_t i, std::uint32_t a) { exps_[i] = a; }

    std::uint64_t count = 0;
    std::uint64_t ambiguous = 0;

private:
    // Prime 2 closes every branch: the admissible exponents form a range.
    void last_level(double partial)
    {
        const double l2 = logs_[0];
        const double rem = log_x_ - partial;
        std::uint64_t certain = 0;
        if (rem - eps_ >= 0) certain = static_cast<std::uint64_t>(std::floor((rem - eps_) / l2)) + 1;
        count += certain;
        for (std::uint64_t a = certain;; ++a) {
            const double s = partial + static_cast<double>(a) * l2;
            if (s > log_x_ + eps_) break;
            ++ambiguous;
            if (resolve(a, s)) ++count;
        }
    }

    bool resolve(std::uint64_t a2, double s) const
    {
        if (exact_x_) {
            BigInt n = BigInt(1) << static_cast<unsigned>(a2);
            for (std::size_t i = 1; i < primes_.size(); ++i)
                if (exps_[i]) n *= boost::multiprecision::pow(BigInt(primes_[i]), exps_[i]);
            return n <= *exact_x_;
        }
        switch (rule_) {
        case BoundaryRule::include: return true;
        case BoundaryRule::exclude: return false;
        case BoundaryRule::nominal: return s <= log_x_;
        }
        return false;
    }

    std::span<const std::uint32_t> primes_;
    std::span<const double> logs_;
    double log_x_;
    double eps_;
    const BigInt* exact_x_;
    BoundaryRule rule_;
    std::vector<std::uint32_t> exps_;
};

inline PsiResult enumerate_impl(double log_x, const BigInt* exact_x, const PrimeTable& table, double y,
                                const EnumerateOptions& opts)
{
    if (!(y >= 2.0)) fail_domain("psi_enumerate: y must be >= 2 (got ", y, ")");
    if (!(log_x >= 0.0)) fail_domain("psi_enumerate: x must be >= 1 (log x = ", log_x, ")");

    PsiResult res;
    res.log_x = log_x;
    res.y = y;
    res.method = PsiMethod::enumerate;

    // Every n <= x is y-friable once y >= x.
    if (exact_x && BigInt(static_cast<std::uint64_t>(std::min(std::floor(y), 1.8e19))) >= *exact_x) {
        res.count = *exact_x;
        return res;
    }
    const double eps = opts.guard_scale * 1e-9 * (1.0 + log_x);
    if (!exact_x && std::log(y) >= log_x + eps && log_x < 43.0) {
        res.count = BigInt(static_cast<std::uint64_t>(std::floor(std::exp(log_x))));
        return res;
    }

    const double y_eff = std::min(y, std::exp(std::min(log_x + eps, 700.0)));
    if (y_eff >= static_cast<double>(table.limit) + 1.0)
        fail_range("psi_enumerate: y = ", y, " exceeds prime table limit ", table.limit);
    if (y_eff < 2.0) {
        res.count = 1;
        return res;
    }
    const double estimate = psi_estimate(log_x, table, y);
    if (estimate > opts.max_count)
        fail_resource("psi_enumerate: estimated count ", estimate, " exceeds cap ", opts.max_count);

    const std::size_t m = table.count_upto(y_eff);
    const std::span<const std::uint32_t> primes(table.primes.data(), m);
    const std::span<const double> logs(table.log_primes.data(), m);

    if (m == 1 || opts.threads <= 1) {
        Enumerator e(primes, logs, log_x, eps, exact_x, opts.rule);
        e.run(m, 0.0);
        res.count = e.count;
        res.boundary_ambiguous = e.ambiguous;
        return res;
    }

    // Split on the exponent of the largest prime; partial counts are
    // reduced in branch order so the result matches the serial run.
    const double top_log = logs[m - 1];
    const auto branches = static_cast<std::size_t>(std::floor((log_x + eps) / top_log)) + 1;
    std::vector<std::uint64_t> counts(branches, 0), amb(branches, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < branches;) {
            const double s = static_cast<double>(b) * top_log;
            if (s > log_x + eps) continue;
            Enumerator e(primes, logs, log_x, eps, exact_x, opts.rule);
            e.set_exponent(m - 1, static_cast<std::uint32_t>(b));
            e.run(m - 1, s);
            counts[b] = e.count;
            amb[b] = e.ambiguous;
        }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads = std::min<unsigned>(opts.threads, static_cast<unsigned>(branches));
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::uint64_t total = 0, total_amb = 0;
    for (std::size_t b = 0; b < branches; ++b) {
        total += counts[b];
        total_amb += amb[b];
    }
    res.count = total;
    res.boundary_ambiguous = total_amb;
    return res;
}

}  // namespace detail

// Psi(x, y) with x known only through log x. Guard-band points are counted
// according to opts.rule and reported in boundary_ambiguous.
inline PsiResult psi_enumerate(double log_x, const PrimeTable& table, double y, const EnumerateOptions& opts = {})
{
    return detail::enumerate_impl(log_x, nullptr, table, y, opts);
}

// Psi(x, y) for exact x; guard-band points are settled by comparing the
// exact product against x.
inline PsiResult psi_enumerate(const BigInt& x, const PrimeTable& table, double y, const EnumerateOptions& opts = {})
{
    if (x < 1) fail_domain("psi_enumerate: x must be >= 1");
    return detail::enumerate_impl(log_of(x), &x, table, y, opts);
}

inline PsiResult psi_sieve(std::uint64_t x, double y, const SieveCountOptions& opts = {})
{
    if (!(y >= 2.0)) fail_domain("psi_sieve: y must be >= 2 (got ", y, ")");
    if (x < 1) fail_domain("psi_sieve: x must be >= 1");
    if (x > opts.max_x) fail_resource("psi_sieve: x = ", x, " exceeds cap ", opts.max_x);

    PsiResult res;
    res.log_x = std::log(static_cast<double>(x));
    res.y = y;
    res.method = PsiMethod::sieve;

    const std::uint64_t pmax = std::min<std::uint64_t>(x, static_cast<std::uint64_t>(std::floor(y)));
    const std::vector<std::uint32_t> primes = simple_sieve(pmax);
    const std::uint64_t seg = std::max<std::size_t>(opts.segment_size, 16);
    std::vector<std::uint64_t> rest(seg);
    std::uint64_t count = 0;

    for (std::uint64_t lo = 1; lo <= x; lo += seg) {
        const std::uint64_t hi = std::min(x + 1, lo + seg);  // exclusive
        for (std::uint64_t n = lo; n < hi; ++n) rest[n - lo] = n;
        for (const std::uint64_t p : primes) {
            for (std::uint64_t pk = p; pk < hi; pk *= p) {
                for (std::uint64_t m = (lo + pk - 1) / pk * pk; m < hi; m += pk) rest[m - lo] /= p;
                if (pk > (hi - 1) / p) break;
            }
        }
        for (std::uint64_t n = lo; n < hi; ++n) count += (rest[n - lo] == 1);
    }
    res.count = count;
    return res;
}

namespace detail {

class BuchstabCounter {
public:
    BuchstabCounter(const PrimeTable& table, std::size_t memo_capacity)
        : primes_(table.primes), capacity_(memo_capacity)
    {
        memo_.reserve(std::min<std::size_t>(memo_capacity, 1u << 20));
    }

    // Psi(x, p_k), primes indexed from 0 (p_0 = 2).
    std::uint64_t psi(std::uint64_t x, std::size_t k)
    {
        if (x < 2) return x;
        if (k == 0) return static_cast<std::uint64_t>(std::bit_width(x));
        if (primes_[k] >= x) return x;

        const bool memoise = x > 256;
        const std::uint64_t key = (x << 20) | k;
        if (memoise) {
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }

        // Psi(x, p_k) = Psi(x, 2) + sum_{i=1..k} Psi(x/p_i, p_i); the terms
        // with p_i^2 > x reduce to floor(x/p_i).
        std::uint64_t total = static_cast<std::uint64_t>(std::bit_width(x));
        for (std::size_t i = 1; i <= k; ++i) {
            const std::uint64_t p = primes_[i];
            const std::uint64_t q = x / p;
            if (q == 0) break;
            total += (q < p) ? q : psi(q, i);
        }

        if (memoise) {
            if (memo_.size() >= capacity_)
                fail_resource("psi_buchstab: memo capacity ", static_cast<std::uint64_t>(capacity_), " exhausted");
            memo_.emplace(key, total);
        }
        return total;
    }

private:
    const std::vector<std::uint32_t>& primes_;
    std::size_t capacity_;
    std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace detail

inline PsiResult psi_buchstab(std::uint64_t x, const PrimeTable& table, double y, const BuchstabOptions& opts = {})
{
    if (!(y >= 2.0)) fail_domain("psi_buchstab: y must be >= 2 (got ", y, ")");
    if (x < 1) fail_domain("psi_buchstab: x must be >= 1");
    if (x > opts.max_x) fail_resource("psi_buchstab: x = ", x, " exceeds cap ", opts.max_x);
    if (x >= (std::uint64_t{1} << 44)) fail_resource("psi_buchstab: x must be < 2^44 for the memo key");
    if (y > opts.max_y) fail_resource("psi_buchstab: y = ", y, " exceeds cap ", opts.max_y);

    PsiResult res;
    res.log_x = std::log(static_cast<double>(x));
    res.y = y;
    res.method = PsiMethod::buchstab;

    const double y_eff = std::min(y, static_cast<double>(x));
    if (y_eff < 2.0) {
        res.count = 1;
        return res;
    }
    if (y_eff >= static_cast<double>(table.limit) + 1.0)
        fail_range("psi_buchstab: y = ", y, " exceeds prime table limit ", table.limit);
    const std::size_t m = table.count_upto(y_eff);
    detail::BuchstabCounter counter(table, opts.memo_capacity);
    res.count = counter.psi(x, m - 1);
    return res;
}

}  // namespace friabilis
