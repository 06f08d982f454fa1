#pragma once

// Sieve-backed prime data and the classical counting functions built on it:
// pi, Chebyshev psi, the logarithmic integral li, Riemann's prime-power
// count Pi, and the remainders R = psi - t and Q = Pi - li.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "common.hpp"

namespace friabilis {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;
    std::vector<double> log_primes;

    std::size_t size() const noexcept { return primes.size(); }

    // Number of primes <= n.
    std::size_t count_upto(std::uint64_t n) const noexcept
    {
        return static_cast<std::size_t>(
            std::upper_bound(primes.begin(), primes.end(), n) - primes.begin());
    }

    // Number of primes <= floor(t); t may be any real.
    std::size_t count_upto(double t) const noexcept
    {
        if (!(t >= 2.0)) return 0;
        const double ft = std::floor(t);
        if (ft >= static_cast<double>(limit)) return count_upto(limit);
        return count_upto(static_cast<std::uint64_t>(ft));
    }
};

struct SieveOptions {
    std::uint64_t max_limit = 1'000'000'000;
    std::size_t segment_size = 1u << 18;
};

struct RemainderSample {
    double t = 0;
    double psi_t = 0;
    std::uint64_t pi_t = 0;
    double li_t = 0;
    double big_pi_t = 0;
    double r_t = 0;
    double q_t = 0;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t sat_pow(std::uint64_t base, unsigned exp)
{
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(acc);
}

// floor(n^(1/k)) exactly.
inline std::uint64_t iroot(std::uint64_t n, unsigned k)
{
    if (k == 1 || n < 2) return n;
    auto r = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
    while (r > 0 && sat_pow(r, k) > n) --r;
    while (sat_pow(r + 1, k) <= n) ++r;
    return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline void write_varint(std::ostream& os, std::uint64_t v)
{
    while (v >= 0x80) {
        os.put(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    os.put(static_cast<char>(v));
}

// Returns false on clean end of stream before the first byte.
inline bool read_varint(std::istream& is, std::uint64_t& out)
{
    out = 0;
    for (int shift = 0; shift < 64; shift += 7) {
        const int c = is.get();
        if (c == std::char_traits<char>::eof()) {
            if (shift == 0) return false;
            fail_domain("prime cache: truncated varint");
        }
        out |= static_cast<std::uint64_t>(c & 0x7f) << shift;
        if (!(c & 0x80)) return true;
    }
    fail_domain("prime cache: varint longer than 64 bits");
}

inline void finish_table(PrimeTable& table)
{
    table.log_primes.resize(table.primes.size());
    std::transform(table.primes.begin(), table.primes.end(), table.log_primes.begin(),
                   [](std::uint32_t p) { return std::log(static_cast<double>(p)); });
}

}  // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Plain sieve of Eratosthenes over [0, limit]. Used for the base primes of
// the segmented sieve; memory is O(limit).
inline std::vector<std::uint32_t> simple_sieve(std::uint64_t limit)
{
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// Segmented sieve: working memory is O(sqrt(limit) + segment_size) on top of
// the output itself.
inline PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opts = {})
{
    if (limit < 2) fail_domain("sieve_primes: limit must be >= 2 (got ", limit, ")");
    if (limit > opts.max_limit)
        fail_resource("sieve_primes: limit ", limit, " exceeds configured cap ", opts.max_limit);

    PrimeTable table;
    table.limit = limit;
    const std::uint64_t root = detail::isqrt(limit);
    const std::vector<std::uint32_t> base = simple_sieve(root);
    if (limit >= 1000) {
        const double est = static_cast<double>(limit) / (std::log(static_cast<double>(limit)) - 1.1);
        table.primes.reserve(static_cast<std::size_t>(est));
    }

    const std::uint64_t seg = std::max<std::size_t>(opts.segment_size, 64);
    std::vector<std::uint8_t> mark(seg);
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        next[i] = static_cast<std::uint64_t>(base[i]) * base[i];

    for (std::uint64_t lo = 2; lo <= limit; lo += seg) {
        const std::uint64_t hi = std::min(limit + 1, lo + seg);  // exclusive
        std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(hi - lo), 0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            std::uint64_t m = next[i];
            for (; m < hi; m += p) mark[m - lo] = 1;
            next[i] = m;
        }
        for (std::uint64_t n = lo; n < hi; ++n)
            if (!mark[n - lo]) table.primes.push_back(static_cast<std::uint32_t>(n));
    }
    detail::finish_table(table);
    return table;
}

inline void require_in_table(const char* what, double t, const PrimeTable& table)
{
    if (!(t >= 2.0)) fail_domain(what, ": t must be >= 2 (got ", t, ")");
    if (t > static_cast<double>(table.limit))
        fail_range(what, ": t = ", t, " exceeds prime table limit ", table.limit);
}

inline std::uint64_t prime_pi(double t, const PrimeTable& table)
{
    require_in_table("prime_pi", t, table);
    return table.count_upto(t);
}

// psi(t) = sum over prime powers p^k <= t of log p. Every prime contributes
// k_p = floor(log t / log p) copies of log p; k_p > 1 only for p <= sqrt(t).
inline double chebyshev_psi(double t, const PrimeTable& table)
{
    require_in_table("chebyshev_psi", t, table);
    const auto n = static_cast<std::uint64_t>(std::floor(t));
    const std::size_t count = table.count_upto(n);
    CompensatedSum sum;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t p = table.primes[i];
        unsigned k = 1;
        for (std::uint64_t pk = p; pk <= n / p; pk *= p) ++k;
        sum += static_cast<double>(k) * table.log_primes[i];
    }
    return sum.value();
}

// li(t) = li(2) + int_2^t dv / log v, with the integral taken in the
// variable w = log v where the integrand e^w / w is smooth and mild.
inline double li(double t)
{
    if (!(t >= 2.0)) fail_domain("li: t must be >= 2 (got ", t, ")");
    if (t == 2.0) return constants::li2;
    using boost::math::quadrature::gauss_kronrod;
    const double a = constants::log2;
    const double b = std::log(t);
    double err = 0;
    const double integral = gauss_kronrod<double, 31>::integrate(
        [](double w) { return std::exp(w) / w; }, a, b, 20, 1e-14, &err);
    return constants::li2 + integral;
}

// Pi(t) = sum_{1<n<=t} Lambda(n)/log n. Lambda(n)/log n equals 1/k when
// n = p^k and vanishes otherwise, so grouping by k gives
// Pi(t) = sum_{k>=1} pi(t^(1/k)) / k, a finite sum since pi(t^(1/k)) = 0
// once t^(1/k) < 2.
inline double big_pi(double t, const PrimeTable& table)
{
    require_in_table("big_pi", t, table);
    const auto n = static_cast<std::uint64_t>(std::floor(t));
    CompensatedSum sum;
    for (unsigned k = 1;; ++k) {
        const std::uint64_t root = detail::iroot(n, k);
        if (root < 2) break;
        sum += static_cast<double>(table.count_upto(root)) / static_cast<double>(k);
    }
    return sum.value();
}

inline RemainderSample remainder_sample(double t, const PrimeTable& table)
{
    RemainderSample s;
    s.t = t;
    s.psi_t = chebyshev_psi(t, table);
    s.pi_t = prime_pi(t, table);
    s.li_t = li(t);
    s.big_pi_t = big_pi(t, table);
    s.r_t = s.psi_t - t;
    s.q_t = s.big_pi_t - s.li_t;
    return s;
}

// Binary cache: "FRB1", limit as 8-byte little-endian, then the prime gaps
// (first gap measured from 0) as LEB128 varints.
inline constexpr std::array<char, 4> prime_cache_magic{'F', 'R', 'B', '1'};

inline void save_prime_table(std::ostream& os, const PrimeTable& table)
{
    os.write(prime_cache_magic.data(), prime_cache_magic.size());
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((table.limit >> (8 * i)) & 0xff));
    std::uint64_t prev = 0;
    for (std::uint32_t p : table.primes) {
        detail::write_varint(os, p - prev);
        prev = p;
    }
}

inline PrimeTable load_prime_table(std::istream& is)
{
    std::array<char, 4> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != prime_cache_magic) fail_domain("prime cache: bad magic");
    std::array<unsigned char, 8> raw{};
    is.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (!is) fail_domain("prime cache: truncated header");

    PrimeTable table;
    for (int i = 0; i < 8; ++i) table.limit |= static_cast<std::uint64_t>(raw[i]) << (8 * i);
    if (table.limit < 2) fail_domain("prime cache: limit < 2");

    std::uint64_t prev = 0, gap = 0;
    while (detail::read_varint(is, gap)) {
        if (gap == 0) fail_domain("prime cache: zero gap");
        prev += gap;
        if (prev > table.limit) fail_domain("prime cache: prime ", prev, " above limit ", table.limit);
        table.primes.push_back(static_cast<std::uint32_t>(prev));
    }
    if (table.primes.empty()) fail_domain("prime cache: no primes");
    if (table.primes.front() != 2 || !is_prime(table.primes.back()))
        fail_domain("prime cache: first/last prime failed primality check");
    detail::finish_table(table);
    return table;
}

}  // namespace friabilis
