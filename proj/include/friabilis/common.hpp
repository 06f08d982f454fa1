#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace friabilis {

// Error taxonomy. The CLI maps these onto exit codes 3 (domain/range),
// 4 (resource) and 1 (numeric, which signals a bug).

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace constants {
// 30 significant digits.
inline constexpr double euler_gamma = 0.577215664901532860606512090082;
inline constexpr double li2 = 1.04516378011749278484458888919;
inline constexpr double log2 = 0.693147180559945309417232121458;
inline constexpr double pi = 3.14159265358979323846264338328;
}  // namespace constants

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    CompensatedSum& add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator+=(double v) noexcept { return add(v); }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Iterated natural logarithm log_k.
inline double log_iter(double x, int k)
{
    for (int i = 0; i < k; ++i) x = std::log(x);
    return x;
}

// 17 significant digits, the interchange precision for every CSV/JSON real.
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string to_piece(const std::string& s) { return s; }
inline std::string to_piece(const char* s) { return s; }
inline std::string to_piece(double v) { return format_real(v); }
inline std::string to_piece(std::uint64_t v) { return std::to_string(v); }
inline std::string to_piece(std::int64_t v) { return std::to_string(v); }
inline std::string to_piece(int v) { return std::to_string(v); }

template <typename... Parts>
std::string concat(const Parts&... parts)
{
    std::string out;
    ((out += to_piece(parts)), ...);
    return out;
}

}  // namespace detail

template <typename... Parts>
[[noreturn]] void fail_domain(const Parts&... parts)
{
    throw domain_error(detail::concat(parts...));
}

template <typename... Parts>
[[noreturn]] void fail_range(const Parts&... parts)
{
    throw range_error(detail::concat(parts...));
}

template <typename... Parts>
[[noreturn]] void fail_resource(const Parts&... parts)
{
    throw resource_error(detail::concat(parts...));
}

}  // namespace friabilis
