#pragma once

#include "energia/error.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace energia {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned default_precision_bits = 256;

namespace detail {
inline unsigned requested_bits = 256;
}

// mpfr_float takes its working precision in decimal digits, so the working precision is at
// least the requested one.
inline void set_precision_bits(unsigned bits)
{
    if (bits < 64)
        bits = 64;
    detail::requested_bits = bits;
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1);
}

inline unsigned precision_bits() { return detail::requested_bits; }

inline unsigned precision_bits_from_env()
{
    if (const char* env = std::getenv("ENERGIA_PRECISION_BITS")) {
        char* end = nullptr;
        unsigned long bits = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && bits >= 64 && bits <= 65536)
            return static_cast<unsigned>(bits);
    }
    return default_precision_bits;
}

namespace detail {
inline const bool precision_initialised = (set_precision_bits(precision_bits_from_env()), true);
}

inline Real to_real(const BigInt& v) { return Real(v); }
inline Real to_real(const Rational& v) { return Real(boost::multiprecision::numerator(v)) / Real(boost::multiprecision::denominator(v)); }

inline Real log2_real(const Real& v) { return boost::multiprecision::log(v) / boost::multiprecision::log(Real(2)); }

/// Integer part of v, rounded toward zero.
inline BigInt trunc_to_bigint(const Real& v)
{
    BigInt out;
    mpfr_get_z(out.backend().data(), v.backend().data(), MPFR_RNDZ);
    return out;
}

inline BigInt floor_to_bigint(const Real& v) { return trunc_to_bigint(boost::multiprecision::floor(v)); }
inline BigInt ceil_to_bigint(const Real& v) { return trunc_to_bigint(boost::multiprecision::ceil(v)); }

/// Exact conversion of a finite binary float.
inline Rational to_rational(const Real& v)
{
    if (v == 0)
        return Rational(0);
    int exponent = 0;
    Real mantissa = boost::multiprecision::frexp(v, &exponent);
    const unsigned bits = precision_bits() + 8;
    Real scaled = boost::multiprecision::ldexp(mantissa, static_cast<int>(bits));
    BigInt integral = trunc_to_bigint(scaled);
    Rational out(integral);
    int shift = exponent - static_cast<int>(bits);
    if (shift >= 0)
        out *= Rational(BigInt(1) << shift);
    else
        out /= Rational(BigInt(1) << -shift);
    return out;
}

inline BigInt ipow(const BigInt& base, std::uint64_t exp) { return boost::multiprecision::pow(base, static_cast<unsigned>(exp)); }

inline BigInt floor_of(const Rational& v)
{
    BigInt q = boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
    if (v < 0 && Rational(q) != v)
        q -= 1;
    return q;
}

inline BigInt ceil_of(const Rational& v)
{
    BigInt f = floor_of(v);
    return Rational(f) == v ? f : f + 1;
}

/// Parses "12", "-3.25", "1e-3", "2.5E2" or "p/q" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    auto bad = [&] { fail(Errc::parse_error, "not a decimal number: '" + std::string(text) + "'"); };
    if (text.empty())
        bad();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0)
            bad();
        return num / den;
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point)
                ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty())
        bad();
    long long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E')
            bad();
        ++i;
        std::string exp_text(text.substr(i));
        if (exp_text.empty())
            bad();
        char* end = nullptr;
        exponent = std::strtoll(exp_text.c_str(), &end, 10);
        if (*end != '\0' || std::llabs(exponent) > 100000)
            bad();
    }
    Rational value{BigInt(digits)};
    long long scale = exponent - frac_digits;
    if (scale > 0)
        value *= Rational(ipow(BigInt(10), static_cast<std::uint64_t>(scale)));
    else if (scale < 0)
        value /= Rational(ipow(BigInt(10), static_cast<std::uint64_t>(-scale)));
    return negative ? Rational(-value) : value;
}

inline BigInt parse_bigint(std::string_view text)
{
    std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (i == text.size())
        fail(Errc::parse_error, "not an integer: '" + std::string(text) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9')
            fail(Errc::parse_error, "not an integer: '" + std::string(text) + "'");
    BigInt v(std::string(text.substr(i)));
    return text[0] == '-' ? BigInt(-v) : v;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v)
{
    return boost::multiprecision::denominator(v) == 1 ? boost::multiprecision::numerator(v).str() : v.str();
}

/// Fixed significant-digit rendering; used for every reported real.
inline std::string to_string(const Real& v, int digits = 40)
{
    if (boost::multiprecision::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v.str(digits, std::ios_base::fmtflags(0));
}

// Relative gap below which a real-valued comparison is not trusted.
inline Real comparison_margin()
{
    return boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits()) + 32);
}

/// Sign of (lhs - rhs) for reals; throws when the two are closer than the working precision can certify.
inline int certified_compare(const Real& lhs, const Real& rhs, std::string_view what)
{
    Real diff = lhs - rhs;
    Real scale = boost::multiprecision::max(boost::multiprecision::abs(lhs), boost::multiprecision::abs(rhs));
    if (scale == 0)
        return 0;
    if (boost::multiprecision::abs(diff) <= scale * comparison_margin())
        fail(Errc::precision_exhausted, "comparison margin below precision in " + std::string(what));
    return diff > 0 ? 1 : -1;
}

/// Exact sign of lhs - base^exponent for lhs >= 0 rational, base >= 0 integer, exponent rational.
/// Falls back to a certified high-precision comparison when the exact powers would be too large.
inline int compare_power(const Rational& lhs, const BigInt& base, const Rational& exponent)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (base < 0)
        fail(Errc::bad_params, "compare_power: negative base");
    if (lhs < 0)
        return -1;
    if (base == 0) {
        if (exponent < 0)
            fail(Errc::bad_params, "compare_power: zero base with negative exponent");
        Rational rhs = exponent == 0 ? Rational(1) : Rational(0);
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    if (base == 1 || exponent == 0)
        return lhs < 1 ? -1 : (lhs > 1 ? 1 : 0);
    if (lhs == 0)
        return -1;

    const BigInt& p = numerator(exponent);
    const BigInt& q = denominator(exponent);
    BigInt abs_p = boost::multiprecision::abs(p);
    const BigInt& a = numerator(lhs);
    const BigInt& b = denominator(lhs);
    // Estimated bit size of the exact powers.
    double bits_lhs = q.convert_to<double>() * (static_cast<double>(msb(a)) + static_cast<double>(msb(b)) + 2);
    double bits_rhs = abs_p.convert_to<double>() * (static_cast<double>(msb(base)) + 1);
    if (bits_lhs + bits_rhs < double(1 << 22)) {
        auto qe = q.convert_to<std::uint64_t>();
        auto pe = abs_p.convert_to<std::uint64_t>();
        BigInt left = ipow(a, qe);
        BigInt right = ipow(b, qe);
        if (p > 0)
            right *= ipow(base, pe);
        else
            left *= ipow(base, pe);
        return left < right ? -1 : (left > right ? 1 : 0);
    }
    Real left = boost::multiprecision::log(to_real(lhs));
    Real right = to_real(exponent) * boost::multiprecision::log(to_real(base));
    return certified_compare(left, right, "compare_power");
}

/// Smallest integer m with m >= factor * base^exponent (factor > 0, base >= 1).
inline BigInt ceil_scaled_power(const Rational& factor, const BigInt& base, const Rational& exponent)
{
    if (factor <= 0 || base < 1)
        fail(Errc::bad_params, "ceil_scaled_power: factor must be positive and base >= 1");
    // m >= factor * base^e  <=>  m / factor >= base^e
    Real approx = to_real(factor) * boost::multiprecision::pow(to_real(base), to_real(exponent));
    BigInt guess = floor_to_bigint(approx);
    if (guess < 0)
        guess = 0;
    BigInt lo = guess > 2 ? BigInt(guess - 2) : BigInt(0);
    for (BigInt m = lo;; ++m)
        if (compare_power(Rational(m) / factor, base, exponent) >= 0)
            return m;
}

inline std::string hex64(std::uint64_t v)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4)
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

/// FNV-1a; canonical digests of inputs for reports.
class Digest {
public:
    Digest& add(std::string_view bytes)
    {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
        state_ ^= 0xff;
        state_ *= 0x100000001b3ULL;
        return *this;
    }
    Digest& add(const BigInt& v) { return add(v.str()); }
    std::string hex() const { return hex64(state_); }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// A reported value: exact when the quantity is rational, otherwise a high-precision real.
struct Quantity {
    std::optional<Rational> exact;
    Real approx;

    Quantity() = default;
    Quantity(const BigInt& v) : exact(Rational(v)), approx(to_real(v)) {}
    Quantity(const Rational& v) : exact(v), approx(to_real(v)) {}
    Quantity(const Real& v) : approx(v) {}

    std::string str() const { return exact ? to_string(*exact) : to_string(approx); }
};

} // namespace energia
