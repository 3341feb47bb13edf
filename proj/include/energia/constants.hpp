#pragma once

#include "energia/error.hpp"
#include "energia/numeric.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace energia {

/// Expression over literals, +, *, ceil, log2 and 2^x. Tower-sized values stay symbolic:
/// exact() gives up beyond a bit width, value() works in high precision, log2_value() one level down.
class ExponentExpr {
public:
    enum class Op { lit, add, mul, ceil, log2, pow2 };

    ExponentExpr() : ExponentExpr(Rational(0)) {}
    ExponentExpr(const Rational& v) : node_(std::make_shared<Node>(Node{Op::lit, v, nullptr, nullptr})) {}
    ExponentExpr(long long v) : ExponentExpr(Rational(v)) {}

    friend ExponentExpr operator+(const ExponentExpr& a, const ExponentExpr& b) { return make(Op::add, a, b); }
    friend ExponentExpr operator*(const ExponentExpr& a, const ExponentExpr& b) { return make(Op::mul, a, b); }
    friend ExponentExpr ceil(const ExponentExpr& a) { return make(Op::ceil, a, {}); }
    friend ExponentExpr log2(const ExponentExpr& a) { return make(Op::log2, a, {}); }
    friend ExponentExpr pow2(const ExponentExpr& a) { return make(Op::pow2, a, {}); }

    Op op() const { return node_->op; }

    /// Exact rational value when every step is exact and no intermediate exceeds width_bits.
    std::optional<Rational> exact(std::uint64_t width_bits = 512) const
    {
        const Node& n = *node_;
        std::optional<Rational> out;
        switch (n.op) {
        case Op::lit:
            out = n.lit;
            break;
        case Op::add:
        case Op::mul: {
            auto l = n.left->exact(width_bits), r = n.right->exact(width_bits);
            if (l && r)
                out = n.op == Op::add ? Rational(*l + *r) : Rational(*l * *r);
            break;
        }
        case Op::ceil:
            if (auto c = n.left->exact(width_bits))
                out = Rational(ceil_of(*c));
            else
                out = Rational(certified_ceil(n.left->value()));
            break;
        case Op::log2:
            if (auto c = n.left->exact(width_bits))
                if (auto j = exact_log2(*c))
                    out = Rational(*j);
            break;
        case Op::pow2:
            if (auto c = n.left->exact(width_bits)) {
                if (boost::multiprecision::denominator(*c) == 1) {
                    BigInt e = boost::multiprecision::numerator(*c);
                    BigInt mag = boost::multiprecision::abs(e);
                    if (mag <= BigInt(width_bits)) {
                        BigInt p = BigInt(1) << mag.convert_to<std::uint64_t>();
                        out = e >= 0 ? Rational(p) : Rational(BigInt(1), p);
                    }
                }
            }
            break;
        }
        if (out && bits(*out) > width_bits)
            return std::nullopt;
        return out;
    }

    /// High-precision value; +inf once a tower leaves the exponent range.
    Real value() const
    {
        const Node& n = *node_;
        switch (n.op) {
        case Op::lit: return to_real(n.lit);
        case Op::add: return n.left->value() + n.right->value();
        case Op::mul: return n.left->value() * n.right->value();
        case Op::ceil: {
            if (auto c = n.left->exact())
                return Real(ceil_of(*c));
            return Real(certified_ceil(n.left->value()));
        }
        case Op::log2: return log2_real(n.left->value());
        case Op::pow2: return boost::multiprecision::exp2(n.left->value());
        }
        return Real(0);
    }

    /// log2 of the value, computed without forming 2^x for power nodes.
    Real log2_value() const
    {
        const Node& n = *node_;
        if (n.op == Op::pow2)
            return n.left->value();
        if (n.op == Op::mul)
            return n.left->log2_value() + n.right->log2_value();
        return log2_real(value());
    }

    std::string str() const
    {
        const Node& n = *node_;
        switch (n.op) {
        case Op::lit: return to_string(n.lit);
        case Op::add: return "(" + n.left->str() + " + " + n.right->str() + ")";
        case Op::mul: return n.left->str() + "*" + n.right->str();
        case Op::ceil: return "ceil(" + n.left->str() + ")";
        case Op::log2: return "log2(" + n.left->str() + ")";
        case Op::pow2: return "2^" + n.left->str();
        }
        return "?";
    }

    /// Exact value if it fits, else the real value.
    std::string value_str(std::uint64_t width_bits = 512) const
    {
        if (auto e = exact(width_bits))
            return to_string(*e);
        return to_string(value(), 30);
    }

private:
    struct Node {
        Op op;
        Rational lit;
        std::shared_ptr<const ExponentExpr> left, right;
    };

    static ExponentExpr make(Op op, const ExponentExpr& a, const ExponentExpr& b)
    {
        ExponentExpr e;
        e.node_ = std::make_shared<Node>(Node{op, Rational(0), std::make_shared<const ExponentExpr>(a),
                                              op == Op::add || op == Op::mul ? std::make_shared<const ExponentExpr>(b) : nullptr});
        return e;
    }

    static std::uint64_t bits(const Rational& r)
    {
        auto n = boost::multiprecision::abs(boost::multiprecision::numerator(r));
        auto d = boost::multiprecision::denominator(r);
        return (n == 0 ? 0 : msb(n) + 1) + msb(d) + 1;
    }

    static std::optional<BigInt> exact_log2(const Rational& r)
    {
        if (r <= 0)
            return std::nullopt;
        BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
        auto pow_of_two = [](const BigInt& x) { return (x & (x - 1)) == 0; };
        if (!pow_of_two(n) || !pow_of_two(d))
            return std::nullopt;
        return BigInt(msb(n)) - BigInt(msb(d));
    }

    // ceil of an irrational-looking real, refusing when it sits too close to an integer
    static BigInt certified_ceil(const Real& v)
    {
        BigInt c = ceil_to_bigint(v);
        Real gap = Real(c) - v;
        Real tol = comparison_margin() * boost::multiprecision::max(Real(1), boost::multiprecision::abs(v));
        if (gap < tol || 1 - gap < tol)
            fail(Errc::precision_exhausted, "ceil of a value within precision of an integer");
        return c;
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------

enum class LogBase { two, natural };

struct GemnParams {
    ExponentExpr lambda, l, log2_m, log2_u, log2_s;
};

inline void require_k(const Rational& k)
{
    if (k < 1)
        fail(Errc::bad_params, "k must be at least 1");
}

/// Lambda = 6 + 25 log q, l = ceil(600 q k Lambda), m = 2^l, U = 120 m, s = 2^{5 + (1+U)(ceil(log2 k) + 1)}.
inline GemnParams gemn_params(const Rational& k, unsigned q, LogBase base = LogBase::two)
{
    require_k(k);
    if (q < 2 || q % 2 != 0)
        fail(Errc::bad_params, "q must be even and at least 2");
    GemnParams p;
    ExponentExpr logq = log2(ExponentExpr(q));
    if (base == LogBase::natural)
        logq = logq * ExponentExpr(to_rational(boost::multiprecision::log(Real(2))));
    p.lambda = ExponentExpr(6) + ExponentExpr(25) * logq;
    p.l = ceil(ExponentExpr(600 * q) * ExponentExpr(k) * p.lambda);
    p.log2_m = p.l;
    p.log2_u = log2(ExponentExpr(120)) + p.l;
    ExponentExpr u = ExponentExpr(120) * pow2(p.l);
    p.log2_s = ExponentExpr(5) + (ExponentExpr(1) + u) * (ceil(log2(ExponentExpr(k))) + ExponentExpr(1));
    return p;
}

struct EricParams {
    Rational k;
    ExponentExpr log2_s2, log2_u1, log2_s1;
};

/// k = b/30, s2 = 2^{5 + (1 + 120m)(ceil(log2 k) + 1)}, U1 = 500 ceil(k) s2, s1 = 2^{5 + (1 + U1)(ceil(log2 k) + 1)}.
inline EricParams eric_params(const Rational& b, unsigned m)
{
    if (b < 30)
        fail(Errc::bad_params, "b must be at least 30");
    if (m < 1)
        fail(Errc::bad_params, "m must be at least 1");
    EricParams p;
    p.k = b / 30;
    ExponentExpr c1 = ceil(log2(ExponentExpr(p.k))) + ExponentExpr(1);
    p.log2_s2 = ExponentExpr(5) + ExponentExpr(1 + 120LL * m) * c1;
    ExponentExpr u1 = ExponentExpr(500) * ExponentExpr(Rational(ceil_of(p.k))) * pow2(p.log2_s2);
    p.log2_u1 = log2(ExponentExpr(500) * ExponentExpr(Rational(ceil_of(p.k)))) + p.log2_s2;
    p.log2_s1 = ExponentExpr(5) + (ExponentExpr(1) + u1) * c1;
    return p;
}

struct RtpConstants {
    BigInt t;
    Real eta; // log2(1 + 1/T_k)
};

/// T_k = 2(82k + 82(2^k - k - 1) + 240 2^k), eta_k = log2(1 + 1/T_k).
inline RtpConstants rtp_constants(unsigned k)
{
    if (k < 2)
        fail(Errc::bad_params, "k must be at least 2");
    if (k > 4096)
        fail(Errc::parameter_too_large, "k too large");
    BigInt two_k = BigInt(1) << k;
    BigInt t = 2 * (82 * BigInt(k) + 82 * (two_k - k - 1) + 240 * two_k);
    return {t, log2_real(1 + 1 / Real(t))};
}

/// 2s - k + (4k - 4) s^{-eta_k}
inline Real rtp_exponent_bound(unsigned k, const BigInt& s)
{
    if (s < 4)
        fail(Errc::bad_params, "s must be at least 4");
    auto c = rtp_constants(k);
    Real rs = to_real(s);
    return 2 * rs - k + Real(4 * k - 4) * boost::multiprecision::pow(rs, -c.eta);
}

struct ThrtTrace {
    unsigned r = 0;
    BigInt t;
    std::vector<Rational> values; // Lambda0 (1 + 1/T_k)^i, i = 0..r
    std::optional<unsigned> crossing; // first i with value >= k - 1
};

inline ThrtTrace thrt_trace(unsigned k, const Rational& lambda0, const BigInt& s)
{
    if (s < 8 || (s & (s - 1)) != 0)
        fail(Errc::bad_params, "s must be a power of two, at least 8");
    if (lambda0 <= 0)
        fail(Errc::bad_params, "Lambda0 must be positive");
    ThrtTrace tr;
    tr.r = static_cast<unsigned>(msb(s)) - 1;
    if (tr.r > 4096)
        fail(Errc::parameter_too_large, "trace longer than 4096 steps");
    tr.t = rtp_constants(k).t;
    const Rational growth = 1 + Rational(BigInt(1), tr.t);
    Rational v = lambda0;
    for (unsigned i = 0; i <= tr.r; ++i, v *= growth) {
        tr.values.push_back(v);
        if (!tr.crossing && v >= Rational(k - 1))
            tr.crossing = i;
    }
    return tr;
}

struct BtaResult {
    Rational k;
    std::vector<std::pair<std::string, std::string>> certificate;
};

namespace detail {

inline constexpr std::uint64_t bta_width = std::uint64_t(1) << 36;

inline BigInt bta_log2_s(const Rational& k)
{
    unsigned q = 10 * ceil_of(k).convert_to<unsigned>();
    auto v = gemn_params(k, q).log2_s.exact(bta_width);
    if (!v)
        fail(Errc::parameter_too_large, "log2 s at k = " + to_string(k) + " is beyond exact range");
    return boost::multiprecision::numerator(*v);
}

} // namespace detail

/// Largest k >= 4 whose parameter chain with q = 10 ceil(k) fits under the given log2 s.
inline BtaResult bta_eta(const ExponentExpr& log2_s)
{
    auto target = log2_s.exact(detail::bta_width);
    if (!target)
        fail(Errc::parameter_too_large, "log2 s must be exactly representable");
    auto fits = [&](const Rational& k) { return Rational(detail::bta_log2_s(k)) <= *target; };
    Rational lo(4);
    if (!fits(lo))
        fail(Errc::too_small, "no k >= 4 fits under log2 s = " + log2_s.str());
    Rational hi(8);
    while (fits(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > 64)
            fail(Errc::parameter_too_large, "log2 s beyond the searchable range");
    }
    for (int i = 0; i < 64; ++i) {
        Rational mid = (lo + hi) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid;
    }
    BtaResult out;
    out.k = lo;
    unsigned q = 10 * ceil_of(lo).convert_to<unsigned>();
    auto p = gemn_params(lo, q);
    out.certificate = {{"k", to_string(lo)},
                       {"q", std::to_string(q)},
                       {"Lambda", p.lambda.value_str()},
                       {"l", p.l.value_str()},
                       {"log2 U", p.log2_u.value_str()},
                       {"log2 log2 s", to_string(p.log2_s.log2_value(), 30)}};
    return out;
}

} // namespace energia
