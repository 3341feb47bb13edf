#include "energia/constants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace energia;

TEST(ExponentExpr, ExactAndRealAgree)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> lit(-20, 40), pick(0, 4);
    for (int i = 0; i < 500; ++i) {
        ExponentExpr e(Rational(lit(rng), 1 + rng() % 4));
        for (int depth = 0; depth < 4; ++depth) {
            ExponentExpr other(Rational(lit(rng), 1 + rng() % 3));
            switch (pick(rng)) {
            case 0: e = e + other; break;
            case 1: e = e * other; break;
            case 2: e = ceil(e); break;
            case 3: e = pow2(ceil(e) * ExponentExpr(Rational(1, 8))); break;
            case 4: e = e + pow2(ExponentExpr(Rational(lit(rng) % 6))); break;
            }
        }
        auto ex = e.exact();
        if (!ex)
            continue;
        Real v = e.value();
        Real diff = boost::multiprecision::abs(v - to_real(*ex));
        EXPECT_LE(diff, boost::multiprecision::max(Real(1), boost::multiprecision::abs(v)) * comparison_margin()) << e.str();
    }
}

TEST(ExponentExpr, LogAndPowerEdges)
{
    EXPECT_EQ(*log2(ExponentExpr(1024)).exact(), 10);
    EXPECT_EQ(*log2(ExponentExpr(Rational(1, 8))).exact(), -3);
    EXPECT_FALSE(log2(ExponentExpr(3)).exact());
    EXPECT_EQ(*pow2(ExponentExpr(-2)).exact(), Rational(1, 4));
    EXPECT_FALSE(pow2(ExponentExpr(600)).exact()); // beyond 512 bits
    EXPECT_TRUE(pow2(ExponentExpr(600)).exact(1000));
    EXPECT_EQ(pow2(ExponentExpr(600)).log2_value(), 600);
    EXPECT_EQ(*ceil(log2(ExponentExpr(3))).exact(), 2);
}

TEST(Gemn, Examples)
{
    auto p = gemn_params(Rational(1), 2);
    EXPECT_EQ(*p.lambda.exact(), 31);
    EXPECT_EQ(*p.l.exact(), 37200);
    EXPECT_EQ(*p.log2_m.exact(), 37200);
    // ceil(log2 1) + 1 = 1, so log2 s = 6 + U with U = 120 * 2^37200
    auto s = p.log2_s.exact(40000);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, Rational(6 + 120 * (BigInt(1) << 37200)));
    EXPECT_FALSE(p.log2_s.exact());

    auto p4 = gemn_params(Rational(1), 4);
    EXPECT_EQ(*p4.lambda.exact(), 56);
    EXPECT_EQ(*p4.l.exact(), 134400);

    EXPECT_THROW(gemn_params(Rational(1, 2), 2), Error);
    EXPECT_THROW(gemn_params(Rational(1), 3), Error);
}

TEST(Gemn, NaturalLogSwitch)
{
    auto p = gemn_params(Rational(1), 2, LogBase::natural);
    Real want = 6 + 25 * boost::multiprecision::log(Real(2));
    EXPECT_LT(boost::multiprecision::abs(p.lambda.value() - want), Real(1e-60));
}

TEST(Eric, Examples)
{
    auto p = eric_params(Rational(30), 2);
    EXPECT_EQ(p.k, 1);
    EXPECT_EQ(*p.log2_s2.exact(), 246);
    EXPECT_EQ(*eric_params(Rational(30), 1).log2_s2.exact(), 126);
    for (unsigned m : {1u, 2u, 5u}) {
        auto q = eric_params(Rational(60), m);
        EXPECT_EQ(q.k, 2);
        EXPECT_EQ(*q.log2_s2.exact(), 5 + 2 * (1 + 120 * m));
    }
    // U1 = 500 * 2^246 when k = 1
    Real want = log2_real(Real(500)) + 246;
    EXPECT_LT(boost::multiprecision::abs(p.log2_u1.value() - want), Real(1e-60));
    EXPECT_THROW(eric_params(Rational(29), 2), Error);
    EXPECT_THROW(eric_params(Rational(30), 0), Error);
}

TEST(Rtp, ConstantsMatchTermByTerm)
{
    EXPECT_EQ(rtp_constants(2).t, 2412);
    EXPECT_EQ(rtp_constants(3).t, 4988);
    for (unsigned k = 2; k <= 20; ++k) {
        // separate path: expand the product in machine integers
        std::uint64_t p = std::uint64_t(1) << k;
        std::uint64_t t = 164 * std::uint64_t(k) + 164 * (p - k - 1) + 480 * p;
        EXPECT_EQ(rtp_constants(k).t, t) << k;
    }
    EXPECT_THROW(rtp_constants(1), Error);
}

TEST(Rtp, EtaToFiftyBits)
{
    for (unsigned k = 2; k <= 10; ++k) {
        auto c = rtp_constants(k);
        long double ref = std::log1pl(1.0L / c.t.convert_to<long double>()) / std::log(2.0L);
        Real rel = boost::multiprecision::abs(c.eta - Real(ref)) / c.eta;
        EXPECT_LT(rel, Real(std::ldexp(1.0, -50))) << k;
        EXPECT_GT(c.eta, 0);
        EXPECT_LT(c.eta, 1);
    }
}

TEST(Rtp, ExponentBound)
{
    Real s20 = to_real(BigInt(1) << 20);
    Real extra = rtp_exponent_bound(2, BigInt(1) << 20) - (2 * s20 - 2);
    EXPECT_LT(boost::multiprecision::abs(extra - Real(3.967)), Real(1e-3));
    auto eta = rtp_constants(2).eta;
    Real at4 = 6 + 4 * boost::multiprecision::pow(Real(4), -eta);
    EXPECT_LT(boost::multiprecision::abs(rtp_exponent_bound(2, BigInt(4)) - at4), Real(1e-60));
    // the correction term shrinks with s
    Real prev = 1e9;
    for (unsigned e = 2; e < 200; e += 7) {
        BigInt s = BigInt(1) << e;
        Real corr = rtp_exponent_bound(3, s) - (2 * to_real(s) - 3);
        EXPECT_LT(corr, prev);
        prev = corr;
    }
    EXPECT_THROW(rtp_exponent_bound(2, BigInt(3)), Error);
}

TEST(Thrt, GrowthIsExact)
{
    auto tr = thrt_trace(2, Rational(1, 1000), BigInt(1) << 12);
    EXPECT_EQ(tr.r, 11u);
    ASSERT_EQ(tr.values.size(), 12u);
    for (std::size_t i = 0; i + 1 < tr.values.size(); ++i)
        EXPECT_EQ(tr.values[i + 1] / tr.values[i], Rational(2413, 2412));
}

TEST(Thrt, Crossings)
{
    EXPECT_EQ(thrt_trace(2, Rational(1), BigInt(8)).crossing, 0u);
    EXPECT_EQ(thrt_trace(3, Rational(5), BigInt(64)).crossing, 0u);
    EXPECT_FALSE(thrt_trace(2, Rational(1, 1000000), BigInt(8)).crossing);

    const Rational g(2413, 2412);
    for (unsigned r : {2u, 10u, 30u, 60u}) {
        BigInt s = BigInt(1) << (r + 1);
        // (k-1) 2^{-r eta_2} = (k-1) (1 + 1/T_2)^{-r}: reaches k-1 exactly at step r
        Rational lam = 1;
        for (unsigned i = 0; i < r; ++i)
            lam /= g;
        EXPECT_EQ(thrt_trace(2, lam, s).crossing, r);
        // a 1.01 head start moves the crossing earlier by floor(log 1.01 / log g) = 24 steps
        unsigned want = 0;
        Rational v = lam * Rational(101, 100);
        while (v < 1) {
            v *= g;
            ++want;
        }
        EXPECT_EQ(thrt_trace(2, lam * Rational(101, 100), s).crossing, want);
        EXPECT_EQ(want, r >= 24 ? r - 24 : 0u);
    }
    EXPECT_THROW(thrt_trace(2, Rational(1), BigInt(4)), Error);
    EXPECT_THROW(thrt_trace(2, Rational(1), BigInt(24)), Error);
}

TEST(Bta, FixedPointsAndMonotone)
{
    EXPECT_EQ(bta_eta(gemn_params(Rational(4), 40).log2_s).k, 4);
    EXPECT_EQ(bta_eta(gemn_params(Rational(5), 50).log2_s).k, 5);
    auto cert = bta_eta(gemn_params(Rational(5), 50).log2_s).certificate;
    EXPECT_EQ(cert.at(1).second, "50");

    auto base = gemn_params(Rational(4), 40).log2_s.exact(std::uint64_t(1) << 30);
    ASSERT_TRUE(base);
    Rational prev = 0;
    for (int shift : {0, 1, 1000000, 5000000, 9000000}) {
        ExponentExpr t(*base * Rational(BigInt(1) << shift));
        Rational k = bta_eta(t).k;
        EXPECT_GE(k, prev);
        prev = k;
    }
    try {
        bta_eta(ExponentExpr(1000));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_small);
    }
}
