#include "energia/suites.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace energia;

namespace {

Errc code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return Errc::parse_error;
}

} // namespace

TEST(Young, Examples)
{
    auto [sup, pow] = check_young(IntSet{1, 2, 3}, 2, 1);
    EXPECT_EQ(*sup.lhs.exact, 3);
    EXPECT_EQ(*sup.rhs.exact, 3);
    EXPECT_TRUE(sup.holds);
    EXPECT_EQ(sup.slack, 1);

    auto single = check_young_energy(IntSet{9}, 4, 1);
    EXPECT_TRUE(single.holds);
    EXPECT_EQ(*single.lhs.exact, 1);
    EXPECT_EQ(*single.rhs.exact, 1);

    auto four = check_young_energy(IntSet{1, 2, 3, 4}, 4, 2);
    EXPECT_EQ(*four.rhs.exact, 256 * 44);
    EXPECT_EQ(*four.lhs.exact, Rational(oracle::energy(IntSet{1, 2, 3, 4}, 4, false)));
    EXPECT_TRUE(four.holds);

    EXPECT_EQ(code_of([] { check_young_sup(IntSet{1, 2}, 3); }), Errc::bad_arity);
    EXPECT_EQ(code_of([] { check_young_energy(IntSet{1, 2}, 3, 3); }), Errc::bad_arity);
}

TEST(Young, ZeroBreaksProductForm)
{
    // with 0 in A both bounds are false for products, so the checks must refuse
    IntSet z{0, 1};
    EXPECT_GT(oracle::energy(z, 2, true), 4 * oracle::energy(z, 1, true)); // 10 > 8
    IntSet w{0, 3, 5};
    BigInt sup = 0;
    for (const auto& [v, c] : oracle::rep(w, 4, true))
        sup = std::max(sup, BigInt(c));
    EXPECT_GT(sup, oracle::energy(w, 2, true)); // r_4(0) = 65 > M_2 = 31
    EXPECT_EQ(code_of([&] { check_young_sup(w, 4, Mode::multiplicative); }), Errc::zero_element);
    EXPECT_EQ(code_of([&] { check_young_energy(z, 2, 1, Mode::multiplicative); }), Errc::zero_element);
    EXPECT_TRUE(check_young_sup(w, 4, Mode::additive).holds);
}

TEST(Holder, Examples)
{
    auto a = gen::mixed(4);
    std::vector<IntSet> same(4, a);
    auto r = check_holder_mixed(same, Mode::additive);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(*r.lhs.exact, Rational(energy_count(a, 2, Mode::additive)));

    std::vector<IntSet> bc{IntSet{1, 2, 3}, IntSet{2, 3, 4}};
    auto r1 = check_holder_mixed(bc, Mode::additive);
    EXPECT_EQ(*r1.lhs.exact, 2);
    EXPECT_NEAR(r1.rhs.approx.convert_to<double>(), 3.0, 1e-30);
    EXPECT_TRUE(r1.holds);

    std::vector<IntSet> signs(4, IntSet{-2, -1, 1, 2});
    auto r2 = check_holder_mixed(signs, Mode::multiplicative);
    EXPECT_TRUE(r2.holds);
    EXPECT_EQ(*r2.lhs.exact, Rational(oracle::energy(IntSet{-2, -1, 1, 2}, 2, true)));

    std::vector<IntSet> zero{IntSet{0, 1, 2}, IntSet{1, 2}, IntSet{0, 1, 2}, IntSet{1, 2}};
    EXPECT_EQ(code_of([&] { check_holder_mixed(zero, Mode::multiplicative); }), Errc::zero_element);
    EXPECT_EQ(code_of([&] { check_holder_mixed(std::span<const IntSet>(zero.data(), 3), Mode::additive); }), Errc::bad_arity);
}

TEST(Holder, ZeroObstructionIsReal)
{
    // Zero in the first slot of each half: every tuple with those zeros collides.
    IntSet primes{2, 3, 5, 7, 11, 13, 17, 19};
    std::vector<IntSet> sets{IntSet{0}, primes, IntSet{0}, primes};
    BigInt mixed = mixed_energy(sets, Mode::multiplicative).count;
    EXPECT_GE(mixed, BigInt(64));
    EXPECT_EQ(code_of([&] { check_holder_mixed(sets, Mode::multiplicative); }), Errc::zero_element);
}

TEST(UnionBound, Examples)
{
    std::vector<IntSet> one{gen::interval(6)};
    auto r = check_union_bound(one, 2, Mode::additive);
    EXPECT_EQ(*r.lhs.exact, *r.rhs.exact);

    std::vector<IntSet> two{gen::interval(8), gen::ap(BigInt(101), BigInt(1), 8)};
    EXPECT_TRUE(check_union_bound(two, 2, Mode::additive).holds);

    std::vector<IntSet> mult{IntSet{1, 2, 4, 8}, IntSet{3, 5, 7, 11}};
    auto m = check_union_bound(mult, 2, Mode::multiplicative);
    EXPECT_TRUE(m.holds);
    EXPECT_EQ(*m.rhs.exact, Rational(16 * 8 * (energy_count(mult[0], 2, Mode::multiplicative) + energy_count(mult[1], 2, Mode::multiplicative))));

    std::vector<IntSet> overlap{IntSet{1, 2}, IntSet{2, 3}};
    EXPECT_EQ(code_of([&] { check_union_bound(overlap, 2, Mode::additive); }), Errc::not_disjoint);
    std::vector<IntSet> zero{IntSet{0, 1}, IntSet{2, 3}};
    EXPECT_EQ(code_of([&] { check_union_bound(zero, 2, Mode::multiplicative); }), Errc::zero_element);
}

TEST(MixedCs, Examples)
{
    auto a = gen::interval(5);
    auto eq = check_mixed_cs(a, a, 2, Mode::additive);
    EXPECT_TRUE(eq.holds);
    EXPECT_EQ(eq.slack, 1);
    EXPECT_TRUE(check_mixed_cs(gen::interval(6), gen::ap(BigInt(7), BigInt(1), 6), 2, Mode::additive).holds);
    EXPECT_TRUE(check_mixed_cs(gen::interval(8), gen::gp(BigInt(1), BigInt(2), 8), 2, Mode::multiplicative).holds);
}

TEST(MixedCs, CountMatchesBruteForce)
{
    IntSet b{1, 2, 3, 5}, c{2, 3, 4};
    BigInt want = 0;
    for (const auto& w : b)
        for (const auto& x : b)
            for (const auto& y : c)
                for (const auto& z : c)
                    want += (w + x == y + z);
    EXPECT_EQ(*check_mixed_cs(b, c, 2, Mode::additive).lhs.exact, Rational(want));
}

TEST(CauchySchwarz, AndPlunnecke)
{
    auto r = check_cauchy_schwarz(IntSet{1, 2, 3}, 2, Mode::additive);
    EXPECT_EQ(*r.lhs.exact, 19 * 5);
    EXPECT_EQ(*r.rhs.exact, 81);
    EXPECT_EQ(r.relation, Relation::at_least);
    EXPECT_TRUE(r.holds);
    auto p = check_plunnecke(gen::interval(10), 2, 1);
    EXPECT_EQ(*p.lhs.exact, 28);
    EXPECT_EQ(*p.rhs.exact, Rational(19 * 19 * 19, 100));
}

TEST(PowerEnergy, Examples)
{
    auto e = check_power_energy(1, 1, 5);
    EXPECT_EQ(*e.lhs.exact, 25);
    EXPECT_EQ(*e.rhs.exact, 25);
    EXPECT_TRUE(e.holds);
    auto sq = check_power_energy(2, 2, 10);
    EXPECT_TRUE(sq.holds);
    EXPECT_EQ(*sq.rhs.exact, 10000);
    auto a = gen::powers(2, 20);
    auto big = check_power_energy(2, 2, 20);
    EXPECT_EQ(*big.lhs.exact, Rational(oracle::energy(a, 2, false) * oracle::sumset(a, 2, 0).size()));
    EXPECT_TRUE(big.holds);
    EXPECT_EQ(code_of([] { check_power_energy(2, 4, 200); }), Errc::too_large);
}

TEST(ConvexGrowth, Measurements)
{
    auto squares = gen::powers(2, 16);
    Rational k(BigInt(iterated_sumset(gen::interval(16), 2, 1).size()), 16);
    auto r = check_convex_growth(squares, 2, k);
    EXPECT_EQ(*r.lhs.exact, Rational(oracle::sumset(squares, 2, 1).size()));
    EXPECT_TRUE(r.holds);

    // An AP has no convexity; with constant 1 and no log factor it falls short of |A|^2 / K.
    ConvexGrowthConfig strict{Rational(1), false};
    auto ap = gen::interval(16);
    auto flat = check_convex_growth(ap, 2, k, strict);
    EXPECT_EQ(*flat.lhs.exact, 3 * 16 - 2);
    EXPECT_FALSE(flat.holds);

    auto cubes = gen::powers(3, 12);
    Rational k3(BigInt(iterated_sumset(gen::interval(12), 2, 1).size()), 12);
    auto c = check_convex_growth(cubes, 3, k3);
    EXPECT_EQ(*c.lhs.exact, Rational(iterated_sumset(cubes, 4, 3).size()));

    EXPECT_EQ(code_of([&] { check_convex_growth(IntSet{1, 2, 3}, 2, k); }), Errc::bad_params);
    ConvexGrowthConfig capped{Rational(1, 100), true, 10};
    EXPECT_EQ(code_of([&] { check_convex_growth(cubes, 3, k3, capped); }), Errc::too_large);
}

TEST(Suites, MandatorySuitesPass)
{
    for (auto name : suite_names) {
        auto r = run_suite(name, 150, 3);
        EXPECT_EQ(r.reports.empty(), false) << name;
        if (r.mandatory) {
            EXPECT_EQ(r.failures(), 0u) << name;
        }
    }
}

TEST(Suites, Deterministic)
{
    auto a = run_suite("holder", 20, 99);
    auto b = run_suite("holder", 20, 99);
    ASSERT_EQ(a.reports.size(), b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i)
        EXPECT_EQ(a.reports[i].inputs_digest, b.reports[i].inputs_digest);
    EXPECT_NE(run_suite("holder", 1, 100).reports[0].inputs_digest, a.reports[0].inputs_digest);
}

TEST(Suites, HolderAgreesWithOracle)
{
    auto r = run_suite("holder", 40, 5);
    for (const auto& rep : r.reports)
        EXPECT_GE(rep.slack, 1);
}
