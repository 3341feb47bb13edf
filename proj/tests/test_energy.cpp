#include "energia/energy.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace energia;

namespace {

std::vector<std::pair<long long, std::uint64_t>> flat(const RepFunction& r)
{
    std::vector<std::pair<long long, std::uint64_t>> v;
    for (const auto& [x, c] : r.entries())
        v.emplace_back(x.convert_to<long long>(), c);
    return v;
}

} // namespace

TEST(RepFunction, Examples)
{
    using V = std::vector<std::pair<long long, std::uint64_t>>;
    EXPECT_EQ(flat(rep_function(IntSet{1, 2, 3}, 2, Mode::additive)), (V{{2, 1}, {3, 2}, {4, 3}, {5, 2}, {6, 1}}));
    EXPECT_EQ(flat(rep_function(IntSet{1, 2, 4}, 2, Mode::multiplicative)), (V{{1, 1}, {2, 2}, {4, 3}, {8, 2}, {16, 1}}));
    for (unsigned s = 1; s <= 6; ++s)
        EXPECT_EQ(flat(rep_function(IntSet{7}, s, Mode::additive)), (V{{7LL * s, 1}}));
}

TEST(RepFunction, MatchesBruteForce)
{
    std::mt19937_64 rng(21);
    for (int iter = 0; iter < 100; ++iter) {
        auto a = oracle::random_set(rng, 6, -12, 12);
        for (unsigned s = 1; s <= 4; ++s)
            for (bool mult : {false, true}) {
                auto r = rep_function(a, s, mult ? Mode::multiplicative : Mode::additive);
                auto want = oracle::rep(a, s, mult);
                ASSERT_EQ(r.support_size(), want.size());
                std::size_t i = 0;
                for (const auto& [v, c] : want) {
                    ASSERT_EQ(r.entries()[i].first, v);
                    ASSERT_EQ(r.entries()[i].second, c);
                    ++i;
                }
            }
    }
}

TEST(RepFunction, RecursionSelfConsistency)
{
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 50; ++iter) {
        auto a = oracle::random_set(rng, 8, -50, 50);
        for (unsigned s = 2; s <= 4; ++s) {
            auto prev = rep_function(a, s - 1, Mode::additive);
            auto cur = rep_function(a, s, Mode::additive);
            for (const auto& [n, c] : cur.entries()) {
                std::uint64_t sum = 0;
                for (const auto& [m, cm] : prev.entries())
                    if (a.contains(BigInt(n - m)))
                        sum += cm;
                ASSERT_EQ(sum, c);
            }
        }
    }
}

TEST(RepFunction, OverflowGuard)
{
    try {
        rep_function(gen::interval(100), 10, Mode::additive);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::overflow);
    }
}

TEST(Energy, Examples)
{
    EXPECT_EQ(energy(IntSet{1, 2, 3}, 2, Mode::additive).count, 19);
    EXPECT_EQ(energy(IntSet{2, 3, 5}, 2, Mode::multiplicative).count, 15);
    EXPECT_EQ(energy(IntSet{1, 2, 4}, 2, Mode::multiplicative).count, 19);
    EXPECT_EQ(energy(IntSet{1, 2, 5, 11}, 2, Mode::additive).count, 28);
    EXPECT_EQ(energy(IntSet{1, 2, 3, 4}, 2, Mode::additive).count, 44);
    auto a = gen::mixed(5);
    EXPECT_EQ(energy(a, 1, Mode::additive).count, a.size());
    EXPECT_EQ(energy(a, 1, Mode::multiplicative).count, a.size());
    EXPECT_FALSE(energy(IntSet{4}, 2, Mode::additive).exponent.has_value());
    EXPECT_NEAR(energy(IntSet{1, 2, 3}, 2, Mode::additive).exponent->convert_to<double>(), std::log(19.0) / std::log(3.0), 1e-12);
}

TEST(Energy, OracleExamples)
{
    EXPECT_EQ(energy_oracle(IntSet{0, 1}, 2, Mode::additive).count, 6);
    EXPECT_EQ(energy_oracle(IntSet{0}, 2, Mode::additive).count, 1);
    EXPECT_EQ(energy_oracle(IntSet{1, 2, 4}, 2, Mode::multiplicative).count, 19);
    try {
        energy_oracle(gen::interval(20), 4, Mode::additive);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_large);
    }
}

TEST(Energy, AllThreePathsAgree)
{
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        auto a = oracle::random_set(rng, 5, -9, 9);
        for (unsigned s = 1; s <= 3; ++s)
            for (bool mult : {false, true}) {
                Mode m = mult ? Mode::multiplicative : Mode::additive;
                auto fast = energy(a, s, m).count;
                ASSERT_EQ(fast, energy_oracle(a, s, m).count);
                ASSERT_EQ(fast, oracle::energy(a, s, mult));
            }
    }
}

TEST(Energy, OracleBigIntPath)
{
    // Products beyond 64 bits push the oracle onto arbitrary precision.
    auto a = gen::gp(BigInt(1), BigInt(1) << 40, 4);
    EXPECT_EQ(energy_oracle(a, 2, Mode::multiplicative).count, energy(a, 2, Mode::multiplicative).count);
    EXPECT_EQ(energy(a, 2, Mode::multiplicative).count, 44);
}

TEST(Energy, Identities)
{
    std::mt19937_64 rng(24);
    for (int iter = 0; iter < 200; ++iter) {
        auto a = oracle::random_set(rng, 10, -1000, 1000);
        for (unsigned s = 1; s <= 4; ++s)
            for (Mode m : {Mode::additive, Mode::multiplicative}) {
                auto r = rep_function(a, s, m);
                ASSERT_EQ(r.total(), ipow(BigInt(a.size()), s));
                auto e = energy(a, s, m);
                ASSERT_EQ(r.sum_of_squares(), e.count);
                ASSERT_GE(e.count, ipow(BigInt(a.size()), s));
                // Zero collapses every product containing it, so the trivial upper bound needs 0 outside A.
                if (m == Mode::additive || !a.contains(BigInt(0))) {
                    ASSERT_LE(e.count, ipow(BigInt(a.size()), 2 * s - 1));
                }
            }
    }
}

TEST(Energy, SidonIdentity)
{
    std::mt19937_64 rng(25);
    int sidon_seen = 0;
    for (int iter = 0; iter < 300; ++iter) {
        auto a = oracle::random_set(rng, 8, 1, 5000, 2);
        bool sidon = iterated_sumset(a, 1, 1).size() == a.size() * a.size() - a.size() + 1;
        if (!sidon)
            continue;
        ++sidon_seen;
        BigInt n = a.size();
        EXPECT_EQ(energy(a, 2, Mode::additive).count, 2 * n * n - n);
    }
    EXPECT_GT(sidon_seen, 50);
}

TEST(Energy, AffineInvariance)
{
    std::mt19937_64 rng(26);
    std::uniform_int_distribution<long long> coef(-9, 9);
    for (int iter = 0; iter < 100; ++iter) {
        auto a = oracle::random_set(rng, 8, -100, 100);
        long long c = 0;
        while (c == 0)
            c = coef(rng);
        auto b = affine_image(a, BigInt(c), BigInt(coef(rng) * 1000));
        for (unsigned s = 1; s <= 3; ++s)
            ASSERT_EQ(energy(a, s, Mode::additive).count, energy(b, s, Mode::additive).count);
    }
}

TEST(Energy, CauchySchwarzAgainstSumset)
{
    std::mt19937_64 rng(27);
    for (int iter = 0; iter < 300; ++iter) {
        auto a = oracle::random_set(rng, 9, -500, 500);
        for (unsigned s = 1; s <= 3; ++s) {
            BigInt lower = ipow(BigInt(a.size()), 2 * s);
            ASSERT_GE(energy(a, s, Mode::additive).count * iterated_sumset(a, s, 0).size(), lower);
            ASSERT_GE(energy(a, s, Mode::multiplicative).count * iterated_product_set(a, s, 0).size(), lower);
        }
    }
}

TEST(MixedEnergy, Basics)
{
    IntSet b{1, 2, 3}, c{2, 3, 4};
    std::vector<IntSet> two{b, c};
    EXPECT_EQ(mixed_energy(two, Mode::additive).count, 2);
    auto a = gen::mixed(4);
    std::vector<IntSet> four(4, a);
    EXPECT_EQ(mixed_energy(four, Mode::additive).count, energy(a, 2, Mode::additive).count);
    EXPECT_EQ(mixed_energy(four, Mode::multiplicative).count, energy(a, 2, Mode::multiplicative).count);
    std::vector<IntSet> three(3, a);
    EXPECT_THROW(mixed_energy(three, Mode::additive), Error);
    EXPECT_THROW(mixed_energy(std::vector<IntSet>{}, Mode::additive), Error);
}

TEST(Energy, ZeroBreaksTrivialUpperBound)
{
    // 25 zero-product quadruples plus M_2({1,2}) = 6.
    EXPECT_EQ(energy(IntSet{0, 1, 2}, 2, Mode::multiplicative).count, 31);
    EXPECT_GT(energy(IntSet{0, 1, 2}, 2, Mode::multiplicative).count, 27);
}

TEST(MixedEnergy, ZeroProductsDominate)
{
    auto a = gen::ap(BigInt(0), BigInt(1), 11);
    std::vector<IntSet> four(4, a);
    auto m = mixed_energy(four, Mode::multiplicative).count;
    EXPECT_GE(m, 121);
    // Tuples with a zero on each side, counted directly.
    EXPECT_GE(m, BigInt(21 * 21));
}

TEST(MixedEnergy, MatchesBruteForceOnDistinctSets)
{
    std::mt19937_64 rng(28);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<IntSet> sets;
        for (int i = 0; i < 4; ++i)
            sets.push_back(oracle::random_set(rng, 4, -6, 6));
        for (bool mult : {false, true}) {
            BigInt want = 0;
            for (const auto& w : sets[0])
                for (const auto& x : sets[1])
                    for (const auto& y : sets[2])
                        for (const auto& z : sets[3])
                            want += mult ? (w * x == y * z) : (w + x == y + z);
            ASSERT_EQ(mixed_energy(sets, mult ? Mode::multiplicative : Mode::additive).count, want);
        }
    }
}

TEST(SupRep, Examples)
{
    EXPECT_EQ(sup_rep(IntSet{1, 2, 3}, 2, Mode::additive), 3u);
    EXPECT_EQ(sup_rep(IntSet{5}, 3, Mode::additive), 1u);
    EXPECT_EQ(sup_rep(IntSet{1, 2, 5, 11}, 2, Mode::additive), 2u);
}

TEST(Counterexample, MixedSetHasLargeEnergies)
{
    for (long long n = 4; n <= 8; ++n) {
        auto a = gen::mixed(n);
        BigInt cube = ipow(BigInt(a.size()), 3);
        EXPECT_GE(16 * energy(a, 2, Mode::additive).count, cube) << n;
        EXPECT_GE(32 * energy(a, 2, Mode::multiplicative).count, cube) << n;
    }
}
