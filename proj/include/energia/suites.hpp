#pragma once

#include "energia/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace energia {

/// Randomized inequality corpora. Set sizes 2..10, elements in [-1000, 1000], arity <= 3.
struct SuiteResult {
    std::string name;
    bool mandatory = true;
    std::vector<CheckReport> reports;

    std::size_t failures() const
    {
        return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const CheckReport& r) { return !r.holds; }));
    }
};

inline constexpr std::array<std::string_view, 10> suite_names = {
    "young",        "holder",         "holder-mult", "union-bound",  "plunnecke",
    "cauchy-schwarz", "mixed-cs",     "power-energy", "convex-growth", "union-bound-mult",
};

inline bool is_suite(std::string_view name)
{
    return std::find(suite_names.begin(), suite_names.end(), name) != suite_names.end();
}

namespace detail {

class Corpus {
public:
    Corpus(std::uint64_t seed, std::string_view suite)
    {
        Digest d;
        d.add(suite);
        d.add(std::to_string(seed));
        rng_.seed(std::stoull(d.hex(), nullptr, 16));
    }

    long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

    IntSet set(std::size_t lo_size, std::size_t hi_size, bool nonzero = false, long long range = 1000)
    {
        auto want = static_cast<std::size_t>(uniform(static_cast<long long>(lo_size), static_cast<long long>(hi_size)));
        std::set<long long> seen;
        while (seen.size() < want) {
            long long x = uniform(-range, range);
            if (!(nonzero && x == 0))
                seen.insert(x);
        }
        std::vector<BigInt> v(seen.begin(), seen.end());
        return IntSet::from_sorted(std::move(v));
    }

    Mode mode() { return uniform(0, 1) ? Mode::multiplicative : Mode::additive; }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline std::vector<IntSet> random_partition(Corpus& c, const IntSet& all, std::size_t parts)
{
    std::vector<BigInt> elems(all.begin(), all.end());
    std::shuffle(elems.begin(), elems.end(), c.rng());
    std::vector<std::vector<BigInt>> buckets(parts);
    for (std::size_t i = 0; i < elems.size(); ++i)
        buckets[i < parts ? i : static_cast<std::size_t>(c.uniform(0, static_cast<long long>(parts) - 1))].push_back(elems[i]);
    std::vector<IntSet> out;
    for (auto& b : buckets)
        out.emplace_back(std::move(b));
    return out;
}

inline void run_case(std::string_view name, Corpus& c, std::vector<CheckReport>& out)
{
    if (name == "young") {
        Mode m = c.mode();
        auto a = c.set(2, 10, m == Mode::multiplicative);
        auto s = static_cast<unsigned>(c.uniform(2, 3));
        auto l = static_cast<unsigned>(c.uniform(1, s - 1));
        out.push_back(check_young_sup(a, a.size() <= 6 ? 4 : 2, m));
        out.push_back(check_young_energy(a, s, l, m));
    } else if (name == "holder" || name == "holder-mult") {
        bool mult = name == "holder-mult";
        auto s = static_cast<unsigned>(c.uniform(1, 3));
        std::vector<IntSet> sets;
        for (unsigned i = 0; i < 2 * s; ++i)
            sets.push_back(c.set(2, s == 3 ? 6 : 10, mult, mult ? 30 : 1000));
        out.push_back(check_holder_mixed(sets, mult ? Mode::multiplicative : Mode::additive));
    } else if (name == "union-bound" || name == "union-bound-mult") {
        bool mult = name == "union-bound-mult";
        auto all = c.set(2, 10, mult);
        auto n = static_cast<std::size_t>(c.uniform(1, std::min<long long>(4, static_cast<long long>(all.size()))));
        auto s = static_cast<unsigned>(c.uniform(1, 3));
        out.push_back(check_union_bound(random_partition(c, all, n), s, mult ? Mode::multiplicative : Mode::additive));
    } else if (name == "plunnecke") {
        auto a = c.set(2, 10);
        auto total = static_cast<unsigned>(c.uniform(1, 4));
        auto m = static_cast<unsigned>(c.uniform(0, total));
        out.push_back(check_plunnecke(a, m, total - m));
    } else if (name == "cauchy-schwarz") {
        auto a = c.set(2, 10);
        out.push_back(check_cauchy_schwarz(a, static_cast<unsigned>(c.uniform(1, 3)), c.mode()));
    } else if (name == "mixed-cs") {
        auto b = c.set(2, 10);
        auto d = c.set(2, 10);
        out.push_back(check_mixed_cs(b, d, static_cast<unsigned>(c.uniform(1, 3)), c.mode()));
    } else if (name == "power-energy") {
        auto k = static_cast<unsigned>(c.uniform(1, 3));
        auto s = static_cast<unsigned>(c.uniform(1, 2));
        long long n = c.uniform(1, s == 1 ? 200 : 40);
        out.push_back(check_power_energy(k, s, n));
    } else if (name == "convex-growth") {
        auto k = static_cast<unsigned>(c.uniform(2, 3));
        long long n = c.uniform(4, k == 2 ? 16 : 10);
        auto domain = gen::ap(BigInt(c.uniform(1, 5)), BigInt(1), n);
        std::vector<BigInt> coeffs(k + 1, BigInt(0));
        for (auto& x : coeffs)
            x = c.uniform(-3, 3);
        coeffs.back() = c.uniform(1, 3);
        auto a = gen::poly_image(coeffs, domain);
        if (a.size() < 4)
            a = gen::powers(k, n);
        Rational K(BigInt(iterated_sumset(domain, 2, 1).size()), BigInt(domain.size()));
        out.push_back(check_convex_growth(a, k, K));
    } else {
        fail(Errc::bad_params, "unknown suite '" + std::string(name) + "'");
    }
}

} // namespace detail

inline SuiteResult run_suite(std::string_view name, std::size_t cases, std::uint64_t seed)
{
    if (!is_suite(name))
        fail(Errc::bad_params, "unknown suite '" + std::string(name) + "'");
    SuiteResult r;
    r.name = std::string(name);
    r.mandatory = name != "convex-growth";
    detail::Corpus corpus(seed, name);
    for (std::size_t i = 0; i < cases; ++i)
        detail::run_case(name, corpus, r.reports);
    return r;
}

} // namespace energia
