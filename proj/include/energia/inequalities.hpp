#pragma once

#include "energia/energy.hpp"
#include "energia/error.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace energia {

enum class Relation { at_most, at_least };

inline std::string_view relation_symbol(Relation r) { return r == Relation::at_most ? "<=" : ">="; }

/// One evaluated inequality. `holds` is decided exactly unless `note` says otherwise;
/// `slack` is the claimed-larger side over the claimed-smaller side, so slack >= 1 iff it holds.
struct CheckReport {
    std::string name;
    Quantity lhs;
    Quantity rhs;
    Relation relation = Relation::at_most;
    bool holds = false;
    Real slack;
    std::string inputs_digest;
    std::string note;
};

namespace detail {

inline Real ratio(const Real& num, const Real& den)
{
    if (den == 0)
        return num == 0 ? Real(1) : Real(std::numeric_limits<double>::infinity());
    return num / den;
}

inline CheckReport make_report(std::string name, Quantity lhs, Quantity rhs, Relation rel, bool holds, Digest& d)
{
    CheckReport r;
    r.name = std::move(name);
    r.relation = rel;
    r.holds = holds;
    r.slack = rel == Relation::at_most ? ratio(rhs.approx, lhs.approx) : ratio(lhs.approx, rhs.approx);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.inputs_digest = d.hex();
    return r;
}

inline Digest digest_for(std::string_view name, std::span<const IntSet> sets, std::initializer_list<long long> params)
{
    Digest d;
    d.add(name);
    for (long long p : params)
        d.add(std::to_string(p));
    for (const auto& s : sets) {
        d.add("|");
        for (const auto& x : s)
            d.add(x);
    }
    return d;
}

inline Digest digest_for(std::string_view name, const IntSet& a, std::initializer_list<long long> params)
{
    return digest_for(name, std::span<const IntSet>(&a, 1), params);
}

// Product of the values raised to 1/root, for display.
inline Real geometric_root(const std::vector<BigInt>& values, unsigned root)
{
    Real log_sum = 0;
    for (const auto& v : values) {
        if (v == 0)
            return Real(0);
        log_sum += boost::multiprecision::log(to_real(v));
    }
    return boost::multiprecision::exp(log_sum / root);
}

} // namespace detail

namespace detail {

// Products through 0 break the fibre bijection: r_s(0) = |A|^s - (|A|-1)^s.
inline void require_no_zero(const IntSet& a, Mode mode, const char* what)
{
    if (mode == Mode::multiplicative && a.contains(BigInt(0)))
        fail(Errc::zero_element, std::string(what) + " requires 0 outside A for products");
}

} // namespace detail

/// sup_n r_s(n) <= E_{s/2}(A), s even.
inline CheckReport check_young_sup(const IntSet& a, unsigned s, Mode mode = Mode::additive)
{
    if (s == 0 || s % 2 != 0)
        fail(Errc::bad_arity, "supremum bound needs an even arity, got " + std::to_string(s));
    detail::require_no_zero(a, mode, "supremum bound");
    BigInt lhs = sup_rep(a, s, mode);
    BigInt rhs = energy_count(a, s / 2, mode);
    auto d = detail::digest_for("young-sup", a, {s, mode == Mode::additive ? 0 : 1});
    return detail::make_report("young-sup", lhs, rhs, Relation::at_most, lhs <= rhs, d);
}

/// E_s(A) <= |A|^{2s-2l} E_l(A), 1 <= l < s.
inline CheckReport check_young_energy(const IntSet& a, unsigned s, unsigned l, Mode mode = Mode::additive)
{
    if (l == 0 || l >= s)
        fail(Errc::bad_arity, "power bound needs 1 <= l < s");
    detail::require_no_zero(a, mode, "power bound");
    BigInt lhs = energy_count(a, s, mode);
    BigInt rhs = ipow(BigInt(a.size()), 2 * s - 2 * l) * energy_count(a, l, mode);
    auto d = detail::digest_for("young-energy", a, {s, l, mode == Mode::additive ? 0 : 1});
    return detail::make_report("young-energy", lhs, rhs, Relation::at_most, lhs <= rhs, d);
}

inline std::pair<CheckReport, CheckReport> check_young(const IntSet& a, unsigned s, unsigned l, Mode mode = Mode::additive)
{
    return {check_young_sup(a, s, mode), check_young_energy(a, s, l, mode)};
}

/// Mixed energy against the geometric mean of the individual energies. The multiplicative
/// form carries an extra 2^{2s} and excludes 0. Decided on 2s-th powers.
inline CheckReport check_holder_mixed(std::span<const IntSet> sets, Mode mode)
{
    if (sets.empty() || sets.size() % 2 != 0)
        fail(Errc::bad_arity, "needs an even, non-zero number of sets");
    const unsigned s = static_cast<unsigned>(sets.size() / 2);
    if (mode == Mode::multiplicative)
        for (const auto& x : sets)
            if (x.contains(BigInt(0)))
                fail(Errc::zero_element, "multiplicative geometric-mean bound requires 0 outside every set");
    BigInt lhs = mixed_energy(sets, mode).count;
    std::vector<BigInt> energies;
    BigInt product = 1;
    for (const auto& x : sets) {
        energies.push_back(energy_count(x, s, mode));
        product *= energies.back();
    }
    Real rhs = detail::geometric_root(energies, 2 * s);
    BigInt lhs_pow = ipow(lhs, 2 * s);
    if (mode == Mode::multiplicative) {
        // (2^{2s})^{2s}
        product <<= 4 * s * s;
        rhs *= boost::multiprecision::ldexp(Real(1), static_cast<int>(2 * s));
    }
    const char* name = mode == Mode::additive ? "holder" : "holder-mult";
    auto d = detail::digest_for(name, sets, {s});
    auto r = detail::make_report(name, lhs, rhs, Relation::at_most, lhs_pow <= product, d);
    r.note = "decided as lhs^" + std::to_string(2 * s) + " <= product of energies";
    return r;
}

/// Energy of a disjoint union against n^{2s-1} times the sum of part energies (times 2^{2s} for products).
inline CheckReport check_union_bound(std::span<const IntSet> parts, unsigned s, Mode mode)
{
    if (parts.empty())
        fail(Errc::bad_params, "union bound needs at least one part");
    IntSet all;
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (p.empty())
            fail(Errc::empty_set, "union bound with an empty part");
        total += p.size();
        all = all.union_with(p);
    }
    if (all.size() != total)
        fail(Errc::not_disjoint, "parts of the union bound overlap");
    if (mode == Mode::multiplicative && all.contains(BigInt(0)))
        fail(Errc::zero_element, "multiplicative union bound requires 0 outside the union");
    BigInt lhs = energy_count(all, s, mode);
    BigInt sum = 0;
    for (const auto& p : parts)
        sum += energy_count(p, s, mode);
    BigInt rhs = ipow(BigInt(parts.size()), 2 * s - 1) * sum;
    if (mode == Mode::multiplicative)
        rhs <<= 2 * s;
    auto d = detail::digest_for(mode == Mode::additive ? "union-bound" : "union-bound-mult", parts, {s});
    return detail::make_report(mode == Mode::additive ? "union-bound" : "union-bound-mult", lhs, rhs, Relation::at_most, lhs <= rhs, d);
}

/// E_s(B,C)^2 <= E_s(B) E_s(C).
inline CheckReport check_mixed_cs(const IntSet& b, const IntSet& c, unsigned s, Mode mode)
{
    if (b.empty() || c.empty())
        fail(Errc::empty_set, "mixed Cauchy-Schwarz with an empty set");
    BigInt lhs = mixed_energy_pair(b, c, s, mode);
    BigInt eb = energy_count(b, s, mode);
    BigInt ec = energy_count(c, s, mode);
    Real rhs = boost::multiprecision::sqrt(to_real(BigInt(eb * ec)));
    IntSet pair[2] = {b, c};
    auto d = detail::digest_for(mode == Mode::additive ? "mixed-cs" : "mixed-cs-mult", pair, {s});
    auto r = detail::make_report(mode == Mode::additive ? "mixed-cs" : "mixed-cs-mult", lhs, rhs, Relation::at_most, lhs * lhs <= eb * ec, d);
    r.note = "decided on squares";
    return r;
}

/// |mA - nA| <= K^{m+n} |A| with K = |A+A|/|A|.
inline CheckReport check_plunnecke(const IntSet& a, unsigned m, unsigned n)
{
    Rational k(BigInt(iterated_sumset(a, 2, 0).size()), BigInt(a.size()));
    BigInt lhs = iterated_sumset(a, m, n).size();
    Rational rhs(BigInt(a.size()));
    for (unsigned i = 0; i < m + n; ++i)
        rhs *= k;
    auto d = detail::digest_for("plunnecke", a, {m, n});
    return detail::make_report("plunnecke", lhs, rhs, Relation::at_most, Rational(lhs) <= rhs, d);
}

/// E_s(A) |sA| >= |A|^{2s} (or the product-set analogue).
inline CheckReport check_cauchy_schwarz(const IntSet& a, unsigned s, Mode mode)
{
    BigInt e = energy_count(a, s, mode);
    BigInt size = mode == Mode::additive ? BigInt(iterated_sumset(a, s, 0).size()) : BigInt(iterated_product_set(a, s, 0).size());
    BigInt lhs = e * size;
    BigInt rhs = ipow(BigInt(a.size()), 2 * s);
    auto d = detail::digest_for(mode == Mode::additive ? "cauchy-schwarz" : "cauchy-schwarz-mult", a, {s});
    return detail::make_report(mode == Mode::additive ? "cauchy-schwarz" : "cauchy-schwarz-mult", lhs, rhs, Relation::at_least, lhs >= rhs, d);
}

struct ConvexGrowthConfig {
    Rational constant{1, 100};
    bool log_factor = true; // divide by (log2 |A|)^{2^{k+1}+k+3}
    std::size_t cap = default_set_cap;
};

/// |2^{k-1}A - (2^{k-1}-1)A| measured against |A|^k K^{-(2^k-k-1)}, scaled by the configured
/// constant and optional log factor. Informational: there is no proven constant to test against.
inline CheckReport check_convex_growth(const IntSet& a, unsigned k, const Rational& K, const ConvexGrowthConfig& cfg = {})
{
    if (k < 2 || k > 3)
        fail(Errc::bad_params, "convex growth is measured for k in {2,3}");
    if (a.size() < 4)
        fail(Errc::bad_params, "convex growth needs |A| >= 4");
    if (K <= 0)
        fail(Errc::bad_params, "doubling constant must be positive");
    const unsigned m = 1u << (k - 1);
    BigInt lhs = iterated_sumset(a, m, m - 1, cfg.cap).size();
    const unsigned kexp = (1u << k) - k - 1;
    Rational base(ipow(BigInt(a.size()), k));
    for (unsigned i = 0; i < kexp; ++i)
        base /= K;
    Rational scaled = base * cfg.constant;
    bool holds;
    Quantity rhs;
    std::string note;
    if (cfg.log_factor) {
        const unsigned lexp = (1u << (k + 1)) + k + 3;
        Real lg = log2_real(Real(a.size()));
        Real r = to_real(scaled) / boost::multiprecision::pow(lg, lexp);
        rhs = Quantity(r);
        holds = certified_compare(to_real(lhs), r, "convex growth") >= 0;
        note = "threshold includes (log2 |A|)^-" + std::to_string(lexp);
    } else {
        rhs = Quantity(scaled);
        holds = Rational(lhs) >= scaled;
    }
    auto d = detail::digest_for("convex-growth", a, {k});
    d.add(to_string(K));
    auto r = detail::make_report("convex-growth", lhs, rhs, Relation::at_least, holds, d);
    r.note = note.empty() ? "informational" : "informational; " + note;
    return r;
}

/// E_s(N_k) |sN_k| >= N^{2s} for N_k = {1, 2^k, ..., N^k}.
inline CheckReport check_power_energy(unsigned k, unsigned s, long long n, std::uint64_t guard = default_oracle_guard)
{
    if (k == 0 || s == 0 || n <= 0)
        fail(Errc::bad_params, "power-set energy needs k, s, N >= 1");
    long double tuples = std::pow(static_cast<long double>(n), 2.0L * s);
    if (tuples > static_cast<long double>(guard))
        fail(Errc::too_large, "N^{2s} exceeds the tuple guard");
    auto a = gen::powers(k, n);
    BigInt lhs = energy_count(a, s, Mode::additive) * iterated_sumset(a, s, 0).size();
    BigInt rhs = ipow(BigInt(n), 2 * s);
    auto d = detail::digest_for("power-energy", a, {k, s, n});
    return detail::make_report("power-energy", lhs, rhs, Relation::at_least, lhs >= rhs, d);
}

} // namespace energia
