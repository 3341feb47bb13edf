#pragma once

#include "energia/error.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace energia {

enum class Mode { additive, multiplicative };

inline std::string_view mode_name(Mode m) { return m == Mode::additive ? "additive" : "multiplicative"; }

inline BigInt combine(Mode m, const BigInt& x, const BigInt& y) { return m == Mode::additive ? BigInt(x + y) : BigInt(x * y); }

/// Sparse value -> multiplicity map, sorted by value.
class RepFunction {
public:
    using Entry = std::pair<BigInt, std::uint64_t>;

    RepFunction() = default;
    RepFunction(std::vector<Entry> entries, unsigned arity, Mode mode)
        : entries_(std::move(entries)), arity_(arity), mode_(mode)
    {
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    unsigned arity() const noexcept { return arity_; }
    Mode mode() const noexcept { return mode_; }
    std::size_t support_size() const noexcept { return entries_.size(); }

    std::uint64_t at(const BigInt& v) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                                   [](const Entry& e, const BigInt& key) { return e.first < key; });
        return (it != entries_.end() && it->first == v) ? it->second : 0;
    }

    IntSet support() const
    {
        std::vector<BigInt> v;
        v.reserve(entries_.size());
        for (const auto& [value, count] : entries_)
            v.push_back(value);
        return IntSet::from_sorted(std::move(v));
    }

    BigInt total() const
    {
        BigInt t = 0;
        for (const auto& e : entries_)
            t += e.second;
        return t;
    }

    BigInt sum_of_squares() const
    {
        unsigned __int128 acc = 0;
        for (const auto& e : entries_)
            acc += static_cast<unsigned __int128>(e.second) * e.second;
        return from_u128(acc);
    }

    std::uint64_t max_value() const
    {
        std::uint64_t m = 0;
        for (const auto& e : entries_)
            m = std::max(m, e.second);
        return m;
    }

    static BigInt from_u128(unsigned __int128 v)
    {
        BigInt hi = static_cast<std::uint64_t>(v >> 64);
        return (hi << 64) + BigInt(static_cast<std::uint64_t>(v));
    }

private:
    std::vector<Entry> entries_;
    unsigned arity_ = 0;
    Mode mode_ = Mode::additive;
};

namespace detail {

inline RepFunction indicator(const IntSet& a, Mode mode)
{
    std::vector<RepFunction::Entry> e;
    e.reserve(a.size());
    for (const auto& x : a)
        e.emplace_back(x, 1);
    return RepFunction(std::move(e), 1, mode);
}

inline RepFunction convolve(const RepFunction& f, const RepFunction& g)
{
    std::vector<RepFunction::Entry> pairs;
    pairs.reserve(f.support_size() * g.support_size());
    for (const auto& [x, cx] : f.entries())
        for (const auto& [y, cy] : g.entries())
            pairs.emplace_back(combine(f.mode(), x, y), cx * cy);
    std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<RepFunction::Entry> merged;
    for (auto& p : pairs) {
        if (!merged.empty() && merged.back().first == p.first)
            merged.back().second += p.second;
        else
            merged.push_back(std::move(p));
    }
    return RepFunction(std::move(merged), f.arity() + g.arity(), f.mode());
}

// |A|^s must stay below 2^63 so every multiplicity fits.
inline void guard_counts(std::size_t size, unsigned s)
{
    long double total = 1;
    for (unsigned i = 0; i < s; ++i)
        total *= static_cast<long double>(size);
    if (total >= 9.2233720368547758e18L)
        fail(Errc::overflow, "|A|^s = " + std::to_string(size) + "^" + std::to_string(s) + " exceeds the 63-bit counter guard");
}

inline void require_set(const IntSet& a, unsigned s)
{
    if (a.empty())
        fail(Errc::empty_set, "energy of the empty set");
    if (s == 0)
        fail(Errc::zero_arity, "arity must be at least 1");
}

} // namespace detail

/// Fold of two representation functions: sums or products of one element from each side.
inline RepFunction convolve(const RepFunction& f, const RepFunction& g)
{
    if (f.mode() != g.mode())
        fail(Errc::bad_params, "convolving representation functions of different modes");
    return detail::convolve(f, g);
}

/// r_s (sums) or q_s (products) by binary powering of the indicator.
inline RepFunction rep_function(const IntSet& a, unsigned s, Mode mode)
{
    detail::require_set(a, s);
    detail::guard_counts(a.size(), s);
    RepFunction base = detail::indicator(a, mode);
    std::optional<RepFunction> acc;
    for (unsigned e = s;;) {
        if (e & 1u)
            acc = acc ? detail::convolve(*acc, base) : base;
        e >>= 1;
        if (e == 0)
            break;
        base = detail::convolve(base, base);
    }
    return *acc;
}

/// Convolution chain over distinct sets: tuples (a_1, ..., a_j) with a_i in sets[i].
inline RepFunction chain_rep(std::span<const IntSet> sets, Mode mode)
{
    if (sets.empty())
        fail(Errc::bad_arity, "empty convolution chain");
    long double total = 1;
    for (const auto& s : sets) {
        if (s.empty())
            fail(Errc::empty_set, "mixed energy with an empty set");
        total *= static_cast<long double>(s.size());
    }
    if (total >= 9.2233720368547758e18L)
        fail(Errc::overflow, "tuple count exceeds the 63-bit counter guard");
    RepFunction acc = detail::indicator(sets[0], mode);
    for (std::size_t i = 1; i < sets.size(); ++i)
        acc = detail::convolve(acc, detail::indicator(sets[i], mode));
    return acc;
}

/// Sum over the common support of f(n) g(n).
inline BigInt inner_product(const RepFunction& f, const RepFunction& g)
{
    unsigned __int128 acc = 0;
    auto i = f.entries().begin();
    auto j = g.entries().begin();
    while (i != f.entries().end() && j != g.entries().end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else {
            acc += static_cast<unsigned __int128>(i->second) * j->second;
            ++i;
            ++j;
        }
    }
    return RepFunction::from_u128(acc);
}

enum class EnergyKind { additive, multiplicative, mixed_additive, mixed_multiplicative };

inline std::string_view kind_name(EnergyKind k)
{
    switch (k) {
    case EnergyKind::additive: return "additive";
    case EnergyKind::multiplicative: return "multiplicative";
    case EnergyKind::mixed_additive: return "mixed-additive";
    case EnergyKind::mixed_multiplicative: return "mixed-multiplicative";
    }
    return "?";
}

struct EnergyValue {
    BigInt count;
    unsigned s = 0;
    EnergyKind kind = EnergyKind::additive;
    std::size_t set_size = 0;
    std::optional<Real> exponent; // log_{|A|} count, for |A| >= 2

    /// count == |A|^exponent with exponent rational; exact threshold tests go through this.
    int compare_to_power(const Rational& e) const { return compare_power(Rational(count), BigInt(set_size), e); }
};

namespace detail {

inline EnergyValue make_energy(BigInt count, unsigned s, EnergyKind kind, std::size_t n)
{
    EnergyValue v{std::move(count), s, kind, n, std::nullopt};
    if (n >= 2)
        v.exponent = boost::multiprecision::log(to_real(v.count)) / boost::multiprecision::log(Real(n));
    return v;
}

inline EnergyKind kind_of(Mode m) { return m == Mode::additive ? EnergyKind::additive : EnergyKind::multiplicative; }

} // namespace detail

inline EnergyValue energy(const IntSet& a, unsigned s, Mode mode)
{
    return detail::make_energy(rep_function(a, s, mode).sum_of_squares(), s, detail::kind_of(mode), a.size());
}

inline BigInt energy_count(const IntSet& a, unsigned s, Mode mode) { return rep_function(a, s, mode).sum_of_squares(); }

/// Tuples from sets[0] x ... x sets[2s-1] whose first half and second half agree under the mode's operation.
inline EnergyValue mixed_energy(std::span<const IntSet> sets, Mode mode)
{
    if (sets.empty() || sets.size() % 2 != 0)
        fail(Errc::bad_arity, "mixed energy needs an even, non-zero number of sets, got " + std::to_string(sets.size()));
    std::size_t s = sets.size() / 2;
    RepFunction left = chain_rep(sets.subspan(0, s), mode);
    RepFunction right = chain_rep(sets.subspan(s), mode);
    std::size_t n = 0;
    for (const auto& x : sets)
        n = std::max(n, x.size());
    auto kind = mode == Mode::additive ? EnergyKind::mixed_additive : EnergyKind::mixed_multiplicative;
    return detail::make_energy(inner_product(left, right), static_cast<unsigned>(s), kind, n);
}

/// E_s(B, C): s elements of B against s elements of C.
inline BigInt mixed_energy_pair(const IntSet& b, const IntSet& c, unsigned s, Mode mode)
{
    return inner_product(rep_function(b, s, mode), rep_function(c, s, mode));
}

inline std::uint64_t sup_rep(const IntSet& a, unsigned s, Mode mode) { return rep_function(a, s, mode).max_value(); }

inline constexpr std::uint64_t default_oracle_guard = 100'000'000;

namespace detail {

// Values of all s-tuples in lexicographic order, by odometer.
template <typename V, typename Conv>
std::vector<V> half_tuple_values(const IntSet& a, unsigned s, Mode mode, Conv conv)
{
    std::vector<V> elems;
    for (const auto& x : a)
        elems.push_back(conv(x));
    std::vector<std::size_t> idx(s, 0);
    std::vector<V> out;
    for (;;) {
        V acc = elems[idx[0]];
        for (unsigned i = 1; i < s; ++i)
            acc = mode == Mode::additive ? V(acc + elems[idx[i]]) : V(acc * elems[idx[i]]);
        out.push_back(acc);
        unsigned pos = s;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < elems.size())
                break;
            idx[pos] = 0;
            if (pos == 0)
                return out;
        }
    }
}

template <typename V>
BigInt count_equal_pairs(const std::vector<V>& left)
{
    std::uint64_t hits = 0;
    for (const auto& x : left)
        for (const auto& y : left)
            hits += (x == y);
    return BigInt(hits);
}

} // namespace detail

/// Literal enumeration of all 2s-tuples; an independent check on the convolution path.
inline EnergyValue energy_oracle(const IntSet& a, unsigned s, Mode mode, std::uint64_t guard = default_oracle_guard)
{
    detail::require_set(a, s);
    long double tuples = 1;
    for (unsigned i = 0; i < 2 * s; ++i)
        tuples *= static_cast<long double>(a.size());
    if (tuples > static_cast<long double>(guard))
        fail(Errc::too_large, "oracle would enumerate " + std::to_string(static_cast<double>(tuples)) + " tuples");
    // Largest |value| a half-tuple can reach decides the machine type.
    BigInt bound = 0;
    for (const auto& x : a)
        bound = std::max(bound, BigInt(boost::multiprecision::abs(x)));
    BigInt reach = mode == Mode::additive ? BigInt(bound * s) : ipow(bound, s);
    BigInt count;
    if (reach < (BigInt(1) << 62)) {
        auto v = detail::half_tuple_values<std::int64_t>(a, s, mode, [](const BigInt& x) { return x.convert_to<std::int64_t>(); });
        count = detail::count_equal_pairs(v);
    } else {
        auto v = detail::half_tuple_values<BigInt>(a, s, mode, [](const BigInt& x) { return x; });
        count = detail::count_equal_pairs(v);
    }
    return detail::make_energy(std::move(count), s, detail::kind_of(mode), a.size());
}

} // namespace energia
