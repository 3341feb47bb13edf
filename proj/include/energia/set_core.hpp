#pragma once

#include "energia/error.hpp"
#include "energia/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace energia {

/// Finite sorted set of exact values. Immutable after construction.
template <typename T>
class SortedSet {
public:
    using value_type = T;
    using const_iterator = typename std::vector<T>::const_iterator;

    SortedSet() = default;

    explicit SortedSet(std::vector<T> values) : elems_(std::move(values))
    {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    SortedSet(std::initializer_list<long long> values)
    {
        elems_.reserve(values.size());
        for (long long v : values)
            elems_.emplace_back(v);
        *this = SortedSet(std::move(elems_));
    }

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const_iterator begin() const noexcept { return elems_.begin(); }
    const_iterator end() const noexcept { return elems_.end(); }
    const T& operator[](std::size_t i) const { return elems_[i]; }
    const T& front() const { return elems_.front(); }
    const T& back() const { return elems_.back(); }
    std::span<const T> elements() const noexcept { return elems_; }

    bool contains(const T& v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

    bool operator==(const SortedSet&) const = default;

    SortedSet union_with(const SortedSet& other) const
    {
        std::vector<T> out;
        out.reserve(size() + other.size());
        std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    SortedSet minus(const SortedSet& other) const
    {
        std::vector<T> out;
        std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    SortedSet intersect(const SortedSet& other) const
    {
        std::vector<T> out;
        std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    bool subset_of(const SortedSet& other) const { return std::includes(other.begin(), other.end(), begin(), end()); }

    /// Caller guarantees the input is strictly increasing.
    static SortedSet from_sorted(std::vector<T> values)
    {
        SortedSet s;
        s.elems_ = std::move(values);
        return s;
    }

private:
    std::vector<T> elems_;
};

using IntSet = SortedSet<BigInt>;
using RatSet = SortedSet<Rational>;

inline IntSet make_set(std::vector<BigInt> values) { return IntSet(std::move(values)); }

inline IntSet make_set(std::span<const long long> values)
{
    std::vector<BigInt> v(values.begin(), values.end());
    return IntSet(std::move(v));
}

inline std::string digest_of(const IntSet& a)
{
    Digest d;
    for (const auto& x : a)
        d.add(x);
    return d.hex();
}

/// c*A + d
inline IntSet affine_image(const IntSet& a, const BigInt& c, const BigInt& d)
{
    std::vector<BigInt> out;
    out.reserve(a.size());
    for (const auto& x : a)
        out.push_back(c * x + d);
    return IntSet(std::move(out));
}

namespace detail {

template <typename T, typename Op>
std::vector<T> combine_all(const std::vector<T>& left, std::span<const T> right, Op op, std::size_t cap)
{
    std::vector<T> out;
    out.reserve(left.size() * right.size());
    for (const auto& x : left)
        for (const auto& y : right)
            out.push_back(op(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > cap)
        fail(Errc::too_large, "iterated set exceeds cap of " + std::to_string(cap) + " elements");
    return out;
}

inline std::vector<BigInt> product_set_values(const IntSet& a, std::uint64_t m, std::size_t cap)
{
    std::vector<BigInt> acc{BigInt(1)};
    for (std::uint64_t i = 0; i < m; ++i)
        acc = combine_all(acc, a.elements(), [](const BigInt& x, const BigInt& y) { return BigInt(x * y); }, cap);
    return acc;
}

} // namespace detail

inline constexpr std::size_t default_set_cap = std::size_t(1) << 26;

/// mA - nA.
inline IntSet iterated_sumset(const IntSet& a, std::uint64_t m, std::uint64_t n, std::size_t cap = default_set_cap)
{
    if (a.empty())
        fail(Errc::empty_set, "iterated_sumset of the empty set");
    if (m == 0 && n == 0)
        fail(Errc::zero_arity, "iterated_sumset needs m + n >= 1");
    std::vector<BigInt> acc{BigInt(0)};
    std::vector<BigInt> negated;
    negated.reserve(a.size());
    for (auto it = a.elements().rbegin(); it != a.elements().rend(); ++it)
        negated.push_back(-*it);
    auto plus = [](const BigInt& x, const BigInt& y) { return BigInt(x + y); };
    for (std::uint64_t i = 0; i < m; ++i)
        acc = detail::combine_all(acc, a.elements(), plus, cap);
    for (std::uint64_t i = 0; i < n; ++i)
        acc = detail::combine_all(acc, std::span<const BigInt>(negated), plus, cap);
    return IntSet::from_sorted(std::move(acc));
}

/// A^(m) / A^(n) as exact rationals.
inline RatSet iterated_product_set(const IntSet& a, std::uint64_t m, std::uint64_t n, std::size_t cap = default_set_cap)
{
    if (a.empty())
        fail(Errc::empty_set, "iterated_product_set of the empty set");
    if (m == 0 && n == 0)
        fail(Errc::zero_arity, "iterated_product_set needs m + n >= 1");
    if (n > 0 && a.contains(BigInt(0)))
        fail(Errc::division_by_zero_element, "quotient set of a set containing 0");
    auto num = detail::product_set_values(a, m, cap);
    auto den = detail::product_set_values(a, n, cap);
    std::vector<Rational> out;
    out.reserve(num.size() * den.size());
    for (const auto& x : num)
        for (const auto& y : den)
            out.emplace_back(x, y);
    RatSet result(std::move(out));
    if (result.size() > cap)
        fail(Errc::too_large, "quotient set exceeds cap");
    return result;
}

/// Generators for the model sets.
namespace gen {

inline void require_count(long long n)
{
    if (n <= 0)
        fail(Errc::bad_params, "generator needs N >= 1");
}

inline IntSet ap(const BigInt& start, const BigInt& step, long long n)
{
    require_count(n);
    if (step == 0)
        fail(Errc::bad_params, "arithmetic progression with zero step");
    std::vector<BigInt> v;
    v.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        v.push_back(start + step * i);
    return IntSet(std::move(v));
}

inline IntSet gp(const BigInt& start, const BigInt& ratio, long long n)
{
    require_count(n);
    if (ratio == 0)
        fail(Errc::bad_params, "geometric progression with zero ratio");
    std::vector<BigInt> v;
    v.reserve(static_cast<std::size_t>(n));
    BigInt cur = start;
    for (long long i = 0; i < n; ++i, cur *= ratio)
        v.push_back(cur);
    return IntSet(std::move(v));
}

inline IntSet interval(long long n)
{
    require_count(n);
    return ap(BigInt(1), BigInt(1), n);
}

/// {1, 2^k, ..., N^k}
inline IntSet powers(unsigned k, long long n)
{
    require_count(n);
    if (k == 0)
        fail(Errc::bad_params, "powers need k >= 1");
    std::vector<BigInt> v;
    for (long long i = 1; i <= n; ++i)
        v.push_back(ipow(BigInt(i), k));
    return IntSet(std::move(v));
}

/// {1, ..., N} together with {N^2, ..., N^N}
inline IntSet mixed(long long n)
{
    require_count(n);
    std::vector<BigInt> v;
    for (long long i = 1; i <= n; ++i)
        v.emplace_back(i);
    for (long long e = 2; e <= n; ++e)
        v.push_back(ipow(BigInt(n), static_cast<std::uint64_t>(e)));
    return IntSet(std::move(v));
}

/// {p(i) : i in domain} for p with integer coefficients, lowest degree first.
inline IntSet poly_image(std::span<const BigInt> coeffs, const IntSet& domain)
{
    if (coeffs.empty())
        fail(Errc::bad_params, "polynomial without coefficients");
    if (domain.empty())
        fail(Errc::bad_params, "polynomial image of an empty domain");
    std::vector<BigInt> v;
    v.reserve(domain.size());
    for (const auto& x : domain) {
        BigInt acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * x + *it;
        v.push_back(std::move(acc));
    }
    return IntSet(std::move(v));
}

} // namespace gen

} // namespace energia
