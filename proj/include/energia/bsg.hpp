#pragma once

#include "energia/energy.hpp"
#include "energia/error.hpp"
#include "energia/inequalities.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace energia {

/// |X + X| (or |X . X|), with a machine-integer path when values are small.
inline std::size_t doubling_size(std::span<const BigInt> x, Mode mode)
{
    if (x.empty())
        return 0;
    BigInt bound = std::max(BigInt(boost::multiprecision::abs(x.front())), BigInt(boost::multiprecision::abs(x.back())));
    bool small = mode == Mode::additive ? bound < (BigInt(1) << 61) : bound < (BigInt(1) << 31);
    if (small) {
        std::vector<std::int64_t> v;
        v.reserve(x.size());
        for (const auto& e : x)
            v.push_back(e.convert_to<std::int64_t>());
        std::vector<std::int64_t> out;
        out.reserve(v.size() * (v.size() + 1) / 2);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i; j < v.size(); ++j)
                out.push_back(mode == Mode::additive ? v[i] + v[j] : v[i] * v[j]);
        std::sort(out.begin(), out.end());
        return static_cast<std::size_t>(std::unique(out.begin(), out.end()) - out.begin());
    }
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j)
            out.push_back(combine(mode, x[i], x[j]));
    std::sort(out.begin(), out.end());
    return static_cast<std::size_t>(std::unique(out.begin(), out.end()) - out.begin());
}

inline std::size_t doubling_size(const IntSet& x, Mode mode) { return doubling_size(x.elements(), mode); }

/// Bipartite graph on U x V keeping the pairs whose sum (product) lies in the filter.
class PopularSumGraph {
public:
    PopularSumGraph(IntSet left, IntSet right, IntSet filter, Mode mode = Mode::additive)
        : left_(std::move(left)), right_(std::move(right)), filter_(std::move(filter)), mode_(mode)
    {
        adj_.resize(left_.size());
        for (std::size_t i = 0; i < left_.size(); ++i)
            for (std::size_t j = 0; j < right_.size(); ++j)
                if (filter_.contains(combine(mode_, left_[i], right_[j])))
                    adj_[i].push_back(j);
        for (const auto& row : adj_)
            edges_ += row.size();
        n_ = std::max({left_.size(), right_.size(), filter_.size()});
    }

    const IntSet& left() const noexcept { return left_; }
    const IntSet& right() const noexcept { return right_; }
    const IntSet& filter() const noexcept { return filter_; }
    Mode mode() const noexcept { return mode_; }
    std::size_t edges() const noexcept { return edges_; }
    std::size_t scale() const noexcept { return n_; }
    const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_[i]; }

    /// |G| / N^2 with N = max(|U|, |V|, |filter|).
    Rational alpha() const { return n_ == 0 ? Rational(0) : Rational(BigInt(edges_), BigInt(n_) * n_); }

private:
    IntSet left_, right_, filter_;
    Mode mode_;
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t edges_ = 0;
    std::size_t n_ = 0;
};

struct BsgOptions {
    std::size_t max_seeds = 64;
    std::size_t exhaustive_limit = 16;
    std::size_t trim_limit = 256; // greedy trimming only below this size
    std::size_t trim_count = 3;   // how many of the best raw candidates get trimmed
};

struct BsgResult {
    IntSet a_prime;
    CheckReport doubling; // |A'+A'| against the explicit upper bound
    CheckReport size;     // |A'| against the explicit lower bound
    std::string strategy;
    std::size_t sumset_size = 0;

    bool verified() const { return doubling.holds && size.holds; }
};

namespace detail {

struct Candidate {
    std::vector<std::size_t> idx; // indices into U, increasing
    std::size_t sums = 0;
    std::string origin;
};

inline std::vector<BigInt> pick(const IntSet& u, const std::vector<std::size_t>& idx)
{
    std::vector<BigInt> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(u[i]);
    return out;
}

// |X|^2 / |X+X| compared without division; larger is better, then larger |X|, then origin order.
inline bool better(const Candidate& a, const Candidate& b)
{
    BigInt lhs = BigInt(a.idx.size()) * a.idx.size() * b.sums;
    BigInt rhs = BigInt(b.idx.size()) * b.idx.size() * a.sums;
    if (lhs != rhs)
        return lhs > rhs;
    return a.idx.size() > b.idx.size();
}

inline void score(Candidate& c, const IntSet& u, Mode mode) { c.sums = doubling_size(pick(u, c.idx), mode); }

// Drop elements one at a time while that strictly improves |X|^2/|X+X|.
inline void trim(Candidate& c, const IntSet& u, Mode mode)
{
    for (;;) {
        std::optional<Candidate> best;
        for (std::size_t drop = 0; drop < c.idx.size() && c.idx.size() > 1; ++drop) {
            Candidate next{c.idx, 0, c.origin};
            next.idx.erase(next.idx.begin() + static_cast<std::ptrdiff_t>(drop));
            score(next, u, mode);
            if (better(next, c) && (!best || better(next, *best)))
                best = std::move(next);
        }
        if (!best)
            return;
        c = std::move(*best);
    }
}

// Pairs (i, j) of kept vertices with few common neighbours in V are the obstruction to short paths;
// a vertex in too many such pairs is dropped.
inline std::vector<std::size_t> prune_by_codegree(const PopularSumGraph& g, const std::vector<std::size_t>& start,
                                                  const std::vector<std::vector<char>>& member, double tau)
{
    std::vector<std::size_t> kept;
    for (auto i : start) {
        std::size_t bad = 0;
        for (auto j : start) {
            if (i == j)
                continue;
            std::size_t common = 0;
            for (auto v : g.neighbours(i))
                common += member[j][v];
            if (static_cast<double>(common) < tau)
                ++bad;
        }
        if (4 * bad <= start.size())
            kept.push_back(i);
    }
    return kept;
}

inline std::pair<CheckReport, CheckReport> bound_reports(const PopularSumGraph& g, std::size_t a_size, std::size_t sums)
{
    Rational alpha = g.alpha();
    Real a = to_real(alpha);
    Real n = Real(g.scale());
    Real lg = log2_real(Real(32) / a);
    Real upper = boost::multiprecision::ldexp(Real(1), 38) / 3 * lg / boost::multiprecision::pow(a, 7) * n;
    Real lower = Real(3) / boost::multiprecision::ldexp(Real(1), 16) * boost::multiprecision::pow(a, 3) / lg * n;
    Digest d;
    d.add("bsg");
    for (const auto* s : {&g.left(), &g.right(), &g.filter()}) {
        d.add("|");
        for (const auto& x : *s)
            d.add(x);
    }
    auto up = make_report("bsg-doubling", BigInt(sums), upper, Relation::at_most,
                          certified_compare(Real(sums), upper, "bsg doubling bound") <= 0, d);
    auto lo = make_report("bsg-size", BigInt(a_size), lower, Relation::at_least,
                          certified_compare(Real(a_size), lower, "bsg size bound") >= 0, d);
    up.note = lo.note = "alpha = " + to_string(alpha) + ", N = " + std::to_string(g.scale()) + ", log base 2";
    return {up, lo};
}

} // namespace detail

/// Constructive extraction of A' inside U with small doubling from a dense popular-sum graph.
/// Candidates: neighbourhoods of high-degree right vertices restricted to popular left vertices,
/// pruned by common-neighbourhood counts, then greedily trimmed; the best |A'|^2/|A'+A'| wins.
inline BsgResult bsg_extract(const PopularSumGraph& g, const BsgOptions& opt = {})
{
    if (g.edges() == 0)
        fail(Errc::empty_graph, "popular-sum graph has no edges");
    const IntSet& u = g.left();
    const std::size_t nu = u.size(), nv = g.right().size();

    std::vector<std::vector<char>> member(nu, std::vector<char>(nv, 0));
    std::vector<std::size_t> right_deg(nv, 0);
    for (std::size_t i = 0; i < nu; ++i)
        for (auto v : g.neighbours(i)) {
            member[i][v] = 1;
            ++right_deg[v];
        }

    // deg(u) >= |G| / (2|U|)
    std::vector<std::size_t> popular;
    for (std::size_t i = 0; i < nu; ++i)
        if (2 * nu * g.neighbours(i).size() >= g.edges())
            popular.push_back(i);

    const double density = static_cast<double>(g.edges()) / (static_cast<double>(nu) * static_cast<double>(nv));
    const double tau = density * density * static_cast<double>(nv) / 2;

    std::vector<std::size_t> seeds(nv);
    std::iota(seeds.begin(), seeds.end(), 0);
    std::stable_sort(seeds.begin(), seeds.end(), [&](auto a, auto b) { return right_deg[a] > right_deg[b]; });
    if (seeds.size() > opt.max_seeds)
        seeds.resize(opt.max_seeds);

    std::vector<detail::Candidate> cands;
    cands.push_back({popular, 0, "popular"});
    for (auto v : seeds) {
        std::vector<std::size_t> start;
        for (auto i : popular)
            if (member[i][v])
                start.push_back(i);
        if (start.empty())
            continue;
        auto kept = detail::prune_by_codegree(g, start, member, tau);
        if (kept.empty())
            kept = start;
        cands.push_back({kept, 0, "seed " + to_string(g.right()[v])});
    }

    for (auto& c : cands)
        detail::score(c, u, g.mode());
    std::stable_sort(cands.begin(), cands.end(), detail::better);
    std::optional<detail::Candidate> best;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        auto& c = cands[i];
        if (i < opt.trim_count && c.idx.size() <= opt.trim_limit)
            detail::trim(c, u, g.mode());
        if (!best || detail::better(c, *best))
            best = c;
    }

    auto finish = [&](const detail::Candidate& c, std::string strategy) {
        BsgResult r;
        r.a_prime = IntSet::from_sorted(detail::pick(u, c.idx));
        r.sumset_size = c.sums;
        auto [up, lo] = detail::bound_reports(g, c.idx.size(), c.sums);
        r.doubling = std::move(up);
        r.size = std::move(lo);
        r.strategy = std::move(strategy);
        return r;
    };

    BsgResult result = finish(*best, "neighbourhood: " + best->origin);
    if (!result.verified() && nu <= opt.exhaustive_limit) {
        std::optional<detail::Candidate> ex;
        for (std::uint32_t mask = 1; mask < (1u << nu); ++mask) {
            detail::Candidate c;
            for (std::size_t i = 0; i < nu; ++i)
                if (mask & (1u << i))
                    c.idx.push_back(i);
            detail::score(c, u, g.mode());
            auto [up, lo] = detail::bound_reports(g, c.idx.size(), c.sums);
            if (up.holds && lo.holds && (!ex || detail::better(c, *ex)))
                ex = c;
        }
        if (ex)
            result = finish(*ex, "exhaustive");
    }
    if (!result.verified())
        fail(Errc::extractor_failed, "no subset meets the extraction bounds");
    return result;
}

inline BsgResult bsg_extract(const IntSet& u, const IntSet& v, const IntSet& filter, Mode mode = Mode::additive,
                             const BsgOptions& opt = {})
{
    return bsg_extract(PopularSumGraph(u, v, filter, mode), opt);
}

/// Sums u + u' (u < u') hit by at least `min_reps` distinct unordered pairs of U.
inline IntSet repeated_sums(const IntSet& u, std::size_t min_reps)
{
    std::vector<BigInt> sums;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            sums.push_back(u[i] + u[j]);
    std::sort(sums.begin(), sums.end());
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < sums.size();) {
        std::size_t j = i;
        while (j < sums.size() && sums[j] == sums[i])
            ++j;
        if (j - i >= min_reps)
            out.push_back(sums[i]);
        i = j;
    }
    return IntSet::from_sorted(std::move(out));
}

} // namespace energia
