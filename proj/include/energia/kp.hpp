#pragma once

#include "energia/bsg.hpp"
#include "energia/energy.hpp"
#include "energia/error.hpp"
#include "energia/inequalities.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace energia {

enum class KpMode { paper, calibrated };
enum class Branch { energy, subset };

inline std::string_view kp_mode_name(KpMode m) { return m == KpMode::paper ? "paper" : "calibrated"; }
inline std::string_view branch_name(Branch b) { return b == Branch::energy ? "EnergyBranch" : "SubsetBranch"; }

/// Union of complete fibers {y in A^t : Sigma(y) = sigma}, stored as sigma -> r_t(sigma).
class FiberSet {
public:
    FiberSet() = default;

    FiberSet(const RepFunction& base, const std::vector<BigInt>& sums) : arity_(base.arity())
    {
        for (const auto& v : sums) {
            std::uint64_t w = base.at(v);
            if (w == 0)
                fail(Errc::bad_params, "fiber over " + v.str() + " is empty");
            entries_.emplace_back(v, w);
        }
        std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].first == entries_[i - 1].first)
                fail(Errc::bad_params, "fiber listed twice");
    }

    unsigned arity() const noexcept { return arity_; }
    const std::vector<RepFunction::Entry>& entries() const noexcept { return entries_; }
    std::size_t sum_count() const noexcept { return entries_.size(); }

    BigInt cardinality() const
    {
        BigInt c = 0;
        for (const auto& e : entries_)
            c += e.second;
        return c;
    }

    IntSet sums() const
    {
        std::vector<BigInt> v;
        for (const auto& e : entries_)
            v.push_back(e.first);
        return IntSet::from_sorted(std::move(v));
    }

private:
    unsigned arity_ = 0;
    std::vector<RepFunction::Entry> entries_;
};

struct StageRecord {
    std::string name;
    BigInt cardinality;
    std::string threshold;
};

struct KpResult {
    Branch branch = Branch::energy;
    Mode mode = Mode::additive;
    KpMode kp_mode = KpMode::paper;
    unsigned s = 0;
    std::size_t set_size = 0;
    BigInt energy_full; // E_s(A)
    BigInt energy_half; // E_{s/2}(A)
    Real nu;
    Rational delta;
    Rational delta_used;
    bool nu_below_one = false;
    IntSet a_prime;
    IntSet u_prime;
    std::optional<BigInt> anchor_sum;
    std::optional<BigInt> z_sum;
    std::optional<BigInt> shift_sum;
    std::string bsg_strategy;
    std::vector<StageRecord> trace;
    CheckReport dichotomy; // branch decision at the requested delta, not a post-condition
    std::vector<CheckReport> checks;

    std::optional<BigInt> stage(std::string_view name) const
    {
        for (const auto& r : trace)
            if (r.name == name)
                return r.cardinality;
        return std::nullopt;
    }

    bool checks_hold() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.holds; });
    }
};

/// {n : r(n) >= threshold}.
inline IntSet popular_sums(const RepFunction& r, const Rational& threshold)
{
    std::vector<BigInt> out;
    for (const auto& [v, c] : r.entries())
        if (Rational(BigInt(c)) >= threshold)
            out.push_back(v);
    if (out.empty())
        fail(Errc::empty_result, "no value reaches the popularity threshold " + to_string(threshold));
    return IntSet::from_sorted(std::move(out));
}

namespace detail {

inline BigInt identity_of(Mode m) { return m == Mode::additive ? BigInt(0) : BigInt(1); }

inline CheckReport bound_report(std::string name, const BigInt& lhs, const Real& rhs, Relation rel, bool holds, std::string note = {})
{
    Digest d;
    d.add(name);
    d.add(lhs);
    auto r = make_report(std::move(name), lhs, rhs, rel, holds, d);
    r.note = std::move(note);
    return r;
}

// n^e as a real, for display next to an exact decision.
inline Real real_power(std::size_t n, const Rational& e) { return boost::multiprecision::pow(Real(n), to_real(e)); }

class Pipeline {
public:
    Pipeline(const IntSet& a, unsigned s, const Rational& delta, KpMode km, Mode mode)
        : a_(a), s_(s), t_(s / 2), n_(a.size()), km_(km), mode_(mode)
    {
        res_.mode = mode;
        res_.kp_mode = km;
        res_.s = s;
        res_.set_size = n_;
        res_.delta = delta;
        res_.delta_used = delta;
    }

    KpResult run()
    {
        rs_ = rep_function(a_, s_, mode_);
        rt_ = rep_function(a_, t_, mode_);
        e_ = rs_.sum_of_squares();
        res_.energy_full = e_;
        res_.energy_half = rt_.sum_of_squares();
        nbig_ = BigInt(n_);
        n2s_ = ipow(nbig_, 2 * s_);
        res_.nu = Real(2 * s_) - boost::multiprecision::log(to_real(e_)) / boost::multiprecision::log(Real(n_));
        res_.nu_below_one = compare_power(Rational(e_), nbig_, Rational(2 * s_ - 1)) > 0;

        if (dichotomy())
            return res_;
        stage_popular();
        stage_anchor();
        stage_y();
        stage_z();
        stage_prune();
        stage_graph();
        stage_extract();
        stage_shift();
        res_.branch = Branch::subset;
        return res_;
    }

private:
    using u128 = unsigned __int128;

    // N^nu = N^{2s} / E_s exactly, so every nu-dependent threshold stays rational.
    Rational n_pow_nu() const { return Rational(n2s_, e_); }

    void record(std::string name, const BigInt& card, std::string threshold)
    {
        res_.trace.push_back({std::move(name), card, std::move(threshold)});
    }

    [[noreturn]] void collapse(const std::string& stage, const std::string& why)
    {
        fail(Errc::stage_collapse, "stage " + stage + " is empty: " + why);
    }

    void literal_check(std::string name, const BigInt& lhs, const Real& rhs, Relation rel, bool holds)
    {
        if (km_ == KpMode::paper)
            res_.checks.push_back(bound_report(std::move(name), lhs, rhs, rel, holds));
    }

    bool dichotomy()
    {
        // E_{s/2} > N^{s - nu + delta}  <=>  E_{s/2} / E_s > N^{delta - s}
        const Rational ratio(res_.energy_half, e_);
        auto energy_side = [&](const Rational& d) { return compare_power(ratio, nbig_, d - Rational(s_)) > 0; };
        bool fires = energy_side(res_.delta);
        Real rhs = to_real(Rational(e_, n2s_)) * real_power(n_, Rational(s_) + res_.delta);
        res_.dichotomy = bound_report("energy-dichotomy", res_.energy_half, rhs, Relation::at_most, !fires,
                                      "E_{s/2} against N^{s-nu+delta}; failing means the energy branch");
        if (!fires)
            return false;
        if (km_ == KpMode::paper) {
            res_.branch = Branch::energy;
            return true;
        }
        // Smallest delta on a 1/1000 grid for which the subset hypothesis holds.
        Real eff = Real(s_) + boost::multiprecision::log(to_real(ratio)) / boost::multiprecision::log(Real(n_));
        Rational lifted(ceil_to_bigint(Real(eff * 1000)), BigInt(1000));
        if (lifted < res_.delta)
            lifted = res_.delta;
        while (energy_side(lifted))
            lifted += Rational(1, 1000);
        res_.delta_used = lifted;
        res_.checks.push_back(bound_report("energy-dichotomy-lifted", res_.energy_half,
                                           to_real(Rational(e_, n2s_)) * real_power(n_, Rational(s_) + lifted), Relation::at_most,
                                           true, "delta raised to " + to_string(lifted)));
        return false;
    }

    void stage_popular()
    {
        const Rational& delta = res_.delta_used;
        std::vector<BigInt> chosen;
        std::string threshold;
        if (km_ == KpMode::paper) {
            Rational th(e_, 2 * ipow(nbig_, s_));
            for (const auto& [v, c] : rs_.entries())
                if (Rational(BigInt(c)) >= th)
                    chosen.push_back(v);
            threshold = "r_s >= " + to_string(th);
        } else {
            std::vector<std::size_t> order(rs_.support_size());
            std::iota(order.begin(), order.end(), 0);
            const auto& en = rs_.entries();
            std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return en[x].second > en[y].second; });
            u128 mass = 0;
            for (auto i : order) {
                if (2 * BigInt(RepFunction::from_u128(mass)) >= e_)
                    break;
                mass += static_cast<u128>(en[i].second) * en[i].second;
                chosen.push_back(en[i].first);
            }
            std::sort(chosen.begin(), chosen.end());
            threshold = "top half of energy mass";
        }
        if (chosen.empty())
            collapse("S", threshold);
        s_set_ = IntSet::from_sorted(std::move(chosen));
        BigInt g = 0;
        for (const auto& v : s_set_)
            g += rs_.at(v);
        record("S", s_set_.size(), threshold);
        record("G", g, "tuples with sum in S");
        literal_check("popular-mass", g, real_power(n_, Rational(s_) - delta) / 2, Relation::at_least,
                    compare_power(Rational(2 * g), nbig_, Rational(s_) - delta) > 0);
        literal_check("popular-count", BigInt(s_set_.size()), to_real(4 * n_pow_nu()), Relation::at_most,
                    Rational(BigInt(s_set_.size())) <= 4 * n_pow_nu());
    }

    void stage_anchor()
    {
        const auto& en = rt_.entries();
        const std::size_t m = en.size();
        mem_.assign(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                mem_[i][j] = s_set_.contains(combine(mode_, en[i].first, en[j].first));
        // ov[i][x] = |R_G(y) cap R_G(x)| for Sigma(y) = T[i], Sigma(x) = T[x]
        ov_.assign(m, std::vector<u128>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t x = i; x < m; ++x) {
                u128 acc = 0;
                for (std::size_t j = 0; j < m; ++j)
                    if (mem_[i][j] && mem_[x][j])
                        acc += en[j].second;
                ov_[i][x] = ov_[x][i] = acc;
            }
        u128 best = 0;
        std::size_t best_x = m;
        for (std::size_t x = 0; x < m; ++x) {
            u128 score = 0;
            for (std::size_t i = 0; i < m; ++i)
                score += static_cast<u128>(en[i].second) * ov_[i][x];
            if (best_x == m || score > best) {
                best = score;
                best_x = x;
            }
        }
        if (best == 0)
            collapse("G1", "no anchor has a non-empty neighbourhood");
        x_ = best_x;
        res_.anchor_sum = en[x_].first;
        g1_ = RepFunction::from_u128(best);
        record("G1", g1_, "anchor sum " + en[x_].first.str());
        literal_check("anchor-mass", g1_, real_power(n_, Rational(s_) - 2 * res_.delta_used) / 4, Relation::at_least,
                    compare_power(Rational(4 * g1_), nbig_, Rational(s_) - 2 * res_.delta_used) > 0);
        std::vector<BigInt> v;
        BigInt rg = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (mem_[x_][j]) {
                v.push_back(en[j].first);
                rg += en[j].second;
            }
        v_set_ = IntSet::from_sorted(std::move(v));
        record("R_G(x)", rg, "tuples completing the anchor");
    }

    void stage_y()
    {
        const auto& en = rt_.entries();
        const std::size_t m = en.size();
        const Rational exp_y = Rational(t_) - 2 * res_.delta_used;
        std::string threshold;
        y_.assign(m, 0);
        if (km_ == KpMode::paper) {
            for (std::size_t i = 0; i < m; ++i)
                y_[i] = ov_[i][x_] > 0 && compare_power(Rational(8 * RepFunction::from_u128(ov_[i][x_])), nbig_, exp_y) >= 0;
            threshold = "overlap >= N^(" + to_string(exp_y) + ")/8";
        } else {
            std::vector<std::size_t> order(m);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ov_[a][x_] > ov_[b][x_]; });
            // Half of the tuples that overlap the anchor at all, best overlaps first.
            std::uint64_t reach = 0, mass = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (ov_[i][x_] > 0)
                    reach += en[i].second;
            for (auto i : order) {
                if (ov_[i][x_] == 0 || 2 * mass >= reach)
                    break;
                mass += en[i].second;
                y_[i] = 1;
            }
            threshold = "top half of overlapping tuples";
        }
        BigInt card = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (y_[i])
                card += en[i].second;
        if (card == 0)
            collapse("Y", threshold);
        y_card_ = card;
        record("Y", card, threshold);
        literal_check("y-size", card, real_power(n_, exp_y) / 8, Relation::at_least,
                    compare_power(Rational(8 * card), nbig_, exp_y) > 0);
    }

    void stage_z()
    {
        const auto& en = rt_.entries();
        const std::size_t m = en.size();
        BigInt best = -1;
        std::size_t best_z = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (!mem_[x_][j])
                continue;
            BigInt c = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (y_[i] && mem_[i][j])
                    c += en[i].second;
            if (c > best) {
                best = c;
                best_z = j;
            }
        }
        if (best_z == m || best <= 0)
            collapse("Y1", "no completion of the anchor meets Y");
        res_.z_sum = en[best_z].first;
        y1_.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            y1_[i] = y_[i] && mem_[i][best_z];
        y1_card_ = best;
        record("Y1", best, "fixed z with sum " + en[best_z].first.str());
        const Rational exp_y = Rational(t_) - 2 * res_.delta_used;
        literal_check("y1-size", best, real_power(n_, exp_y) / 8, Relation::at_least,
                    compare_power(Rational(8 * best), nbig_, exp_y) > 0);
    }

    void stage_prune()
    {
        const auto& en = rt_.entries();
        const std::size_t m = en.size();
        std::size_t sigma_y1 = 0;
        for (std::size_t i = 0; i < m; ++i)
            sigma_y1 += y1_[i];
        // r(Y1; n) > |Y1| / (2 |Sigma(Y1)|), identical in both modes
        std::vector<BigInt> u;
        BigInt y2 = 0;
        y2_.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (y1_[i] && BigInt(en[i].second) * 2 * sigma_y1 > y1_card_) {
                y2_[i] = 1;
                y2 += en[i].second;
                u.push_back(en[i].first);
            }
        if (u.empty())
            collapse("Y2", "no popular sum inside Y1");
        u_set_ = IntSet::from_sorted(std::move(u));
        record("Y2", y2, "r(Y1;n) > |Y1|/(2|Sigma(Y1)|) with |Sigma(Y1)| = " + std::to_string(sigma_y1));
        record("U", u_set_.size(), "Sigma(Y2)");
        record("V", v_set_.size(), "Sigma(R_G(x))");
        res_.checks.push_back(bound_report("prune-keeps-half", 2 * y2, to_real(y1_card_), Relation::at_least, 2 * y2 >= y1_card_));
        bool monotone = y2 <= y1_card_ && y1_card_ <= y_card_ && u_set_.size() <= sigma_y1;
        res_.checks.push_back(bound_report("prune-monotone", y2, to_real(y_card_), Relation::at_most, monotone,
                                           "|Y2| <= |Y1| <= |Y| and Sigma(Y2) within Sigma(Y1)"));
        const Rational e5 = -5 * res_.delta_used;
        literal_check("u-size", BigInt(u_set_.size()), to_real(n_pow_nu() / 256) * real_power(n_, e5), Relation::at_least,
                    compare_power(Rational(BigInt(256 * u_set_.size())) / n_pow_nu(), nbig_, e5) > 0);
    }

    void stage_graph()
    {
        std::map<BigInt, std::uint64_t> r;
        for (const auto& u : u_set_)
            for (const auto& v : v_set_)
                ++r[combine(mode_, u, v)];
        std::vector<std::pair<BigInt, std::uint64_t>> reps(r.begin(), r.end());
        const Rational m_val = 4 * n_pow_nu();
        const Rational d20 = -20 * res_.delta_used;
        std::vector<std::size_t> chosen;
        std::string threshold;
        if (km_ == KpMode::paper) {
            // r >= alpha M with alpha = 2^-37 N^{-20 delta}
            for (std::size_t i = 0; i < reps.size(); ++i) {
                Rational lhs = Rational(BigInt(reps[i].second)) * ipow(BigInt(2), 37) / m_val;
                if (compare_power(lhs, nbig_, d20) >= 0)
                    chosen.push_back(i);
            }
            threshold = "r(U,V;n) >= alpha M";
        } else {
            std::vector<std::size_t> order(reps.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return reps[a].second > reps[b].second; });
            const BigInt total = BigInt(u_set_.size()) * v_set_.size();
            BigInt mass = 0;
            for (auto i : order) {
                if (2 * mass >= total)
                    break;
                mass += reps[i].second;
                chosen.push_back(i);
            }
            threshold = "top half of r(U,V) mass";
        }
        // Keep at most M sums, most represented first.
        BigInt cap = floor_of(m_val);
        if (BigInt(chosen.size()) > cap) {
            std::stable_sort(chosen.begin(), chosen.end(), [&](auto a, auto b) { return reps[a].second > reps[b].second; });
            chosen.resize(cap.convert_to<std::size_t>());
            threshold += ", truncated to M";
        }
        if (chosen.empty())
            collapse("S'", threshold);
        std::vector<BigInt> filt;
        BigInt edges = 0;
        for (auto i : chosen) {
            filt.push_back(reps[i].first);
            edges += reps[i].second;
        }
        std::sort(filt.begin(), filt.end());
        filter_ = IntSet::from_sorted(std::move(filt));
        record("S'", filter_.size(), threshold);
        record("graph", edges, "pairs of U x V landing in S'");
        Rational alpha_m2 = m_val * m_val / ipow(BigInt(2), 37);
        literal_check("graph-density", edges, to_real(alpha_m2) * real_power(n_, d20), Relation::at_least,
                    compare_power(Rational(edges) / alpha_m2, nbig_, d20) >= 0);
    }

    void stage_extract()
    {
        auto b = bsg_extract(u_set_, v_set_, filter_, mode_);
        res_.checks.push_back(b.doubling);
        res_.checks.push_back(b.size);
        res_.bsg_strategy = b.strategy;
        res_.u_prime = b.a_prime;
        record("U'", b.a_prime.size(), "extracted inside U");
        // |U'| >= 2^-20 alpha^4 M = 2^-168 N^{-80 delta} M
        const Rational d80 = -80 * res_.delta_used;
        Rational factor = 4 * n_pow_nu() / ipow(BigInt(2), 168);
        literal_check("u-prime-size", BigInt(b.a_prime.size()), to_real(factor) * real_power(n_, d80), Relation::at_least,
                    compare_power(Rational(BigInt(b.a_prime.size())) / factor, nbig_, d80) >= 0);
        BigInt y3 = 0;
        for (const auto& v : b.a_prime)
            y3 += rt_.at(v);
        y3_ = y3;
        record("Y3", y3, "fibers of Y1 over U'");
        const Rational e3 = Rational(t_) - 82 * res_.delta_used;
        literal_check("y3-size", y3, real_power(n_, e3) / to_real(ipow(BigInt(2), 172)), Relation::at_least,
                    compare_power(Rational(y3 * ipow(BigInt(2), 172)), nbig_, e3) >= 0);
    }

    void stage_shift()
    {
        const IntSet& up = res_.u_prime;
        std::vector<BigInt> shifts;
        if (t_ == 1)
            shifts.push_back(identity_of(mode_));
        else {
            auto fixed = rep_function(a_, t_ - 1, mode_);
            for (const auto& [v, c] : fixed.entries())
                shifts.push_back(v);
        }
        std::size_t best = 0;
        std::optional<BigInt> best_w;
        for (const auto& w : shifts) {
            std::size_t c = 0;
            for (const auto& a : a_)
                c += up.contains(combine(mode_, w, a));
            if (!best_w || c > best) {
                best = c;
                best_w = w;
            }
        }
        std::vector<BigInt> ap;
        for (const auto& a : a_)
            if (up.contains(combine(mode_, *best_w, a)))
                ap.push_back(a);
        if (ap.empty())
            collapse("A'", "no shift lands in U'");
        res_.shift_sum = best_w;
        res_.a_prime = IntSet::from_sorted(std::move(ap));
        record("A'", res_.a_prime.size(), "best shift " + best_w->str());

        BigInt scaled = BigInt(res_.a_prime.size()) * ipow(nbig_, t_ - 1);
        res_.checks.push_back(bound_report("shift-pigeonhole", scaled, to_real(y3_), Relation::at_least, scaled >= y3_,
                                           "|A'| N^{t-1} >= |Y3|"));
        // A' + A' shifted by twice the fixed part lies in U' + U'.
        std::vector<BigInt> lifted;
        BigInt w2 = combine(mode_, *best_w, *best_w);
        for (const auto& a : res_.a_prime)
            for (const auto& b : res_.a_prime)
                lifted.push_back(combine(mode_, combine(mode_, a, b), w2));
        std::vector<BigInt> uu;
        for (const auto& a : up)
            for (const auto& b : up)
                uu.push_back(combine(mode_, a, b));
        IntSet lifted_set(std::move(lifted)), uu_set(std::move(uu));
        res_.checks.push_back(bound_report("shift-containment", BigInt(lifted_set.size()), Real(uu_set.size()), Relation::at_most,
                                           lifted_set.subset_of(uu_set), "shifted A'+A' inside U'+U'"));
        // |A'| >= 2^-172 N^{1 - 82 delta}
        const Rational e1 = 1 - 82 * res_.delta_used;
        literal_check("a-prime-size", BigInt(res_.a_prime.size()), real_power(n_, e1) / to_real(ipow(BigInt(2), 172)), Relation::at_least,
                    compare_power(Rational(BigInt(res_.a_prime.size()) * ipow(BigInt(2), 172)), nbig_, e1) >= 0);
    }

    const IntSet& a_;
    unsigned s_, t_;
    std::size_t n_;
    KpMode km_;
    Mode mode_;
    KpResult res_;
    RepFunction rs_, rt_;
    BigInt e_, nbig_, n2s_, g1_, y_card_, y1_card_, y3_;
    IntSet s_set_, v_set_, u_set_, filter_;
    std::vector<std::vector<char>> mem_;
    std::vector<std::vector<u128>> ov_;
    std::vector<char> y_, y1_, y2_;
    std::size_t x_ = 0;
};

} // namespace detail

/// The structured-subset pipeline for any even s >= 2 and either mode; products run on exact product fibers.
inline KpResult structured_subset(const IntSet& a, unsigned s, const Rational& delta, KpMode km, Mode mode)
{
    if (s < 2 || s % 2 != 0)
        fail(Errc::bad_params, "pipeline arity must be even and at least 2");
    if (a.size() < 2)
        fail(Errc::bad_params, "pipeline needs |A| >= 2");
    if (delta <= 0)
        fail(Errc::bad_params, "delta must be positive");
    if (mode == Mode::multiplicative && a.front() <= 0)
        fail(Errc::bad_params, "product pipeline needs positive elements");
    return detail::Pipeline(a, s, delta, km, mode).run();
}

inline KpResult kp_pipeline(const IntSet& a, unsigned s, const Rational& delta, KpMode km)
{
    if (s < 4 || s % 2 != 0)
        fail(Errc::bad_params, "s must be even and at least 4");
    return structured_subset(a, s, delta, km, Mode::additive);
}

/// |mA' - nA'| against 2^{506(m+n)+2} N^{nu + 240(m+n) delta} and, optionally, factor * |A'|.
inline std::vector<CheckReport> kp_verify(const KpResult& res, const IntSet& a, const std::vector<std::pair<unsigned, unsigned>>& pairs,
                                          std::optional<Rational> practical = std::nullopt)
{
    if (res.branch != Branch::subset)
        fail(Errc::wrong_branch, "verification needs a subset-branch result");
    if (!res.a_prime.subset_of(a))
        fail(Errc::bad_params, "A' is not inside A");
    std::vector<CheckReport> out;
    const BigInt n = a.size();
    const BigInt n2s = ipow(n, 2 * res.s);
    for (auto [m, k] : pairs) {
        if (m + k == 0)
            fail(Errc::zero_arity, "pair (0,0)");
        BigInt size = res.mode == Mode::additive ? BigInt(iterated_sumset(res.a_prime, m, k).size())
                                                 : BigInt(iterated_product_set(res.a_prime, m, k).size());
        const unsigned mk = m + k;
        BigInt two = ipow(BigInt(2), 506 * mk + 2);
        Rational e = 240 * mk * res.delta_used;
        bool holds = compare_power(Rational(size * res.energy_full) / Rational(two * n2s), n, e) <= 0;
        Real log2_rhs = Real(506 * mk + 2) + (res.nu + to_real(e)) * log2_real(Real(a.size()));
        Real rhs = boost::multiprecision::exp2(log2_rhs);
        std::string tag = "(" + std::to_string(m) + "," + std::to_string(k) + ")";
        out.push_back(detail::bound_report("kp-sumset-bound " + tag, size, rhs, Relation::at_most, holds));
        if (practical) {
            Rational lim = *practical * Rational(BigInt(res.a_prime.size()));
            out.push_back(detail::bound_report("kp-practical " + tag, size, to_real(lim), Relation::at_most, Rational(size) <= lim));
        }
    }
    return out;
}

} // namespace energia
