#pragma once

#include "energia/energy.hpp"
#include "energia/error.hpp"
#include "energia/inequalities.hpp"
#include "energia/kp.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace energia {

struct SignSplit {
    IntSet pos, neg, zero;
};

inline SignSplit sign_split(const IntSet& a)
{
    std::vector<BigInt> p, n, z;
    for (const auto& x : a)
        (x > 0 ? p : x < 0 ? n : z).push_back(x);
    return {IntSet::from_sorted(std::move(p)), IntSet::from_sorted(std::move(n)), IntSet::from_sorted(std::move(z))};
}

// ---------------------------------------------------------------------------
// Iteration budget

/// floor(2(log2 n + 2) + n^c / (Cc (2^c - 1)))
inline std::uint64_t com2_budget(std::uint64_t n, const Rational& c, const Rational& cc)
{
    if (n < 1)
        fail(Errc::bad_params, "com2_budget needs n >= 1");
    if (c <= 0 || c >= 1)
        fail(Errc::bad_params, "com2_budget needs c in (0,1)");
    if (cc <= 0)
        fail(Errc::bad_params, "com2_budget needs Cc > 0");
    using boost::multiprecision::pow;
    Real rc = to_real(c);
    Real value = 2 * (log2_real(Real(n)) + 2) + pow(Real(n), rc) / (to_real(cc) * (pow(Real(2), rc) - 1));
    BigInt fl = floor_to_bigint(value);
    // a value sitting on an integer cannot be floored reliably unless it is one exactly
    Real frac = value - Real(fl);
    if (frac != 0 && (frac < comparison_margin() * value || 1 - frac < comparison_margin() * value))
        fail(Errc::precision_exhausted, "com2_budget lands on an integer boundary");
    return fl.convert_to<std::uint64_t>();
}

/// Given the current size and the minimum allowed deletion, how many elements to delete.
using Adversary = std::function<std::uint64_t(std::uint64_t current, std::uint64_t minimum)>;

inline Adversary minimal_adversary()
{
    return [](std::uint64_t, std::uint64_t minimum) { return minimum; };
}

inline Adversary total_adversary()
{
    return [](std::uint64_t current, std::uint64_t) { return current; };
}

/// Smallest deletion the extraction guarantee allows: ceil(Cc * m^{1-c}).
inline std::uint64_t com2_minimum(std::uint64_t m, const Rational& c, const Rational& cc)
{
    return ceil_scaled_power(cc, BigInt(m), 1 - c).convert_to<std::uint64_t>();
}

/// Steps until at most one element is left, deleting per the adversary.
inline std::uint64_t com2_simulate(std::uint64_t n, const Rational& c, const Rational& cc, const Adversary& adversary)
{
    if (n < 1 || c <= 0 || c >= 1 || cc <= 0)
        fail(Errc::bad_params, "com2_simulate needs n >= 1, c in (0,1), Cc > 0");
    std::uint64_t cur = n, steps = 0;
    while (cur > 1) {
        std::uint64_t minimum = std::min(cur, com2_minimum(cur, c, cc));
        std::uint64_t del = adversary(cur, minimum);
        if (del < minimum || del > cur)
            fail(Errc::bad_adversary, "step " + std::to_string(steps + 1) + " deletes " + std::to_string(del) + " of " +
                                          std::to_string(cur) + ", minimum " + std::to_string(minimum));
        cur -= del;
        ++steps;
    }
    return steps;
}

// ---------------------------------------------------------------------------
// Energy certificates

/// Energy of x at the given arity against |x|^exponent, decided exactly.
inline CheckReport energy_bound(std::string name, const IntSet& x, unsigned arity, Mode mode, const Rational& exponent, bool strict)
{
    Digest d;
    d.add(name);
    d.add(digest_of(x));
    d.add(to_string(exponent));
    if (x.empty()) {
        auto r = detail::make_report(std::move(name), BigInt(0), Real(0), Relation::at_most, true, d);
        r.note = "empty set";
        return r;
    }
    BigInt count = energy_count(x, arity, mode);
    int cmp = compare_power(Rational(count), BigInt(x.size()), exponent);
    bool holds = strict ? cmp < 0 : cmp <= 0;
    Real rhs = boost::multiprecision::pow(Real(x.size()), to_real(exponent));
    auto r = detail::make_report(std::move(name), count, rhs, Relation::at_most, holds, d);
    r.note = std::string(strict ? "strict, " : "") + "exponent " + to_string(exponent);
    return r;
}

// ---------------------------------------------------------------------------
// Configuration

inline constexpr unsigned max_decompose_arity = 16;

struct DecomposeConfig {
    Rational k{1};
    unsigned s = 2;  // multiplicative arity of the stopping rule
    unsigned q = 4;  // additive arity q, pieces measured by E_{q/2}
    unsigned s1 = 2; // eric: additive arity of the stopping rule
    unsigned s2 = 2; // eric: multiplicative arity of the pieces
    KpMode mode = KpMode::calibrated;
    std::string extractor = "auto"; // kp-multiplicative (the pipeline, in the loop's own mode) | exhaustive | auto
    Rational delta{1, 20};
    Rational c{1, 2}; // guaranteed extraction: |D| >= Cc |A_i|^{1-c}
    Rational cc{1};
    std::size_t exhaustive_limit = 16;
    std::size_t small_set = 4; // residuals this small stop the eric loop
    std::optional<Rational> stop_exponent;
    std::optional<Rational> piece_exponent;
    std::optional<Rational> union_exponent;
};

inline bool is_extractor(std::string_view e) { return e == "auto" || e == "kp-multiplicative" || e == "exhaustive"; }

struct ExtractionRecord {
    std::size_t iteration = 0;
    IntSet piece;
    std::string strategy;
    std::string trigger; // "literal" or "witness"
    CheckReport trigger_report;
    CheckReport certificate;
};

struct Decomposition {
    IntSet b, c;
    std::vector<ExtractionRecord> trace;
    std::uint64_t budget = 0;
    std::size_t iterations_used = 0;
    bool failed = false;
    std::string failure;
    CheckReport b_report, c_report;
    std::vector<CheckReport> checks;

    bool certified() const
    {
        return !failed && b_report.holds && c_report.holds &&
               std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.holds; });
    }
};

namespace detail {

inline void check_exponent(const char* what, const Rational& e, unsigned arity)
{
    if (e <= 0 || e >= 2 * arity)
        fail(Errc::bad_params, std::string(what) + " exponent " + to_string(e) + " outside (0, " + std::to_string(2 * arity) + ")");
}

inline void check_arity(const char* what, unsigned a)
{
    if (a < 2 || a % 2 != 0)
        fail(Errc::bad_params, std::string(what) + " must be even and at least 2");
    if (a > max_decompose_arity)
        fail(Errc::parameter_too_large, std::string(what) + " = " + std::to_string(a) + " is beyond what can be executed");
}

inline void check_common(const DecomposeConfig& cfg)
{
    if (cfg.k < 1)
        fail(Errc::bad_params, "k must be at least 1");
    if (!is_extractor(cfg.extractor))
        fail(Errc::bad_params, "unknown extractor " + cfg.extractor);
    if (cfg.delta <= 0)
        fail(Errc::bad_params, "delta must be positive");
    if (cfg.c <= 0 || cfg.c >= 1 || cfg.cc <= 0)
        fail(Errc::bad_params, "extraction fraction needs c in (0,1) and Cc > 0");
}

// One side of the loop: which energy stops it, which energy certifies a piece.
struct LoopSpec {
    Mode stop_mode;
    unsigned stop_arity;
    Rational stop_exponent;
    bool stop_strict; // stop when energy < bound (true) or <= bound (false)
    Mode piece_mode;
    unsigned piece_arity;
    Rational piece_exponent;
    bool piece_strict;
    const char* stop_name;
    const char* piece_name;
};

struct LoopOutcome {
    IntSet extracted, residual;
    std::vector<ExtractionRecord> trace;
    bool failed = false;
    std::string failure;
};

// x with x.d3 = d1.d2 for some d1, d2, d3 in D
inline bool in_span(const BigInt& x, const IntSet& d, const std::set<BigInt>& pairs, Mode mode)
{
    for (const auto& d3 : d)
        if (pairs.count(combine(mode, x, d3)))
            return true;
    return false;
}

class Loop {
public:
    Loop(const DecomposeConfig& cfg, LoopSpec spec) : cfg_(cfg), spec_(std::move(spec)) {}

    LoopOutcome run(const IntSet& a)
    {
        LoopOutcome out;
        IntSet cur = a;
        std::vector<BigInt> taken;
        for (std::size_t iter = 1; !cur.empty(); ++iter) {
            if (small_stop(cur))
                break;
            CheckReport stop = stop_report(cur);
            std::optional<IntSet> witness;
            std::string trigger;
            if (!stop.holds) {
                trigger = "literal";
            } else if (cfg_.mode == KpMode::calibrated && cur.size() >= 2) {
                witness = pipeline_subset(cur);
                if (!witness || witness->size() < 2)
                    break;
                CheckReport wr = energy_bound(std::string(spec_.stop_name) + "-witness", *witness, spec_.stop_arity, spec_.stop_mode,
                                              spec_.stop_exponent, spec_.stop_strict);
                if (wr.holds)
                    break;
                stop = wr;
                trigger = "witness";
            } else {
                break;
            }

            const std::uint64_t need = com2_minimum(cur.size(), cfg_.c, cfg_.cc);
            std::optional<ExtractionRecord> rec = extract(cur, witness, need);
            if (!rec) {
                out.failed = true;
                out.failure = "ExtractorFailed at iteration " + std::to_string(iter) + " on " + std::to_string(cur.size()) + " elements";
                break;
            }
            rec->iteration = iter;
            rec->trigger = trigger;
            rec->trigger_report = stop;
            for (const auto& x : rec->piece)
                taken.push_back(x);
            cur = cur.minus(rec->piece);
            out.trace.push_back(std::move(*rec));
        }
        out.extracted = IntSet(std::move(taken));
        out.residual = cur;
        return out;
    }

private:
    bool small_stop(const IntSet& cur) const { return spec_.stop_mode == Mode::additive && cur.size() <= cfg_.small_set; }

    CheckReport stop_report(const IntSet& cur) const
    {
        return energy_bound(spec_.stop_name, cur, spec_.stop_arity, spec_.stop_mode, spec_.stop_exponent, spec_.stop_strict);
    }

    CheckReport piece_report(const IntSet& d) const
    {
        return energy_bound(spec_.piece_name, d, spec_.piece_arity, spec_.piece_mode, spec_.piece_exponent, spec_.piece_strict);
    }

    std::optional<IntSet> pipeline_subset(const IntSet& cur) const
    {
        try {
            auto r = structured_subset(cur, spec_.stop_arity, cfg_.delta, cfg_.mode, spec_.stop_mode);
            if (r.branch == Branch::subset)
                return r.a_prime;
        } catch (const Error& e) {
            if (e.code() != Errc::stage_collapse && e.code() != Errc::extractor_failed && e.code() != Errc::empty_graph)
                throw;
        }
        return std::nullopt;
    }

    // Grow d by residual elements in its span while the piece certificate keeps holding.
    IntSet close(IntSet d, const IntSet& cur) const
    {
        for (bool grew = true; grew;) {
            grew = false;
            std::set<BigInt> pairs;
            for (const auto& x : d)
                for (const auto& y : d)
                    pairs.insert(combine(spec_.stop_mode, x, y));
            for (const auto& x : cur.minus(d)) {
                if (!in_span(x, d, pairs, spec_.stop_mode))
                    continue;
                IntSet bigger = d.union_with(IntSet::from_sorted({x}));
                if (piece_report(bigger).holds) {
                    d = std::move(bigger);
                    grew = true;
                    break;
                }
            }
        }
        return d;
    }

    std::optional<ExtractionRecord> try_piece(IntSet d, const IntSet& cur, std::uint64_t need, std::string strategy) const
    {
        if (cfg_.mode == KpMode::calibrated)
            d = close(std::move(d), cur);
        if (d.size() < need)
            return std::nullopt;
        CheckReport cert = piece_report(d);
        if (!cert.holds)
            return std::nullopt;
        ExtractionRecord r;
        r.piece = std::move(d);
        r.strategy = std::move(strategy);
        r.certificate = std::move(cert);
        return r;
    }

    std::optional<ExtractionRecord> extract(const IntSet& cur, const std::optional<IntSet>& witness, std::uint64_t need) const
    {
        const bool kp = cfg_.extractor != "exhaustive";
        const bool ex = cfg_.extractor != "kp-multiplicative";
        if (kp) {
            auto w = witness ? witness : pipeline_subset(cur);
            if (w)
                if (auto r = try_piece(*w, cur, need, spec_.stop_mode == Mode::multiplicative ? "kp-multiplicative" : "kp-additive"))
                    return r;
        }
        if (ex && cur.size() <= cfg_.exhaustive_limit)
            if (auto r = exhaustive(cur, need))
                return r;
        return std::nullopt;
    }

    // Size-`need` subset of least piece energy, first in lexicographic index order on ties.
    std::optional<ExtractionRecord> exhaustive(const IntSet& cur, std::uint64_t need) const
    {
        const std::size_t n = cur.size();
        const std::size_t m = std::max<std::uint64_t>(need, 1);
        if (m > n)
            return std::nullopt;
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i)
            idx[i] = i;
        std::optional<BigInt> best;
        std::vector<std::size_t> best_idx;
        for (;;) {
            std::vector<BigInt> v;
            for (auto i : idx)
                v.push_back(cur[i]);
            BigInt e = energy_count(IntSet::from_sorted(std::move(v)), spec_.piece_arity, spec_.piece_mode);
            if (!best || e < *best) {
                best = e;
                best_idx = idx;
            }
            std::size_t pos = m;
            while (pos > 0 && idx[pos - 1] == n - m + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < m; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        std::vector<BigInt> v;
        for (auto i : best_idx)
            v.push_back(cur[i]);
        IntSet d = IntSet::from_sorted(std::move(v));
        CheckReport cert = piece_report(d);
        if (!cert.holds)
            return std::nullopt;
        ExtractionRecord r;
        r.piece = std::move(d);
        r.strategy = "exhaustive";
        r.certificate = std::move(cert);
        return r;
    }

    const DecomposeConfig& cfg_;
    LoopSpec spec_;
};

inline IntSet negate(const IntSet& a) { return affine_image(a, BigInt(-1), BigInt(0)); }

} // namespace detail

struct DichotomySmall {
    CheckReport report;
};

struct DichotomyStructured {
    IntSet b;
    CheckReport energy_report;
    CheckReport product_report;
};

using DichotomyResult = std::variant<DichotomySmall, DichotomyStructured>;

/// Either M_s(A) < |A|^{2s-k}, or a subset B from the product pipeline with |B^(m)| against |A|^{3k}.
inline DichotomyResult mult_dichotomy(const IntSet& a, const Rational& k, unsigned s, unsigned m, KpMode mode,
                                      const Rational& delta = Rational(1, 20))
{
    if (a.empty())
        fail(Errc::empty_set, "mult_dichotomy of the empty set");
    if (a.front() <= 0)
        fail(Errc::bad_params, "mult_dichotomy needs positive integers");
    detail::check_arity("s", s);
    if (m < 1)
        fail(Errc::bad_params, "m must be at least 1");
    if (k <= 0 || k >= 2 * s)
        fail(Errc::bad_params, "k must lie in (0, 2s)");
    CheckReport rep = energy_bound("mult-energy", a, s, Mode::multiplicative, Rational(2 * s) - k, true);
    if (rep.holds)
        return DichotomySmall{rep};
    IntSet b = a;
    if (a.size() > 1) {
        auto r = structured_subset(a, s, delta, mode, Mode::multiplicative);
        if (r.branch != Branch::subset)
            fail(Errc::stage_collapse, "stage dichotomy: energy branch at delta " + to_string(delta));
        b = r.a_prime;
    }
    auto prod = iterated_product_set(b, m, 0);
    Real rhs = boost::multiprecision::pow(Real(a.size()), to_real(3 * k));
    Digest d;
    d.add(digest_of(b));
    bool holds = compare_power(Rational(BigInt(prod.size())), BigInt(a.size()), 3 * k) <= 0;
    auto pr = detail::make_report("product-set", BigInt(prod.size()), rhs, Relation::at_most, holds, d);
    pr.note = "m = " + std::to_string(m) + ", constant 1";
    return DichotomyStructured{b, rep, pr};
}

namespace detail {

inline Decomposition finish(const IntSet& a, IntSet b, IntSet c, std::vector<ExtractionRecord> trace, std::uint64_t budget, bool failed,
                            std::string failure, CheckReport b_rep, CheckReport c_rep)
{
    Decomposition out;
    out.b = std::move(b);
    out.c = std::move(c);
    out.trace = std::move(trace);
    out.budget = budget;
    out.iterations_used = out.trace.size();
    out.failed = failed;
    out.failure = std::move(failure);
    out.b_report = std::move(b_rep);
    out.c_report = std::move(c_rep);

    Digest d;
    d.add(digest_of(a));
    bool partition = out.b.intersect(out.c).empty() && out.b.union_with(out.c) == a;
    if (!partition)
        fail(Errc::bad_params, "internal: decomposition is not a partition of the input");
    out.checks.push_back(make_report("partition", BigInt(out.b.size() + out.c.size()), Real(a.size()), Relation::at_most, partition, d));
    out.checks.push_back(make_report("iteration-budget", BigInt(out.iterations_used), Real(budget), Relation::at_most,
                                     out.iterations_used <= budget, d));
    return out;
}

struct SideRun {
    LoopOutcome pos, neg;
    std::uint64_t budget = 0;
};

inline SideRun run_sides(const SignSplit& parts, const DecomposeConfig& cfg, const LoopSpec& spec)
{
    SideRun r;
    Loop loop(cfg, spec);
    if (!parts.pos.empty()) {
        r.pos = loop.run(parts.pos);
        r.budget += com2_budget(parts.pos.size(), cfg.c, cfg.cc);
    }
    if (!parts.neg.empty()) {
        auto o = loop.run(negate(parts.neg));
        o.extracted = negate(o.extracted);
        o.residual = negate(o.residual);
        for (auto& t : o.trace)
            t.piece = negate(t.piece);
        r.neg = std::move(o);
        r.budget += com2_budget(parts.neg.size(), cfg.c, cfg.cc);
    }
    return r;
}

inline std::vector<ExtractionRecord> merged_trace(SideRun& r)
{
    std::vector<ExtractionRecord> t = std::move(r.pos.trace);
    for (auto& x : r.neg.trace)
        t.push_back(std::move(x));
    return t;
}

inline std::string merged_failure(const SideRun& r)
{
    std::string f = r.pos.failure;
    if (!r.neg.failure.empty())
        f += (f.empty() ? "" : "; ") + std::string("negative part: ") + r.neg.failure;
    return f;
}

} // namespace detail

/// Greedy split into B (small additive energy) and C (small multiplicative energy).
inline Decomposition decompose(const IntSet& a, const DecomposeConfig& cfg)
{
    if (a.empty())
        fail(Errc::empty_set, "decompose of the empty set");
    detail::check_common(cfg);
    detail::check_arity("s", cfg.s);
    detail::check_arity("q", cfg.q);
    Rational stop = cfg.stop_exponent.value_or(Rational(2 * cfg.s) - cfg.k);
    Rational piece = cfg.piece_exponent.value_or(Rational(cfg.q) - Rational(cfg.q, 4));
    Rational uni = cfg.union_exponent.value_or(Rational(cfg.q) - Rational(cfg.q, 5));
    detail::check_exponent("stopping", stop, cfg.s);
    detail::check_exponent("piece", piece, cfg.q / 2);
    detail::check_exponent("union", uni, cfg.q / 2);

    detail::LoopSpec spec{Mode::multiplicative, cfg.s, stop, false, Mode::additive, cfg.q / 2, piece, false, "mult-stop", "piece-add-energy"};
    auto parts = sign_split(a);
    auto run = detail::run_sides(parts, cfg, spec);
    // 0 collides with every product, so it sits on the additive side.
    IntSet b = run.pos.extracted.union_with(run.neg.extracted).union_with(parts.zero);
    IntSet c = run.pos.residual.union_with(run.neg.residual);
    auto b_rep = energy_bound("b-add-energy", b, cfg.q / 2, Mode::additive, uni, false);
    auto c_rep = energy_bound("c-mult-energy", c, cfg.s, Mode::multiplicative, stop, false);
    bool failed = run.pos.failed || run.neg.failed;
    return detail::finish(a, std::move(b), std::move(c), detail::merged_trace(run), run.budget, failed, detail::merged_failure(run),
                          std::move(b_rep), std::move(c_rep));
}

/// Dual loop: stop on small E_{s1}, extract pieces with M_{s2}(D) < |D|^{2 s2 - k}.
inline Decomposition decompose_eric(const IntSet& a, const DecomposeConfig& cfg)
{
    if (a.empty())
        fail(Errc::empty_set, "decompose_eric of the empty set");
    detail::check_common(cfg);
    detail::check_arity("s1", cfg.s1);
    detail::check_arity("s2", cfg.s2);
    Rational stop = cfg.stop_exponent.value_or(Rational(2 * cfg.s1) - cfg.k);
    Rational piece = cfg.piece_exponent.value_or(Rational(2 * cfg.s2) - cfg.k);
    Rational uni = cfg.union_exponent.value_or(piece);
    detail::check_exponent("stopping", stop, cfg.s1);
    detail::check_exponent("piece", piece, cfg.s2);
    detail::check_exponent("union", uni, cfg.s2);

    detail::LoopSpec spec{Mode::additive, cfg.s1, stop, true, Mode::multiplicative, cfg.s2, piece, true, "add-stop", "piece-mult-energy"};
    auto parts = sign_split(a);
    auto run = detail::run_sides(parts, cfg, spec);
    IntSet b = run.pos.extracted.union_with(run.neg.extracted);
    IntSet c = run.pos.residual.union_with(run.neg.residual).union_with(parts.zero);
    auto b_rep = energy_bound("b-mult-energy", b, cfg.s2, Mode::multiplicative, uni, true);
    CheckReport c_rep;
    if (c.size() <= cfg.small_set) {
        Digest d;
        d.add(digest_of(c));
        c_rep = detail::make_report("c-small", BigInt(c.size()), Real(cfg.small_set), Relation::at_most, true, d);
    } else {
        c_rep = energy_bound("c-add-energy", c, cfg.s1, Mode::additive, stop, true);
    }
    bool failed = run.pos.failed || run.neg.failed;
    return detail::finish(a, std::move(b), std::move(c), detail::merged_trace(run), run.budget, failed, detail::merged_failure(run),
                          std::move(b_rep), std::move(c_rep));
}

} // namespace energia
