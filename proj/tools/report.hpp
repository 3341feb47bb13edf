#pragma once

// JSON rendering of library results. Counts and exact values are decimal strings;
// reals carry their precision.

#include "energia/energia.hpp"

#include "json.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace energia::cli {

using json = nlohmann::ordered_json;

inline json real_json(const Real& v)
{
    return json{{"value", to_string(v, 30)}, {"precision_bits", precision_bits()}};
}

inline json quantity_json(const Quantity& q)
{
    if (q.exact)
        return to_string(*q.exact);
    return real_json(q.approx);
}

inline json set_json(const IntSet& a)
{
    json arr = json::array();
    for (const auto& x : a)
        arr.push_back(x.str());
    return arr;
}

inline json set_json(const RatSet& a)
{
    json arr = json::array();
    for (const auto& x : a)
        arr.push_back(to_string(x));
    return arr;
}

inline json check_json(const CheckReport& r)
{
    json j{{"name", r.name},
           {"lhs", quantity_json(r.lhs)},
           {"relation", std::string(relation_symbol(r.relation))},
           {"rhs", quantity_json(r.rhs)},
           {"holds", r.holds},
           {"slack", to_string(r.slack, 20)},
           {"inputs_digest", r.inputs_digest}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline json checks_json(const std::vector<CheckReport>& v)
{
    json arr = json::array();
    for (const auto& r : v)
        arr.push_back(check_json(r));
    return arr;
}

inline json energy_json(const EnergyValue& e)
{
    json j{{"count", e.count.str()}, {"s", e.s}, {"kind", std::string(kind_name(e.kind))}, {"set_size", e.set_size}};
    if (e.exponent)
        j["exponent"] = real_json(*e.exponent);
    return j;
}

inline json kp_json(const KpResult& r)
{
    json trace = json::array();
    for (const auto& t : r.trace)
        trace.push_back({{"stage", t.name}, {"cardinality", t.cardinality.str()}, {"threshold", t.threshold}});
    json j{{"branch", std::string(branch_name(r.branch))},
           {"mode", std::string(kp_mode_name(r.kp_mode))},
           {"arithmetic", std::string(mode_name(r.mode))},
           {"s", r.s},
           {"set_size", r.set_size},
           {"energy_s", r.energy_full.str()},
           {"energy_half", r.energy_half.str()},
           {"nu", real_json(r.nu)},
           {"nu_below_one", r.nu_below_one},
           {"delta", to_string(r.delta)},
           {"delta_used", to_string(r.delta_used)},
           {"dichotomy", check_json(r.dichotomy)}};
    if (r.branch == Branch::subset) {
        j["a_prime"] = set_json(r.a_prime);
        j["u_prime"] = set_json(r.u_prime);
        j["anchor_sum"] = r.anchor_sum->str();
        j["z_sum"] = r.z_sum->str();
        j["shift_sum"] = r.shift_sum->str();
        j["extractor"] = r.bsg_strategy;
    }
    j["trace"] = trace;
    j["checks"] = checks_json(r.checks);
    return j;
}

inline json decomposition_json(const Decomposition& d)
{
    json trace = json::array();
    for (const auto& t : d.trace)
        trace.push_back({{"iteration", t.iteration},
                         {"strategy", t.strategy},
                         {"trigger", t.trigger},
                         {"piece", set_json(t.piece)},
                         {"trigger_report", check_json(t.trigger_report)},
                         {"certificate", check_json(t.certificate)}});
    json j{{"b", set_json(d.b)},
           {"c", set_json(d.c)},
           {"iterations_used", d.iterations_used},
           {"budget", d.budget},
           {"failed", d.failed}};
    if (d.failed)
        j["failure"] = d.failure;
    j["trace"] = trace;
    j["b_certificate"] = check_json(d.b_report);
    j["c_certificate"] = check_json(d.c_report);
    j["checks"] = checks_json(d.checks);
    j["certified"] = d.certified();
    return j;
}

inline json expr_json(const ExponentExpr& e)
{
    json j{{"expression", e.str()}, {"value", e.value_str()}};
    if (!e.exact())
        j["log2_value"] = real_json(e.log2_value());
    return j;
}

// ---------------------------------------------------------------------------
// Input

/// Whitespace-separated integers, a JSON array of integers or decimal strings, or a report whose
/// results carry a "set".
inline IntSet parse_set(const std::string& text)
{
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        fail(Errc::empty_set, "input holds no integers");
    auto from_array = [](const json& arr) {
        if (!arr.is_array())
            fail(Errc::parse_error, "expected a JSON array of integers");
        std::vector<BigInt> v;
        for (const auto& x : arr) {
            if (x.is_number_integer())
                v.emplace_back(x.dump());
            else if (x.is_string())
                v.push_back(parse_bigint(x.get<std::string>()));
            else
                fail(Errc::parse_error, "array entry is not an integer: " + x.dump());
        }
        return IntSet(std::move(v));
    };
    if (text[first] == '[' || text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            fail(Errc::parse_error, std::string("malformed JSON: ") + e.what());
        }
        if (j.is_object()) {
            if (j.contains("results") && j["results"].contains("set"))
                return from_array(j["results"]["set"]);
            if (j.contains("set"))
                return from_array(j["set"]);
            fail(Errc::parse_error, "JSON object without a \"set\" field");
        }
        return from_array(j);
    }
    std::istringstream in(text);
    std::vector<BigInt> v;
    for (std::string tok; in >> tok;)
        v.push_back(parse_bigint(tok));
    return IntSet(std::move(v));
}

inline std::string read_input(const std::string& path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream f(path);
    if (!f)
        fail(Errc::parse_error, "cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

} // namespace energia::cli
