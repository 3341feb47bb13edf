// Drives the built binary through a shell and checks reports and exit codes.

#include "json.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#ifndef ENERGIA_CLI
#error "ENERGIA_CLI must name the energia binary"
#endif

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Outcome {
    int code = -1;
    std::string out;

    json report() const { return json::parse(out); }
};

fs::path scratch()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("energia-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text)
{
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

Outcome run(const std::string& args, const std::string& stdin_text = "")
{
    fs::path in = write_file("stdin.txt", stdin_text);
    std::string cmd = std::string("'") + ENERGIA_CLI + "' " + args + " < '" + in.string() + "' 2>/dev/null";
    Outcome o;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return o;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        o.out.append(buf.data(), n);
    int status = ::pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::vector<std::string> strings(const json& arr)
{
    std::vector<std::string> v;
    for (const auto& x : arr)
        v.push_back(x.get<std::string>());
    return v;
}

} // namespace

TEST(Cli, EnergyOfSmallSet)
{
    auto o = run("energy --s 2 --mode add", "1 2 3");
    ASSERT_EQ(o.code, 0);
    auto r = o.report();
    EXPECT_EQ(r["schema"], 1);
    EXPECT_EQ(r["results"]["energy"], "19");
    EXPECT_EQ(r["input_size"], 3);

    auto m = run("energy --s 2 --mode mult --oracle", "1\n2\n4\n").report();
    EXPECT_EQ(m["results"]["energy"], "19");
    EXPECT_EQ(m["results"]["oracle"]["agrees"], true);
}

TEST(Cli, Sumset)
{
    auto o = run("sumset --m 2 --n 0", "1 2 3");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(strings(o.report()["results"]["sumset"]), (std::vector<std::string>{"2", "3", "4", "5", "6"}));
    auto d = run("sumset --m 1 --n 1", "[1, 5]").report();
    EXPECT_EQ(strings(d["results"]["sumset"]), (std::vector<std::string>{"-4", "0", "4"}));
    auto p = run("sumset --m 1 --n 1 --mode mult", "2 3").report();
    EXPECT_EQ(strings(p["results"]["sumset"]), (std::vector<std::string>{"2/3", "1", "3/2"}));
}

TEST(Cli, ParseAndUsageErrorsExitTwo)
{
    EXPECT_EQ(run("energy --s 2", "x y").code, 2);
    EXPECT_EQ(run("energy --s 2", "[1, 2").code, 2);
    EXPECT_EQ(run("energy --s 2", "[1.5]").code, 2);
    EXPECT_EQ(run("energy --s 2", "{\"other\": 1}").code, 2);
    EXPECT_EQ(run("energy --s 2", "").code, 2);
    EXPECT_EQ(run("energy", "1 2").code, 2);
    EXPECT_EQ(run("energy --s 2 --mode sideways", "1 2").code, 2);
    EXPECT_EQ(run("energy --s 0", "1 2").code, 2);
    EXPECT_EQ(run("check --suite no-such-suite").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("kp --delta 1/0", "1 2 3 4").code, 2);
    EXPECT_EQ(run("decompose --k 1/2", "1 2 3").code, 2);
    EXPECT_EQ(run("energy --s 2 /no/such/file").code, 2);
    EXPECT_EQ(run("gen ap --n 0").code, 2);
}

TEST(Cli, GuardViolationsExitThree)
{
    EXPECT_EQ(run("--guard-max-tuples 1000 energy --s 4 --oracle", "1 2 3 4 5 6 7 8").code, 3);
    EXPECT_EQ(run("energy --s 40", "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16").code, 3);
    EXPECT_EQ(run("--guard-max-tuples 10 sumset --m 3", "1 2 3 4 5 6 7 8 9 10 11 12").code, 3);
    EXPECT_EQ(run("--guard-max-tuples 1000 experiment warren-squares").code, 3);
    EXPECT_EQ(run("constants rtp --k 5000").code, 3);
    // the same oracle call fits under the default guard
    EXPECT_EQ(run("energy --s 4 --oracle", "1 2 3 4 5 6 7 8").code, 0);
}

TEST(Cli, CheckSuites)
{
    auto o = run("check --suite cauchy-schwarz --cases 100 --seed 7");
    ASSERT_EQ(o.code, 0);
    auto r = o.report();
    EXPECT_EQ(r["seed"], "7");
    EXPECT_EQ(r["results"]["suites"][0]["passes"], 100);
    EXPECT_EQ(r["results"]["summary"]["failures"], 0);

    auto all = run("check --suite all --cases 1");
    ASSERT_EQ(all.code, 0);
    auto names = all.report()["results"]["summary"]["suites"];
    std::set<std::string> got;
    for (const auto& n : names)
        got.insert(n.get<std::string>());
    for (const char* want : {"young", "holder", "holder-mult", "union-bound", "plunnecke", "cauchy-schwarz", "mixed-cs", "power-energy",
                             "convex-growth", "union-bound-mult"})
        EXPECT_TRUE(got.count(want)) << want;
}

TEST(Cli, Constants)
{
    auto r = run("constants rtp --k 2").report();
    EXPECT_EQ(r["results"]["T_k"], "2412");
    EXPECT_EQ(r["results"]["eta_k"].get<std::string>().rfind("0.000598", 0), 0u);
    EXPECT_EQ(r["results"]["precision_bits"], 256);

    auto gm = run("constants gemn --k 1 --q 2").report();
    EXPECT_EQ(gm["results"]["Lambda"]["value"], "31");
    EXPECT_EQ(gm["results"]["l"]["value"], "37200");
    auto er = run("constants eric --b 30 --m 2").report();
    EXPECT_EQ(er["results"]["log2_s2"]["value"], "246");
    auto th = run("constants thrt --k 2 --s 4096 --lambda0 1").report();
    EXPECT_EQ(th["results"]["growth"], "2413/2412");
    EXPECT_EQ(th["results"]["crossing"], 0);
    EXPECT_EQ(run("constants bta --log2-s 1000").code, 2);
}

TEST(Cli, GenMixed)
{
    auto o = run("gen mixed --n 3");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(strings(o.report()["results"]["set"]), (std::vector<std::string>{"1", "2", "3", "9", "27"}));
    auto big = run("gen mixed --n 30").report();
    EXPECT_EQ(big["results"]["set"].back(), "205891132094649000000000000000000000000000000");
}

TEST(Cli, GenRoundTrip)
{
    const std::vector<std::string> gens{"ap --n 12 --start -5 --step 7", "gp --n 9 --start 2 --ratio -3", "interval --n 20",
                                        "powers --k 3 --n 10", "mixed --n 12", "poly --n 8 --coeffs 1,0,-2,1"};
    for (const auto& g : gens) {
        auto gen = run("gen " + g);
        ASSERT_EQ(gen.code, 0) << g;
        auto rep = gen.report();
        std::string digest = rep["results"]["digest"];

        // the whole report, its set alone, and a whitespace listing all parse to the same set
        std::string listing;
        for (const auto& x : rep["results"]["set"])
            listing += x.get<std::string>() + "\n";
        for (const auto& text : {gen.out, rep["results"]["set"].dump(), listing}) {
            auto again = run("energy --s 2", text);
            ASSERT_EQ(again.code, 0) << g;
            EXPECT_EQ(again.report()["input_digest"], digest) << g;
        }
        fs::path file = write_file("gen.json", gen.out);
        EXPECT_EQ(run("sumset --m 1 '" + file.string() + "'").report()["results"]["sumset"], rep["results"]["set"]) << g;
    }
}

TEST(Cli, Determinism)
{
    for (const std::string args : {"check --suite all --cases 2 --seed 11", "kp --s 4 --delta 0.05 --verify", "decompose --k 1.2 --s 2 --q 4"}) {
        auto a = run(args, "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 81 243 729");
        auto b = run(args, "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 81 243 729");
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.report().contains("wall_time_ms"));
    }
    auto t = run("--timing energy --s 2", "1 2 3").report();
    EXPECT_TRUE(t.contains("wall_time_ms"));
    // a different seed changes the corpus
    EXPECT_NE(run("check --suite young --cases 3 --seed 1").out, run("check --suite young --cases 3 --seed 2").out);
}

TEST(Cli, KpReport)
{
    fs::path csv = scratch() / "kp.csv";
    std::string interval;
    for (int i = 1; i <= 16; ++i)
        interval += std::to_string(i) + " ";
    auto o = run("kp --s 4 --delta 0.05 --mode calibrated --verify --practical 10 --csv '" + csv.string() + "'", interval);
    ASSERT_EQ(o.code, 0);
    auto r = o.report()["results"];
    EXPECT_EQ(r["branch"], "SubsetBranch");
    EXPECT_GE(r["a_prime"].size(), 8u);
    EXPECT_EQ(r["verify"].size(), 6u);
    for (const auto& c : r["verify"])
        EXPECT_TRUE(c["holds"].get<bool>()) << c["name"];
    std::ifstream f(csv);
    std::string header, line;
    std::getline(f, header);
    EXPECT_EQ(header, "stage,cardinality,threshold");
    std::size_t rows = 0;
    while (std::getline(f, line))
        ++rows;
    EXPECT_EQ(rows, r["trace"].size());

    // paper mode takes the energy branch on this input; asking to verify it is a pipeline failure
    EXPECT_EQ(run("kp --s 4 --delta 0.05 --mode paper", interval).report()["results"]["branch"], "EnergyBranch");
    EXPECT_EQ(run("kp --s 4 --delta 0.05 --mode paper --verify", interval).code, 1);
}

TEST(Cli, DecomposeMixedSet)
{
    std::string text;
    for (int i = 1; i <= 32; ++i)
        text += std::to_string(i) + " ";
    long long p = 1;
    for (int i = 0; i < 16; ++i, p *= 3)
        text += std::to_string(p) + " ";
    auto o = run("decompose --k 1.2 --s 2 --q 4 --mode calibrated", text);
    ASSERT_EQ(o.code, 0);
    auto r = o.report()["results"];
    EXPECT_TRUE(r["certified"].get<bool>());
    EXPECT_TRUE(r["b_certificate"]["holds"].get<bool>());
    EXPECT_TRUE(r["c_certificate"]["holds"].get<bool>());
    EXPECT_EQ(r["b"].size() + r["c"].size(), 44u); // 1, 3, 9, 27 are in both halves
    EXPECT_LE(r["iterations_used"].get<int>(), r["budget"].get<int>());

    auto eric = run("decompose --eric --k 1.2", text);
    EXPECT_EQ(eric.code, 0);
    EXPECT_EQ(eric.report()["results"]["loop"], "eric");
}

TEST(Cli, Experiments)
{
    for (const char* name : {"warren-squares", "ap-gp-mix", "zero-obstruction"}) {
        auto o = run(std::string("experiment ") + name);
        ASSERT_EQ(o.code, 0) << name;
        for (const auto& a : o.report()["results"]["assertions"])
            EXPECT_TRUE(a["holds"].get<bool>()) << name << " " << a["name"];
    }
    auto z = run("experiment zero-obstruction --n 10").report()["results"];
    EXPECT_EQ(z["guard_rejects"], true);
    EXPECT_GE(std::stoll(z["mixed_mult_energy"].get<std::string>()), 121);
}
