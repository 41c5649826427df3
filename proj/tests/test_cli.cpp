/*
 * Copyright (C) 2026 The bassnet authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "bassnet/cli.hpp"
#include "bassnet/csv.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bassnet;
namespace fs = std::filesystem;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("bassnet_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("converge complete")
    {
        const auto dir = scratch("converge");
        const auto r = run({"converge", "--family", "complete", "--p", "0.02", "--q", "0.1", "--Ms",
                            "8,16,32,64,128,256", "--out", dir.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("slope") != std::string::npos);
        const auto j = nlohmann::json::parse(slurp(dir / "complete_study.json"));
        CHECK(j.at("fit").at("slope").get<double>() == doctest::Approx(-1.0).epsilon(0.1));
        const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
        CHECK(m.at("subcommand") == "converge");
        CHECK(m.at("config").at("Ms").size() == 6);
        CHECK(m.contains("version"));
    }

    TEST_CASE("toy geometric")
    {
        const auto dir = scratch("toy");
        const auto r = run({"toy", "--rule", "geometric", "--M", "6", "--out", dir.string()});
        REQUIRE(r.code == 0);
        const CsvTable tab = read_csv(dir / "toy.csv");
        const auto t = tab.column("t");
        const auto u6 = tab.column("u_6");
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(std::abs(u6[i] - std::exp(-729.0 * t[i])) < 1e-10);
        }
    }

    TEST_CASE("simulate is reproducible")
    {
        const auto dir = scratch("simulate");
        write_text(dir / "net.json", R"({"family": "complete", "M": 8, "p": 0.02, "q": 0.1})");
        const auto a = run({"simulate", "--config", (dir / "net.json").string(), "--R", "1000", "--seed", "42",
                            "--out", (dir / "a").string()});
        const auto b = run({"simulate", "--config", (dir / "net.json").string(), "--R", "1000", "--seed", "42",
                            "--out", (dir / "b").string()});
        REQUIRE(a.code == 0);
        REQUIRE(b.code == 0);
        for (const char* f : {"mc.csv", "mc.json", "manifest.json"}) {
            CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
        }
        CHECK(nlohmann::json::parse(slurp(dir / "a" / "mc.json")).at("master_seed") == 42);
        CHECK(a.out == b.out);
    }

    TEST_CASE("config values and flag precedence")
    {
        const auto dir = scratch("config");
        write_text(dir / "cfg.json", R"({"system": "complete", "M": 5, "p": 0.05, "q": 0.2, "points": 11})");
        const auto r = run({"master", "--config", (dir / "cfg.json").string(), "--M", "7", "--out", dir.string()});
        REQUIRE(r.code == 0);
        const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
        CHECK(m.at("config").at("M") == 7);
        CHECK(m.at("config").at("p").get<double>() == 0.05);
        const CsvTable tab = read_csv(dir / "master.csv");
        CHECK(tab.rows.size() == 11);
        CHECK(tab.header.size() == 1 + 7 + 1);
    }

    TEST_CASE("master full system from a network file")
    {
        const auto dir = scratch("full");
        write_text(dir / "net.json", R"({"family": "explicit", "p": [0.1, 0.2, 0.05], "edges": [[0, 1, 0.5], [1, 2, 1.0]]})");
        const auto r = run({"master", "--system", "full", "--network", (dir / "net.json").string(), "--T", "10",
                            "--points", "5", "--out", dir.string()});
        REQUIRE(r.code == 0);
        const CsvTable tab = read_csv(dir / "master.csv");
        CHECK(tab.header.size() == 1 + 7 + 1);
        CHECK(tab.column("S_1").back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    }

    TEST_CASE("remaining subcommands")
    {
        const auto dir = scratch("misc");
        CHECK(run({"compartmental", "--model", "circle", "--p", "0.02", "--q", "0.11", "--out", dir.string()}).code == 0);
        CHECK(read_csv(dir / "compartmental.csv").column("f").size() == 400);
        CHECK(run({"hetero", "--p", "0.01,0.1", "--q", "0.2,0.4", "--out", dir.string()}).code == 0);
        CHECK(nlohmann::json::parse(slurp(dir / "hetero.json")).at("het_below_hom") == true);
        CHECK(run({"hetero", "--mode", "counterexample", "--p", "0.02", "--q", "0.1", "--out", dir.string()}).code == 0);
        const auto b = run({"bound", "--system", "circle", "--M", "8", "--p", "0.02", "--q", "0.11", "--out", dir.string()});
        CHECK(b.code == 0);
        CHECK(nlohmann::json::parse(slurp(dir / "bound.json")).at("holds") == true);
    }

    TEST_CASE("exit codes")
    {
        const auto dir = scratch("errors");
        CHECK(run({"converge", "--bogus", "1"}).code == kExitInvalid);
        CHECK(run({}).code == kExitInvalid);
        CHECK(run({"teleport"}).code == kExitInvalid);
        CHECK(run({"converge", "--family", "torus", "--out", dir.string()}).code == kExitInvalid);
        CHECK(run({"bound", "--eps", "5", "--out", dir.string()}).code == kExitInvalid);
        CHECK(run({"toy", "--rule", "geometric", "--M", "20", "--out", dir.string()}).code == kExitInvalid);
        write_text(dir / "bad.json", R"({"nonsense": 1})");
        CHECK(run({"toy", "--config", (dir / "bad.json").string(), "--out", dir.string()}).code == kExitInvalid);
        // an exhausted step budget is a numerical failure
        CHECK(run({"master", "--system", "circle", "--M", "10", "--max-steps", "5", "--out", dir.string()}).code ==
              kExitNumerical);
        CHECK(run({"--help"}).code == kExitOk);
    }

    TEST_CASE("thread budget from the environment")
    {
        const auto dir = scratch("threads");
        setenv("BASSNET_THREADS", "2", 1);
        const int code = run({"toy", "--out", dir.string()}).code;
        unsetenv("BASSNET_THREADS");
        REQUIRE(code == 0);
        const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
        CHECK(m.at("config").at("threads") == 2);
    }
}
