// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// Drives the command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rqw/serialization.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("rqw_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(RQW_CLI_PATH) + " " + args + " 2>" + (scratch_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string path(const std::string& name) { return (scratch_dir() / name).string(); }

}  // namespace

TEST(Cli, GenerateDemoIsDeterministic) {
    ASSERT_EQ(run("generate --kind demo -s 5 -o " + path("demo_a.json")), 0);
    ASSERT_EQ(run("generate --kind demo -s 5 -o " + path("demo_b.json")), 0);
    EXPECT_EQ(slurp(path("demo_a.json")), slurp(path("demo_b.json")));
    const auto j = rqw::Json::parse(slurp(path("demo_a.json")));
    EXPECT_EQ(j.at("num_users"), 4);
    EXPECT_EQ(j.at("num_channels"), 4);
}

TEST(Cli, GenerateHotspotIsValid) {
    ASSERT_EQ(run("generate --kind hotspot -U 16 -C 2 -s 1 -o " + path("hot.json")), 0);
    const auto inst = rqw::instance_from_json(rqw::Json::parse(slurp(path("hot.json"))));
    EXPECT_EQ(inst.num_users(), 16u);
    EXPECT_EQ(inst.num_channels(), 2u);
}

TEST(Cli, GenerateRejectsBadParameters) {
    EXPECT_EQ(run("generate --kind hotspot -U 0 -C 2 -o " + path("bad.json")), 1);
    EXPECT_EQ(run("generate --kind nonsense"), 1);
}

TEST(Cli, SolveDemoRqaoaMatchesExact) {
    ASSERT_EQ(run("generate --kind demo -s 3 -o " + path("demo3.json")), 0);
    ASSERT_EQ(run("solve " + path("demo3.json") + " --solver exact -o " + path("exact.json")), 0);
    ASSERT_EQ(run("solve " + path("demo3.json") + " --solver rqaoa -p 1 --n-cutoff 6 -A 10 -s 3 -o " +
                  path("rqaoa.json") + " --trace " + path("trace.jsonl")),
              0);
    const auto exact = rqw::Json::parse(slurp(path("exact.json")));
    const auto rqaoa = rqw::Json::parse(slurp(path("rqaoa.json")));
    EXPECT_TRUE(rqaoa.at("feasible").get<bool>());
    EXPECT_EQ(rqaoa.at("objective"), exact.at("objective"));
    EXPECT_TRUE(rqaoa.contains("manifest"));
    EXPECT_FALSE(slurp(path("trace.jsonl")).empty());
}

TEST(Cli, SolveIsByteIdenticalAcrossRuns) {
    ASSERT_EQ(run("generate --kind hotspot -U 20 -C 2 -s 2 -o " + path("h20.json")), 0);
    for (const char* solver : {"greedy", "sa", "pipeline"}) {
        const std::string base = "solve " + path("h20.json") + " --solver " + solver +
                                 " --core-size 6 --n-cutoff 6 --restarts 1 --max-evaluations 40 -s 7 -o ";
        ASSERT_EQ(run(base + path("s1.json")), 0) << solver;
        ASSERT_EQ(run(base + path("s2.json")), 0) << solver;
        EXPECT_EQ(slurp(path("s1.json")), slurp(path("s2.json"))) << solver;
    }
}

TEST(Cli, FlagsOverrideConfig) {
    ASSERT_EQ(run("generate --kind demo -s 1 -o " + path("d1.json")), 0);
    {
        std::ofstream cfg(path("cfg.json"));
        cfg << R"({"core_size": 2, "rqaoa": {"n_cutoff": 3}, "qaoa": {"restarts": 1}})";
    }
    ASSERT_EQ(run("solve " + path("d1.json") + " --solver pipeline -c " + path("cfg.json") + " -o " + path("o1.json")),
              0);
    ASSERT_EQ(run("solve " + path("d1.json") + " --solver pipeline -c " + path("cfg.json") +
                  " --core-size 3 -o " + path("o2.json")),
              0);
    const auto a = rqw::Json::parse(slurp(path("o1.json")));
    const auto b = rqw::Json::parse(slurp(path("o2.json")));
    EXPECT_EQ(a.at("core_users").size(), 2u);
    EXPECT_EQ(b.at("core_users").size(), 3u);
    EXPECT_EQ(b.at("manifest").at("config").at("core_size"), 3);
    EXPECT_EQ(b.at("manifest").at("config").at("rqaoa").at("n_cutoff"), 3);
}

TEST(Cli, MalformedInputExitsWithOne) {
    {
        std::ofstream bad(path("broken.json"));
        bad << "{\"num_users\": 2, ";
    }
    EXPECT_EQ(run("solve " + path("broken.json") + " --solver greedy"), 1);
    EXPECT_NE(slurp(path("stderr.txt")).find("broken.json"), std::string::npos);
    EXPECT_EQ(run("solve " + path("does_not_exist.json")), 1);
    EXPECT_EQ(run("solve"), 1);
}

TEST(Cli, OversizedExactSolveIsRefused) {
    ASSERT_EQ(run("generate --kind hotspot -U 40 -C 2 -s 1 -o " + path("h40.json")), 0);
    EXPECT_EQ(run("solve " + path("h40.json") + " --solver exact"), 1);
    EXPECT_NE(slurp(path("stderr.txt")).find("exceed"), std::string::npos);
}

TEST(Cli, InfeasibleResultExitsWithTwo) {
    // Three users forced onto one channel of capacity one.
    {
        std::ofstream inst(path("tight.json"));
        inst << R"({"num_users": 3, "num_channels": 2, "capacities": [1, 2], "weights": [[0, 1, 1]]})";
        std::ofstream cfg(path("forbid.json"));
        cfg << R"({"forbidden": [[0, 1], [1, 1], [2, 1]]})";
    }
    EXPECT_EQ(run("solve " + path("tight.json") + " --solver pipeline -c " + path("forbid.json")), 2);
}

TEST(Cli, BenchmarkWritesCsvAndResumes) {
    {
        std::ofstream spec(path("spec.json"));
        spec << R"({"generator": "hotspot", "sizes": [16, 24], "channels": 2, "seeds": 2,
                    "solvers": [{"name": "greedy", "kind": "greedy"}, {"name": "sa", "kind": "sa"}]})";
    }
    ASSERT_EQ(run("benchmark " + path("spec.json") + " -o " + path("bench.csv") + " > " + path("summary.csv")), 0);
    const auto csv = slurp(path("bench.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 2 * 2);
    EXPECT_TRUE(fs::exists(path("bench.csv") + ".manifest.json"));
    ASSERT_EQ(run("benchmark " + path("spec.json") + " -o " + path("bench.csv") + " -j 2 > /dev/null"), 0);
    EXPECT_EQ(slurp(path("bench.csv")), csv);
}
