// Copyright 2026 The qcequiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "cli.h"
#include "test_util.h"

namespace qcequiv::cli {
namespace {

using qcequiv::testing::data_path;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string &haystack, const std::string &needle) {
    return haystack.find(needle) != std::string::npos;
}

TEST(CliFormatComplexTest, Formats) {
    EXPECT_EQ(format_complex({1.0, 0.0}), "1+0i");
    EXPECT_EQ(format_complex({-0.5, 0.25}), "-0.5+0.25i");
    EXPECT_EQ(format_complex({0.0, -1.0}), "0-1i");
    EXPECT_EQ(format_complex({1e-13, -1e-14}), "0+0i");
    EXPECT_EQ(format_complex({1.0 / std::sqrt(2.0), 0.0}), "0.707106781187+0i");
}

TEST(CliParseKetTest, BasisLabels) {
    StateVector s = parse_ket("|01⟩");
    EXPECT_EQ(s.num_qubits(), 2u);
    EXPECT_EQ(s[1], Complex(1.0));
    StateVector p = parse_ket("|+->");
    EXPECT_NEAR(std::abs(p[0] - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p[1] + 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p[3] + 0.5), 0.0, 1e-12);
}

TEST(CliParseKetTest, Amplitudes) {
    StateVector s = parse_ket("3, 4i");
    EXPECT_NEAR(std::abs(s[0] - 0.6), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s[1] - Complex(0.0, 0.8)), 0.0, 1e-12);
    StateVector t = parse_ket("0.5, 0.5i, -0.5+0.5i, 0");
    EXPECT_EQ(t.num_qubits(), 2u);
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
}

TEST(CliParseKetTest, Rejects) {
    EXPECT_THROW(parse_ket("|2⟩"), std::invalid_argument);
    EXPECT_THROW(parse_ket("1, 0, 0"), std::invalid_argument);
    EXPECT_THROW(parse_ket("0, 0"), std::invalid_argument);
    EXPECT_THROW(parse_ket("abc"), std::invalid_argument);
}

TEST(CliCheckTest, SwapCircuitsAreUnitarilyEqual) {
    Result r = invoke({"check", data_path("swap.qc"), data_path("altswap.qc"), "--mode", "unitary"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "equivalent (unitary)\n");
}

TEST(CliCheckTest, TeleportationIsAWire) {
    Result r = invoke({"check", data_path("teleport.qc"), data_path("wire.qc"), "--mode", "channel"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(invoke({"check", data_path("teleport.qc"), data_path("wire.qc")}).code, kExitOk);
    EXPECT_EQ(invoke({"check", data_path("teleport.qc"), data_path("wire.qc"), "--mode", "oracle"}).code, kExitOk);
}

TEST(CliCheckTest, FlipIsNotIdentity) {
    Result r = invoke({"check", data_path("x.qc"), data_path("id.qc"), "--mode", "unitary"});
    EXPECT_EQ(r.code, kExitNotEquivalent);
    EXPECT_TRUE(contains(r.out, "probe |0⟩")) << r.out;
    for (const char *mode : {"phase", "channel", "oracle"}) {
        Result m = invoke({"check", data_path("x.qc"), data_path("id.qc"), "--mode", mode});
        EXPECT_EQ(m.code, kExitNotEquivalent) << mode;
        EXPECT_TRUE(contains(m.out, "|0⟩")) << mode << ": " << m.out;
    }
}

TEST(CliCheckTest, Errors) {
    EXPECT_EQ(invoke({"check", data_path("x.qc"), data_path("missing.qc")}).code, kExitParse);
    Result bad = invoke({"check", data_path("x.qc"), data_path("malformed.qc")});
    EXPECT_EQ(bad.code, kExitParse);
    EXPECT_TRUE(contains(bad.err, "malformed.qc:4:")) << bad.err;
    EXPECT_EQ(invoke({"check", data_path("x.qc"), data_path("id.qc"), "--mode", "bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"check", data_path("x.qc")}).code, kExitUsage);
    EXPECT_EQ(invoke({"check", data_path("teleport.qc"), data_path("wire.qc"), "--mode", "unitary"}).code,
              kExitUsage);
    EXPECT_EQ(invoke({"check", data_path("swap.qc"), data_path("wire.qc"), "--mode", "channel"}).code,
              kExitNotEquivalent);
}

TEST(CliUsageTest, Errors) {
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(invoke({"demo", "nothing"}).code, kExitUsage);
    Result help = invoke({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_TRUE(contains(help.out, "check"));
}

TEST(CliRunTest, BranchTable) {
    Result r = invoke({"run", data_path("bell_measure.qc")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out,
              "branch c0=0 c1=0  p=0.5\n  |00⟩  1+0i\n"
              "branch c0=1 c1=1  p=0.5\n  |11⟩  1+0i\n");
}

TEST(CliRunTest, InputState) {
    Result r = invoke({"run", data_path("teleport.qc"), "--input", "0.6, 0.8"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "branch c0=1 c1=0  p=0.25\n  |100⟩  0.6+0i\n  |101⟩  0.8+0i\n")) << r.out;
    EXPECT_EQ(invoke({"run", data_path("teleport.qc"), "--input", "|01⟩"}).code, kExitUsage);
}

TEST(CliRunTest, ShotFrequenciesConverge) {
    for (int n : {100, 1000, 10000}) {
        for (int seed : {0, 1, 2}) {
            Result r = invoke({"run", data_path("bell_measure.qc"), "--shots", std::to_string(n), "--seed",
                               std::to_string(seed)});
            ASSERT_EQ(r.code, kExitOk) << r.err;
            std::istringstream in(r.out);
            std::string word;
            int shots = 0;
            int seed_echo = 0;
            in >> word >> shots >> word >> seed_echo;
            EXPECT_EQ(shots, n);
            EXPECT_EQ(seed_echo, seed);
            std::map<std::string, int> counts;
            std::string bits;
            int count = 0;
            while (in >> bits >> count) {
                counts[bits] = count;
            }
            EXPECT_EQ(counts.size(), 2u) << r.out;
            EXPECT_EQ(counts["00"] + counts["11"], n);
            const double freq = static_cast<double>(counts["00"]) / n;
            EXPECT_LE(std::abs(freq - 0.5), 3.0 * std::sqrt(0.25 / n)) << r.out;
        }
    }
}

TEST(CliRunTest, ShotsAreReproducible) {
    std::vector<std::string> args = {"run", data_path("bell_measure.qc"), "--shots", "500", "--seed", "9"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliUnitaryTest, PrintsRows) {
    Result r = invoke({"unitary", data_path("x.qc")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "0+0i, 1+0i\n1+0i, 0+0i\n");
    EXPECT_EQ(invoke({"unitary", data_path("teleport.qc")}).code, kExitUsage);
}

TEST(CliRewriteTest, ListAndApply) {
    Result list = invoke({"rewrite", data_path("teleport.qc"), "--rule", "R3_DeferMeasure", "--list"});
    EXPECT_EQ(list.code, kExitOk);
    EXPECT_EQ(list.out,
              "0: R3_DeferMeasure forward [X] at {3,4} (m=q1 t=q2 r=c1)\n");
    Result apply = invoke({"rewrite", data_path("teleport.qc"), "--rule", "R3_DeferMeasure", "--site", "0"});
    EXPECT_EQ(apply.code, kExitOk) << apply.err;
    EXPECT_TRUE(contains(apply.out, "VERIFIED\n"));
    EXPECT_TRUE(contains(apply.out, "CNOT q1 q2\nMEASURE q1 c1\n")) << apply.out;

    Result none = invoke({"rewrite", data_path("x.qc"), "--rule", "R1_InverseCancel", "--list"});
    EXPECT_EQ(none.out, "no matches\n");
    EXPECT_EQ(invoke({"rewrite", data_path("x.qc"), "--rule", "R1_InverseCancel"}).code, kExitUsage);
    EXPECT_EQ(invoke({"rewrite", data_path("x.qc"), "--rule", "R9"}).code, kExitUsage);
}

TEST(CliSimplifyTest, PrintsTrace) {
    Result r = invoke({"simplify", data_path("wire.qc")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "step 0: start\nqubits 1\ncbits 0\n\nfinal:\nqubits 1\ncbits 0\n");
    EXPECT_EQ(invoke({"simplify", data_path("teleport.qc"), "--no-verify"}).code, kExitOk);
}

TEST(CliDemoTest, EveryDemoVerifies) {
    for (const char *name : {"teleportation", "densecoding", "gateteleportation"}) {
        Result r = invoke({"demo", name});
        EXPECT_EQ(r.code, kExitOk) << name << r.err;
        EXPECT_FALSE(contains(r.out, "UNVERIFIED")) << name;
        EXPECT_TRUE(contains(r.out, "VERIFIED")) << name;
        EXPECT_TRUE(contains(r.out, ": yes\nchannel equals")) << name;
        EXPECT_FALSE(contains(r.out, ": no")) << name;
    }
    Result swap = invoke({"demo", "swap"});
    EXPECT_EQ(swap.code, kExitOk);
    EXPECT_TRUE(contains(swap.out, "|01⟩ -> |10⟩\n"));
    EXPECT_TRUE(contains(swap.out, "unitaries equal: yes\noracle agrees: yes\n"));
}

}  // namespace
}  // namespace qcequiv::cli
