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

#include <benchmark/benchmark.h>

#include "qcequiv/equivalence.h"
#include "qcequiv/scenarios.h"
#include "qcequiv/simulator.h"

namespace qcequiv {
namespace {

void BM_RunTeleportation(benchmark::State &state) {
    const Circuit c = make(Scenario::Teleportation);
    const StateVector input = StateVector::basis(1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(c, input));
    }
}
BENCHMARK(BM_RunTeleportation);

void BM_BuildUnitarySwap(benchmark::State &state) {
    Circuit c = make(Scenario::XorSwap);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_unitary(c));
    }
}
BENCHMARK(BM_BuildUnitarySwap);

void BM_ExtractChannel(benchmark::State &state) {
    const Scenario s = all_scenarios()[static_cast<std::size_t>(state.range(0))];
    const Circuit c = make(s);
    state.SetLabel(std::string(scenario_name(s)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_channel(c));
    }
}
BENCHMARK(BM_ExtractChannel)->DenseRange(0, 8);

void BM_ChannelEqualGateTeleport(benchmark::State &state) {
    const Channel a = extract_channel(make(Scenario::GateTeleportation));
    const Channel b = extract_channel(parse("qubits 2\ncbits 0\nCNOT q0 q1\n"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(channel_equal(a, b));
    }
}
BENCHMARK(BM_ChannelEqualGateTeleport);

void BM_OracleTeleportation(benchmark::State &state) {
    const Circuit a = make(Scenario::Teleportation);
    const Circuit b = parse("qubits 1\ncbits 0\n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_equal(a, b));
    }
}
BENCHMARK(BM_OracleTeleportation);

}  // namespace
}  // namespace qcequiv
