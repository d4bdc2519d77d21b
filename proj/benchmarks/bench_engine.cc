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

#include "qcequiv/engine.h"
#include "qcequiv/scenarios.h"

namespace qcequiv {
namespace {

void BM_FindMatchesAllRules(benchmark::State &state) {
    const Circuit c = make(Scenario::GateTeleportation);
    for (auto _ : state) {
        std::size_t total = 0;
        for (RuleId rule : catalog_rules()) {
            for (Direction d : {Direction::Forward, Direction::Backward}) {
                total += find_matches(c, rule, d).size();
            }
        }
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_FindMatchesAllRules);

void BM_Simplify(benchmark::State &state) {
    const Circuit c = make(Scenario::Teleportation);
    const bool verify = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simplify(c, verify));
    }
}
BENCHMARK(BM_Simplify)->Arg(0)->Arg(1);

void BM_Derive(benchmark::State &state) {
    const Derivation d = all_derivations()[static_cast<std::size_t>(state.range(0))];
    state.SetLabel(std::string(derivation_name(d)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(derive(d, true));
    }
}
BENCHMARK(BM_Derive)->DenseRange(0, 2);

}  // namespace
}  // namespace qcequiv
