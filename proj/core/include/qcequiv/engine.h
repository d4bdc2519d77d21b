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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcequiv/circuit.h"
#include "qcequiv/rules.h"
#include "qcequiv/simulator.h"

namespace qcequiv {

/// A rule application site.
///
/// `site` lists the body indices of the matched pattern in increasing order.
/// Patterns may skip over instructions as long as each skipped instruction
/// is disjoint from every later matched one; the rewrite first gathers the
/// matched instructions at site[0]. Rules with an empty pattern insert their
/// replacement at body index `position`. IntroduceAncilla forward uses
/// `position` as the index of the new wire and `variant` 0/1 for |0⟩/|+⟩.
struct Match {
    RuleId rule = RuleId::R1_InverseCancel;
    Direction direction = Direction::Forward;
    std::size_t variant = 0;
    Bindings bindings;
    std::vector<std::size_t> site;
    std::size_t position = 0;
    bool operator==(const Match &) const = default;
};

/// "R5_DistributeCNOT forward [CACA] at {0} (a=q1 c=q0 t=q2)".
std::string describe(const Match &m);

/// The match is not valid on the given circuit.
class StaleMatchError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A rewrite with verification enabled changed the circuit's channel.
class VerificationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// True when the two instructions can be swapped: their supports are
/// disjoint, or every shared quantum wire is acted on diagonally by both
/// (Z, CZ, CNOT control, measurement, cZ) or as an X-type by both (X, CNOT
/// target, cX), and shared classical wires are only read.
bool instructions_commute(const Instruction &a, const Instruction &b);

/// Every valid application of `rule` in `direction`, sorted by site, then
/// variant, then bindings. Directions whose pattern is empty are insertions
/// and are only enumerated where the insertion point is canonical
/// (MeasureDiscarded, IntroduceAncilla, FoldBellPrep and FoldPlusPrep
/// backward); other insertions must be built by hand.
std::vector<Match> find_matches(const Circuit &c, RuleId rule, Direction direction);

/// Matches from every rule in both directions.
std::vector<Match> find_all_matches(const Circuit &c);

/// Throws StaleMatchError unless `m` is a valid application on `c`.
void check_match(const Circuit &c, const Match &m);

/// Applies the match. Fresh wires the replacement needs (R4's r3, the
/// measured bit of MeasureDiscarded) are allocated as new highest classical
/// wires when left unbound. All wire roles of the result are explicit. With
/// `verify`, throws VerificationError unless the channels agree.
Circuit rewrite_at(const Circuit &c, const Match &m, bool verify = false);

/// The inverse application: rewriting `m` on `c` and then the returned match
/// on the result restores `c`.
Match inverse_match(const Circuit &c, const Match &m);

/// Looks up the unique match of `rule` whose site is `site` and whose
/// bindings extend `partial`. For insertions, builds the match from
/// `partial`, `variant` and `position` directly. Throws StaleMatchError when
/// nothing (or more than one thing) fits.
Match resolve_match(const Circuit &c, RuleId rule, Direction direction, const std::vector<std::size_t> &site,
                    const Bindings &partial = {}, std::optional<std::size_t> variant = std::nullopt,
                    std::size_t position = 0);

struct TraceStep {
    Match match;
    Circuit result;
    bool verified = false;
};

struct DerivationTrace {
    Circuit start;
    std::vector<TraceStep> steps;

    const Circuit &final_circuit() const {
        return steps.empty() ? start : steps.back().result;
    }
    bool all_verified() const;
};

/// Numbered steps with the applied rule, the circuit text and a VERIFIED or
/// UNVERIFIED tag.
std::string render_trace(const DerivationTrace &trace);

/// Builds a trace one rewrite at a time, checking every step against the
/// starting circuit's channel.
class Deriver {
   public:
    explicit Deriver(Circuit start, bool verify = true);

    const Circuit &current() const {
        return trace_.final_circuit();
    }
    /// Applies the match. A failed verification is recorded on the step.
    Deriver &apply(const Match &m);
    /// resolve_match on the current circuit followed by apply.
    Deriver &apply(RuleId rule, Direction direction, const std::vector<std::size_t> &site,
                   const Bindings &partial = {}, std::optional<std::size_t> variant = std::nullopt,
                   std::size_t position = 0);

    const DerivationTrace &trace() const {
        return trace_;
    }

   private:
    bool verify_;
    std::optional<Channel> start_channel_;
    DerivationTrace trace_;
};

struct Cost {
    std::size_t quantum_gates = 0;
    std::size_t classical_controls = 0;
    std::size_t instructions = 0;
    auto operator<=>(const Cost &) const = default;
};

Cost cost(const Circuit &c);

/// Greedy fixpoint. Each round tries, in order, R1_InverseCancel,
/// R1_ControlZero, R1_TargetPlus forward, R3_DeferMeasure backward and
/// R4_XorSubstitute forward, and applies the first match that lowers the
/// cost. Every applied step removes a quantum gate, so the number of steps
/// is at most the starting quantum-gate count.
DerivationTrace simplify(const Circuit &c, bool verify = true);

}  // namespace qcequiv
