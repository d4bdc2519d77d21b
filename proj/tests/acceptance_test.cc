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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qcequiv/engine.h"
#include "qcequiv/equivalence.h"
#include "qcequiv/rules.h"
#include "qcequiv/scenarios.h"
#include "qcequiv/simulator.h"
#include "test_util.h"

namespace qcequiv {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Collects the first failure message of a criterion.
class Check {
   public:
    void expect(bool ok, const std::string &what) {
        if (!ok && failure_.empty()) {
            failure_ = what;
        }
    }
    bool ok() const {
        return failure_.empty();
    }
    const std::string &failure() const {
        return failure_;
    }

   private:
    std::string failure_;
};

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool channels_agree(const Circuit &a, const Circuit &b, Check &check, const std::string &what) {
    const bool by_choi = channel_equal(extract_channel(a), extract_channel(b));
    const bool by_oracle = oracle_equal(a, b);
    check.expect(by_choi == by_oracle, what + ": channel_equal and oracle_equal disagree");
    return by_choi;
}

ComplexVector bell(int a, int b) {
    ComplexVector v = ComplexVector::Zero(4);
    v[b] = kInvSqrt2;
    v[2 + (1 - b)] = (a ? -1.0 : 1.0) * kInvSqrt2;
    return v;
}

/// Amplitudes left on the unmeasured wires of a branch whose measured wires
/// hold known bits.
ComplexVector free_wires(const StateVector &s, const std::vector<std::pair<std::uint32_t, bool>> &fixed) {
    const std::uint32_t n = s.num_qubits();
    std::vector<std::uint32_t> free;
    for (std::uint32_t q = 0; q < n; ++q) {
        if (std::none_of(fixed.begin(), fixed.end(), [&](const auto &f) { return f.first == q; })) {
            free.push_back(q);
        }
    }
    ComplexVector out = ComplexVector::Zero(Eigen::Index{1} << free.size());
    for (std::uint64_t x = 0; x < s.dim(); ++x) {
        bool match = true;
        for (const auto &[q, bit] : fixed) {
            match &= ((x & qubit_mask(n, Qubit{q})) != 0) == bit;
        }
        if (!match) {
            continue;
        }
        std::uint64_t y = 0;
        for (std::uint32_t q : free) {
            y = (y << 1) | ((x & qubit_mask(n, Qubit{q})) ? 1 : 0);
        }
        out[static_cast<Eigen::Index>(y)] += s[x];
    }
    return out;
}

std::uint64_t basis_image(const Circuit &c, std::uint64_t x) {
    StateVector s = StateVector::basis(c.num_qubits(), x);
    for (const auto &instr : c.body()) {
        s = apply_gate(s, instr);
    }
    for (std::uint64_t y = 0; y < s.dim(); ++y) {
        if (std::abs(s[y] - Complex(1.0)) < 1e-12) {
            return y;
        }
    }
    return ~std::uint64_t{0};
}

Circuit gates(std::uint32_t n, std::vector<Instruction> body) {
    Circuit c(n, 0);
    c.set_body(std::move(body));
    return c;
}

// 1. Gate semantics on all basis inputs.
void gate_semantics(Check &check) {
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            std::ostringstream text;
            text << "qubits 2\ncbits 3\nPREP q0 0\nPREP q1 0\n";
            text << (a ? "X q0\n" : "") << (b ? "X q1\n" : "");
            text << "MEASURE q0 c0\nMEASURE q1 c1\nXOR c0 c1 c2\n";
            const auto branches = run(parse(text.str()), StateVector::basis(0, 0));
            check.expect(branches.size() == 1 && *branches[0].outcome[2] == ((a ^ b) == 1), "XOR table");

            const std::uint64_t x = static_cast<std::uint64_t>(2 * a + b);
            const StateVector cnot = apply_gate(StateVector::basis(2, x), Gate2{Gate2Kind::CNOT, Qubit{0}, Qubit{1}});
            const StateVector cz = apply_gate(StateVector::basis(2, x), Gate2{Gate2Kind::CZ, Qubit{0}, Qubit{1}});
            const std::uint64_t y = static_cast<std::uint64_t>(2 * a + (a ^ b));
            check.expect(cnot[y] == Complex(1.0), "CNOT table");
            check.expect(cz[x] == Complex(a && b ? -1.0 : 1.0), "CZ table");
        }
    }
    const StateVector plus = apply_gate(StateVector::basis(1, 0), Gate1{Gate1Kind::H, Qubit{0}});
    const StateVector minus = apply_gate(StateVector::basis(1, 1), Gate1{Gate1Kind::H, Qubit{0}});
    check.expect(std::abs(plus[0] - kInvSqrt2) <= 1e-12 && std::abs(plus[1] - kInvSqrt2) <= 1e-12, "H|0>");
    check.expect(std::abs(minus[0] - kInvSqrt2) <= 1e-12 && std::abs(minus[1] + kInvSqrt2) <= 1e-12, "H|1>");
    const UnitaryMatrix hh = build_unitary(parse("qubits 1\ncbits 0\nH q0\nH q0\n"));
    check.expect(max_abs(hh - ComplexMatrix::Identity(2, 2)) <= 1e-12, "HH = I");
}

// 2. Every catalog rule on 50 random bindings.
void rule_soundness(Check &check) {
    for (RuleId id : catalog_rules()) {
        const auto &variants = rule_variants(id);
        std::mt19937_64 rng(7000 + static_cast<int>(id));
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t vi = static_cast<std::size_t>(trial) % variants.size();
            std::vector<std::uint32_t> wires = {0, 1, 2, 3};
            std::shuffle(wires.begin(), wires.end(), rng);
            Bindings b;
            std::size_t k = 0;
            for (const auto &name : quantum_vars(variants[vi])) {
                b.qubits[name] = Qubit{wires[k++]};
            }
            std::uint32_t cbits = 0;
            for (const auto &name : classical_vars(variants[vi])) {
                b.cbits[name] = Cbit{cbits++};
            }
            const Instantiation inst = instantiate(id, Direction::Forward, vi, b);
            Circuit lhs(4, cbits);
            if (id == RuleId::R1_TargetPlus) {
                lhs.set_prep(b.qubits.at("t"), PrepKind::Plus);
            } else if (id == RuleId::R1_ControlZero) {
                lhs.set_prep(b.qubits.at("c"), PrepKind::Zero);
            }
            Circuit rhs = lhs;
            lhs.set_body(inst.pattern);
            rhs.set_body(inst.replacement);
            const std::string where = std::string(rule_name(id)) + " " + to_string(b);
            const bool equal = channel_equal(extract_channel(lhs), extract_channel(rhs));
            check.expect(equal, where + " changes the channel");
            if (!equal) {
                check.expect(oracle_equal(lhs, rhs) == equal, where + ": oracle disagrees");
            }
            const bool pure = std::all_of(inst.pattern.begin(), inst.pattern.end(), is_unitary_gate) &&
                              std::all_of(inst.replacement.begin(), inst.replacement.end(), is_unitary_gate);
            if (pure && id != RuleId::R1_TargetPlus && id != RuleId::R1_ControlZero) {
                check.expect(unitary_equal(build_unitary(lhs), build_unitary(rhs), false), where + " unitary");
            }
        }
    }
}

// 3. Distributed CNOT as an exact 8x8 identity.
void distributed_cnot(Check &check) {
    std::vector<std::uint64_t> image(8);
    for (std::uint64_t x = 0; x < 8; ++x) {
        image[x] = x ^ ((x >> 2) & 1);
    }
    const ComplexMatrix expected = testing::permutation_matrix(3, image);
    const Bindings b{{{"c", Qubit{0}}, {"a", Qubit{1}}, {"t", Qubit{2}}}, {}};
    for (std::size_t vi = 0; vi < rule_variants(RuleId::R5_DistributeCNOT).size(); ++vi) {
        const Instantiation inst = instantiate(RuleId::R5_DistributeCNOT, Direction::Forward, vi, b);
        check.expect(max_abs(build_unitary(gates(3, inst.replacement)) - expected) <= 1e-12, "R5 variant");
    }
}

// 4. CNOT mirror and parallel-to-lambda identities.
void mirror_and_lambda(Check &check) {
    struct Case {
        RuleId id;
        Bindings b;
    };
    const std::vector<Case> cases = {
        {RuleId::R6_CNOTMirror, {{{"a", Qubit{0}}, {"b", Qubit{1}}, {"c", Qubit{2}}}, {}}},
        {RuleId::R7_ParallelToLambda, {{{"c", Qubit{0}}, {"t1", Qubit{1}}, {"t2", Qubit{2}}}, {}}},
    };
    for (const auto &[id, b] : cases) {
        for (std::size_t vi = 0; vi < rule_variants(id).size(); ++vi) {
            const Instantiation inst = instantiate(id, Direction::Forward, vi, b);
            const Circuit lhs = gates(3, inst.pattern);
            const Circuit rhs = gates(3, inst.replacement);
            std::vector<std::uint64_t> image(8);
            for (std::uint64_t v = 0; v < 8; ++v) {
                std::uint64_t x = v >> 2, y = (v >> 1) & 1, z = v & 1;
                // Apply the pattern's CNOTs as XOR updates on (x, y, z).
                for (const auto &instr : inst.pattern) {
                    const auto &g = std::get<Gate2>(instr);
                    std::uint64_t *bits[] = {&x, &y, &z};
                    *bits[g.target.index] ^= *bits[g.control.index];
                }
                image[v] = (x << 2) | (y << 1) | z;
                check.expect(basis_image(lhs, v) == image[v], std::string(rule_name(id)) + " pattern arithmetic");
                check.expect(basis_image(rhs, v) == image[v], std::string(rule_name(id)) + " replacement arithmetic");
            }
            const ComplexMatrix p = testing::permutation_matrix(3, image);
            check.expect(max_abs(build_unitary(lhs) - p) <= 1e-12, std::string(rule_name(id)) + " lhs unitary");
            check.expect(max_abs(build_unitary(rhs) - p) <= 1e-12, std::string(rule_name(id)) + " rhs unitary");
        }
    }
}

// 5. Teleportation.
void teleportation(Check &check) {
    const Circuit c = make(Scenario::Teleportation);
    check.expect(channel_equal(extract_channel(c), unitary_channel(ComplexMatrix::Identity(2, 2))), "channel");
    channels_agree(c, parse("qubits 1\ncbits 0\n"), check, "teleportation vs wire");
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = testing::random_state(rng, 1);
        for (const auto &b : run(c, psi)) {
            const ComplexVector out = free_wires(b.state, {{0, *b.outcome[0]}, {1, *b.outcome[1]}});
            check.expect(testing::fidelity(psi.amplitudes(), out) >= 1.0 - 1e-9, "branch fidelity");
        }
    }
}

// 6. Dense coding.
void dense_coding(Check &check) {
    std::string text(scenario_text(Scenario::DenseFull));
    text.replace(text.find("cbits 0"), 7, "cbits 2");
    const Circuit measured = parse(text + "\nMEASURE q2 c0\nMEASURE q3 c1\n");
    const Circuit encode = make(Scenario::DenseEncode);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const StateVector in = StateVector::basis(2, static_cast<std::uint64_t>(2 * a + b));
            const auto decoded = run(measured, in);
            check.expect(decoded.size() == 1 && std::abs(decoded[0].probability - 1.0) <= 1e-9 &&
                             *decoded[0].outcome[0] == (a == 1) && *decoded[0].outcome[1] == (b == 1),
                         "round trip");
            const auto encoded = run(encode, in);
            const ComplexVector carrier = free_wires(encoded[0].state, {{0, a == 1}, {1, b == 1}});
            check.expect(std::abs(std::abs(carrier.dot(bell(a, b))) - 1.0) <= 1e-9, "carrier is a Bell state");
        }
    }
    const Circuit copy =
        parse("qubits 4\ncbits 0\nPREP q2 0\nPREP q3 0\nDISCARD q0\nDISCARD q1\nCNOT q0 q2\nCNOT q1 q3\n");
    check.expect(!channels_agree(copy, parse("qubits 2\ncbits 0\n"), check, "copy vs transfer"),
                 "copy reported equivalent to a two-qubit transfer");
}

// 7. Gate teleportation and the resource state.
void gate_teleportation(Check &check) {
    const UnitaryMatrix cnot = build_unitary(parse("qubits 2\ncbits 0\nCNOT q0 q1\n"));
    check.expect(channel_equal(extract_channel(make(Scenario::GateTeleportation)), unitary_channel(cnot)), "channel");
    const auto branches = run(make(Scenario::Chi), StateVector::basis(0, 0));
    check.expect(branches.size() == 1, "chi is deterministic");
    for (std::size_t i = 0; i < 16; ++i) {
        const bool support = i == 0 || i == 3 || i == 13 || i == 14;
        check.expect(std::abs(branches[0].state[i] - Complex(support ? 0.5 : 0.0)) <= 1e-12, "chi amplitude");
    }
}

// 8. Derivation replays.
void derivations(Check &check) {
    for (Derivation d : all_derivations()) {
        const DerivationTrace t = derive(d);
        check.expect(!t.steps.empty() && t.all_verified(), std::string(derivation_name(d)) + " has unverified steps");
        check.expect(t.final_circuit() == make(derivation_target(d)),
                     std::string(derivation_name(d)) + " misses its target");
    }
}

// 9. Branch enumeration against the deferred-measurement unitary route.
void deferred_cross_path(Check &check) {
    int compared = 0;
    for (Scenario s : all_scenarios()) {
        const Circuit c = make(s);
        const bool measures = std::any_of(c.body().begin(), c.body().end(),
                                          [](const Instruction &i) { return std::holds_alternative<Measure>(i); });
        if (!measures) {
            continue;
        }
        check.expect(channel_equal(extract_channel(c), extract_channel_deferred(c)), std::string(scenario_name(s)));
        ++compared;
    }
    check.expect(compared >= 2, "too few scenarios with measurement");
}

// 10. simplify halts within its bound and is reproducible.
void simplify_termination(Check &check) {
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = testing::random_circuit(rng);
        const DerivationTrace a = simplify(c);
        const DerivationTrace b = simplify(c);
        const std::size_t n = c.body().size();
        check.expect(a.steps.size() <= n * n, "step bound exceeded");
        check.expect(a.all_verified(), "unverified simplification step");
        check.expect(serialize(a.final_circuit()) == serialize(b.final_circuit()) && render_trace(a) == render_trace(b),
                     "non-deterministic output");
    }
}

}  // namespace
}  // namespace qcequiv

int main() {
    using qcequiv::Check;
    const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
        {"gate semantics conformance", qcequiv::gate_semantics},
        {"rule soundness suite", qcequiv::rule_soundness},
        {"distributed CNOT identity", qcequiv::distributed_cnot},
        {"CNOT mirror and parallel-to-lambda identities", qcequiv::mirror_and_lambda},
        {"teleportation", qcequiv::teleportation},
        {"dense coding", qcequiv::dense_coding},
        {"gate teleportation", qcequiv::gate_teleportation},
        {"derivation replays", qcequiv::derivations},
        {"deferred-measurement cross-path", qcequiv::deferred_cross_path},
        {"engine termination and determinism", qcequiv::simplify_termination},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Check check;
        try {
            criteria[k].second(check);
        } catch (const std::exception &e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %zu: %s", check.ok() ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str());
        if (!check.ok()) {
            std::printf(" (%s)", check.failure().c_str());
            ++failures;
        }
        std::printf("\n");
    }
    return failures == 0 ? 0 : 1;
}
