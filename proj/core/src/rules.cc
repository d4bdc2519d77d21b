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

#include "qcequiv/rules.h"

#include <algorithm>
#include <array>
#include <set>

namespace qcequiv {

namespace {

struct NamedRule {
    RuleId id;
    std::string_view name;
};

constexpr std::array<NamedRule, 18> kRuleNames = {{
    {RuleId::R1_InverseCancel, "R1_InverseCancel"},
    {RuleId::R1_TargetPlus, "R1_TargetPlus"},
    {RuleId::R1_ControlZero, "R1_ControlZero"},
    {RuleId::R2_CZFlip, "R2_CZFlip"},
    {RuleId::R2_CNOTviaCZ, "R2_CNOTviaCZ"},
    {RuleId::R2_CNOTReversal, "R2_CNOTReversal"},
    {RuleId::R2_HMirror, "R2_HMirror"},
    {RuleId::R3_DeferMeasure, "R3_DeferMeasure"},
    {RuleId::R4_XorSubstitute, "R4_XorSubstitute"},
    {RuleId::R5_DistributeCNOT, "R5_DistributeCNOT"},
    {RuleId::R6_CNOTMirror, "R6_CNOTMirror"},
    {RuleId::R7_ParallelToLambda, "R7_ParallelToLambda"},
    {RuleId::Commute, "Commute"},
    {RuleId::DiscardedWireTail, "DiscardedWireTail"},
    {RuleId::MeasureDiscarded, "MeasureDiscarded"},
    {RuleId::IntroduceAncilla, "IntroduceAncilla"},
    {RuleId::FoldBellPrep, "FoldBellPrep"},
    {RuleId::FoldPlusPrep, "FoldPlusPrep"},
}};

TOp h(std::string w) {
    return {TKind::H, {std::move(w)}, {}};
}
TOp x(std::string w) {
    return {TKind::X, {std::move(w)}, {}};
}
TOp z(std::string w) {
    return {TKind::Z, {std::move(w)}, {}};
}
TOp cnot(std::string c, std::string t) {
    return {TKind::CNOT, {std::move(c), std::move(t)}, {}};
}
TOp cz(std::string c, std::string t) {
    return {TKind::CZ, {std::move(c), std::move(t)}, {}};
}
TOp measure(std::string q, std::string r) {
    return {TKind::Measure, {std::move(q)}, {std::move(r)}};
}
TOp cx(std::string r, std::string t) {
    return {TKind::CX, {std::move(t)}, {std::move(r)}};
}
TOp czc(std::string r, std::string t) {
    return {TKind::CZC, {std::move(t)}, {std::move(r)}};
}
TOp xor_op(std::string a, std::string b, std::string out) {
    return {TKind::Xor, {}, {std::move(a), std::move(b), std::move(out)}};
}

std::map<RuleId, std::vector<RuleVariant>> build_variants() {
    std::map<RuleId, std::vector<RuleVariant>> v;
    v[RuleId::R1_InverseCancel] = {
        {"H", {h("w"), h("w")}, {}},
        {"X", {x("w"), x("w")}, {}},
        {"Z", {z("w"), z("w")}, {}},
        {"CNOT", {cnot("c", "t"), cnot("c", "t")}, {}},
        {"CZ", {cz("c", "t"), cz("c", "t")}, {}},
    };
    v[RuleId::R1_TargetPlus] = {{"CNOT", {cnot("c", "t")}, {}}};
    v[RuleId::R1_ControlZero] = {
        {"CNOT", {cnot("c", "t")}, {}},
        {"CZ", {cz("c", "t")}, {}},
    };
    v[RuleId::R2_CZFlip] = {{"CZ", {cz("a", "b")}, {cz("b", "a")}}};
    v[RuleId::R2_CNOTviaCZ] = {{"CNOT", {cnot("c", "t")}, {h("t"), cz("c", "t"), h("t")}}};
    v[RuleId::R2_CNOTReversal] = {
        {"CNOT", {h("c"), h("t"), cnot("c", "t"), h("c"), h("t")}, {cnot("t", "c")}}};
    v[RuleId::R2_HMirror] = {{"CNOT", {h("c"), h("t"), cnot("c", "t")}, {cnot("t", "c"), h("c"), h("t")}}};
    v[RuleId::R3_DeferMeasure] = {
        {"X", {measure("m", "r"), cx("r", "t")}, {cnot("m", "t"), measure("m", "r")}},
        {"Z", {measure("m", "r"), czc("r", "t")}, {cz("m", "t"), measure("m", "r")}},
    };
    v[RuleId::R4_XorSubstitute] = {
        {"X",
         {cnot("a", "b"), measure("a", "r1"), measure("b", "r2"), cx("r2", "t")},
         {measure("a", "r1"), measure("b", "r2"), xor_op("r1", "r2", "r3"), cx("r3", "t")}},
        {"Z",
         {cnot("a", "b"), measure("a", "r1"), measure("b", "r2"), czc("r2", "t")},
         {measure("a", "r1"), measure("b", "r2"), xor_op("r1", "r2", "r3"), czc("r3", "t")}},
    };
    v[RuleId::R5_DistributeCNOT] = {
        {"CACA", {cnot("c", "t")}, {cnot("c", "a"), cnot("a", "t"), cnot("c", "a"), cnot("a", "t")}},
        {"ACAC", {cnot("c", "t")}, {cnot("a", "t"), cnot("c", "a"), cnot("a", "t"), cnot("c", "a")}},
    };
    v[RuleId::R6_CNOTMirror] = {
        {"AB-BC/long-after", {cnot("a", "b"), cnot("b", "c")}, {cnot("b", "c"), cnot("a", "b"), cnot("a", "c")}},
        {"AB-BC/long-before", {cnot("a", "b"), cnot("b", "c")}, {cnot("a", "c"), cnot("b", "c"), cnot("a", "b")}},
        {"BC-AB/long-after", {cnot("b", "c"), cnot("a", "b")}, {cnot("a", "b"), cnot("b", "c"), cnot("a", "c")}},
        {"BC-AB/long-before", {cnot("b", "c"), cnot("a", "b")}, {cnot("a", "c"), cnot("a", "b"), cnot("b", "c")}},
    };
    v[RuleId::R7_ParallelToLambda] = {
        {"CNOT", {cnot("c", "t1"), cnot("c", "t2")}, {cnot("t1", "t2"), cnot("c", "t1"), cnot("t1", "t2")}}};
    v[RuleId::Commute] = {};
    v[RuleId::DiscardedWireTail] = {
        {"H", {h("w")}, {}},
        {"X", {x("w")}, {}},
        {"Z", {z("w")}, {}},
    };
    v[RuleId::MeasureDiscarded] = {{"MEASURE", {}, {measure("w", "r")}}};
    v[RuleId::IntroduceAncilla] = {};
    v[RuleId::FoldBellPrep] = {{"BELL", {cnot("a", "b")}, {}}};
    v[RuleId::FoldPlusPrep] = {{"PLUS", {h("w")}, {}}};
    return v;
}

void collect(const std::vector<TOp> &ops, bool quantum, std::vector<std::string> &out) {
    for (const auto &op : ops) {
        for (const auto &name : quantum ? op.qvars : op.cvars) {
            if (std::find(out.begin(), out.end(), name) == out.end()) {
                out.push_back(name);
            }
        }
    }
}

Qubit lookup_q(const Bindings &b, const std::string &name) {
    auto it = b.qubits.find(name);
    if (it == b.qubits.end()) {
        throw RuleError("missing binding for quantum variable '" + name + "'");
    }
    return it->second;
}

Cbit lookup_c(const Bindings &b, const std::string &name) {
    auto it = b.cbits.find(name);
    if (it == b.cbits.end()) {
        throw RuleError("missing binding for classical variable '" + name + "'");
    }
    return it->second;
}

Instruction concrete(const TOp &op, const Bindings &b) {
    switch (op.kind) {
        case TKind::H:
            return Gate1{Gate1Kind::H, lookup_q(b, op.qvars[0])};
        case TKind::X:
            return Gate1{Gate1Kind::X, lookup_q(b, op.qvars[0])};
        case TKind::Z:
            return Gate1{Gate1Kind::Z, lookup_q(b, op.qvars[0])};
        case TKind::CNOT:
            return Gate2{Gate2Kind::CNOT, lookup_q(b, op.qvars[0]), lookup_q(b, op.qvars[1])};
        case TKind::CZ:
            return Gate2{Gate2Kind::CZ, lookup_q(b, op.qvars[0]), lookup_q(b, op.qvars[1])};
        case TKind::Measure:
            return Measure{lookup_q(b, op.qvars[0]), lookup_c(b, op.cvars[0])};
        case TKind::CX:
            return ClassicalCtrl{CtrlKind::X, lookup_c(b, op.cvars[0]), lookup_q(b, op.qvars[0])};
        case TKind::CZC:
            return ClassicalCtrl{CtrlKind::Z, lookup_c(b, op.cvars[0]), lookup_q(b, op.qvars[0])};
        case TKind::Xor:
            return ClassicalXor{lookup_c(b, op.cvars[0]), lookup_c(b, op.cvars[1]), lookup_c(b, op.cvars[2])};
    }
    throw RuleError("unknown template kind");
}

/// Concrete operands of an instruction in template order.
bool operands(const TOp &op, const Instruction &instr, std::vector<Qubit> &qs, std::vector<Cbit> &cs) {
    if (const auto *g = std::get_if<Gate1>(&instr)) {
        const TKind k = g->kind == Gate1Kind::H ? TKind::H : g->kind == Gate1Kind::X ? TKind::X : TKind::Z;
        qs = {g->target};
        return k == op.kind;
    }
    if (const auto *g = std::get_if<Gate2>(&instr)) {
        qs = {g->control, g->target};
        return op.kind == (g->kind == Gate2Kind::CNOT ? TKind::CNOT : TKind::CZ);
    }
    if (const auto *m = std::get_if<Measure>(&instr)) {
        qs = {m->target};
        cs = {m->result};
        return op.kind == TKind::Measure;
    }
    if (const auto *c = std::get_if<ClassicalCtrl>(&instr)) {
        qs = {c->target};
        cs = {c->control};
        return op.kind == (c->kind == CtrlKind::X ? TKind::CX : TKind::CZC);
    }
    const auto &x = std::get<ClassicalXor>(instr);
    cs = {x.a, x.b, x.out};
    return op.kind == TKind::Xor;
}

template <typename Wire>
bool bind_all(const std::vector<std::string> &names, const std::vector<Wire> &wires,
              std::map<std::string, Wire> &bound) {
    for (std::size_t k = 0; k < names.size(); ++k) {
        auto it = bound.find(names[k]);
        if (it != bound.end()) {
            if (it->second != wires[k]) {
                return false;
            }
            continue;
        }
        for (const auto &[other, w] : bound) {
            if (w == wires[k]) {
                return false;
            }
        }
        bound.emplace(names[k], wires[k]);
    }
    return true;
}

}  // namespace

std::string_view rule_name(RuleId id) {
    for (const auto &r : kRuleNames) {
        if (r.id == id) {
            return r.name;
        }
    }
    return "?";
}

RuleId parse_rule_id(std::string_view name) {
    for (const auto &r : kRuleNames) {
        if (r.name == name) {
            return r.id;
        }
    }
    throw RuleError("unknown rule '" + std::string(name) + "'");
}

std::string_view direction_name(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

Direction reverse(Direction d) {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

const std::vector<RuleId> &catalog_rules() {
    static const std::vector<RuleId> rules = [] {
        std::vector<RuleId> out;
        for (const auto &r : kRuleNames) {
            if (r.id <= RuleId::R7_ParallelToLambda) {
                out.push_back(r.id);
            }
        }
        return out;
    }();
    return rules;
}

const std::vector<RuleId> &all_rules() {
    static const std::vector<RuleId> rules = [] {
        std::vector<RuleId> out;
        for (const auto &r : kRuleNames) {
            out.push_back(r.id);
        }
        return out;
    }();
    return rules;
}

bool is_catalog_rule(RuleId id) {
    return id <= RuleId::R7_ParallelToLambda;
}

const std::vector<RuleVariant> &rule_variants(RuleId id) {
    static const auto table = build_variants();
    return table.at(id);
}

std::vector<std::string> quantum_vars(const RuleVariant &v) {
    std::vector<std::string> out;
    collect(v.lhs, true, out);
    collect(v.rhs, true, out);
    return out;
}

std::vector<std::string> classical_vars(const RuleVariant &v) {
    std::vector<std::string> out;
    collect(v.lhs, false, out);
    collect(v.rhs, false, out);
    return out;
}

std::string to_string(const Bindings &b) {
    std::string out;
    auto add = [&out](const std::string &s) {
        if (!out.empty()) {
            out += ' ';
        }
        out += s;
    };
    for (const auto &[name, q] : b.qubits) {
        add(name + "=q" + std::to_string(q.index));
    }
    for (const auto &[name, c] : b.cbits) {
        add(name + "=c" + std::to_string(c.index));
    }
    return out;
}

Instantiation instantiate(RuleId id, Direction direction, std::size_t variant, const Bindings &bindings) {
    const auto &variants = rule_variants(id);
    if (variant >= variants.size()) {
        throw RuleError(std::string(rule_name(id)) + " has no template variant " + std::to_string(variant));
    }
    const RuleVariant &v = variants[variant];
    std::set<Qubit> seen_q;
    for (const auto &name : quantum_vars(v)) {
        if (!seen_q.insert(lookup_q(bindings, name)).second) {
            throw RuleError("binding is not injective: two variables of " + std::string(rule_name(id)) +
                            " share wire q" + std::to_string(lookup_q(bindings, name).index));
        }
    }
    std::set<Cbit> seen_c;
    for (const auto &name : classical_vars(v)) {
        if (!seen_c.insert(lookup_c(bindings, name)).second) {
            throw RuleError("binding is not injective: two variables of " + std::string(rule_name(id)) +
                            " share wire c" + std::to_string(lookup_c(bindings, name).index));
        }
    }
    Instantiation out;
    const auto &from = direction == Direction::Forward ? v.lhs : v.rhs;
    const auto &to = direction == Direction::Forward ? v.rhs : v.lhs;
    for (const auto &op : from) {
        out.pattern.push_back(concrete(op, bindings));
    }
    for (const auto &op : to) {
        out.replacement.push_back(concrete(op, bindings));
    }
    return out;
}

bool unify(const TOp &op, const Instruction &instr, Bindings &bindings) {
    std::vector<Qubit> qs;
    std::vector<Cbit> cs;
    if (!operands(op, instr, qs, cs)) {
        return false;
    }
    Bindings trial = bindings;
    if (!bind_all(op.qvars, qs, trial.qubits) || !bind_all(op.cvars, cs, trial.cbits)) {
        return false;
    }
    bindings = std::move(trial);
    return true;
}

}  // namespace qcequiv
