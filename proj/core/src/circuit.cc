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

#include "qcequiv/circuit.h"

#include <algorithm>
#include <sstream>

namespace qcequiv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string qname(Qubit q) {
    return "q" + std::to_string(q.index);
}
std::string cname(Cbit c) {
    return "c" + std::to_string(c.index);
}

Qubit shifted(Qubit q, std::uint32_t at, int delta) {
    if (q.index >= at) {
        q.index = static_cast<std::uint32_t>(static_cast<int>(q.index) + delta);
    }
    return q;
}

Instruction shift_qubits(const Instruction &instr, std::uint32_t at, int delta) {
    return std::visit(
        overloaded{
            [&](Gate1 g) -> Instruction {
                g.target = shifted(g.target, at, delta);
                return g;
            },
            [&](Gate2 g) -> Instruction {
                g.control = shifted(g.control, at, delta);
                g.target = shifted(g.target, at, delta);
                return g;
            },
            [&](Measure m) -> Instruction {
                m.target = shifted(m.target, at, delta);
                return m;
            },
            [&](ClassicalCtrl g) -> Instruction {
                g.target = shifted(g.target, at, delta);
                return g;
            },
            [&](ClassicalXor x) -> Instruction { return x; },
        },
        instr);
}

}  // namespace

bool is_unitary_gate(const Instruction &instr) {
    return std::holds_alternative<Gate1>(instr) || std::holds_alternative<Gate2>(instr);
}

bool is_quantum_gate(const Instruction &instr) {
    return is_unitary_gate(instr);
}

bool is_classically_controlled(const Instruction &instr) {
    return std::holds_alternative<ClassicalCtrl>(instr);
}

std::vector<Qubit> touched_qubits(const Instruction &instr) {
    return std::visit(
        overloaded{
            [](const Gate1 &g) { return std::vector<Qubit>{g.target}; },
            [](const Gate2 &g) { return std::vector<Qubit>{g.control, g.target}; },
            [](const Measure &m) { return std::vector<Qubit>{m.target}; },
            [](const ClassicalCtrl &g) { return std::vector<Qubit>{g.target}; },
            [](const ClassicalXor &) { return std::vector<Qubit>{}; },
        },
        instr);
}

std::vector<Cbit> read_cbits(const Instruction &instr) {
    if (const auto *g = std::get_if<ClassicalCtrl>(&instr)) {
        return {g->control};
    }
    if (const auto *x = std::get_if<ClassicalXor>(&instr)) {
        return {x->a, x->b};
    }
    return {};
}

std::optional<Cbit> written_cbit(const Instruction &instr) {
    if (const auto *m = std::get_if<Measure>(&instr)) {
        return m->result;
    }
    if (const auto *x = std::get_if<ClassicalXor>(&instr)) {
        return x->out;
    }
    return std::nullopt;
}

std::vector<Cbit> touched_cbits(const Instruction &instr) {
    auto out = read_cbits(instr);
    if (auto w = written_cbit(instr)) {
        out.push_back(*w);
    }
    return out;
}

std::vector<WireRef> support(const Instruction &instr) {
    std::vector<WireRef> out;
    for (Qubit q : touched_qubits(instr)) {
        out.push_back(wire(q));
    }
    for (Cbit c : touched_cbits(instr)) {
        out.push_back(wire(c));
    }
    return out;
}

bool touches(const Instruction &instr, Qubit q) {
    auto qs = touched_qubits(instr);
    return std::find(qs.begin(), qs.end(), q) != qs.end();
}

bool touches(const Instruction &instr, Cbit c) {
    auto cs = touched_cbits(instr);
    return std::find(cs.begin(), cs.end(), c) != cs.end();
}

bool supports_disjoint(const Instruction &a, const Instruction &b) {
    auto sa = support(a);
    for (const WireRef &w : support(b)) {
        if (std::find(sa.begin(), sa.end(), w) != sa.end()) {
            return false;
        }
    }
    return true;
}

std::string to_string(const Instruction &instr) {
    return std::visit(
        overloaded{
            [](const Gate1 &g) {
                static constexpr const char *names[] = {"H", "X", "Z"};
                return std::string(names[static_cast<int>(g.kind)]) + " " + qname(g.target);
            },
            [](const Gate2 &g) {
                return std::string(g.kind == Gate2Kind::CNOT ? "CNOT " : "CZ ") + qname(g.control) + " " +
                       qname(g.target);
            },
            [](const Measure &m) { return "MEASURE " + qname(m.target) + " " + cname(m.result); },
            [](const ClassicalCtrl &g) {
                return std::string(g.kind == CtrlKind::X ? "CX " : "CZC ") + cname(g.control) + " " + qname(g.target);
            },
            [](const ClassicalXor &x) { return "XOR " + cname(x.a) + " " + cname(x.b) + " " + cname(x.out); },
        },
        instr);
}

Circuit::Circuit(std::uint32_t num_qubits, std::uint32_t num_cbits)
    : num_qubits_(num_qubits),
      num_cbits_(num_cbits),
      preps_(num_qubits),
      roles_(num_qubits),
      cbit_roles_(num_cbits, CbitRole::Scratch) {
}

const std::optional<Prep> &Circuit::prep(Qubit q) const {
    if (q.index >= num_qubits_) {
        throw CircuitError("qubit " + qname(q) + " is not declared");
    }
    return preps_[q.index];
}

bool Circuit::is_measured(Qubit q) const {
    return std::any_of(body_.begin(), body_.end(), [&](const Instruction &i) {
        const auto *m = std::get_if<Measure>(&i);
        return m != nullptr && m->target == q;
    });
}

WireRole Circuit::role(Qubit q) const {
    if (q.index >= num_qubits_) {
        throw CircuitError("qubit " + qname(q) + " is not declared");
    }
    if (roles_[q.index]) {
        return *roles_[q.index];
    }
    return is_measured(q) ? WireRole::Discard : WireRole::Output;
}

bool Circuit::has_explicit_role(Qubit q) const {
    return roles_.at(q.index).has_value();
}

CbitRole Circuit::cbit_role(Cbit c) const {
    if (c.index >= num_cbits_) {
        throw CircuitError("classical wire " + cname(c) + " is not declared");
    }
    return cbit_roles_[c.index];
}

std::vector<Qubit> Circuit::inputs() const {
    std::vector<Qubit> out;
    for (std::uint32_t i = 0; i < num_qubits_; ++i) {
        if (!preps_[i]) {
            out.push_back(Qubit{i});
        }
    }
    return out;
}

std::vector<Qubit> Circuit::outputs() const {
    std::vector<Qubit> out;
    for (std::uint32_t i = 0; i < num_qubits_; ++i) {
        if (role(Qubit{i}) == WireRole::Output) {
            out.push_back(Qubit{i});
        }
    }
    return out;
}

std::vector<Qubit> Circuit::discards() const {
    std::vector<Qubit> out;
    for (std::uint32_t i = 0; i < num_qubits_; ++i) {
        if (role(Qubit{i}) == WireRole::Discard) {
            out.push_back(Qubit{i});
        }
    }
    return out;
}

void Circuit::append(Instruction instr) {
    body_.push_back(std::move(instr));
}

void Circuit::set_body(std::vector<Instruction> body) {
    body_ = std::move(body);
}

void Circuit::set_prep(Qubit q, PrepKind kind) {
    if (kind == PrepKind::Bell) {
        throw CircuitError("use set_bell for Bell-pair preparation");
    }
    prep(q);
    preps_[q.index] = Prep{kind, Qubit{}};
}

void Circuit::set_bell(Qubit a, Qubit b) {
    prep(a);
    prep(b);
    if (a == b) {
        throw CircuitError("BELL needs two distinct wires");
    }
    preps_[a.index] = Prep{PrepKind::Bell, b};
    preps_[b.index] = Prep{PrepKind::Bell, a};
}

void Circuit::clear_prep(Qubit q) {
    const auto &p = prep(q);
    if (p && p->kind == PrepKind::Bell) {
        preps_[p->partner.index].reset();
    }
    preps_[q.index].reset();
}

void Circuit::set_role(Qubit q, WireRole r) {
    prep(q);
    roles_[q.index] = r;
}

void Circuit::set_cbit_role(Cbit c, CbitRole r) {
    cbit_role(c);
    cbit_roles_[c.index] = r;
}

void Circuit::pin_roles() {
    for (std::uint32_t i = 0; i < num_qubits_; ++i) {
        roles_[i] = role(Qubit{i});
    }
}

Qubit Circuit::insert_qubit(std::uint32_t index) {
    if (index > num_qubits_) {
        throw CircuitError("cannot insert qubit at " + std::to_string(index));
    }
    for (auto &p : preps_) {
        if (p && p->kind == PrepKind::Bell) {
            p->partner = shifted(p->partner, index, +1);
        }
    }
    preps_.insert(preps_.begin() + index, std::nullopt);
    roles_.insert(roles_.begin() + index, std::nullopt);
    for (auto &instr : body_) {
        instr = shift_qubits(instr, index, +1);
    }
    ++num_qubits_;
    return Qubit{index};
}

void Circuit::erase_qubit(std::uint32_t index) {
    Qubit q{index};
    prep(q);
    for (const auto &instr : body_) {
        if (touches(instr, q)) {
            throw CircuitError("cannot remove " + qname(q) + ": it is used by " + to_string(instr));
        }
    }
    clear_prep(q);
    preps_.erase(preps_.begin() + index);
    roles_.erase(roles_.begin() + index);
    for (auto &p : preps_) {
        if (p && p->kind == PrepKind::Bell) {
            p->partner = shifted(p->partner, index + 1, -1);
        }
    }
    for (auto &instr : body_) {
        instr = shift_qubits(instr, index + 1, -1);
    }
    --num_qubits_;
}

Cbit Circuit::add_cbit() {
    cbit_roles_.push_back(CbitRole::Scratch);
    return Cbit{num_cbits_++};
}

void Circuit::erase_last_cbit() {
    if (num_cbits_ == 0) {
        throw CircuitError("no classical wire to remove");
    }
    Cbit last{num_cbits_ - 1};
    for (const auto &instr : body_) {
        if (touches(instr, last)) {
            throw CircuitError("cannot remove " + cname(last) + ": it is used by " + to_string(instr));
        }
    }
    cbit_roles_.pop_back();
    --num_cbits_;
}

void Circuit::validate() const {
    for (std::uint32_t i = 0; i < num_qubits_; ++i) {
        const auto &p = preps_[i];
        if (p && p->kind == PrepKind::Bell) {
            const Qubit partner = p->partner;
            if (partner.index >= num_qubits_ || partner.index == i) {
                throw CircuitError("BELL pairing of q" + std::to_string(i) + " is invalid");
            }
            const auto &back = preps_[partner.index];
            if (!back || back->kind != PrepKind::Bell || back->partner.index != i) {
                throw CircuitError("BELL pairing of q" + std::to_string(i) + " is not symmetric");
            }
        }
    }
    std::vector<bool> assigned(num_cbits_, false);
    for (std::size_t k = 0; k < body_.size(); ++k) {
        const Instruction &instr = body_[k];
        for (Qubit q : touched_qubits(instr)) {
            if (q.index >= num_qubits_) {
                throw CircuitError("reference to undeclared quantum wire " + qname(q), k);
            }
        }
        for (Cbit c : touched_cbits(instr)) {
            if (c.index >= num_cbits_) {
                throw CircuitError("reference to undeclared classical wire " + cname(c), k);
            }
        }
        if (const auto *g = std::get_if<Gate2>(&instr); g && g->control == g->target) {
            throw CircuitError("control and target of " + to_string(instr) + " coincide", k);
        }
        for (Cbit c : read_cbits(instr)) {
            if (!assigned[c.index]) {
                throw CircuitError("classical wire " + cname(c) + " read before assignment", k);
            }
        }
        if (auto w = written_cbit(instr)) {
            if (assigned[w->index]) {
                throw CircuitError("classical wire " + cname(*w) + " assigned twice", k);
            }
            assigned[w->index] = true;
        }
    }
}

bool operator==(const Circuit &a, const Circuit &b) {
    if (a.num_qubits_ != b.num_qubits_ || a.num_cbits_ != b.num_cbits_ || a.preps_ != b.preps_ ||
        a.cbit_roles_ != b.cbit_roles_ || a.body_ != b.body_) {
        return false;
    }
    for (std::uint32_t i = 0; i < a.num_qubits_; ++i) {
        if (a.role(Qubit{i}) != b.role(Qubit{i})) {
            return false;
        }
    }
    return true;
}

ParseError::ParseError(std::size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
}

std::string serialize(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits() << "\ncbits " << c.num_cbits();
    for (std::uint32_t i = 0; i < c.num_qubits(); ++i) {
        const auto &p = c.prep(Qubit{i});
        if (!p) {
            continue;
        }
        switch (p->kind) {
            case PrepKind::Zero:
                out << "\nPREP q" << i << " 0";
                break;
            case PrepKind::Plus:
                out << "\nPREP q" << i << " +";
                break;
            case PrepKind::Bell:
                if (p->partner.index > i) {
                    out << "\nBELL q" << i << " q" << p->partner.index;
                }
                break;
        }
    }
    for (std::uint32_t i = 0; i < c.num_qubits(); ++i) {
        const Qubit q{i};
        const WireRole fallback = c.is_measured(q) ? WireRole::Discard : WireRole::Output;
        if (c.role(q) != fallback) {
            out << (c.role(q) == WireRole::Output ? "\nOUTPUT q" : "\nDISCARD q") << i;
        }
    }
    for (std::uint32_t j = 0; j < c.num_cbits(); ++j) {
        if (c.cbit_role(Cbit{j}) == CbitRole::Report) {
            out << "\nREPORT c" << j;
        }
    }
    for (const auto &instr : c.body()) {
        out << "\n" << to_string(instr);
    }
    return out.str();
}

}  // namespace qcequiv
