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

#include "qcequiv/simulator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace qcequiv {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t dim_of(std::size_t num_wires) {
    return std::size_t{1} << num_wires;
}

/// Packs the bits of `index` found on `wires` (first wire most significant).
std::uint64_t gather_bits(std::uint64_t index, std::uint32_t num_qubits, const std::vector<Qubit> &wires) {
    std::uint64_t out = 0;
    for (Qubit w : wires) {
        out = (out << 1) | ((index & qubit_mask(num_qubits, w)) ? 1 : 0);
    }
    return out;
}

void apply_x(ComplexVector &v, std::uint64_t mask, std::uint64_t control_mask) {
    const auto n = static_cast<std::uint64_t>(v.size());
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == 0 && (i & control_mask) == control_mask) {
            std::swap(v[static_cast<Eigen::Index>(i)], v[static_cast<Eigen::Index>(i | mask)]);
        }
    }
}

void apply_z(ComplexVector &v, std::uint64_t mask) {
    const auto n = static_cast<std::uint64_t>(v.size());
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == mask) {
            v[static_cast<Eigen::Index>(i)] = -v[static_cast<Eigen::Index>(i)];
        }
    }
}

void apply_h(ComplexVector &v, std::uint64_t mask) {
    const auto n = static_cast<std::uint64_t>(v.size());
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == 0) {
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto i1 = static_cast<Eigen::Index>(i | mask);
            const Complex a = v[i0];
            const Complex b = v[i1];
            v[i0] = (a + b) * kInvSqrt2;
            v[i1] = (a - b) * kInvSqrt2;
        }
    }
}

using OutcomeKey = std::vector<std::int8_t>;

OutcomeKey key_of(const std::vector<std::optional<bool>> &outcome) {
    OutcomeKey key;
    key.reserve(outcome.size());
    for (const auto &b : outcome) {
        key.push_back(b ? static_cast<std::int8_t>(*b) : std::int8_t{-1});
    }
    return key;
}

std::vector<Cbit> report_cbits(const Circuit &c) {
    std::vector<Cbit> out;
    for (std::uint32_t j = 0; j < c.num_cbits(); ++j) {
        if (c.cbit_role(Cbit{j}) == CbitRole::Report) {
            out.push_back(Cbit{j});
        }
    }
    return out;
}

std::vector<ComplexMatrix> drop_zero(std::map<std::pair<OutcomeKey, std::uint64_t>, ComplexMatrix> &ops) {
    std::vector<ComplexMatrix> out;
    for (auto &[key, k] : ops) {
        if (k.cwiseAbs().maxCoeff() > kPruneThreshold) {
            out.push_back(std::move(k));
        }
    }
    return out;
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits, ComplexVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(num_qubits)) {
        throw SimulationError("state of " + std::to_string(num_qubits) + " qubits needs " +
                              std::to_string(dim_of(num_qubits)) + " amplitudes, got " +
                              std::to_string(amplitudes_.size()));
    }
}

StateVector StateVector::basis(std::uint32_t num_qubits, std::uint64_t index) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    if (index >= dim_of(num_qubits)) {
        throw SimulationError("basis index out of range");
    }
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(num_qubits, std::move(v));
}

void apply_gate_inplace(ComplexVector &amplitudes, std::uint32_t num_qubits, const Instruction &instr) {
    if (static_cast<std::size_t>(amplitudes.size()) != dim_of(num_qubits)) {
        throw SimulationError("dimension mismatch between state and qubit count");
    }
    for (Qubit q : touched_qubits(instr)) {
        if (q.index >= num_qubits) {
            throw SimulationError("gate " + to_string(instr) + " is out of range for " + std::to_string(num_qubits) +
                                  " qubits");
        }
    }
    if (const auto *g = std::get_if<Gate1>(&instr)) {
        const auto mask = qubit_mask(num_qubits, g->target);
        switch (g->kind) {
            case Gate1Kind::H:
                apply_h(amplitudes, mask);
                break;
            case Gate1Kind::X:
                apply_x(amplitudes, mask, 0);
                break;
            case Gate1Kind::Z:
                apply_z(amplitudes, mask);
                break;
        }
        return;
    }
    if (const auto *g = std::get_if<Gate2>(&instr)) {
        if (g->control == g->target) {
            throw SimulationError("control and target coincide in " + to_string(instr));
        }
        const auto cm = qubit_mask(num_qubits, g->control);
        const auto tm = qubit_mask(num_qubits, g->target);
        if (g->kind == Gate2Kind::CNOT) {
            apply_x(amplitudes, tm, cm);
        } else {
            apply_z(amplitudes, cm | tm);
        }
        return;
    }
    throw SimulationError("'" + to_string(instr) + "' is not a unitary gate");
}

StateVector apply_gate(const StateVector &state, const Instruction &instr) {
    ComplexVector v = state.amplitudes();
    apply_gate_inplace(v, state.num_qubits(), instr);
    return StateVector(state.num_qubits(), std::move(v));
}

std::string outcome_label(const std::vector<std::optional<bool>> &outcome) {
    std::string out;
    for (std::size_t j = 0; j < outcome.size(); ++j) {
        if (!outcome[j]) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += "c" + std::to_string(j) + "=" + (*outcome[j] ? "1" : "0");
    }
    return out.empty() ? "-" : out;
}

StateVector initial_state(const Circuit &c, const StateVector &input) {
    const auto inputs = c.inputs();
    if (input.num_qubits() != inputs.size()) {
        throw SimulationError("input state has " + std::to_string(input.num_qubits()) + " qubits but the circuit has " +
                              std::to_string(inputs.size()) + " input wires");
    }
    if (std::abs(input.norm() - 1.0) > kEqualityTolerance) {
        throw SimulationError("input state is not normalized");
    }
    const std::uint32_t n = c.num_qubits();
    ComplexVector v(static_cast<Eigen::Index>(dim_of(n)));
    for (std::uint64_t x = 0; x < dim_of(n); ++x) {
        Complex amp = input[gather_bits(x, n, inputs)];
        for (std::uint32_t q = 0; q < n && amp != Complex{0.0}; ++q) {
            const auto &p = c.prep(Qubit{q});
            if (!p) {
                continue;
            }
            const bool bit = (x & qubit_mask(n, Qubit{q})) != 0;
            switch (p->kind) {
                case PrepKind::Zero:
                    if (bit) {
                        amp = 0.0;
                    }
                    break;
                case PrepKind::Plus:
                    amp *= kInvSqrt2;
                    break;
                case PrepKind::Bell:
                    if (p->partner.index > q) {
                        const bool other = (x & qubit_mask(n, p->partner)) != 0;
                        amp = bit == other ? amp * kInvSqrt2 : Complex{0.0};
                    }
                    break;
            }
        }
        v[static_cast<Eigen::Index>(x)] = amp;
    }
    return StateVector(n, std::move(v));
}

std::vector<Branch> run(const Circuit &c, const StateVector &input) {
    c.validate();
    const std::uint32_t n = c.num_qubits();
    std::vector<Branch> branches;
    branches.push_back(Branch{std::vector<std::optional<bool>>(c.num_cbits()), 1.0, initial_state(c, input)});

    for (const Instruction &instr : c.body()) {
        if (is_unitary_gate(instr)) {
            for (auto &b : branches) {
                b.state = apply_gate(b.state, instr);
            }
        } else if (const auto *m = std::get_if<Measure>(&instr)) {
            const auto mask = qubit_mask(n, m->target);
            std::vector<Branch> next;
            next.reserve(branches.size() * 2);
            for (auto &b : branches) {
                const ComplexVector &amps = b.state.amplitudes();
                double p1 = 0.0;
                for (Eigen::Index x = 0; x < amps.size(); ++x) {
                    if (static_cast<std::uint64_t>(x) & mask) {
                        p1 += std::norm(amps[x]);
                    }
                }
                const double p0 = std::max(0.0, 1.0 - p1);
                for (int bit = 0; bit < 2; ++bit) {
                    const double p = bit ? p1 : p0;
                    if (b.probability * p < kPruneThreshold) {
                        continue;
                    }
                    ComplexVector projected = amps;
                    for (Eigen::Index x = 0; x < projected.size(); ++x) {
                        const bool set = (static_cast<std::uint64_t>(x) & mask) != 0;
                        if (set != static_cast<bool>(bit)) {
                            projected[x] = 0.0;
                        }
                    }
                    projected /= projected.norm();
                    Branch child{b.outcome, b.probability * p, StateVector(n, std::move(projected))};
                    child.outcome[m->result.index] = bit != 0;
                    next.push_back(std::move(child));
                }
            }
            branches = std::move(next);
        } else if (const auto *g = std::get_if<ClassicalCtrl>(&instr)) {
            const Instruction gate = g->kind == CtrlKind::X ? Instruction{Gate1{Gate1Kind::X, g->target}}
                                                            : Instruction{Gate1{Gate1Kind::Z, g->target}};
            for (auto &b : branches) {
                const auto &bit = b.outcome[g->control.index];
                if (!bit) {
                    throw SimulationError("classical wire c" + std::to_string(g->control.index) +
                                          " used before assignment");
                }
                if (*bit) {
                    b.state = apply_gate(b.state, gate);
                }
            }
        } else if (const auto *x = std::get_if<ClassicalXor>(&instr)) {
            for (auto &b : branches) {
                const auto &a = b.outcome[x->a.index];
                const auto &bb = b.outcome[x->b.index];
                if (!a || !bb) {
                    throw SimulationError("XOR reads an unassigned classical wire");
                }
                b.outcome[x->out.index] = *a != *bb;
            }
        }
    }
    return branches;
}

UnitaryMatrix build_unitary(const Circuit &c) {
    c.validate();
    for (std::uint32_t q = 0; q < c.num_qubits(); ++q) {
        if (c.prep(Qubit{q})) {
            throw SimulationError("build_unitary needs a circuit without preparation directives");
        }
    }
    for (const auto &instr : c.body()) {
        if (!is_unitary_gate(instr)) {
            throw SimulationError("'" + to_string(instr) + "' is not a unitary gate");
        }
    }
    const auto d = static_cast<Eigen::Index>(dim_of(c.num_qubits()));
    UnitaryMatrix u = UnitaryMatrix::Identity(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        ComplexVector col = u.col(j);
        for (const auto &instr : c.body()) {
            apply_gate_inplace(col, c.num_qubits(), instr);
        }
        u.col(j) = col;
    }
    return u;
}

Channel::Channel(std::size_t input_dim, std::size_t output_dim, std::vector<ComplexMatrix> kraus)
    : input_dim_(input_dim), output_dim_(output_dim), kraus_(std::move(kraus)) {
    for (const auto &k : kraus_) {
        if (static_cast<std::size_t>(k.rows()) != output_dim_ || static_cast<std::size_t>(k.cols()) != input_dim_) {
            throw SimulationError("Kraus operator has the wrong shape");
        }
    }
}

ComplexMatrix Channel::choi_factor() const {
    const auto n = static_cast<Eigen::Index>(input_dim_ * output_dim_);
    ComplexMatrix f(n, static_cast<Eigen::Index>(kraus_.size()));
    for (std::size_t k = 0; k < kraus_.size(); ++k) {
        for (std::size_t o = 0; o < output_dim_; ++o) {
            for (std::size_t i = 0; i < input_dim_; ++i) {
                f(static_cast<Eigen::Index>(o * input_dim_ + i), static_cast<Eigen::Index>(k)) =
                    kraus_[k](static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
            }
        }
    }
    return f;
}

ComplexMatrix Channel::choi() const {
    const ComplexMatrix f = choi_factor();
    return f * f.adjoint();
}

double Channel::completeness_error() const {
    const auto d = static_cast<Eigen::Index>(input_dim_);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &k : kraus_) {
        sum += k.adjoint() * k;
    }
    return (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

ComplexMatrix Channel::apply(const ComplexVector &input) const {
    if (static_cast<std::size_t>(input.size()) != input_dim_) {
        throw SimulationError("input has the wrong dimension for this channel");
    }
    const auto d = static_cast<Eigen::Index>(output_dim_);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (const auto &k : kraus_) {
        const ComplexVector out = k * input;
        rho += out * out.adjoint();
    }
    return rho;
}

Channel extract_channel(const Circuit &c) {
    c.validate();
    const auto inputs = c.inputs();
    const auto outputs = c.outputs();
    const auto discards = c.discards();
    const std::uint32_t n = c.num_qubits();
    const std::size_t din = dim_of(inputs.size());
    const auto reports = report_cbits(c);
    const std::size_t dq = dim_of(outputs.size());
    const std::size_t dout = dq << reports.size();

    std::map<std::pair<OutcomeKey, std::uint64_t>, ComplexMatrix> ops;
    for (std::uint64_t i = 0; i < din; ++i) {
        const auto in = StateVector::basis(static_cast<std::uint32_t>(inputs.size()), i);
        for (const Branch &b : run(c, in)) {
            const OutcomeKey key = key_of(b.outcome);
            std::uint64_t reported = 0;
            for (Cbit r : reports) {
                reported = (reported << 1) | (b.outcome[r.index].value_or(false) ? 1 : 0);
            }
            const double scale = std::sqrt(b.probability);
            const ComplexVector &amps = b.state.amplitudes();
            for (Eigen::Index x = 0; x < amps.size(); ++x) {
                if (amps[x] == Complex{0.0}) {
                    continue;
                }
                const auto ux = static_cast<std::uint64_t>(x);
                auto [it, fresh] = ops.try_emplace({key, gather_bits(ux, n, discards)});
                if (fresh) {
                    it->second = ComplexMatrix::Zero(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din));
                }
                const std::uint64_t row = reported * dq + gather_bits(ux, n, outputs);
                it->second(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) += scale * amps[x];
            }
        }
    }
    return Channel(din, dout, drop_zero(ops));
}

namespace {

struct Deferred {
    Circuit circuit;
    std::vector<std::set<std::uint32_t>> parity;
};

Deferred defer(const Circuit &c) {
    c.validate();
    std::vector<std::set<std::uint32_t>> parity(c.num_cbits());
    std::set<std::uint32_t> measured;
    std::vector<Instruction> gates;
    std::vector<Instruction> tail;

    auto reject = [](const Instruction &instr) {
        throw SimulationError("cannot defer measurements: '" + to_string(instr) +
                              "' acts non-diagonally on a measured qubit");
    };
    auto is_measured = [&](Qubit q) { return measured.count(q.index) != 0; };

    for (const Instruction &instr : c.body()) {
        if (const auto *g = std::get_if<Gate1>(&instr)) {
            if (g->kind != Gate1Kind::Z && is_measured(g->target)) {
                reject(instr);
            }
            gates.push_back(instr);
        } else if (const auto *g2 = std::get_if<Gate2>(&instr)) {
            if (g2->kind == Gate2Kind::CNOT && is_measured(g2->target)) {
                reject(instr);
            }
            gates.push_back(instr);
        } else if (const auto *m = std::get_if<Measure>(&instr)) {
            measured.insert(m->target.index);
            parity[m->result.index] = {m->target.index};
            tail.push_back(instr);
        } else if (const auto *x = std::get_if<ClassicalXor>(&instr)) {
            std::set<std::uint32_t> out;
            std::set_symmetric_difference(parity[x->a.index].begin(), parity[x->a.index].end(),
                                          parity[x->b.index].begin(), parity[x->b.index].end(),
                                          std::inserter(out, out.begin()));
            parity[x->out.index] = std::move(out);
        } else if (const auto *cc = std::get_if<ClassicalCtrl>(&instr)) {
            if (cc->kind == CtrlKind::X && is_measured(cc->target)) {
                reject(instr);
            }
            for (std::uint32_t q : parity[cc->control.index]) {
                if (q == cc->target.index) {
                    reject(instr);
                }
                gates.push_back(Gate2{cc->kind == CtrlKind::X ? Gate2Kind::CNOT : Gate2Kind::CZ, Qubit{q}, cc->target});
            }
        }
    }

    Circuit out = c;
    out.pin_roles();
    gates.insert(gates.end(), tail.begin(), tail.end());
    out.set_body(std::move(gates));
    return {std::move(out), std::move(parity)};
}

}  // namespace

Circuit defer_measurements(const Circuit &c) {
    return defer(c).circuit;
}

Channel extract_channel_deferred(const Circuit &c) {
    const auto [deferred, parity] = defer(c);
    const auto reports = report_cbits(c);
    const std::uint32_t n = c.num_qubits();
    const auto inputs = deferred.inputs();
    const auto outputs = deferred.outputs();
    const auto discards = deferred.discards();

    Circuit unitary_part(n, 0);
    std::vector<Qubit> measured;
    for (const auto &instr : deferred.body()) {
        if (const auto *m = std::get_if<Measure>(&instr)) {
            if (std::find(measured.begin(), measured.end(), m->target) == measured.end()) {
                measured.push_back(m->target);
            }
        } else {
            unitary_part.append(instr);
        }
    }
    std::sort(measured.begin(), measured.end());
    const UnitaryMatrix u = build_unitary(unitary_part);

    const std::size_t din = dim_of(inputs.size());
    const std::size_t dq = dim_of(outputs.size());
    const std::size_t dout = dq << reports.size();
    std::map<std::pair<OutcomeKey, std::uint64_t>, ComplexMatrix> ops;
    for (std::uint64_t i = 0; i < din; ++i) {
        const auto prepared =
            initial_state(deferred, StateVector::basis(static_cast<std::uint32_t>(inputs.size()), i));
        const ComplexVector column = u * prepared.amplitudes();
        for (Eigen::Index x = 0; x < column.size(); ++x) {
            if (std::abs(column[x]) < kPruneThreshold) {
                continue;
            }
            const auto ux = static_cast<std::uint64_t>(x);
            OutcomeKey key;
            for (Qubit q : measured) {
                key.push_back((ux & qubit_mask(n, q)) ? 1 : 0);
            }
            auto [it, fresh] = ops.try_emplace({key, gather_bits(ux, n, discards)});
            if (fresh) {
                it->second = ComplexMatrix::Zero(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din));
            }
            std::uint64_t reported = 0;
            for (Cbit r : reports) {
                bool bit = false;
                for (std::uint32_t q : parity[r.index]) {
                    bit ^= (ux & qubit_mask(n, Qubit{q})) != 0;
                }
                reported = (reported << 1) | (bit ? 1 : 0);
            }
            const std::uint64_t row = reported * dq + gather_bits(ux, n, outputs);
            it->second(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) += column[x];
        }
    }
    return Channel(din, dout, drop_zero(ops));
}

}  // namespace qcequiv
