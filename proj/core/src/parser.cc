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

#include <charconv>
#include <map>
#include <sstream>

#include "qcequiv/circuit.h"

namespace qcequiv {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) {
            line.tokens.push_back(tok);
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        pos = end + 1;
    }
    return lines;
}

std::uint32_t parse_count(const Line &line, const std::string &tok) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line.number, "expected a non-negative integer, got '" + tok + "'");
    }
    return value;
}

std::uint32_t parse_wire(const Line &line, const std::string &tok, char prefix, std::uint32_t declared) {
    if (tok.size() < 2 || tok[0] != prefix) {
        throw ParseError(line.number, std::string("expected a ") + (prefix == 'q' ? "quantum" : "classical") +
                                          " wire like '" + prefix + "0', got '" + tok + "'");
    }
    std::uint32_t index = parse_count(line, tok.substr(1));
    if (index >= declared) {
        throw ParseError(line.number, "reference to undeclared wire " + tok);
    }
    return index;
}

void expect_arity(const Line &line, std::size_t n) {
    if (line.tokens.size() != n + 1) {
        throw ParseError(line.number, "'" + line.tokens[0] + "' takes " + std::to_string(n) + " operand(s)");
    }
}

}  // namespace

Circuit parse(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "qubits" || lines[0].tokens.size() != 2) {
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header 'qubits N'");
    }
    if (lines.size() < 2 || lines[1].tokens[0] != "cbits" || lines[1].tokens.size() != 2) {
        throw ParseError(lines.size() < 2 ? lines[0].number + 1 : lines[1].number, "expected header 'cbits M'");
    }
    const std::uint32_t nq = parse_count(lines[0], lines[0].tokens[1]);
    const std::uint32_t nc = parse_count(lines[1], lines[1].tokens[1]);
    Circuit circuit(nq, nc);

    std::map<std::uint32_t, std::size_t> prep_line;
    std::map<std::uint32_t, std::size_t> input_line;
    std::map<std::uint32_t, std::pair<WireRole, std::size_t>> role_line;
    std::map<std::uint32_t, std::pair<CbitRole, std::size_t>> cbit_role_line;
    std::vector<std::size_t> body_lines;

    auto q = [&](const Line &line, std::size_t k) { return Qubit{parse_wire(line, line.tokens[k], 'q', nq)}; };
    auto c = [&](const Line &line, std::size_t k) { return Cbit{parse_wire(line, line.tokens[k], 'c', nc)}; };
    auto claim_prep = [&](const Line &line, Qubit w) {
        if (auto it = prep_line.find(w.index); it != prep_line.end()) {
            throw ParseError(line.number, "q" + std::to_string(w.index) + " already prepared on line " +
                                              std::to_string(it->second));
        }
        prep_line[w.index] = line.number;
    };

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line &line = lines[i];
        const std::string &op = line.tokens[0];
        if (op == "qubits" || op == "cbits") {
            throw ParseError(line.number, "duplicate header '" + op + "'");
        } else if (op == "PREP") {
            expect_arity(line, 2);
            Qubit w = q(line, 1);
            claim_prep(line, w);
            const std::string &state = line.tokens[2];
            if (state == "0") {
                circuit.set_prep(w, PrepKind::Zero);
            } else if (state == "+") {
                circuit.set_prep(w, PrepKind::Plus);
            } else {
                throw ParseError(line.number, "PREP state must be '0' or '+', got '" + state + "'");
            }
        } else if (op == "BELL") {
            expect_arity(line, 2);
            Qubit a = q(line, 1);
            Qubit b = q(line, 2);
            if (a == b) {
                throw ParseError(line.number, "BELL needs two distinct wires");
            }
            claim_prep(line, a);
            claim_prep(line, b);
            circuit.set_bell(a, b);
        } else if (op == "INPUT") {
            expect_arity(line, 1);
            input_line[q(line, 1).index] = line.number;
        } else if (op == "OUTPUT" || op == "DISCARD") {
            expect_arity(line, 1);
            Qubit w = q(line, 1);
            WireRole r = op == "OUTPUT" ? WireRole::Output : WireRole::Discard;
            if (auto it = role_line.find(w.index); it != role_line.end() && it->second.first != r) {
                throw ParseError(line.number, "conflicting roles for " + line.tokens[1]);
            }
            role_line[w.index] = {r, line.number};
            circuit.set_role(w, r);
        } else if (op == "REPORT" || op == "SCRATCH") {
            expect_arity(line, 1);
            Cbit w = c(line, 1);
            CbitRole r = op == "REPORT" ? CbitRole::Report : CbitRole::Scratch;
            if (auto it = cbit_role_line.find(w.index); it != cbit_role_line.end() && it->second.first != r) {
                throw ParseError(line.number, "conflicting roles for " + line.tokens[1]);
            }
            cbit_role_line[w.index] = {r, line.number};
            circuit.set_cbit_role(w, r);
        } else {
            Instruction instr;
            if (op == "H" || op == "X" || op == "Z") {
                expect_arity(line, 1);
                Gate1Kind kind = op == "H" ? Gate1Kind::H : op == "X" ? Gate1Kind::X : Gate1Kind::Z;
                instr = Gate1{kind, q(line, 1)};
            } else if (op == "CNOT" || op == "CZ") {
                expect_arity(line, 2);
                instr = Gate2{op == "CNOT" ? Gate2Kind::CNOT : Gate2Kind::CZ, q(line, 1), q(line, 2)};
            } else if (op == "MEASURE") {
                expect_arity(line, 2);
                instr = Measure{q(line, 1), c(line, 2)};
            } else if (op == "CX" || op == "CZC") {
                expect_arity(line, 2);
                instr = ClassicalCtrl{op == "CX" ? CtrlKind::X : CtrlKind::Z, c(line, 1), q(line, 2)};
            } else if (op == "XOR") {
                expect_arity(line, 3);
                instr = ClassicalXor{c(line, 1), c(line, 2), c(line, 3)};
            } else {
                throw ParseError(line.number, "unknown instruction '" + op + "'");
            }
            circuit.append(instr);
            body_lines.push_back(line.number);
        }
    }

    for (const auto &[index, number] : input_line) {
        if (auto it = prep_line.find(index); it != prep_line.end()) {
            throw ParseError(std::max(number, it->second),
                             "q" + std::to_string(index) + " is an INPUT and cannot be prepared");
        }
    }

    try {
        circuit.validate();
    } catch (const CircuitError &e) {
        std::size_t number = lines.back().number;
        if (e.instruction()) {
            number = body_lines[*e.instruction()];
        }
        throw ParseError(number, e.what());
    }
    return circuit;
}

}  // namespace qcequiv
