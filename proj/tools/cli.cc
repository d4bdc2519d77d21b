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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "qcequiv/engine.h"
#include "qcequiv/equivalence.h"
#include "qcequiv/scenarios.h"

namespace qcequiv::cli {

namespace {

/// Carries an exit code out of a subcommand.
struct Exit {
    int code;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string &s, const std::string &whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (s.empty() || used != s.size()) {
        throw std::invalid_argument("malformed amplitude '" + whole + "'");
    }
    return v;
}

Complex parse_amplitude(const std::string &tok) {
    if (tok.empty()) {
        throw std::invalid_argument("empty amplitude");
    }
    if (tok.back() != 'i') {
        return parse_real(tok, tok);
    }
    const std::string body = tok.substr(0, tok.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [&tok](const std::string &s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s, tok);
    };
    if (split == std::string::npos) {
        return Complex(0.0, imag_of(body));
    }
    return Complex(parse_real(body.substr(0, split), tok), imag_of(body.substr(split)));
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Circuit load(const std::string &path, std::ostream &err) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error &e) {
        err << "error: " << e.what() << '\n';
        throw Exit{kExitParse};
    }
    try {
        return parse(text);
    } catch (const ParseError &e) {
        err << path << ":" << e.line() << ": " << e.what() << '\n';
        throw Exit{kExitParse};
    }
}

void print_state(std::ostream &out, const StateVector &s) {
    for (std::size_t x = 0; x < s.dim(); ++x) {
        if (std::abs(s[x]) >= kPruneThreshold) {
            out << "  " << basis_label(x, s.num_qubits()) << "  " << format_complex(s[x]) << '\n';
        }
    }
}

std::string outcome_bits(const std::vector<std::optional<bool>> &outcome) {
    std::string bits;
    for (const auto &b : outcome) {
        bits += b ? (*b ? '1' : '0') : '-';
    }
    return bits;
}

int cmd_run(const std::string &file, const std::string &input, std::size_t shots, std::uint64_t seed,
            std::ostream &out, std::ostream &err) {
    const Circuit c = load(file, err);
    const auto width = static_cast<std::uint32_t>(c.inputs().size());
    StateVector in = StateVector::basis(width, 0);
    if (!input.empty()) {
        try {
            in = parse_ket(input);
        } catch (const std::invalid_argument &e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    std::vector<Branch> branches;
    try {
        branches = run(c, in);
    } catch (const SimulationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (shots == 0) {
        for (const Branch &b : branches) {
            char p[64];
            std::snprintf(p, sizeof p, "%.12g", b.probability);
            out << "branch " << outcome_label(b.outcome) << "  p=" << p << '\n';
            print_state(out, b.state);
        }
        return kExitOk;
    }
    std::vector<double> weights;
    for (const Branch &b : branches) {
        weights.push_back(b.probability);
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::map<std::string, std::size_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        ++counts[outcome_bits(branches[pick(rng)].outcome)];
    }
    out << "shots " << shots << " seed " << seed << '\n';
    for (const auto &[bits, n] : counts) {
        out << (bits.empty() ? "-" : bits) << ' ' << n << '\n';
    }
    return kExitOk;
}

int cmd_unitary(const std::string &file, std::ostream &out, std::ostream &err) {
    const Circuit c = load(file, err);
    UnitaryMatrix u;
    try {
        u = build_unitary(c);
    } catch (const SimulationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index k = 0; k < u.cols(); ++k) {
            out << (k ? ", " : "") << format_complex(u(r, k));
        }
        out << '\n';
    }
    return kExitOk;
}

int not_equivalent(std::ostream &out, const std::string &probe) {
    out << "not equivalent";
    if (!probe.empty()) {
        out << "; first distinguishing probe " << probe;
    }
    out << '\n';
    return kExitNotEquivalent;
}

int cmd_check(const std::string &file_a, const std::string &file_b, const std::string &mode, std::ostream &out,
              std::ostream &err) {
    const Circuit a = load(file_a, err);
    const Circuit b = load(file_b, err);
    try {
        if (mode == "unitary" || mode == "phase") {
            const UnitaryMatrix ua = build_unitary(a);
            const UnitaryMatrix ub = build_unitary(b);
            const bool phase = mode == "phase";
            if (ua.rows() != ub.rows()) {
                err << "circuits act on different numbers of qubits\n";
                return not_equivalent(out, "");
            }
            if (auto col = first_differing_column(ua, ub, phase)) {
                return not_equivalent(out, basis_label(*col, a.num_qubits()));
            }
        } else if (mode == "channel") {
            const Channel ca = extract_channel(a);
            const Channel cb = extract_channel(b);
            if (ca.input_dim() != cb.input_dim() || ca.output_dim() != cb.output_dim()) {
                err << "circuits have different input or output wires\n";
                return not_equivalent(out, "");
            }
            if (!channel_equal(ca, cb)) {
                return not_equivalent(out, oracle_compare(a, b).probe);
            }
        } else {
            const OracleResult r = oracle_compare(a, b);
            if (!r.equal) {
                return not_equivalent(out, r.probe);
            }
        }
    } catch (const SimulationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const EquivalenceError &e) {
        err << "error: " << e.what() << '\n';
        return not_equivalent(out, "");
    }
    out << "equivalent (" << mode << ")\n";
    return kExitOk;
}

int cmd_rewrite(const std::string &file, const std::string &rule_text, bool backward, std::size_t site, bool list,
                std::ostream &out, std::ostream &err) {
    const Circuit c = load(file, err);
    RuleId rule;
    try {
        rule = parse_rule_id(rule_text);
    } catch (const RuleError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto matches = find_matches(c, rule, backward ? Direction::Backward : Direction::Forward);
    if (list) {
        for (std::size_t k = 0; k < matches.size(); ++k) {
            out << k << ": " << describe(matches[k]) << '\n';
        }
        if (matches.empty()) {
            out << "no matches\n";
        }
        return kExitOk;
    }
    if (site >= matches.size()) {
        err << "error: " << matches.size() << " match(es) for " << rule_text << ", no match number " << site
            << '\n';
        return kExitUsage;
    }
    try {
        const Circuit result = rewrite_at(c, matches[site], true);
        out << describe(matches[site]) << "  VERIFIED\n" << serialize(result) << '\n';
    } catch (const VerificationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_simplify(const std::string &file, bool verify, std::ostream &out, std::ostream &err) {
    const Circuit c = load(file, err);
    const DerivationTrace trace = simplify(c, verify);
    out << render_trace(trace) << "\nfinal:\n" << serialize(trace.final_circuit()) << '\n';
    if (verify && !trace.all_verified()) {
        err << "error: a simplification step failed verification\n";
        return kExitVerification;
    }
    return kExitOk;
}

int demo_trace(Derivation d, const Channel &expected, std::string_view expected_name, std::ostream &out) {
    const DerivationTrace trace = derive(d);
    out << derivation_name(d) << "\n\n" << render_trace(trace) << '\n';
    const Circuit target = make(derivation_target(d));
    const bool reached = trace.final_circuit() == target;
    const bool channel_ok = channel_equal(extract_channel(target), expected);
    out << "final circuit equals " << scenario_name(derivation_target(d)) << ": " << (reached ? "yes" : "no")
        << '\n';
    out << "channel equals " << expected_name << ": " << (channel_ok ? "yes" : "no") << '\n';
    return trace.all_verified() && reached && channel_ok ? kExitOk : kExitVerification;
}

UnitaryMatrix cnot_matrix(bool control_first) {
    Circuit c(2, 0);
    c.append(Gate2{Gate2Kind::CNOT, Qubit{control_first ? 0u : 1u}, Qubit{control_first ? 1u : 0u}});
    return build_unitary(c);
}

int cmd_demo(const std::string &name, std::ostream &out, std::ostream &err) {
    if (name == "teleportation") {
        return demo_trace(Derivation::TeleportFromTransfer, unitary_channel(UnitaryMatrix::Identity(2, 2)),
                          "the one-qubit identity", out);
    }
    if (name == "densecoding") {
        return demo_trace(Derivation::DenseFromCopy, extract_channel(derivation_start(Derivation::DenseFromCopy)),
                          "the copy circuit", out);
    }
    if (name == "gateteleportation") {
        return demo_trace(Derivation::GateTeleportFromTeleport, unitary_channel(cnot_matrix(true)),
                          "CNOT between the two inputs", out);
    }
    if (name == "swap") {
        const Circuit a = make(Scenario::XorSwap);
        const Circuit b = make(Scenario::AltSwap);
        out << "XorSwap\n" << serialize(a) << "\n\nAltSwap\n" << serialize(b) << "\n\n";
        const UnitaryMatrix ua = build_unitary(a);
        const UnitaryMatrix ub = build_unitary(b);
        for (std::uint64_t x = 0; x < 4; ++x) {
            Eigen::Index y = 0;
            ua.col(static_cast<Eigen::Index>(x)).cwiseAbs().maxCoeff(&y);
            out << basis_label(x, 2) << " -> " << basis_label(static_cast<std::uint64_t>(y), 2) << '\n';
        }
        const bool exact = unitary_equal(ua, ub, false);
        const bool oracle = oracle_equal(a, b);
        out << "unitaries equal: " << (exact ? "yes" : "no") << "\noracle agrees: " << (oracle ? "yes" : "no")
            << '\n';
        return exact && oracle ? kExitOk : kExitVerification;
    }
    err << "error: unknown demo '" << name << "'\n";
    return kExitUsage;
}

}  // namespace

std::string format_complex(Complex z) {
    double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
    double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%c%.12gi", re, im < 0 ? '-' : '+', std::abs(im));
    return buf;
}

StateVector parse_ket(std::string_view spec) {
    const std::string s = trim(spec);
    if (s.empty()) {
        throw std::invalid_argument("empty ket");
    }
    if (s.front() == '|') {
        std::string inner = s.substr(1);
        for (std::string_view close : {"⟩", ">"}) {
            if (inner.size() >= close.size() && inner.compare(inner.size() - close.size(), close.size(), close) == 0) {
                inner.erase(inner.size() - close.size());
                break;
            }
        }
        const double r = 1.0 / std::sqrt(2.0);
        ComplexVector v = ComplexVector::Ones(1);
        for (char ch : inner) {
            ComplexVector f(2);
            switch (ch) {
                case '0':
                    f << 1.0, 0.0;
                    break;
                case '1':
                    f << 0.0, 1.0;
                    break;
                case '+':
                    f << r, r;
                    break;
                case '-':
                    f << r, -r;
                    break;
                default:
                    throw std::invalid_argument(std::string("unknown ket symbol '") + ch + "' in " + s);
            }
            ComplexVector next(v.size() * 2);
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                next[2 * k] = v[k] * f[0];
                next[2 * k + 1] = v[k] * f[1];
            }
            v = next;
        }
        return StateVector(static_cast<std::uint32_t>(inner.size()), v);
    }
    std::vector<Complex> amps;
    std::stringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');) {
        amps.push_back(parse_amplitude(trim(tok)));
    }
    std::uint32_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) {
        ++n;
    }
    if ((std::size_t{1} << n) != amps.size()) {
        throw std::invalid_argument("amplitude count " + std::to_string(amps.size()) + " is not a power of two");
    }
    ComplexVector v = Eigen::Map<ComplexVector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    if (v.norm() < kPruneThreshold) {
        throw std::invalid_argument("ket has zero norm");
    }
    return StateVector(n, v / v.norm());
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum circuit equivalence and rewriting"};
    app.name("qcequiv");
    app.require_subcommand(1);

    std::string file;
    std::string file_b;
    std::string input;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::string mode = "channel";
    std::string rule;
    bool backward = false;
    std::size_t site = 0;
    bool list = false;
    bool no_verify = false;
    std::string demo;

    auto *run_cmd = app.add_subcommand("run", "Simulate a circuit and print its branches");
    run_cmd->add_option("file", file, "Circuit file")->required();
    run_cmd->add_option("--input", input, "Input state over the input wires, e.g. |0+> or 0.6,0.8i");
    run_cmd->add_option("--shots", shots, "Sample this many measurement records instead");
    run_cmd->add_option("--seed", seed, "Sampling seed");

    auto *unitary_cmd = app.add_subcommand("unitary", "Print the matrix of a gate-only circuit");
    unitary_cmd->add_option("file", file, "Circuit file")->required();

    auto *check_cmd = app.add_subcommand("check", "Decide whether two circuits are equivalent");
    check_cmd->add_option("a", file, "First circuit")->required();
    check_cmd->add_option("b", file_b, "Second circuit")->required();
    check_cmd->add_option("--mode", mode, "unitary, phase, channel or oracle")
        ->check(CLI::IsMember({"unitary", "phase", "channel", "oracle"}));

    auto *rewrite_cmd = app.add_subcommand("rewrite", "List or apply matches of one rule");
    rewrite_cmd->add_option("file", file, "Circuit file")->required();
    rewrite_cmd->add_option("--rule", rule, "Rule id, e.g. R5_DistributeCNOT")->required();
    rewrite_cmd->add_flag("--backward", backward, "Apply the rule right to left");
    rewrite_cmd->add_option("--site", site, "Which match to apply (see --list)");
    rewrite_cmd->add_flag("--list", list, "List matches instead of applying one");

    auto *simplify_cmd = app.add_subcommand("simplify", "Greedy simplification with a trace");
    simplify_cmd->add_option("file", file, "Circuit file")->required();
    simplify_cmd->add_flag("--no-verify", no_verify, "Skip the per-step channel check");

    auto *demo_cmd = app.add_subcommand("demo", "Replay one of the built-in derivations");
    demo_cmd->add_option("name", demo, "teleportation, densecoding, gateteleportation or swap")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(file, input, shots, seed, out, err);
        }
        if (unitary_cmd->parsed()) {
            return cmd_unitary(file, out, err);
        }
        if (check_cmd->parsed()) {
            return cmd_check(file, file_b, mode, out, err);
        }
        if (rewrite_cmd->parsed()) {
            return cmd_rewrite(file, rule, backward, site, list, out, err);
        }
        if (simplify_cmd->parsed()) {
            return cmd_simplify(file, !no_verify, out, err);
        }
        return cmd_demo(demo, out, err);
    } catch (const Exit &e) {
        return e.code;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace qcequiv::cli
