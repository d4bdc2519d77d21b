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

#include "qcequiv/engine.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "qcequiv/equivalence.h"

namespace qcequiv {

namespace {

enum class Action { None, Diagonal, XType, Other };

Action action_on(const Instruction &instr, Qubit q) {
    if (const auto *g = std::get_if<Gate1>(&instr)) {
        if (g->target != q) {
            return Action::None;
        }
        return g->kind == Gate1Kind::H ? Action::Other : g->kind == Gate1Kind::X ? Action::XType : Action::Diagonal;
    }
    if (const auto *g = std::get_if<Gate2>(&instr)) {
        if (g->control == q) {
            return Action::Diagonal;
        }
        if (g->target == q) {
            return g->kind == Gate2Kind::CNOT ? Action::XType : Action::Diagonal;
        }
        return Action::None;
    }
    if (const auto *m = std::get_if<Measure>(&instr)) {
        return m->target == q ? Action::Diagonal : Action::None;
    }
    if (const auto *c = std::get_if<ClassicalCtrl>(&instr)) {
        if (c->target != q) {
            return Action::None;
        }
        return c->kind == CtrlKind::X ? Action::XType : Action::Diagonal;
    }
    return Action::None;
}

bool touched_before(const Circuit &c, Qubit q, std::size_t end) {
    const auto &body = c.body();
    for (std::size_t i = 0; i < end && i < body.size(); ++i) {
        if (touches(body[i], q)) {
            return true;
        }
    }
    return false;
}

/// True when an instruction at index >= begin touches q.
bool touched_from(const Circuit &c, Qubit q, std::size_t begin) {
    const auto &body = c.body();
    for (std::size_t i = begin; i < body.size(); ++i) {
        if (touches(body[i], q)) {
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> readers(const Circuit &c, Cbit r) {
    std::vector<std::size_t> out;
    const auto &body = c.body();
    for (std::size_t i = 0; i < body.size(); ++i) {
        const auto reads = read_cbits(body[i]);
        if (std::find(reads.begin(), reads.end(), r) != reads.end()) {
            out.push_back(i);
        }
    }
    return out;
}

bool has_prep(const Circuit &c, Qubit q, PrepKind kind) {
    const auto &p = c.prep(q);
    return p && p->kind == kind;
}

bool fresh_with(const Circuit &c, Qubit q, PrepKind kind, std::size_t at) {
    return has_prep(c, q, kind) && !touched_before(c, q, at);
}

bool scratch_read_only_by(const Circuit &c, Cbit r, std::size_t index) {
    return c.cbit_role(r) == CbitRole::Scratch && readers(c, r) == std::vector<std::size_t>{index};
}

bool discarded_after(const Circuit &c, Qubit q, std::size_t index) {
    return c.role(q) == WireRole::Discard && !touched_from(c, q, index + 1);
}

bool gather_ok(const std::vector<Instruction> &body, const std::vector<std::size_t> &site) {
    std::vector<std::size_t> skipped;
    for (std::size_t k = 1; k < site.size(); ++k) {
        for (std::size_t i = site[k - 1] + 1; i < site[k]; ++i) {
            skipped.push_back(i);
        }
        for (std::size_t s : skipped) {
            if (!supports_disjoint(body[s], body[site[k]])) {
                return false;
            }
        }
    }
    return true;
}

const std::vector<TOp> &pattern_side(const RuleVariant &v, Direction d) {
    return d == Direction::Forward ? v.lhs : v.rhs;
}

const std::vector<TOp> &replacement_side(const RuleVariant &v, Direction d) {
    return d == Direction::Forward ? v.rhs : v.lhs;
}

std::vector<std::string> side_cvars(const std::vector<TOp> &ops) {
    std::vector<std::string> out;
    for (const auto &op : ops) {
        for (const auto &name : op.cvars) {
            if (std::find(out.begin(), out.end(), name) == out.end()) {
                out.push_back(name);
            }
        }
    }
    return out;
}

Qubit bound_q(const Match &m, const std::string &name) {
    auto it = m.bindings.qubits.find(name);
    if (it == m.bindings.qubits.end()) {
        throw StaleMatchError(describe(m) + ": missing binding for '" + name + "'");
    }
    return it->second;
}

Cbit bound_c(const Match &m, const std::string &name) {
    auto it = m.bindings.cbits.find(name);
    if (it == m.bindings.cbits.end()) {
        throw StaleMatchError(describe(m) + ": missing binding for '" + name + "'");
    }
    return it->second;
}

/// Binds unbound classical variables to fresh wires numbered from the
/// circuit's current count. Unbound quantum variables are an error.
Bindings complete_fresh(const Circuit &c, const Match &m) {
    const RuleVariant &v = rule_variants(m.rule).at(m.variant);
    Bindings b = m.bindings;
    for (const auto &name : quantum_vars(v)) {
        if (!b.qubits.count(name)) {
            throw StaleMatchError(describe(m) + ": no wire supplied for '" + name + "'");
        }
    }
    std::uint32_t next = c.num_cbits();
    for (const auto &name : classical_vars(v)) {
        if (!b.cbits.count(name)) {
            b.cbits[name] = Cbit{next++};
        }
    }
    return b;
}

/// Static side conditions. Assumes the pattern itself already matched.
bool condition_holds(const Circuit &c, const Match &m) {
    const bool fwd = m.direction == Direction::Forward;
    const std::size_t at = m.site.empty() ? m.position : m.site.front();
    switch (m.rule) {
        case RuleId::R1_TargetPlus:
            return fresh_with(c, bound_q(m, "t"), PrepKind::Plus, at);
        case RuleId::R1_ControlZero:
            return fresh_with(c, bound_q(m, "c"), PrepKind::Zero, at);
        case RuleId::R3_DeferMeasure:
            return !fwd || readers(c, bound_c(m, "r")) == std::vector<std::size_t>{m.site[1]};
        case RuleId::R4_XorSubstitute: {
            const Qubit b = bound_q(m, "b");
            if (fwd) {
                return discarded_after(c, b, m.site[2]) && scratch_read_only_by(c, bound_c(m, "r2"), m.site[3]);
            }
            return discarded_after(c, b, m.site[1]) && scratch_read_only_by(c, bound_c(m, "r2"), m.site[2]) &&
                   scratch_read_only_by(c, bound_c(m, "r3"), m.site[3]);
        }
        case RuleId::DiscardedWireTail: {
            const Qubit w = bound_q(m, "w");
            return fwd ? discarded_after(c, w, m.site[0])
                       : c.role(w) == WireRole::Discard && !touched_from(c, w, m.position);
        }
        case RuleId::MeasureDiscarded: {
            const Qubit w = bound_q(m, "w");
            if (fwd) {
                return c.role(w) == WireRole::Discard && !touched_from(c, w, m.position);
            }
            const Cbit r = bound_c(m, "r");
            return discarded_after(c, w, m.site[0]) && c.cbit_role(r) == CbitRole::Scratch && readers(c, r).empty();
        }
        case RuleId::FoldBellPrep: {
            const Qubit a = bound_q(m, "a");
            const Qubit b = bound_q(m, "b");
            if (fwd) {
                return fresh_with(c, a, PrepKind::Plus, at) && fresh_with(c, b, PrepKind::Zero, at);
            }
            const auto &p = c.prep(a);
            return p && p->kind == PrepKind::Bell && p->partner == b && !touched_before(c, a, at) &&
                   !touched_before(c, b, at);
        }
        case RuleId::FoldPlusPrep:
            return fresh_with(c, bound_q(m, "w"), fwd ? PrepKind::Zero : PrepKind::Plus, at);
        case RuleId::IntroduceAncilla: {
            if (fwd) {
                return m.position <= c.num_qubits() && m.variant < 2;
            }
            const Qubit w = bound_q(m, "w");
            return (has_prep(c, w, PrepKind::Zero) || has_prep(c, w, PrepKind::Plus)) &&
                   c.role(w) == WireRole::Discard && !touched_from(c, w, 0);
        }
        case RuleId::Commute:
            return m.site.size() == 2 && m.site[1] == m.site[0] + 1 &&
                   instructions_commute(c.body()[m.site[0]], c.body()[m.site[1]]);
        default:
            return true;
    }
}

using SiteCallback = std::function<void(const std::vector<std::size_t> &, const Bindings &)>;

void search(const std::vector<Instruction> &body, const std::vector<TOp> &pattern, std::vector<std::size_t> &site,
            std::vector<std::size_t> &skipped, const Bindings &bindings, const SiteCallback &emit) {
    const std::size_t k = site.size();
    if (k == pattern.size()) {
        emit(site, bindings);
        return;
    }
    const std::size_t skipped_before = skipped.size();
    for (std::size_t j = k == 0 ? 0 : site.back() + 1; j < body.size(); ++j) {
        Bindings next = bindings;
        const bool disjoint = std::all_of(skipped.begin(), skipped.end(),
                                          [&](std::size_t s) { return supports_disjoint(body[s], body[j]); });
        if (disjoint && unify(pattern[k], body[j], next)) {
            site.push_back(j);
            search(body, pattern, site, skipped, next, emit);
            site.pop_back();
        }
        if (k == 0) {
            continue;
        }
        skipped.push_back(j);
    }
    skipped.resize(skipped_before);
}

/// Extends `b` with every injective choice of the listed free quantum
/// variables.
void enumerate_free(const Circuit &c, const std::vector<std::string> &free, std::size_t k, Bindings &b,
                    const std::function<void(const Bindings &)> &emit) {
    if (k == free.size()) {
        emit(b);
        return;
    }
    for (std::uint32_t q = 0; q < c.num_qubits(); ++q) {
        const bool used = std::any_of(b.qubits.begin(), b.qubits.end(),
                                      [&](const auto &kv) { return kv.second.index == q; });
        if (used) {
            continue;
        }
        b.qubits[free[k]] = Qubit{q};
        enumerate_free(c, free, k + 1, b, emit);
        b.qubits.erase(free[k]);
    }
}

bool match_less(const Match &a, const Match &b) {
    return std::tie(a.site, a.position, a.variant, a.bindings.qubits, a.bindings.cbits) <
           std::tie(b.site, b.position, b.variant, b.bindings.qubits, b.bindings.cbits);
}

void canonical_insertions(const Circuit &c, RuleId rule, Direction dir, std::vector<Match> &out) {
    const std::uint32_t n = c.num_qubits();
    auto push_if = [&](Match m) {
        if (condition_holds(c, m)) {
            out.push_back(std::move(m));
        }
    };
    if (rule == RuleId::MeasureDiscarded && dir == Direction::Forward) {
        for (std::uint32_t q = 0; q < n; ++q) {
            push_if(Match{rule, dir, 0, Bindings{{{"w", Qubit{q}}}, {}}, {}, c.body().size()});
        }
    } else if (rule == RuleId::FoldBellPrep && dir == Direction::Backward) {
        for (std::uint32_t a = 0; a < n; ++a) {
            const auto &p = c.prep(Qubit{a});
            if (p && p->kind == PrepKind::Bell) {
                push_if(Match{rule, dir, 0, Bindings{{{"a", Qubit{a}}, {"b", p->partner}}, {}}, {}, 0});
            }
        }
    } else if (rule == RuleId::FoldPlusPrep && dir == Direction::Backward) {
        for (std::uint32_t q = 0; q < n; ++q) {
            push_if(Match{rule, dir, 0, Bindings{{{"w", Qubit{q}}}, {}}, {}, 0});
        }
    }
}

Circuit apply_unchecked(const Circuit &c, const Match &m) {
    Circuit out = c;
    out.pin_roles();
    if (m.rule == RuleId::Commute) {
        auto body = c.body();
        std::swap(body[m.site[0]], body[m.site[1]]);
        out.set_body(std::move(body));
        return out;
    }
    if (m.rule == RuleId::IntroduceAncilla) {
        if (m.direction == Direction::Forward) {
            const Qubit q = out.insert_qubit(static_cast<std::uint32_t>(m.position));
            out.set_prep(q, m.variant == 1 ? PrepKind::Plus : PrepKind::Zero);
            out.set_role(q, WireRole::Discard);
        } else {
            out.erase_qubit(bound_q(m, "w").index);
        }
        return out;
    }

    const RuleVariant &v = rule_variants(m.rule).at(m.variant);
    const Bindings b = complete_fresh(c, m);
    for (const auto &[name, r] : b.cbits) {
        while (out.num_cbits() <= r.index) {
            out.add_cbit();
        }
    }
    const Instantiation inst = instantiate(m.rule, m.direction, m.variant, b);

    const auto &body = c.body();
    std::vector<Instruction> next;
    if (m.site.empty()) {
        next.assign(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(m.position));
        next.insert(next.end(), inst.replacement.begin(), inst.replacement.end());
        next.insert(next.end(), body.begin() + static_cast<std::ptrdiff_t>(m.position), body.end());
    } else {
        next.assign(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(m.site.front()));
        next.insert(next.end(), inst.replacement.begin(), inst.replacement.end());
        for (std::size_t i = m.site.front(); i < body.size(); ++i) {
            if (!std::binary_search(m.site.begin(), m.site.end(), i)) {
                next.push_back(body[i]);
            }
        }
    }
    out.set_body(std::move(next));

    const bool fwd = m.direction == Direction::Forward;
    if (m.rule == RuleId::FoldBellPrep) {
        const Qubit a = b.qubits.at("a");
        const Qubit bb = b.qubits.at("b");
        out.clear_prep(a);
        out.clear_prep(bb);
        if (fwd) {
            out.set_bell(a, bb);
        } else {
            out.set_prep(a, PrepKind::Plus);
            out.set_prep(bb, PrepKind::Zero);
        }
    } else if (m.rule == RuleId::FoldPlusPrep) {
        out.set_prep(b.qubits.at("w"), fwd ? PrepKind::Plus : PrepKind::Zero);
    }

    const auto kept = side_cvars(replacement_side(v, m.direction));
    for (const auto &name : side_cvars(pattern_side(v, m.direction))) {
        if (std::find(kept.begin(), kept.end(), name) != kept.end()) {
            continue;
        }
        const Cbit r = b.cbits.at(name);
        const bool unused = std::none_of(out.body().begin(), out.body().end(),
                                         [&](const Instruction &i) { return touches(i, r); });
        if (unused && out.num_cbits() > 0 && r.index == out.num_cbits() - 1) {
            out.erase_last_cbit();
        }
    }
    return out;
}

std::string site_text(const Match &m) {
    if (m.site.empty()) {
        return "position " + std::to_string(m.position);
    }
    std::string out = "{";
    for (std::size_t k = 0; k < m.site.size(); ++k) {
        out += (k ? "," : "") + std::to_string(m.site[k]);
    }
    return out + "}";
}

}  // namespace

bool instructions_commute(const Instruction &a, const Instruction &b) {
    const auto wa = written_cbit(a);
    const auto wb = written_cbit(b);
    if ((wa && touches(b, *wa)) || (wb && touches(a, *wb))) {
        return false;
    }
    for (Qubit q : touched_qubits(a)) {
        const Action x = action_on(a, q);
        const Action y = action_on(b, q);
        if (y == Action::None) {
            continue;
        }
        if (x != y || x == Action::Other) {
            return false;
        }
    }
    return true;
}

std::string describe(const Match &m) {
    std::ostringstream out;
    out << rule_name(m.rule) << ' ' << direction_name(m.direction);
    const auto &variants = rule_variants(m.rule);
    if (variants.size() > 1 && m.variant < variants.size()) {
        out << " [" << variants[m.variant].name << ']';
    } else if (m.rule == RuleId::IntroduceAncilla && m.direction == Direction::Forward) {
        out << (m.variant == 1 ? " [+]" : " [0]");
    }
    if (m.rule == RuleId::IntroduceAncilla && m.direction == Direction::Forward) {
        out << " as q" << m.position;
    } else {
        out << " at " << site_text(m);
    }
    const std::string b = to_string(m.bindings);
    if (!b.empty()) {
        out << " (" << b << ')';
    }
    return out.str();
}

std::vector<Match> find_matches(const Circuit &c, RuleId rule, Direction direction) {
    c.validate();
    std::vector<Match> out;
    const auto &body = c.body();
    if (rule == RuleId::Commute) {
        for (std::size_t i = 0; i + 1 < body.size(); ++i) {
            if (!(body[i] == body[i + 1]) && instructions_commute(body[i], body[i + 1])) {
                out.push_back(Match{rule, direction, 0, {}, {i, i + 1}, 0});
            }
        }
        return out;
    }
    if (rule == RuleId::IntroduceAncilla) {
        if (direction == Direction::Forward) {
            for (std::uint32_t k = 0; k <= c.num_qubits(); ++k) {
                for (std::size_t v = 0; v < 2; ++v) {
                    out.push_back(Match{rule, direction, v, {}, {}, k});
                }
            }
        } else {
            for (std::uint32_t q = 0; q < c.num_qubits(); ++q) {
                Match m{rule, direction, 0, Bindings{{{"w", Qubit{q}}}, {}}, {}, 0};
                if (condition_holds(c, m)) {
                    out.push_back(std::move(m));
                }
            }
        }
        return out;
    }

    const auto &variants = rule_variants(rule);
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        const RuleVariant &v = variants[vi];
        const auto &pattern = pattern_side(v, direction);
        if (pattern.empty()) {
            continue;
        }
        std::vector<std::size_t> site;
        std::vector<std::size_t> skipped;
        search(body, pattern, site, skipped, Bindings{},
               [&](const std::vector<std::size_t> &s, const Bindings &bound) {
                   std::vector<std::string> free;
                   for (const auto &name : quantum_vars(v)) {
                       if (!bound.qubits.count(name)) {
                           free.push_back(name);
                       }
                   }
                   Bindings b = bound;
                   enumerate_free(c, free, 0, b, [&](const Bindings &full) {
                       Match m{rule, direction, vi, full, s, 0};
                       if (condition_holds(c, m)) {
                           out.push_back(std::move(m));
                       }
                   });
               });
    }
    canonical_insertions(c, rule, direction, out);
    std::sort(out.begin(), out.end(), match_less);
    return out;
}

std::vector<Match> find_all_matches(const Circuit &c) {
    std::vector<Match> out;
    for (RuleId id : all_rules()) {
        for (Direction d : {Direction::Forward, Direction::Backward}) {
            auto found = find_matches(c, id, d);
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

void check_match(const Circuit &c, const Match &m) {
    const auto &body = c.body();
    for (std::size_t k = 0; k < m.site.size(); ++k) {
        if (m.site[k] >= body.size() || (k > 0 && m.site[k] <= m.site[k - 1])) {
            throw StaleMatchError(describe(m) + ": site indices out of range or unordered");
        }
    }
    for (const auto &[name, q] : m.bindings.qubits) {
        if (q.index >= c.num_qubits()) {
            throw StaleMatchError(describe(m) + ": wire q" + std::to_string(q.index) + " does not exist");
        }
    }
    if (m.rule == RuleId::Commute || m.rule == RuleId::IntroduceAncilla) {
        if (m.rule == RuleId::IntroduceAncilla && !m.site.empty()) {
            throw StaleMatchError(describe(m) + ": IntroduceAncilla takes no site");
        }
        if (!condition_holds(c, m)) {
            throw StaleMatchError(describe(m) + ": rule condition does not hold");
        }
        return;
    }
    const auto &variants = rule_variants(m.rule);
    if (m.variant >= variants.size()) {
        throw StaleMatchError(describe(m) + ": no such variant");
    }
    const RuleVariant &v = variants[m.variant];
    const auto &pattern = pattern_side(v, m.direction);
    if (pattern.size() != m.site.size()) {
        throw StaleMatchError(describe(m) + ": site length does not fit the pattern");
    }
    if (m.site.empty() && m.position > body.size()) {
        throw StaleMatchError(describe(m) + ": insertion point out of range");
    }
    const auto matched_cvars = side_cvars(pattern);
    for (const auto &[name, r] : m.bindings.cbits) {
        const bool in_pattern = std::find(matched_cvars.begin(), matched_cvars.end(), name) != matched_cvars.end();
        if (r.index >= c.num_cbits() && in_pattern) {
            throw StaleMatchError(describe(m) + ": wire c" + std::to_string(r.index) + " does not exist");
        }
    }
    Bindings b;
    try {
        b = complete_fresh(c, m);
        const Instantiation inst = instantiate(m.rule, m.direction, m.variant, b);
        for (std::size_t k = 0; k < m.site.size(); ++k) {
            if (!(inst.pattern[k] == body[m.site[k]])) {
                throw StaleMatchError(describe(m) + ": instruction " + std::to_string(m.site[k]) + " is '" +
                                      to_string(body[m.site[k]]) + "', expected '" + to_string(inst.pattern[k]) +
                                      "'");
            }
        }
    } catch (const RuleError &e) {
        throw StaleMatchError(describe(m) + ": " + e.what());
    }
    if (!gather_ok(body, m.site)) {
        throw StaleMatchError(describe(m) + ": matched instructions cannot be gathered by commutation");
    }
    if (!condition_holds(c, m)) {
        throw StaleMatchError(describe(m) + ": rule condition does not hold");
    }
}

Circuit rewrite_at(const Circuit &c, const Match &m, bool verify) {
    check_match(c, m);
    Circuit out = apply_unchecked(c, m);
    try {
        out.validate();
    } catch (const CircuitError &e) {
        throw StaleMatchError(describe(m) + ": rewrite produces an invalid circuit: " + e.what());
    }
    if (verify && !channel_equal(extract_channel(c), extract_channel(out))) {
        throw VerificationError(describe(m) + " changed the circuit's channel");
    }
    return out;
}

Match inverse_match(const Circuit &c, const Match &m) {
    const Circuit result = rewrite_at(c, m);
    Match inv = m;
    inv.direction = reverse(m.direction);
    if (m.rule == RuleId::Commute) {
        return inv;
    }
    if (m.rule == RuleId::IntroduceAncilla) {
        if (m.direction == Direction::Forward) {
            inv.bindings = Bindings{{{"w", Qubit{static_cast<std::uint32_t>(m.position)}}}, {}};
            inv.position = 0;
            inv.variant = 0;
        } else {
            const Qubit w = bound_q(m, "w");
            inv.bindings = {};
            inv.position = w.index;
            inv.variant = has_prep(c, w, PrepKind::Plus) ? 1 : 0;
        }
        return inv;
    }
    inv.bindings = complete_fresh(c, m);
    for (auto it = inv.bindings.cbits.begin(); it != inv.bindings.cbits.end();) {
        it = it->second.index >= result.num_cbits() ? inv.bindings.cbits.erase(it) : std::next(it);
    }
    const RuleVariant &v = rule_variants(m.rule).at(m.variant);
    const std::size_t len = replacement_side(v, m.direction).size();
    const std::size_t start = m.site.empty() ? m.position : m.site.front();
    inv.site.clear();
    for (std::size_t k = 0; k < len; ++k) {
        inv.site.push_back(start + k);
    }
    inv.position = start;
    return inv;
}

Match resolve_match(const Circuit &c, RuleId rule, Direction direction, const std::vector<std::size_t> &site,
                    const Bindings &partial, std::optional<std::size_t> variant, std::size_t position) {
    if (site.empty() && rule != RuleId::Commute) {
        Match m{rule, direction, variant.value_or(0), partial, {}, position};
        check_match(c, m);
        return m;
    }
    std::vector<Match> hits;
    for (Match &m : find_matches(c, rule, direction)) {
        if (m.site != site || (variant && m.variant != *variant)) {
            continue;
        }
        const bool extends =
            std::all_of(partial.qubits.begin(), partial.qubits.end(),
                        [&](const auto &kv) {
                            auto it = m.bindings.qubits.find(kv.first);
                            return it != m.bindings.qubits.end() && it->second == kv.second;
                        }) &&
            std::all_of(partial.cbits.begin(), partial.cbits.end(), [&](const auto &kv) {
                auto it = m.bindings.cbits.find(kv.first);
                return it == m.bindings.cbits.end() || it->second == kv.second;
            });
        if (extends) {
            for (const auto &[name, r] : partial.cbits) {
                m.bindings.cbits[name] = r;
            }
            hits.push_back(std::move(m));
        }
    }
    Match probe{rule, direction, variant.value_or(0), partial, site, position};
    if (hits.empty()) {
        throw StaleMatchError("no match for " + describe(probe));
    }
    if (hits.size() > 1) {
        throw StaleMatchError(std::to_string(hits.size()) + " matches for " + describe(probe) + "; first is " +
                              describe(hits.front()));
    }
    return hits.front();
}

bool DerivationTrace::all_verified() const {
    return std::all_of(steps.begin(), steps.end(), [](const TraceStep &s) { return s.verified; });
}

std::string render_trace(const DerivationTrace &trace) {
    std::ostringstream out;
    out << "step 0: start\n" << serialize(trace.start) << '\n';
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const TraceStep &s = trace.steps[k];
        out << "\nstep " << k + 1 << ": " << describe(s.match) << "  " << (s.verified ? "VERIFIED" : "UNVERIFIED")
            << '\n'
            << serialize(s.result) << '\n';
    }
    return out.str();
}

Deriver::Deriver(Circuit start, bool verify) : verify_(verify) {
    start.validate();
    if (verify_) {
        start_channel_ = extract_channel(start);
    }
    trace_.start = std::move(start);
}

Deriver &Deriver::apply(const Match &m) {
    Circuit next = rewrite_at(current(), m);
    bool ok = false;
    if (verify_) {
        try {
            ok = channel_equal(*start_channel_, extract_channel(next));
        } catch (const EquivalenceError &) {
            ok = false;
        }
    }
    trace_.steps.push_back(TraceStep{m, std::move(next), ok});
    return *this;
}

Deriver &Deriver::apply(RuleId rule, Direction direction, const std::vector<std::size_t> &site,
                        const Bindings &partial, std::optional<std::size_t> variant, std::size_t position) {
    return apply(resolve_match(current(), rule, direction, site, partial, variant, position));
}

Cost cost(const Circuit &c) {
    Cost out;
    for (const auto &instr : c.body()) {
        out.quantum_gates += is_quantum_gate(instr) ? 1 : 0;
        out.classical_controls += is_classically_controlled(instr) ? 1 : 0;
    }
    out.instructions = c.body().size();
    return out;
}

DerivationTrace simplify(const Circuit &c, bool verify) {
    static const std::vector<std::pair<RuleId, Direction>> kPriority = {
        {RuleId::R1_InverseCancel, Direction::Forward}, {RuleId::R1_ControlZero, Direction::Forward},
        {RuleId::R1_TargetPlus, Direction::Forward},    {RuleId::R3_DeferMeasure, Direction::Backward},
        {RuleId::R4_XorSubstitute, Direction::Forward},
    };
    Deriver d(c, verify);
    for (bool progress = true; progress;) {
        progress = false;
        const Cost before = cost(d.current());
        for (const auto &[rule, dir] : kPriority) {
            for (const Match &m : find_matches(d.current(), rule, dir)) {
                if (cost(rewrite_at(d.current(), m)) < before) {
                    d.apply(m);
                    progress = true;
                    break;
                }
            }
            if (progress) {
                break;
            }
        }
    }
    return d.trace();
}

}  // namespace qcequiv
