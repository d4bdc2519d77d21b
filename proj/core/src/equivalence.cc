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

#include "qcequiv/equivalence.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace qcequiv {

namespace {

constexpr std::size_t kDirectChoiLimit = 1024;

void check_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw EquivalenceError("dimension mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                               " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

Complex alignment_phase(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const Complex ratio = a(r, c) / b(r, c);
    if (std::abs(ratio) < kPruneThreshold) {
        return 1.0;
    }
    return ratio / std::abs(ratio);
}

double choi_entry_gap(const ComplexMatrix &fa, const ComplexMatrix &fb) {
    const ComplexMatrix diff = fa * fa.adjoint() - fb * fb.adjoint();
    return diff.cwiseAbs().maxCoeff();
}

double projected_choi_gap(const ComplexMatrix &fa, const ComplexMatrix &fb) {
    ComplexMatrix joint(fa.rows(), fa.cols() + fb.cols());
    joint << fa, fb;
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(joint);
    qr.setThreshold(kPruneThreshold);
    const Eigen::Index rank = qr.rank();
    const ComplexMatrix q = ComplexMatrix(qr.householderQ()).leftCols(rank);
    const ComplexMatrix pa = q.adjoint() * fa;
    const ComplexMatrix pb = q.adjoint() * fb;
    return (pa * pa.adjoint() - pb * pb.adjoint()).norm();
}

/// Output-wire density matrices of all branches, keyed by report bits.
using Mixture = std::map<std::string, ComplexMatrix>;

Mixture output_mixture(const Circuit &c, const StateVector &input) {
    const auto outputs = c.outputs();
    const auto discards = c.discards();
    const std::uint32_t n = c.num_qubits();
    const auto dout = static_cast<Eigen::Index>(std::size_t{1} << outputs.size());
    const auto ddis = static_cast<Eigen::Index>(std::size_t{1} << discards.size());

    Mixture mix;
    for (const Branch &b : run(c, input)) {
        std::string label;
        for (std::uint32_t j = 0; j < c.num_cbits(); ++j) {
            if (c.cbit_role(Cbit{j}) == CbitRole::Report) {
                label += b.outcome[j].value_or(false) ? '1' : '0';
            }
        }
        ComplexMatrix m = ComplexMatrix::Zero(dout, ddis);
        const ComplexVector &amps = b.state.amplitudes();
        for (Eigen::Index x = 0; x < amps.size(); ++x) {
            Eigen::Index o = 0;
            Eigen::Index d = 0;
            const auto ux = static_cast<std::uint64_t>(x);
            for (Qubit q : outputs) {
                o = (o << 1) | ((ux & qubit_mask(n, q)) ? 1 : 0);
            }
            for (Qubit q : discards) {
                d = (d << 1) | ((ux & qubit_mask(n, q)) ? 1 : 0);
            }
            m(o, d) += amps[x];
        }
        auto [it, fresh] = mix.try_emplace(label, ComplexMatrix::Zero(dout, dout));
        it->second += b.probability * (m * m.adjoint());
    }
    return mix;
}

double mixture_gap(const Mixture &a, const Mixture &b) {
    double gap = 0.0;
    auto one_sided = [&gap](const Mixture &x, const Mixture &y) {
        for (const auto &[label, rho] : x) {
            auto it = y.find(label);
            const double d = it == y.end() ? rho.cwiseAbs().maxCoeff() : (rho - it->second).cwiseAbs().maxCoeff();
            gap = std::max(gap, d);
        }
    };
    one_sided(a, b);
    one_sided(b, a);
    return gap;
}

struct Probe {
    std::string label;
    ComplexVector amplitudes;
};

std::vector<Probe> oracle_probes(std::size_t width) {
    const std::size_t dim = std::size_t{1} << width;
    std::vector<Probe> probes;
    for (std::uint64_t i = 0; i < dim; ++i) {
        probes.push_back({basis_label(i, width), StateVector::basis(static_cast<std::uint32_t>(width), i).amplitudes()});
    }
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::pair<std::string, std::pair<Complex, Complex>>> singles = {
        {"+", {s, s}}, {"−", {s, -s}}, {"i", {s, Complex(0.0, s)}}};
    for (std::size_t w = 0; w < width; ++w) {
        for (const auto &[name, coeffs] : singles) {
            ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
            const std::uint64_t bit = std::uint64_t{1} << (width - 1 - w);
            v[0] = coeffs.first;
            v[static_cast<Eigen::Index>(bit)] = coeffs.second;
            std::string label = "|";
            for (std::size_t k = 0; k < width; ++k) {
                label += k == w ? name : "0";
            }
            probes.push_back({label + "⟩", v});
        }
    }
    std::mt19937_64 rng(kOracleSeed);
    std::normal_distribution<double> normal;
    for (int k = 0; k < kOracleRandomStates; ++k) {
        ComplexVector v(static_cast<Eigen::Index>(dim));
        for (auto &a : v) {
            const double re = normal(rng);
            const double im = normal(rng);
            a = Complex(re, im);
        }
        v /= v.norm();
        probes.push_back({"random state #" + std::to_string(k), v});
    }
    return probes;
}

std::size_t count_reports(const Circuit &c) {
    std::size_t n = 0;
    for (std::uint32_t j = 0; j < c.num_cbits(); ++j) {
        n += c.cbit_role(Cbit{j}) == CbitRole::Report ? 1 : 0;
    }
    return n;
}

}  // namespace

bool unitary_equal(const UnitaryMatrix &a, const UnitaryMatrix &b, bool up_to_phase, double tol) {
    check_same_shape(a, b);
    const Complex phase = up_to_phase ? alignment_phase(a, b) : Complex{1.0};
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

std::optional<std::uint64_t> first_differing_column(const UnitaryMatrix &a, const UnitaryMatrix &b, bool up_to_phase,
                                                    double tol) {
    check_same_shape(a, b);
    const Complex phase = up_to_phase ? alignment_phase(a, b) : Complex{1.0};
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if ((a.col(j) - phase * b.col(j)).cwiseAbs().maxCoeff() > tol) {
            return static_cast<std::uint64_t>(j);
        }
    }
    return std::nullopt;
}

Channel unitary_channel(const UnitaryMatrix &u) {
    return Channel(static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(u.rows()), {u});
}

bool channel_equal(const Channel &a, const Channel &b, double tol) {
    if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim()) {
        throw EquivalenceError("channel dimension mismatch: " + std::to_string(a.input_dim()) + "->" +
                               std::to_string(a.output_dim()) + " vs " + std::to_string(b.input_dim()) + "->" +
                               std::to_string(b.output_dim()));
    }
    const ComplexMatrix fa = a.choi_factor();
    const ComplexMatrix fb = b.choi_factor();
    if (fa.cols() == 0 || fb.cols() == 0) {
        const ComplexMatrix &other = fa.cols() == 0 ? fb : fa;
        return other.cols() == 0 || (other * other.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }
    if (a.input_dim() * a.output_dim() <= kDirectChoiLimit) {
        return choi_entry_gap(fa, fb) <= tol;
    }
    return projected_choi_gap(fa, fb) <= tol;
}

std::string basis_label(std::uint64_t index, std::size_t width) {
    std::string bits(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        if (index & (std::uint64_t{1} << (width - 1 - k))) {
            bits[k] = '1';
        }
    }
    return "|" + bits + "⟩";
}

OracleResult oracle_compare(const Circuit &c1, const Circuit &c2, double tol) {
    const std::size_t width = c1.inputs().size();
    if (width != c2.inputs().size() || c1.outputs().size() != c2.outputs().size() ||
        count_reports(c1) != count_reports(c2)) {
        throw EquivalenceError("circuits differ in their input, output or report wires");
    }
    OracleResult result;
    for (const Probe &p : oracle_probes(width)) {
        const StateVector in(static_cast<std::uint32_t>(width), p.amplitudes);
        const double gap = mixture_gap(output_mixture(c1, in), output_mixture(c2, in));
        result.max_deviation = std::max(result.max_deviation, gap);
        if (gap > tol) {
            result.equal = false;
            result.probe = p.label;
            break;
        }
    }
    return result;
}

bool oracle_equal(const Circuit &c1, const Circuit &c2, double tol) {
    return oracle_compare(c1, c2, tol).equal;
}

}  // namespace qcequiv
