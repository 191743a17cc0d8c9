#include "wignerlab/stabilizer.hpp"

#include <stdexcept>
#include <string>

namespace wignerlab {

bool StabilizerState::check_stabilizers(double tol) const {
    if (std::abs(vector.norm() - 1.0) > tol) return false;
    for (const auto& cond : stabilizers) {
        const StateVector image = weyl_matrix(cond.label) * vector;
        const StateVector expected = omega_power(ModInt(cond.exponent, 2 * d), d) * vector;
        if ((image - expected).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

StateVector canonical_phase(const StateVector& psi) {
    Eigen::Index lead = 0;
    const double max_mag = psi.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if (std::abs(psi(i)) >= max_mag - kSnapTol) {
            lead = i;
            break;
        }
    }
    const Complex phase = std::abs(psi(lead)) > 0.0 ? std::conj(psi(lead)) / std::abs(psi(lead)) : Complex(1.0);
    return psi * phase;
}

std::vector<StabilizerState> eigenbasis_states(const WeylLabel& label) {
    const std::int64_t d = label.d();
    const auto spectrum = weyl_measurement(label);
    std::vector<StabilizerState> out;
    for (const auto& term : spectrum.terms) {
        const double rank = term.projector.trace().real();
        if (std::abs(rank - 1.0) > kSnapTol) {
            throw std::invalid_argument("eigenspace of a Weyl operator is degenerate; not a basis of pure states");
        }
        Eigen::Index col = 0;
        term.projector.colwise().norm().maxCoeff(&col);
        StabilizerState state;
        state.d = d;
        state.n = label.n();
        state.vector = canonical_phase(term.projector.col(col).normalized());
        for (std::int64_t j = 1; j < d; ++j) {
            const WeylLabel power = label.scaled(j);
            if (power.is_zero()) break;
            const Complex expectation = state.vector.dot(weyl_matrix(power) * state.vector);
            ModInt k(0, 2 * d);
            if (!snap_to_root(expectation, d, k)) {
                throw std::runtime_error("stabilizer eigenvalue failed to snap to a root of unity");
            }
            state.stabilizers.push_back({power, k.value()});
        }
        out.push_back(std::move(state));
    }
    return out;
}

std::vector<WeylLabel> stabilizer_basis_labels(std::int64_t d) {
    std::vector<WeylLabel> labels{WeylLabel(d, 1, 0), WeylLabel(d, 0, 1)};
    for (std::int64_t k = 1; k < d; ++k) labels.emplace_back(d, k, 1);
    return labels;
}

std::vector<StabilizerState> enumerate_pure_states(std::int64_t d) {
    if (!is_prime(d)) {
        throw std::invalid_argument("stabilizer-state enumeration needs prime d, got " + std::to_string(d));
    }
    std::vector<StabilizerState> out;
    for (const auto& label : stabilizer_basis_labels(d)) {
        for (auto& state : eigenbasis_states(label)) {
            bool duplicate = false;
            for (const auto& seen : out) {
                if ((seen.vector - state.vector).cwiseAbs().maxCoeff() <= kSnapTol) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) out.push_back(std::move(state));
        }
    }
    return out;
}

StabilizerState product_states(const std::vector<StabilizerState>& states) {
    if (states.empty()) throw std::invalid_argument("product_states needs at least one factor");
    const std::int64_t d = states.front().d;
    int total = 0;
    for (const auto& s : states) {
        if (s.d != d) throw std::invalid_argument("product_states: factors must share d");
        total += s.n;
    }
    StabilizerState out;
    out.d = d;
    out.n = total;
    out.vector = states.front().vector;
    for (std::size_t i = 1; i < states.size(); ++i) out.vector = tensor(out.vector, states[i].vector);

    int offset = 0;
    for (const auto& s : states) {
        for (const auto& cond : s.stabilizers) {
            std::vector<QuditPoint> parts(static_cast<std::size_t>(total));
            for (int k = 0; k < s.n; ++k) parts[static_cast<std::size_t>(offset + k)] = cond.label[k];
            out.stabilizers.push_back({WeylLabel(d, std::move(parts)), cond.exponent});
        }
        offset += s.n;
    }
    return out;
}

OperatorMatrix maximally_mixed(std::int64_t d, int n) {
    const std::int64_t dim = hilbert_dim(d, n);
    return OperatorMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

}  // namespace wignerlab
