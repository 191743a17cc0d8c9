#pragma once

#include <cstdint>
#include <vector>

#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

/// W_label |psi> = omega^(exponent/2) |psi>, exponent in Z_{2d}.
struct StabilizerCondition {
    WeylLabel label;
    std::int64_t exponent = 0;
};

struct StabilizerState {
    std::int64_t d = 1;
    int n = 1;
    StateVector vector;
    std::vector<StabilizerCondition> stabilizers;

    OperatorMatrix density() const { return projector(vector); }
    /// Every recorded stabilizer condition holds within tol.
    bool check_stabilizers(double tol = kTol) const;
};

/// Global-phase canonical form: the first largest-magnitude component is made
/// real and positive.
StateVector canonical_phase(const StateVector& psi);

/// Eigenstates of W_label, one per eigenvalue, with the cyclic group generated
/// by `label` recorded as stabilizers. Requires nondegenerate eigenspaces.
std::vector<StabilizerState> eigenbasis_states(const WeylLabel& label);

/// The d(d+1) single-qudit pure stabilizer states for prime d: eigenbases of
/// Z, X and X Z^k (k = 1..d-1), deduplicated up to global phase.
/// Throws std::invalid_argument for non-prime d.
std::vector<StabilizerState> enumerate_pure_states(std::int64_t d);

/// Labels of the d+1 maximal cyclic subgroups used by enumerate_pure_states.
std::vector<WeylLabel> stabilizer_basis_labels(std::int64_t d);

/// Tensor product of the given states; stabilizers are embedded per factor.
StabilizerState product_states(const std::vector<StabilizerState>& states);

/// I / d^n
OperatorMatrix maximally_mixed(std::int64_t d, int n);

}  // namespace wignerlab
