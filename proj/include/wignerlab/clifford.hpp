#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

/// Affine action of a Clifford unitary on (Z_d^2)^n.
///
/// `linear` is the 2n x 2n symplectic matrix (row-major, coordinates ordered
/// p_0, q_0, p_1, q_1, ...) describing how conjugation permutes Weyl labels:
/// U W_b U^dagger is proportional to W_{linear * b}. `shift` is the translation
/// of the induced permutation of phase points (a -> linear * a + shift). It is
/// only defined in odd d and is left empty otherwise.
struct PhaseSpaceAction {
    std::int64_t d = 1;
    int n = 1;
    std::vector<std::int64_t> linear;
    std::vector<std::int64_t> shift;
    /// Z_{2d} exponents k_e with U W_e U^dagger = omega^(k_e/2) W_{linear e},
    /// one per unit label e. Empty for actions built without a unitary.
    std::vector<std::int64_t> generator_phases;

    static PhaseSpaceAction identity(std::int64_t d, int n);

    std::int64_t at(int row, int col) const { return linear[static_cast<std::size_t>(row * 2 * n + col)]; }
    bool has_shift() const { return !shift.empty(); }

    /// Linear part only: the label U W_b U^dagger is proportional to.
    WeylLabel map_label(const WeylLabel& label) const;
    /// Full affine map on phase points.
    WeylLabel apply(const WeylLabel& point) const;
    /// `next` after `*this`.
    PhaseSpaceAction then(const PhaseSpaceAction& next) const;

    bool preserves_symplectic_form() const;
    bool is_bijective() const;
    /// Compares linear and shift parts.
    bool same_action(const PhaseSpaceAction& other) const;
};

/// Generalized Hadamard H|x> = d^{-1/2} sum_k omega^{xk} |k>.
OperatorMatrix hadamard(std::int64_t d);

/// Diagonal phase gate P|x> = omega^{2^{-1} x (x-1)} |x> for odd d.
/// Throws std::domain_error for even d.
OperatorMatrix phase_gate(std::int64_t d);

/// Embeds a single-qudit gate on `target` of an n-qudit register.
OperatorMatrix embed_gate(const OperatorMatrix& gate, std::int64_t d, int n, int target);

struct CliffordCheck {
    std::optional<PhaseSpaceAction> action;
    /// Unit label whose conjugate is not a single Weyl operator, or an
    /// explanation when the assembled map is not symplectic.
    std::optional<WeylLabel> failed_generator;
    std::string reason;

    bool accepted() const { return action.has_value(); }
};

/// Clifford membership test by conjugating each of the 2n unit Weyl labels.
CliffordCheck is_clifford(const OperatorMatrix& u, std::int64_t d, int n);

/// All |SL(2, Z_d)| * d^2 affine actions on a single qudit, d prime.
/// Throws std::invalid_argument for non-prime d.
std::vector<PhaseSpaceAction> clifford_group_elements(std::int64_t d);

}  // namespace wignerlab
