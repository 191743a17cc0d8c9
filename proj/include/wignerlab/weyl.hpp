#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wignerlab/modring.hpp"
#include "wignerlab/qmat.hpp"

namespace wignerlab {

/// One (p, q) pair in Z_d x Z_d.
struct QuditPoint {
    std::int64_t p = 0;
    std::int64_t q = 0;
    bool operator==(const QuditPoint&) const = default;
};

/// A point of the phase space (Z_d x Z_d)^n.
///
/// The same object indexes Weyl operators W_{p,q} = Z^p X^q and, in a frame
/// representation, ontic states. Components are always reduced mod d. Flat
/// indices put the first qudit slowest and p before q, so that tensor products
/// of per-qudit tables line up with Kronecker products.
class WeylLabel {
  public:
    WeylLabel(std::int64_t d, std::int64_t p, std::int64_t q);
    WeylLabel(std::int64_t d, std::vector<QuditPoint> parts);

    /// Identity label on n qudits.
    static WeylLabel zero(std::int64_t d, int n);
    /// Label with flat index `index` in (Z_d^2)^n.
    static WeylLabel from_index(std::int64_t d, int n, std::int64_t index);
    /// The d^{2n} labels in flat-index order.
    static std::vector<WeylLabel> all(std::int64_t d, int n);

    std::int64_t d() const noexcept { return d_; }
    int n() const noexcept { return static_cast<int>(parts_.size()); }
    const QuditPoint& operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
    const std::vector<QuditPoint>& parts() const noexcept { return parts_; }

    std::int64_t p() const { return parts_.front().p; }
    std::int64_t q() const { return parts_.front().q; }

    std::int64_t index() const;
    bool is_zero() const;

    WeylLabel operator+(const WeylLabel& other) const;
    WeylLabel operator-(const WeylLabel& other) const;
    WeylLabel operator-() const;
    WeylLabel scaled(std::int64_t factor) const;

    /// Concatenation: this label on the leading qudits, `other` on the rest.
    WeylLabel concat(const WeylLabel& other) const;
    /// Embeds a single-qudit label at `position` of an n-qudit register.
    WeylLabel embed(int n, int position) const;

    bool operator==(const WeylLabel&) const = default;
    bool operator<(const WeylLabel& other) const { return index() < other.index(); }

  private:
    void check_compatible(const WeylLabel& other) const;

    std::int64_t d_;
    std::vector<QuditPoint> parts_;
};

using PhasePoint = WeylLabel;

std::ostream& operator<<(std::ostream& out, const WeylLabel& label);

/// Symplectic form [a, b] = sum_i (p_a q_b - q_a p_b) mod d.
std::int64_t symplectic_form(const WeylLabel& a, const WeylLabel& b);

/// Clock Z|x> = omega^x |x> and shift X|x> = |x+1>.
OperatorMatrix clock_matrix(std::int64_t d);
OperatorMatrix shift_matrix(std::int64_t d);

/// Z^p X^q with no extra phase; multi-qudit labels give the tensor product.
OperatorMatrix weyl_matrix(const WeylLabel& label);

/// W_a W_b = omega^(phase/2) W_{a+b}; `phase` lives in Z_{2d}.
struct LabelProduct {
    WeylLabel label;
    ModInt phase;
};

LabelProduct compose_labels(const WeylLabel& a, const WeylLabel& b);

/// W rho W^dagger. Throws std::invalid_argument on a dimension mismatch.
OperatorMatrix weyl_superop_apply(const WeylLabel& label, const OperatorMatrix& rho);

/// Projective measurement in the eigenbasis of W_label, outcomes keyed by the
/// Z_{2d} eigenvalue exponent.
SpectralDecomposition weyl_measurement(const WeylLabel& label);

/// Cached table of all Weyl matrices for (d, n) in flat-index order.
const std::vector<OperatorMatrix>& weyl_table(std::int64_t d, int n);

/// Hilbert-space dimension d^n, with overflow and size checks.
std::int64_t hilbert_dim(std::int64_t d, int n);

}  // namespace wignerlab
