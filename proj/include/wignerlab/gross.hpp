#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wignerlab/frames.hpp"
#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

struct PhasePointOperator {
    PhasePoint label;
    OperatorMatrix matrix;
};

/// Gross's phase-point operator
///
///   A_a = (1/d) sum_b omega^{-[a,b]} (W^G_b)^dagger,   W^G_{p,q} = omega^{-2^{-1} p q} W_{p,q},
///
/// The sign in W^G is the one that makes (W^G_b)^dagger = W^G_{-b} for the
/// ordering W = Z^p X^q, so that A_0 is Hermitian.
/// built by the direct double sum for each qudit and tensored across qudits.
/// Odd d only (composite odd d included); even d throws std::domain_error.
/// Hermiticity and unit trace are verified before returning.
PhasePointOperator phase_point(const PhasePoint& a);

/// All d^{2n} phase-point operators in flat-index order, cached per (d, n).
const std::vector<OperatorMatrix>& phase_point_table(std::int64_t d, int n);

/// F_a = A_a and D_a = A_a / d^n, cached per (d, n). The duality conditions
/// are checked once, when the entry is first built.
const std::pair<Frame, DualFrame>& gross_frame(std::int64_t d, int n);

/// W_rho(a) = tr(A_a rho) / d^n
QuasiDistribution wigner(const OperatorMatrix& rho, std::int64_t d, int n);

/// Gross representation of a channel: the d^{2n} x d^{2n} quasistochastic map.
QuasiStochasticMap gross_channel(const Channel& channel);

/// Sum-negativity: sum_a max(0, -W_rho(a)).
double negativity(const OperatorMatrix& rho, std::int64_t d, int n);

enum class ResourceClass { Positive, Negative };

const char* to_string(ResourceClass c);

struct ResourceVerdict {
    ResourceClass kind = ResourceClass::Positive;
    /// Most negative entry of the representation and where it sits. For a
    /// state `col` is -1; for a unitary (row, col) = (a', a).
    double witness_value = 0.0;
    std::int64_t row = 0;
    std::int64_t col = -1;
};

/// Negative iff the Gross representation has an entry below -1e-9.
ResourceVerdict classify_state(const OperatorMatrix& rho, std::int64_t d, int n);
ResourceVerdict classify_unitary(const OperatorMatrix& u, std::int64_t d, int n);

}  // namespace wignerlab
