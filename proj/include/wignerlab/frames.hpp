#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

/// Operators on (C^d)^{⊗n} expanded in the Weyl basis,
/// coords_b(A) = tr(W_b^dagger A) / d^n.
class WeylBasis {
  public:
    static const WeylBasis& get(std::int64_t d, int n);

    std::int64_t d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::int64_t dim() const noexcept { return dim_; }

    Eigen::VectorXcd coords(const OperatorMatrix& a) const;
    OperatorMatrix from_coords(const Eigen::VectorXcd& c) const;
    /// Columns are vec(W_b) in column-major order.
    const Eigen::MatrixXcd& vec_weyl() const noexcept { return vec_weyl_; }

  private:
    WeylBasis(std::int64_t d, int n);

    std::int64_t d_;
    int n_;
    std::int64_t dim_;
    Eigen::MatrixXcd vec_weyl_;
};

/// Completely positive trace-preserving map held as its superoperator matrix
/// in the Weyl operator basis: coords(E(A)) = S * coords(A).
class Channel {
  public:
    static Channel identity(std::int64_t d, int n);
    /// rho -> U rho U^dagger
    static Channel unitary(const OperatorMatrix& u, std::int64_t d, int n);
    static Channel kraus(const std::vector<OperatorMatrix>& ops, std::int64_t d, int n);
    static Channel from_weyl_superoperator(Eigen::MatrixXcd s, std::int64_t d, int n);

    std::int64_t d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::int64_t dim() const noexcept { return dim_; }
    const Eigen::MatrixXcd& superoperator() const noexcept { return s_; }

    OperatorMatrix apply(const OperatorMatrix& rho) const;
    /// `next` after `*this`.
    Channel then(const Channel& next) const;
    /// Parallel composition; `*this` acts on the leading qudits.
    Channel tensor(const Channel& other) const;
    bool is_trace_preserving(double tol = kTol) const;

  private:
    Channel(Eigen::MatrixXcd s, std::int64_t d, int n);

    Eigen::MatrixXcd s_;
    std::int64_t d_;
    int n_;
    std::int64_t dim_;
};

/// Basis {F_lambda} of Hermitian operators with unit trace, indexed by the
/// phase points of (Z_d^2)^n. Invariants are checked at construction.
class Frame {
  public:
    Frame(std::int64_t d, int n, std::vector<OperatorMatrix> elements);

    std::int64_t d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::int64_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const OperatorMatrix& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<OperatorMatrix>& elements() const noexcept { return elements_; }

  private:
    std::int64_t d_;
    int n_;
    std::int64_t dim_;
    std::vector<OperatorMatrix> elements_;
};

/// {D_lambda} with tr(D_mu F_lambda) = delta and sum_lambda D_lambda = I.
class DualFrame {
  public:
    DualFrame(std::int64_t d, int n, std::vector<OperatorMatrix> elements);

    std::int64_t d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::int64_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const OperatorMatrix& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<OperatorMatrix>& elements() const noexcept { return elements_; }

    /// Checks both duality conditions against `frame` within tol.
    bool is_dual_of(const Frame& frame, double tol = kTol) const;

  private:
    std::int64_t d_;
    int n_;
    std::int64_t dim_;
    std::vector<OperatorMatrix> elements_;
};

struct QuasiDistribution {
    std::int64_t d = 1;
    int n = 1;
    Eigen::VectorXd values;

    double at(const PhasePoint& point) const { return values(point.index()); }
    double sum() const { return values.sum(); }
};

/// Column-stochastic up to sign: matrix(lambda', lambda).
struct QuasiStochasticMap {
    std::int64_t d = 1;
    int n = 1;
    Eigen::MatrixXd matrix;

    /// Position of the unique 1 in each column if this is a 0/1 permutation
    /// matrix within tol, else empty.
    std::vector<std::int64_t> as_permutation(double tol = kTol) const;
};

/// The unique dual of a frame. Throws std::invalid_argument("not a basis")
/// when the frame elements are linearly dependent.
DualFrame dual_basis(const Frame& frame);

/// lambda -> tr(D_lambda rho)
QuasiDistribution rep_state(const OperatorMatrix& rho, const DualFrame& dual);
/// lambda -> tr(F_lambda E)
Eigen::VectorXd rep_effect(const OperatorMatrix& effect, const Frame& frame);
/// (lambda' | lambda) -> tr(D_lambda' E(F_lambda))
QuasiStochasticMap rep_channel(const Channel& channel, const Frame& frame, const DualFrame& dual);

/// sum_{lambda', lambda} xi_E(lambda') xi_channel(lambda'|lambda) xi_rho(lambda)
double recover_probability(const Eigen::VectorXd& effect, const QuasiStochasticMap& channel,
                           const QuasiDistribution& state);

struct NonnegativityReport {
    bool nonnegative = true;
    /// Most violating entry, or the minimum entry when nothing violates.
    double extremal = 0.0;
    std::int64_t row = 0;
    /// -1 for distributions.
    std::int64_t col = -1;
};

NonnegativityReport is_nonnegative(const QuasiDistribution& rep, double tol = kTol);
NonnegativityReport is_nonnegative(const QuasiStochasticMap& rep, double tol = kTol);

}  // namespace wignerlab
