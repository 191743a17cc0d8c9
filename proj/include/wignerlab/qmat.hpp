#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wignerlab/modring.hpp"

namespace wignerlab {

using Complex = std::complex<double>;
/// Dense complex square matrix: states, effects, unitaries and frame elements.
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Entrywise max-norm tolerance for matrix equalities.
inline constexpr double kTol = 1e-9;
/// Eigenvalues within this distance of a 2d-th root of unity snap onto it.
inline constexpr double kSnapTol = 1e-6;

/// Kronecker product; the first factor is the slow index.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// tr(A^dagger B). Throws std::invalid_argument on a shape mismatch.
Complex hs_inner(const OperatorMatrix& a, const OperatorMatrix& b);

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
bool approx_equal(const OperatorMatrix& a, const OperatorMatrix& b, double tol = kTol);

bool is_hermitian(const OperatorMatrix& a, double tol = kTol);
bool is_unitary(const OperatorMatrix& a, double tol = kTol);
bool is_normal(const OperatorMatrix& a, double tol = kTol);

/// |psi><psi|
OperatorMatrix projector(const StateVector& psi);

/// Trace distance (1/2)||A - B||_1 of two Hermitian operators.
double trace_distance(const OperatorMatrix& a, const OperatorMatrix& b);

/// Nearest exponent k in Z_{2d} with |z - exp(i pi k / d)| <= tol, if any.
bool snap_to_root(Complex z, std::int64_t d, ModInt& exponent, double tol = kSnapTol);

struct SpectralTerm {
    ModInt exponent;  ///< eigenvalue is omega_power(exponent, d)
    OperatorMatrix projector;
};

/// U = sum_k omega^(k/2) P_k, terms sorted by exponent.
struct SpectralDecomposition {
    std::int64_t d = 1;
    std::vector<SpectralTerm> terms;

    OperatorMatrix reconstruct() const;
    /// Index of the term with the given exponent, or -1.
    int find(const ModInt& exponent) const;
};

/// Spectral decomposition of a normal matrix whose eigenvalues are 2d-th roots
/// of unity. Throws std::invalid_argument for non-normal input or an eigenvalue
/// off the root-of-unity grid.
SpectralDecomposition spectral_decompose(const OperatorMatrix& u, std::int64_t d);

}  // namespace wignerlab
