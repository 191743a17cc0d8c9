#include "wignerlab/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wignerlab {

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Complex hs_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_inner: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
    // tr(A^dagger B) = sum_ij conj(A_ij) B_ij
    return (a.conjugate().cwiseProduct(b)).sum();
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const OperatorMatrix& a, const OperatorMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const OperatorMatrix& a, double tol) {
    return a.rows() == a.cols() && approx_equal(a, a.adjoint(), tol);
}

bool is_unitary(const OperatorMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return approx_equal(a * a.adjoint(), OperatorMatrix::Identity(a.rows(), a.cols()), tol);
}

bool is_normal(const OperatorMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return approx_equal(a * a.adjoint(), a.adjoint() * a, tol);
}

OperatorMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

double trace_distance(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix diff = a - b;
    diff = (diff + diff.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum() / 2.0;
}

bool snap_to_root(Complex z, std::int64_t d, ModInt& exponent, double tol) {
    const double angle = std::arg(z);
    const double step = std::numbers::pi / static_cast<double>(d);
    const auto k = static_cast<std::int64_t>(std::llround(angle / step));
    ModInt candidate(k, 2 * d);
    if (std::abs(z - omega_power(candidate, d)) > tol) return false;
    exponent = candidate;
    return true;
}

OperatorMatrix SpectralDecomposition::reconstruct() const {
    if (terms.empty()) return {};
    const Eigen::Index n = terms.front().projector.rows();
    OperatorMatrix out = OperatorMatrix::Zero(n, n);
    for (const auto& term : terms) {
        out += omega_power(term.exponent, d) * term.projector;
    }
    return out;
}

int SpectralDecomposition::find(const ModInt& exponent) const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].exponent == exponent) return static_cast<int>(i);
    }
    return -1;
}

SpectralDecomposition spectral_decompose(const OperatorMatrix& u, std::int64_t d) {
    check_dimension(d);
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("spectral_decompose: matrix must be square and non-empty");
    }
    if (!is_normal(u, kTol)) {
        throw std::invalid_argument("spectral_decompose: matrix is not normal");
    }
    const Eigen::Index n = u.rows();

    Eigen::ComplexEigenSolver<OperatorMatrix> eig(u, /*computeEigenvectors=*/false);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("spectral_decompose: eigenvalue iteration failed");
    }
    std::map<std::int64_t, Eigen::Index> multiplicity;
    for (Eigen::Index i = 0; i < n; ++i) {
        ModInt k(0, 2 * d);
        if (!snap_to_root(eig.eigenvalues()(i), d, k)) {
            throw std::invalid_argument("spectral_decompose: eigenvalue is not a 2d-th root of unity for d=" +
                                        std::to_string(d));
        }
        ++multiplicity[k.value()];
    }

    // For normal U the kernel of (U - lambda I) is the eigenspace, and the
    // singular values of the shifted matrix are the distances |lambda_j - lambda|.
    SpectralDecomposition out;
    out.d = d;
    for (const auto& [k, mult] : multiplicity) {
        const ModInt exponent(k, 2 * d);
        const OperatorMatrix shifted = u - omega_power(exponent, d) * OperatorMatrix::Identity(n, n);
        Eigen::JacobiSVD<OperatorMatrix> svd(shifted, Eigen::ComputeFullV);
        // Singular values are sorted descending; the eigenspace is the tail.
        const OperatorMatrix basis = svd.matrixV().rightCols(mult);
        out.terms.push_back({exponent, basis * basis.adjoint()});
    }
    return out;
}

}  // namespace wignerlab
