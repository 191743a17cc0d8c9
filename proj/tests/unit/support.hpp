#pragma once

// Independent oracles shared by the unit and acceptance tests. Nothing here
// calls the library code under test except for basic types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testsupport {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Complex omega(std::int64_t d, std::int64_t k) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

/// Z^p X^q written out entry by entry: column x carries omega^{p(x+q)} in row x+q.
inline Matrix weyl_entries(std::int64_t d, std::int64_t p, std::int64_t q) {
    Matrix w = Matrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) w(mod(x + q, d), x) = omega(d, p * (x + q));
    return w;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

/// |x> -> |-x>, the Gross phase-point operator at the origin for odd d.
inline Matrix parity(std::int64_t d) {
    Matrix out = Matrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) out(mod(-x, d), x) = 1.0;
    return out;
}

inline Matrix fourier(std::int64_t d) {
    Matrix h(d, d);
    for (std::int64_t x = 0; x < d; ++x) {
        for (std::int64_t k = 0; k < d; ++k) h(k, x) = omega(d, x * k) / std::sqrt(static_cast<double>(d));
    }
    return h;
}

/// diag(omega^{x(x-1)/2}) using the integer inverse of 2 mod odd d.
inline Matrix phase_diag(std::int64_t d) {
    const std::int64_t half = (d + 1) / 2;
    Matrix p = Matrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) p(x, x) = omega(d, mod(half * x * (x - 1), d));
    return p;
}

inline Matrix sum_gate(std::int64_t d) {
    Matrix out = Matrix::Zero(d * d, d * d);
    for (std::int64_t x = 0; x < d; ++x) {
        for (std::int64_t y = 0; y < d; ++y) out(x * d + mod(x + y, d), x * d + y) = 1.0;
    }
    return out;
}

inline Matrix on_qudit(const Matrix& g, std::int64_t d, int n, int target) {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) out = kron(out, i == target ? g : Matrix(Matrix::Identity(d, d)));
    return out;
}

/// Random product of Fourier, phase, shift and clock gates (and the sum gate
/// between qudits 0 and 1 when n = 2). Odd d.
template <class Rng>
Matrix random_clifford_word(std::int64_t d, int n, int length, Rng& rng) {
    const std::int64_t dim = static_cast<std::int64_t>(std::pow(static_cast<double>(d), n));
    Matrix u = Matrix::Identity(dim, dim);
    std::uniform_int_distribution<int> kind(0, n == 2 ? 4 : 3);
    std::uniform_int_distribution<int> qudit(0, n - 1);
    for (int i = 0; i < length; ++i) {
        const int k = kind(rng);
        const int t = qudit(rng);
        Matrix g;
        switch (k) {
            case 0: g = on_qudit(fourier(d), d, n, t); break;
            case 1: g = on_qudit(phase_diag(d), d, n, t); break;
            case 2: g = on_qudit(weyl_entries(d, 0, 1), d, n, t); break;
            case 3: g = on_qudit(weyl_entries(d, 1, 0), d, n, t); break;
            default: g = sum_gate(d); break;
        }
        u = g * u;
    }
    return u;
}

template <class Rng>
Vector haar_state(std::int64_t d, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    for (std::int64_t i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
    return v / v.norm();
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

struct Row {
    std::vector<std::int64_t> coeff;
    std::int64_t rhs;
};

/// Number of x in Z_m^k with every row satisfied.
inline std::int64_t count_solutions(const std::vector<Row>& rows, int k, std::int64_t m,
                                    std::vector<std::int64_t>* last = nullptr) {
    std::vector<std::int64_t> x(static_cast<std::size_t>(k), 0);
    std::int64_t count = 0;
    while (true) {
        bool ok = true;
        for (const auto& r : rows) {
            std::int64_t acc = 0;
            for (int i = 0; i < k; ++i) acc += r.coeff[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            if (mod(acc - r.rhs, m) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++count;
            if (last) *last = x;
        }
        int i = 0;
        while (i < k && ++x[static_cast<std::size_t>(i)] == m) x[static_cast<std::size_t>(i++)] = 0;
        if (i == k) return count;
    }
}

}  // namespace testsupport
