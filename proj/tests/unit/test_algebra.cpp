#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "wignerlab/modring.hpp"
#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

using namespace wignerlab;
namespace ts = testsupport;

TEST(ModRing, ReduceExamples) {
    EXPECT_EQ(mod_reduce(7, 3).value(), 1);
    EXPECT_EQ(mod_reduce(-1, 5).value(), 4);
    EXPECT_EQ(mod_reduce(0, 1).value(), 0);
    EXPECT_THROW(mod_reduce(3, 0), std::invalid_argument);
}

TEST(ModRing, RingOpsStayReduced) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> any(-1000, 1000);
    for (std::int64_t m : {1, 2, 6, 7, 30}) {
        for (int i = 0; i < 200; ++i) {
            const ModInt a(any(rng), m), b(any(rng), m), c(any(rng), m);
            for (const auto& x : {a + b, a - b, a * b, -a}) {
                EXPECT_GE(x.value(), 0);
                EXPECT_LT(x.value(), m);
                EXPECT_EQ(x.modulus(), m);
            }
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
        }
    }
    EXPECT_THROW(ModInt(1, 3) + ModInt(1, 4), std::invalid_argument);
}

TEST(ModRing, InverseOfTwo) {
    EXPECT_EQ(inv2(3).value(), 2);
    EXPECT_EQ(inv2(5).value(), 3);
    EXPECT_THROW(inv2(4), std::domain_error);
    for (std::int64_t d = 1; d <= 99; d += 2) EXPECT_EQ(ts::mod(2 * inv2(d).value(), d), d == 1 ? 0 : 1) << d;
}

TEST(ModRing, RootsOfUnity) {
    EXPECT_LT(std::abs(omega_power(ModInt(0, 6), 3) - ts::Complex(1.0)), 1e-12);
    EXPECT_LT(std::abs(omega_power(ModInt(2, 6), 3) - ts::omega(3, 1)), 1e-12);
    for (std::int64_t d : {2, 3, 4, 7}) {
        EXPECT_LT(std::abs(omega_power(ModInt(d, 2 * d), d) + 1.0), 1e-12);
        EXPECT_LT(std::abs(omega_power(ModInt(2 * d, 2 * d), d) - 1.0), 1e-12);
        for (std::int64_t k = 0; k < 2 * d; ++k) {
            for (std::int64_t j = 0; j < 2 * d; ++j) {
                const auto lhs = omega_power(ModInt(k, 2 * d), d) * omega_power(ModInt(j, 2 * d), d);
                EXPECT_LT(std::abs(lhs - omega_power(ModInt(k + j, 2 * d), d)), 1e-12);
            }
        }
    }
}

TEST(Qmat, TensorExamples) {
    EXPECT_TRUE(approx_equal(tensor(OperatorMatrix(OperatorMatrix::Identity(2, 2)), OperatorMatrix(OperatorMatrix::Identity(3, 3))),
                             OperatorMatrix::Identity(6, 6)));
    const OperatorMatrix x2 = ts::weyl_entries(2, 0, 1);
    const OperatorMatrix swapped = tensor(x2, OperatorMatrix::Identity(2, 2));
    OperatorMatrix expected = OperatorMatrix::Zero(4, 4);
    expected.block(0, 2, 2, 2) = OperatorMatrix::Identity(2, 2);
    expected.block(2, 0, 2, 2) = OperatorMatrix::Identity(2, 2);
    EXPECT_TRUE(approx_equal(swapped, expected));

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int i = 0; i < 20; ++i) {
        OperatorMatrix a(3, 3), b(3, 3);
        for (int k = 0; k < 9; ++k) {
            a(k / 3, k % 3) = {g(rng), g(rng)};
            b(k / 3, k % 3) = {g(rng), g(rng)};
        }
        EXPECT_LT(std::abs(tensor(a, b).trace() - a.trace() * b.trace()), 1e-12);
        EXPECT_TRUE(approx_equal(tensor(a, b), ts::kron(a, b), 1e-12));
    }
}

TEST(Qmat, HilbertSchmidt) {
    EXPECT_LT(std::abs(hs_inner(OperatorMatrix::Identity(4, 4), OperatorMatrix::Identity(4, 4)) - 4.0), 1e-12);
    EXPECT_LT(std::abs(hs_inner(ts::weyl_entries(3, 1, 0), ts::weyl_entries(3, 0, 1))), 1e-12);
    EXPECT_THROW(hs_inner(OperatorMatrix::Identity(2, 2), OperatorMatrix::Identity(3, 3)), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    auto random = [&] {
        OperatorMatrix m(4, 4);
        for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = {g(rng), g(rng)};
        return m;
    };
    for (int i = 0; i < 20; ++i) {
        const OperatorMatrix a = random(), b = random(), c = random();
        const OperatorMatrix h = a + a.adjoint();
        const Complex hh = hs_inner(h, h);
        EXPECT_LT(std::abs(hh.imag()), 1e-10);
        EXPECT_GE(hh.real(), 0.0);
        EXPECT_LT(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))), 1e-10);
        const Complex s(0.3, -1.2);
        EXPECT_LT(std::abs(hs_inner(a, b + s * c) - (hs_inner(a, b) + s * hs_inner(a, c))), 1e-10);
    }
}

TEST(Qmat, SpectralDecomposeClock) {
    const auto sd = spectral_decompose(ts::weyl_entries(3, 1, 0), 3);
    ASSERT_EQ(sd.terms.size(), 3u);
    for (std::int64_t x = 0; x < 3; ++x) {
        const int idx = sd.find(ModInt(2 * x, 6));
        ASSERT_GE(idx, 0);
        OperatorMatrix expected = OperatorMatrix::Zero(3, 3);
        expected(x, x) = 1.0;
        EXPECT_TRUE(approx_equal(sd.terms[static_cast<std::size_t>(idx)].projector, expected));
    }
    const auto id = spectral_decompose(OperatorMatrix::Identity(3, 3), 3);
    ASSERT_EQ(id.terms.size(), 1u);
    EXPECT_EQ(id.terms[0].exponent.value(), 0);
    EXPECT_TRUE(approx_equal(id.terms[0].projector, OperatorMatrix::Identity(3, 3)));
}

TEST(Qmat, SpectralReconstruction) {
    for (std::int64_t d : {2, 3, 4, 5, 6}) {
        for (std::int64_t p = 0; p < d; ++p) {
            for (std::int64_t q = 0; q < d; ++q) {
                const OperatorMatrix w = ts::weyl_entries(d, p, q);
                const auto sd = spectral_decompose(w, d);
                EXPECT_LE(max_abs_diff(sd.reconstruct(), w), 1e-9) << d << " " << p << " " << q;
                OperatorMatrix sum = OperatorMatrix::Zero(d, d);
                for (const auto& t : sd.terms) sum += t.projector;
                EXPECT_LE(max_abs_diff(sum, OperatorMatrix::Identity(d, d)), 1e-9);
            }
        }
    }
    const auto w11 = spectral_decompose(ts::weyl_entries(3, 1, 1), 3);
    EXPECT_EQ(w11.terms.size(), 3u);
    for (const auto& t : w11.terms) EXPECT_NEAR(t.projector.trace().real(), 1.0, 1e-9);
}

TEST(Qmat, SpectralRejections) {
    OperatorMatrix nonnormal = OperatorMatrix::Zero(2, 2);
    nonnormal(0, 1) = 1.0;
    EXPECT_THROW(spectral_decompose(nonnormal, 2), std::invalid_argument);
    OperatorMatrix off_grid = OperatorMatrix::Identity(3, 3);
    off_grid(2, 2) = std::polar(1.0, 0.1);
    EXPECT_THROW(spectral_decompose(off_grid, 3), std::invalid_argument);
}

TEST(Weyl, MatrixExamples) {
    EXPECT_TRUE(approx_equal(weyl_matrix(WeylLabel(3, 0, 0)), OperatorMatrix::Identity(3, 3)));
    OperatorMatrix z3 = OperatorMatrix::Zero(3, 3);
    for (int x = 0; x < 3; ++x) z3(x, x) = ts::omega(3, x);
    EXPECT_TRUE(approx_equal(weyl_matrix(WeylLabel(3, 1, 0)), z3));
    OperatorMatrix zx(2, 2);
    zx << 0, 1, -1, 0;
    EXPECT_TRUE(approx_equal(weyl_matrix(WeylLabel(2, 1, 1)), zx));
}

TEST(Weyl, MatchesDirectEntries) {
    for (std::int64_t d = 2; d <= 7; ++d) {
        for (std::int64_t p = 0; p < d; ++p) {
            for (std::int64_t q = 0; q < d; ++q) {
                EXPECT_LE(max_abs_diff(weyl_matrix(WeylLabel(d, p, q)), ts::weyl_entries(d, p, q)), 1e-12);
            }
        }
    }
    const WeylLabel two(3, {{1, 2}, {0, 1}});
    EXPECT_LE(max_abs_diff(weyl_matrix(two), ts::kron(ts::weyl_entries(3, 1, 2), ts::weyl_entries(3, 0, 1))), 1e-12);
}

TEST(Weyl, ComposeExamples) {
    auto r = compose_labels(WeylLabel(3, 1, 0), WeylLabel(3, 0, 1));
    EXPECT_EQ(r.label, WeylLabel(3, 1, 1));
    EXPECT_EQ(r.phase.value(), 0);
    r = compose_labels(WeylLabel(3, 0, 1), WeylLabel(3, 1, 0));
    EXPECT_EQ(r.label, WeylLabel(3, 1, 1));
    EXPECT_EQ(r.phase, ModInt(-2, 6));
}

TEST(Weyl, ComposeMatchesMatrices) {
    for (std::int64_t d = 2; d <= 6; ++d) {
        for (const auto& a : WeylLabel::all(d, 1)) {
            for (const auto& b : WeylLabel::all(d, 1)) {
                const auto r = compose_labels(a, b);
                const OperatorMatrix lhs = ts::weyl_entries(d, a.p(), a.q()) * ts::weyl_entries(d, b.p(), b.q());
                const OperatorMatrix rhs = ts::omega(d, -b.p() * a.q()) * ts::weyl_entries(d, a.p() + b.p(), a.q() + b.q());
                EXPECT_LE(max_abs_diff(lhs, rhs), 1e-9);
                EXPECT_LE(max_abs_diff(lhs, omega_power(r.phase, d) * weyl_matrix(r.label)), 1e-9);
            }
            // W_a W_{-a} = omega^{pq} I
            const auto inv = compose_labels(a, -a);
            EXPECT_TRUE(inv.label.is_zero());
            EXPECT_EQ(inv.phase, omega_exponent(a.p() * a.q(), d));
        }
    }
}

TEST(Weyl, Orthonormality) {
    for (std::int64_t d : {2, 3, 4, 5}) {
        const auto labels = WeylLabel::all(d, 1);
        for (const auto& a : labels) {
            for (const auto& b : labels) {
                const Complex g = hs_inner(weyl_matrix(a), weyl_matrix(b)) / static_cast<double>(d);
                EXPECT_LT(std::abs(g - (a == b ? 1.0 : 0.0)), 1e-9);
            }
        }
    }
}

TEST(Weyl, SuperoperatorExamples) {
    std::mt19937_64 rng(17);
    const OperatorMatrix rho = projector(ts::haar_state(3, rng));
    EXPECT_TRUE(approx_equal(weyl_superop_apply(WeylLabel(3, 0, 0), rho), rho));
    for (const auto& a : WeylLabel::all(3, 1)) {
        EXPECT_TRUE(approx_equal(weyl_superop_apply(-a, weyl_superop_apply(a, rho)), rho));
    }
    OperatorMatrix zero = OperatorMatrix::Zero(3, 3);
    zero(0, 0) = 1.0;
    EXPECT_TRUE(approx_equal(weyl_superop_apply(WeylLabel(3, 1, 0), zero), zero));
    EXPECT_THROW(weyl_superop_apply(WeylLabel(3, 1, 0), OperatorMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(Weyl, SuperoperatorGroupLaw) {
    std::mt19937_64 rng(19);
    for (std::int64_t d : {2, 3, 4, 5, 6}) {
        std::uniform_int_distribution<std::int64_t> coord(0, d - 1);
        for (int i = 0; i < 200; ++i) {
            const WeylLabel a(d, coord(rng), coord(rng)), b(d, coord(rng), coord(rng));
            const OperatorMatrix rho = projector(ts::haar_state(d, rng));
            const OperatorMatrix lhs = weyl_superop_apply(b, weyl_superop_apply(a, rho));
            EXPECT_LE(max_abs_diff(lhs, weyl_superop_apply(a + b, rho)), 1e-9);
        }
    }
}

TEST(Weyl, MeasurementExamples) {
    const auto z = weyl_measurement(WeylLabel(3, 1, 0));
    ASSERT_EQ(z.terms.size(), 3u);
    for (std::int64_t x = 0; x < 3; ++x) {
        const int idx = z.find(ModInt(2 * x, 6));
        ASSERT_GE(idx, 0);
        EXPECT_NEAR(z.terms[static_cast<std::size_t>(idx)].projector(x, x).real(), 1.0, 1e-9);
    }
    // Eigenvectors of X are the Fourier columns.
    const auto x = weyl_measurement(WeylLabel(3, 0, 1));
    const ts::Matrix h = ts::fourier(3);
    ASSERT_EQ(x.terms.size(), 3u);
    for (const auto& t : x.terms) {
        int hits = 0;
        for (int col = 0; col < 3; ++col) {
            const ts::Vector v = h.col(col);
            if (max_abs_diff(t.projector, v * v.adjoint()) <= 1e-9) ++hits;
        }
        EXPECT_EQ(hits, 1);
    }
    const auto id = weyl_measurement(WeylLabel(3, 0, 0));
    ASSERT_EQ(id.terms.size(), 1u);
    EXPECT_TRUE(approx_equal(id.terms[0].projector, OperatorMatrix::Identity(3, 3)));
}

TEST(Weyl, PowerIdentity) {
    for (std::int64_t d = 2; d <= 8; ++d) {
        for (const auto& a : WeylLabel::all(d, 1)) {
            const OperatorMatrix w = weyl_matrix(a);
            OperatorMatrix pw = OperatorMatrix::Identity(d, d);
            for (std::int64_t k = 0; k < d; ++k) pw = pw * w;
            const double sign = (d % 2 == 0 && (a.p() * a.q()) % 2 == 1) ? -1.0 : 1.0;
            EXPECT_LE(max_abs_diff(pw, sign * OperatorMatrix::Identity(d, d)), 1e-9) << d << " " << a;
            EXPECT_LE(max_abs_diff(pw * pw, OperatorMatrix::Identity(d, d)), 1e-9);
        }
    }
}

TEST(Weyl, LabelIndexing) {
    const auto labels = WeylLabel::all(3, 2);
    ASSERT_EQ(labels.size(), 81u);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        EXPECT_EQ(labels[i].index(), static_cast<std::int64_t>(i));
        EXPECT_EQ(WeylLabel::from_index(3, 2, static_cast<std::int64_t>(i)), labels[i]);
    }
    EXPECT_EQ(WeylLabel(5, -1, 7), WeylLabel(5, 4, 2));
    EXPECT_EQ(symplectic_form(WeylLabel(3, 1, 0), WeylLabel(3, 0, 1)), 1);
}
