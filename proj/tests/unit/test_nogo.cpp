#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "wignerlab/nogo.hpp"

using namespace wignerlab;
namespace ts = testsupport;

namespace {

// Dense view of a congruence over d*d unknowns.
ts::Row dense(const Congruence& c, std::int64_t k) {
    ts::Row r{std::vector<std::int64_t>(static_cast<std::size_t>(k), 0), c.rhs};
    for (const auto& [u, coeff] : c.terms) r.coeff[static_cast<std::size_t>(u)] += coeff;
    return r;
}

std::vector<ts::Row> dense_rows(const std::vector<Congruence>& rows, std::int64_t k) {
    std::vector<ts::Row> out;
    for (const auto& r : rows) out.push_back(dense(r, k));
    return out;
}

ts::Row add(const ts::Row& a, const ts::Row& b, std::int64_t m) {
    ts::Row out = a;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] = ts::mod(out.coeff[i] + b.coeff[i], m);
    out.rhs = ts::mod(out.rhs + b.rhs, m);
    return out;
}

double count_of(const SolutionCount& s) {
    double out = 1.0;
    for (const auto& [p, e] : s.factors) out *= std::pow(static_cast<double>(p), static_cast<double>(e));
    return out;
}

// Rows restricted to the unknowns they touch, for enumeration.
std::pair<std::vector<ts::Row>, int> local_rows(const std::vector<Congruence>& rows) {
    std::vector<std::int64_t> vars;
    for (const auto& r : rows)
        for (const auto& t : r.terms)
            if (std::find(vars.begin(), vars.end(), t.first) == vars.end()) vars.push_back(t.first);
    std::vector<ts::Row> out;
    for (const auto& r : rows) {
        ts::Row lr{std::vector<std::int64_t>(vars.size(), 0), r.rhs};
        for (const auto& [u, c] : r.terms) lr.coeff[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), u) - vars.begin())] += c;
        out.push_back(lr);
    }
    return {out, static_cast<int>(vars.size())};
}

std::size_t index_of(const VConstraintSystem& s, ConstraintRule rule, std::vector<std::int64_t> params) {
    for (std::size_t i = 0; i < s.constraints.size(); ++i) {
        if (s.constraints[i].rule == rule && s.constraints[i].params == params) return i;
    }
    ADD_FAILURE() << "constraint not found";
    return 0;
}

}  // namespace

TEST(Nogo, ConstraintCountD3) {
    const auto s = build_constraints(3);
    std::size_t commuting = 0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            for (int pp = 0; pp < 3; ++pp)
                for (int qq = 0; qq < 3; ++qq) commuting += ts::mod(p * qq - q * pp, 3) == 0;
    EXPECT_EQ(commuting, 33u);
    EXPECT_EQ(s.constraints.size(), 1 + 9 + 9 + commuting);
}

TEST(Nogo, RowsAreReducedAndTagged) {
    for (std::int64_t d : {2, 3, 4, 6}) {
        const auto s = build_constraints(d);
        const std::int64_t m = 2 * d;
        for (const auto& c : s.constraints) {
            EXPECT_GE(c.row.rhs, 0);
            EXPECT_LT(c.row.rhs, m);
            for (const auto& [u, coeff] : c.row.terms) {
                EXPECT_GT(coeff, 0);
                EXPECT_LT(coeff, m);
                EXPECT_LT(u, d * d);
            }
        }
        EXPECT_EQ(s.constraints[0].rule, ConstraintRule::Normalization);
        for (std::int64_t p = 0; p < d; ++p) {
            for (std::int64_t q = 0; q < d; ++q) {
                EXPECT_EQ(s.hermiticity_index(p, q), index_of(s, ConstraintRule::Hermiticity, {p, q}));
                EXPECT_EQ(s.hadamard_index(p, q), index_of(s, ConstraintRule::HadamardCovariance, {p, q}));
                for (std::int64_t pp = 0; pp < d; ++pp) {
                    for (std::int64_t qq = 0; qq < d; ++qq) {
                        const auto idx = s.commuting_sum_index(p, q, pp, qq);
                        EXPECT_EQ(idx.has_value(), ts::mod(p * qq - q * pp, d) == 0);
                        if (idx) EXPECT_EQ(*idx, index_of(s, ConstraintRule::CommutingSum, {p, q, pp, qq}));
                    }
                }
            }
        }
    }
}

TEST(Nogo, DerivedRowsLieInRowSpace) {
    for (std::int64_t d : {2, 3, 4, 5, 6, 8}) {
        const auto s = build_constraints(d);
        const std::int64_t m = 2 * d, k = d * d;
        for (std::int64_t p = 0; p < d; ++p) {
            for (std::int64_t q = 0; q < d; ++q) {
                // 2v = pq: Herm(p,q) + Had(p,q) + Had(-q,p)
                ts::Row acc = dense(s.constraints[index_of(s, ConstraintRule::Hermiticity, {p, q})].row, k);
                acc = add(acc, dense(s.constraints[index_of(s, ConstraintRule::HadamardCovariance, {p, q})].row, k), m);
                acc = add(acc, dense(s.constraints[index_of(s, ConstraintRule::HadamardCovariance, {ts::mod(-q, d), p})].row, k), m);
                ts::Row twice{std::vector<std::int64_t>(static_cast<std::size_t>(k), 0), ts::mod(2 * p * q, m)};
                twice.coeff[static_cast<std::size_t>(p * d + q)] = 2 % m;
                EXPECT_EQ(acc.coeff, twice.coeff);
                EXPECT_EQ(acc.rhs, twice.rhs);

                // v_{2p,2q} = 2pq: add the self-pair sum rule
                acc = add(acc, dense(s.constraints[index_of(s, ConstraintRule::CommutingSum, {p, q, p, q})].row, k), m);
                ts::Row doubled{std::vector<std::int64_t>(static_cast<std::size_t>(k), 0), ts::mod(4 * p * q, m)};
                doubled.coeff[static_cast<std::size_t>(ts::mod(2 * p, d) * d + ts::mod(2 * q, d))] = 1;
                EXPECT_EQ(acc.coeff, doubled.coeff);
                EXPECT_EQ(acc.rhs, doubled.rhs);

                for (auto rule : {DerivedRule::TwiceV, DerivedRule::DoubledLabel}) {
                    const auto row = derive_row(s, rule, p, q);
                    EXPECT_TRUE(certificate_holds(s, row));
                    const auto& want = rule == DerivedRule::TwiceV ? twice : doubled;
                    const auto got = dense(row.row, k);
                    for (std::size_t i = 0; i < got.coeff.size(); ++i) EXPECT_EQ(ts::mod(got.coeff[i], m), want.coeff[i]);
                    EXPECT_EQ(got.rhs, want.rhs);
                }
            }
        }
    }
}

TEST(Nogo, TamperedCertificateFails) {
    const auto s = build_constraints(4);
    auto row = derive_row(s, DerivedRule::DoubledLabel, 1, 1);
    ASSERT_TRUE(certificate_holds(s, row));
    row.certificate.pop_back();
    EXPECT_FALSE(certificate_holds(s, row));
}

TEST(Nogo, AnalyzeAgreesWithEnumeration) {
    std::mt19937_64 rng(61);
    for (std::int64_t m : {4, 6, 8, 9, 12, 18}) {
        std::uniform_int_distribution<std::int64_t> value(0, m - 1);
        std::uniform_int_distribution<int> rows_n(1, 4);
        for (int trial = 0; trial < 60; ++trial) {
            const int k = 3;
            std::vector<Congruence> rows;
            const int count = rows_n(rng);
            for (int r = 0; r < count; ++r) {
                Congruence c;
                for (int u = 0; u < k; ++u) {
                    const auto coeff = value(rng) % (trial % 3 == 0 ? m : 3);
                    if (coeff) c.terms.push_back({u, coeff});
                }
                c.rhs = value(rng);
                rows.push_back(normalize(c, m));
            }
            const auto oracle = ts::count_solutions(dense_rows(rows, k), k, m);
            const auto got = analyze(rows, k, m);
            EXPECT_EQ(got.consistent, oracle > 0) << "m=" << m << " trial=" << trial;
            if (got.consistent) {
                EXPECT_EQ(count_of(got.solutions), static_cast<double>(oracle));
            }
            if (got.consistent && oracle == 1) {
                ASSERT_EQ(got.solution.size(), 3u);
                std::vector<std::int64_t> only;
                ts::count_solutions(dense_rows(rows, k), k, m, &only);
                EXPECT_EQ(got.solution, only);
                for (const auto& row : dense_rows(rows, k)) {
                    std::int64_t acc = 0;
                    for (int i = 0; i < k; ++i) acc += row.coeff[static_cast<std::size_t>(i)] * got.solution[static_cast<std::size_t>(i)];
                    EXPECT_EQ(ts::mod(acc - row.rhs, m), 0);
                }
            }
            EXPECT_EQ(exhaustive_feasible(rows, m), oracle > 0);
        }
    }
}

TEST(Nogo, UniqueInOddDimensions) {
    for (std::int64_t d : {3, 5, 7, 9, 11, 15}) {
        const auto s = build_constraints(d);
        const auto verdict = solve(s);
        ASSERT_EQ(verdict.kind, NogoVerdict::Kind::Unique) << d;
        const auto v = verdict.integer_v();
        ASSERT_TRUE(v.has_value());
        const std::int64_t half = (d + 1) / 2;
        for (std::int64_t p = 0; p < d; ++p) {
            for (std::int64_t q = 0; q < d; ++q) {
                EXPECT_EQ((*v)[static_cast<std::size_t>(p * d + q)], ts::mod(half * p * q, d));
                EXPECT_EQ(verdict.u[static_cast<std::size_t>(p * d + q)], ts::mod(2 * half * p * q, 2 * d));
            }
        }
        EXPECT_TRUE(s.satisfied_by(verdict.u));
    }
    const auto v3 = solve(build_constraints(3)).integer_v();
    EXPECT_EQ((*v3)[4], 2);  // v_{1,1}
}

TEST(Nogo, InfeasibleInEvenDimensions) {
    for (std::int64_t d : {2, 4, 6, 8, 10, 12, 14, 16}) {
        const auto s = build_constraints(d);
        const auto verdict = solve(s);
        ASSERT_EQ(verdict.kind, NogoVerdict::Kind::Infeasible) << d;
        ASSERT_FALSE(verdict.witness.empty());
        EXPECT_LE(verdict.witness.size(), 3u);
        std::vector<Congruence> rows;
        for (const auto& w : verdict.witness) {
            rows.push_back(w.row);
            if (w.derived) EXPECT_TRUE(certificate_holds(s, *w.derived));
            if (w.constraint) {
                const auto& c = s.constraints[*w.constraint].row;
                EXPECT_EQ(c.terms, w.row.terms);
                EXPECT_EQ(c.rhs, w.row.rhs);
            }
        }
        // Independent re-check over the unknowns the witness touches.
        const auto [local, k] = local_rows(rows);
        ASSERT_LE(k, 3);
        EXPECT_EQ(ts::count_solutions(local, k, 2 * d), 0) << d;
    }
}

TEST(Nogo, HadamardWitnessD6) {
    const auto s = build_constraints(6);
    const auto idx = s.hadamard_index(3, 3);
    EXPECT_FALSE(exhaustive_feasible({s.constraints[idx].row}, 12));
    const auto verdict = solve(s);
    ASSERT_EQ(verdict.witness.size(), 1u);
    ASSERT_TRUE(verdict.witness[0].constraint.has_value());
    EXPECT_EQ(*verdict.witness[0].constraint, idx);
    EXPECT_NE(verdict.witness[0].describe(s).find("hadamard-covariance(3,3)"), std::string::npos);
}

TEST(Nogo, SumRuleWitnessD4) {
    const auto s = build_constraints(4);
    const auto sum = s.commuting_sum_index(0, 2, 2, 0);
    ASSERT_TRUE(sum.has_value());
    std::vector<Congruence> rows{s.constraints[*sum].row};
    for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
        const auto row = derive_row(s, DerivedRule::DoubledLabel, p, q);
        ASSERT_TRUE(certificate_holds(s, row));
        rows.push_back(row.row);
    }
    EXPECT_FALSE(exhaustive_feasible(rows, 8));
    const auto [local, k] = local_rows(rows);
    EXPECT_EQ(k, 3);
    EXPECT_EQ(ts::count_solutions(local, k, 8), 0);
    // Each row alone is satisfiable; the contradiction needs the combination.
    for (const auto& r : rows) EXPECT_TRUE(exhaustive_feasible({r}, 8));
}

TEST(Nogo, BruteForceSmallDimensions) {
    const auto s2 = build_constraints(2);
    std::vector<Congruence> rows;
    for (const auto& c : s2.constraints) rows.push_back(c.row);
    EXPECT_EQ(ts::count_solutions(dense_rows(rows, 4), 4, 4), 0);
    EXPECT_EQ(brute_force_verdict(s2).kind, NogoVerdict::Kind::Infeasible);
    EXPECT_EQ(solve(s2).kind, NogoVerdict::Kind::Infeasible);
}

TEST(Nogo, NormalizationIsImpliedBySelfPair) {
    // Sum((0,0),(0,0)) reads -u_00 = 0, so dropping the explicit row changes nothing.
    for (std::int64_t d : {2, 3, 4, 5}) {
        auto s = build_constraints(d);
        const auto full = solve(s);
        s.constraints.erase(s.constraints.begin());
        std::vector<Congruence> rows;
        for (const auto& c : s.constraints) rows.push_back(c.row);
        const auto a = analyze(rows, d * d, 2 * d);
        EXPECT_EQ(a.consistent, full.kind != NogoVerdict::Kind::Infeasible);
        if (a.consistent) EXPECT_EQ(count_of(a.solutions), 1.0);
    }
}

TEST(Nogo, GrossAndLabelling) {
    for (std::int64_t d : {3, 5, 7, 9, 15}) EXPECT_TRUE(verify_against_gross(d)) << d;
    for (std::int64_t d : {3, 5, 7}) EXPECT_TRUE(ontic_labelling_check(d)) << d;
    EXPECT_THROW(verify_against_gross(4), std::domain_error);
    EXPECT_THROW(ontic_labelling_check(6), std::domain_error);
}
