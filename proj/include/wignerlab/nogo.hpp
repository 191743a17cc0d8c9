#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wignerlab {

/// Source of a congruence on the outcome exponents u_{p,q} = 2 v_{p,q}.
enum class ConstraintRule {
    Normalization,       ///< u_{0,0} = 0: W_{0,0} = I only has eigenvalue 1
    Hermiticity,         ///< u_{p,q} + u_{-p,-q} = 2pq
    HadamardCovariance,  ///< u_{p,q} - u_{-q,p} = 2pq
    CommutingSum,        ///< u_{a+b} - u_a - u_b = 2 p_b q_a for [a,b] = 0
};

const char* to_string(ConstraintRule rule);

/// sum_i coeff_i * u_{unknown_i} = rhs (mod 2d). Terms are merged, reduced and
/// nonzero; a row may have no terms at all.
struct Congruence {
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;  ///< (unknown, coefficient)
    std::int64_t rhs = 0;
};

struct Constraint {
    Congruence row;
    ConstraintRule rule = ConstraintRule::Normalization;
    /// (p, q) for single-label rules, (p, q, p', q') for CommutingSum.
    std::vector<std::int64_t> params;
};

/// Linear congruences over Z_{2d} in the d^2 unknowns u_{p,q}, unknown index
/// p * d + q. Constraints are ordered Normalization, the d^2 Hermiticity rows,
/// the d^2 HadamardCovariance rows, then one CommutingSum row per ordered
/// commuting pair (including a = b).
struct VConstraintSystem {
    std::int64_t d = 2;
    std::vector<Constraint> constraints;
    /// Index of the first CommutingSum row for each a, in flat order.
    std::vector<std::size_t> sum_offsets;

    std::int64_t modulus() const { return 2 * d; }
    std::int64_t unknown_count() const { return d * d; }
    std::int64_t unknown(std::int64_t p, std::int64_t q) const;

    std::size_t hermiticity_index(std::int64_t p, std::int64_t q) const;
    std::size_t hadamard_index(std::int64_t p, std::int64_t q) const;
    /// Index of the CommutingSum row for (a, b), if the pair commutes.
    std::optional<std::size_t> commuting_sum_index(std::int64_t p, std::int64_t q, std::int64_t pp,
                                                   std::int64_t qq) const;

    bool satisfied_by(const std::vector<std::int64_t>& u) const;
};

VConstraintSystem build_constraints(std::int64_t d);

/// Reduces `row` mod m and merges duplicate unknowns.
Congruence normalize(Congruence row, std::int64_t modulus);

/// Integer combination of generated constraints.
using Certificate = std::vector<std::pair<std::size_t, std::int64_t>>;

enum class DerivedRule {
    TwiceV,        ///< 2 u_{p,q} = 2pq, i.e. 2v = pq
    DoubledLabel,  ///< u_{2p,2q} = 4pq, i.e. v_{2p,2q} = 2pq
};

const char* to_string(DerivedRule rule);

/// A consequence of the generated system, carried with the combination of
/// generated rows that produces it.
struct DerivedRow {
    DerivedRule rule = DerivedRule::TwiceV;
    std::int64_t p = 0;
    std::int64_t q = 0;
    Congruence row;
    Certificate certificate;
};

DerivedRow derive_row(const VConstraintSystem& system, DerivedRule rule, std::int64_t p, std::int64_t q);

/// Recombines the certificate and compares it to the derived row mod 2d.
bool certificate_holds(const VConstraintSystem& system, const DerivedRow& derived);

/// A witness row: either a generated constraint or a certified derived row.
struct WitnessRow {
    std::optional<std::size_t> constraint;
    std::optional<DerivedRow> derived;
    Congruence row;

    std::string describe(const VConstraintSystem& system) const;
};

/// Number of solutions as a product of prime powers.
struct SolutionCount {
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;  ///< (prime, exponent)

    bool is_one() const;
    double log2() const;
    std::string to_string() const;
};

struct NogoVerdict {
    enum class Kind { Unique, Infeasible, Multiple };

    Kind kind = Kind::Infeasible;
    std::int64_t d = 2;
    /// Unique: the assignment u_{p,q} in Z_{2d}, indexed p * d + q.
    std::vector<std::int64_t> u;
    /// Infeasible: a small subset of rows with no common solution.
    std::vector<WitnessRow> witness;
    /// Multiple: size of the solution set.
    SolutionCount solutions;

    /// v_{p,q} in Z_d for a Unique verdict whose u are all even.
    std::optional<std::vector<std::int64_t>> integer_v() const;
};

const char* to_string(NogoVerdict::Kind kind);

/// Feasibility and solution count of a set of congruences mod m.
struct CongruenceAnalysis {
    bool consistent = false;
    SolutionCount solutions;
    /// Filled when the solution is unique.
    std::vector<std::int64_t> solution;
};

/// Elimination over each prime-power factor of m with minimal-valuation pivots.
CongruenceAnalysis analyze(const std::vector<Congruence>& rows, std::int64_t unknowns, std::int64_t modulus);

/// Brute force over the unknowns the rows mention; true if some assignment
/// satisfies all of them. Intended for witnesses over a handful of unknowns.
bool exhaustive_feasible(const std::vector<Congruence>& rows, std::int64_t modulus);

NogoVerdict solve(const VConstraintSystem& system);

/// Exhaustive search over every assignment u in Z_{2d}^{d^2}. Feasible only
/// for tiny d (d=3 visits about 10^7 candidates).
NogoVerdict brute_force_verdict(const VConstraintSystem& system);

/// Builds F_{0,0} = (1/d) sum omega^{v_{p,q}} W_{p,q}^dagger from the unique
/// assignment and compares it, and its Weyl translates, with the Gross
/// phase-point operators. Odd d only.
bool verify_against_gross(std::int64_t d);
bool verify_against_gross(const NogoVerdict& verdict);

/// In the Gross frame: X eigenstates live on vertical lines p = p1, Z
/// eigenstates on horizontal lines q = q1 (uniformly), X acts as q -> q+1,
/// Z as p -> p+1, and H fixes (0, 0). Odd d only.
bool ontic_labelling_check(std::int64_t d);

}  // namespace wignerlab
