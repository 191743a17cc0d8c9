#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wignerlab/frames.hpp"
#include "wignerlab/qmat.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

/// Single-qudit stabilizer state named by the operator it diagonalizes:
/// "Z", "X" or "XZ^k", with eigenvalue omega^eigenvalue_exponent.
struct StabilizerSpec {
    std::string basis = "Z";
    std::int64_t eigenvalue_exponent = 0;

    bool operator==(const StabilizerSpec&) const = default;
};

/// The operator named by `basis` (X Z^k taken literally). Throws
/// std::invalid_argument for an unknown name.
OperatorMatrix stabilizer_basis_operator(const std::string& basis, std::int64_t d);
/// Normalized eigenvector with eigenvalue omega^e. Throws
/// std::invalid_argument if there is none.
StateVector stabilizer_spec_vector(const StabilizerSpec& spec, std::int64_t d);

enum class GateKind { Hadamard, PhaseGate, WeylGate, CustomUnitary };

const char* to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::Hadamard;
    std::vector<int> targets;
    /// WeylGate: label on the targets (one part per target).
    std::optional<WeylLabel> label;
    /// CustomUnitary: d^k x d^k matrix on the k targets, first target slowest.
    OperatorMatrix matrix;
};

struct Circuit {
    std::int64_t d = 3;
    int n = 1;
    /// One entry per qudit, unless initial_density is set.
    std::vector<StabilizerSpec> initial;
    std::optional<OperatorMatrix> initial_density;
    std::vector<Gate> gates;
    /// n-qudit labels, measured in order after all gates.
    std::vector<WeylLabel> measurements;

    /// Throws std::invalid_argument on out-of-range targets, wrong shapes or
    /// mismatched dimensions.
    void validate() const;
    OperatorMatrix initial_state() const;
    /// Full-register unitary of gate i.
    OperatorMatrix gate_unitary(std::size_t i) const;
};

/// Field-by-field comparison; matrices within tol.
bool same_circuit(const Circuit& a, const Circuit& b, double tol = kTol);

/// Places `gate` on `targets` of an n-qudit register; the first target is the
/// slowest index of `gate`.
OperatorMatrix embed_on_targets(const OperatorMatrix& gate, std::int64_t d, int n, const std::vector<int>& targets);

/// |x, y> -> |x, x + y>
OperatorMatrix controlled_sum(std::int64_t d);

/// A part of the circuit whose Gross representation has a negative entry.
class NegativityError : public std::runtime_error {
  public:
    NegativityError(std::string element, std::int64_t row, std::int64_t col, double value, std::int64_t d, int n);

    const std::string& element() const noexcept { return element_; }
    /// Witness phase point (for a step: the output point, with `col` the input).
    std::int64_t row() const noexcept { return row_; }
    std::int64_t col() const noexcept { return col_; }
    double value() const noexcept { return value_; }

  private:
    std::string element_;
    std::int64_t row_;
    std::int64_t col_;
    double value_;
};

/// Deterministic response of one Weyl measurement: outcome[lambda] is the j
/// with eigenvalue omega^j seen by phase point lambda.
struct Readout {
    WeylLabel label;
    std::vector<std::int64_t> outcome;
};

struct CompiledCircuit {
    std::int64_t d = 3;
    int n = 1;
    QuasiDistribution initial;
    std::vector<QuasiStochasticMap> steps;
    /// Parallel to steps; empty when a step is not a permutation.
    std::vector<std::vector<std::int64_t>> permutations;
    std::vector<Readout> readout;
};

/// Gross representation of every part. Even d throws std::domain_error naming
/// the no-go verdict; a negative part throws NegativityError.
CompiledCircuit compile(const Circuit& c);

using OutcomeRecord = std::vector<std::int64_t>;

struct SampleResult {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::map<OutcomeRecord, std::uint64_t> counts;

    std::map<OutcomeRecord, double> frequencies() const;
};

/// Monte Carlo over phase points. Shot i draws from its own splitmix64 stream
/// seeded by (seed, i), so the result does not depend on the worker count.
/// Workers: `threads` if nonzero, else WIGNERLAB_THREADS, else 1.
SampleResult sample(const CompiledCircuit& cc, std::uint64_t shots, std::uint64_t seed, unsigned threads = 0);

/// Born-rule joint outcome probabilities by dense evolution and projector
/// updates. Odd d, d^n <= 1024.
std::map<OutcomeRecord, double> exact_probabilities(const Circuit& c);

/// The same table computed from the compiled representation by exact
/// propagation of the distribution.
std::map<OutcomeRecord, double> compiled_probabilities(const CompiledCircuit& cc);

/// Distribution after observing `outcome`: the measurement's nonselective
/// effect (averaging over translations by multiples of the measured label,
/// which leave the readout unchanged) followed by conditioning on the
/// readout preimage and renormalizing. Throws std::invalid_argument when the
/// outcome has zero probability.
QuasiDistribution post_measurement_update(const QuasiDistribution& dist, const Readout& readout, std::int64_t outcome);

/// Probability of `outcome` under `dist`.
double outcome_probability(const QuasiDistribution& dist, const Readout& readout, std::int64_t outcome);

/// Random stabilizer circuit: product stabilizer inputs, `depth` gates drawn
/// from H, P, random Weyl gates and (for n >= 2) controlled sums, then
/// `measurements` random nonidentity Weyl measurements.
Circuit random_stabilizer_circuit(std::int64_t d, int n, int depth, int measurements, std::uint64_t seed);

}  // namespace wignerlab
