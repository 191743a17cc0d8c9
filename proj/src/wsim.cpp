#include "wignerlab/wsim.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "wignerlab/clifford.hpp"
#include "wignerlab/gross.hpp"
#include "wignerlab/nogo.hpp"
#include "wignerlab/stabilizer.hpp"

namespace wignerlab {

namespace {

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }
};

SplitMix64 shot_stream(std::uint64_t seed, std::uint64_t shot) {
    SplitMix64 mix{seed};
    const std::uint64_t base = mix.next();
    SplitMix64 stream{base ^ (shot * 0xd1342543de82ef95ULL)};
    stream.next();
    return stream;
}

std::size_t draw(const std::vector<double>& cumulative, double u) {
    const double target = u * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulative_of(const Eigen::VectorXd& weights) {
    std::vector<double> out(static_cast<std::size_t>(weights.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        acc += std::max(0.0, weights(i));
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WIGNERLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1;
}

std::int64_t outcome_of_exponent(const ModInt& exponent) {
    if (exponent.value() % 2 != 0) throw std::logic_error("Weyl eigenvalue is not an integer power of omega");
    return exponent.value() / 2;
}

std::string label_text(const WeylLabel& label) {
    std::ostringstream out;
    out << label;
    return out.str();
}

}  // namespace

OperatorMatrix stabilizer_basis_operator(const std::string& basis, std::int64_t d) {
    if (basis == "Z") return clock_matrix(d);
    if (basis == "X") return shift_matrix(d);
    if (basis.rfind("XZ^", 0) == 0 && basis.size() > 3) {
        std::size_t used = 0;
        long long k = 0;
        try {
            k = std::stoll(basis.substr(3), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == basis.size() - 3) {
            OperatorMatrix z_power = OperatorMatrix::Identity(d, d);
            const OperatorMatrix z = clock_matrix(d);
            for (std::int64_t i = 0; i < reduce(k, d); ++i) z_power = z_power * z;
            return shift_matrix(d) * z_power;
        }
    }
    throw std::invalid_argument("unknown stabilizer basis '" + basis + "' (expected Z, X or XZ^k)");
}

StateVector stabilizer_spec_vector(const StabilizerSpec& spec, std::int64_t d) {
    const auto spectrum = spectral_decompose(stabilizer_basis_operator(spec.basis, d), d);
    const int idx = spectrum.find(omega_exponent(spec.eigenvalue_exponent, d));
    if (idx < 0) {
        throw std::invalid_argument("basis " + spec.basis + " has no eigenvalue omega^" +
                                    std::to_string(spec.eigenvalue_exponent) + " in d=" + std::to_string(d));
    }
    const OperatorMatrix& proj = spectrum.terms[static_cast<std::size_t>(idx)].projector;
    if (std::abs(proj.trace().real() - 1.0) > 1e-6) throw std::invalid_argument("eigenspace is degenerate");
    Eigen::Index col = 0;
    proj.diagonal().real().maxCoeff(&col);
    StateVector v = proj.col(col);
    return canonical_phase(v / v.norm());
}

const char* to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Hadamard: return "hadamard";
        case GateKind::PhaseGate: return "phase";
        case GateKind::WeylGate: return "weyl";
        case GateKind::CustomUnitary: return "custom";
    }
    return "?";
}

void Circuit::validate() const {
    if (d < 2) throw std::invalid_argument("circuit dimension must be at least 2");
    if (n < 1) throw std::invalid_argument("circuit needs at least one qudit");
    const std::int64_t dim = hilbert_dim(d, n);
    if (initial_density) {
        if (!initial.empty()) throw std::invalid_argument("give either stabilizer inputs or a density matrix, not both");
        if (initial_density->rows() != dim || initial_density->cols() != dim) {
            throw std::invalid_argument("initial density has the wrong shape");
        }
        if (!is_hermitian(*initial_density, 1e-8) || std::abs(initial_density->trace() - Complex(1.0)) > 1e-8) {
            throw std::invalid_argument("initial density must be Hermitian with unit trace");
        }
    } else if (static_cast<int>(initial.size()) != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " stabilizer inputs, got " +
                                    std::to_string(initial.size()));
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto& g = gates[i];
        const std::string where = "gate " + std::to_string(i) + ": ";
        if (g.targets.empty()) throw std::invalid_argument(where + "no targets");
        auto sorted = g.targets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument(where + "repeated target");
        }
        for (const int t : g.targets) {
            if (t < 0 || t >= n) throw std::invalid_argument(where + "target " + std::to_string(t) + " out of range");
        }
        const auto k = static_cast<int>(g.targets.size());
        switch (g.kind) {
            case GateKind::Hadamard:
            case GateKind::PhaseGate:
                if (k != 1) throw std::invalid_argument(where + "takes exactly one target");
                if (g.kind == GateKind::PhaseGate && d % 2 == 0) {
                    throw std::invalid_argument(where + "phase gate needs odd d");
                }
                break;
            case GateKind::WeylGate:
                if (!g.label || g.label->d() != d || g.label->n() != k) {
                    throw std::invalid_argument(where + "Weyl gate label must have one part per target");
                }
                break;
            case GateKind::CustomUnitary: {
                const std::int64_t sub = hilbert_dim(d, k);
                if (g.matrix.rows() != sub || g.matrix.cols() != sub) {
                    throw std::invalid_argument(where + "custom unitary has the wrong shape");
                }
                if (!is_unitary(g.matrix, 1e-8)) throw std::invalid_argument(where + "custom matrix is not unitary");
                break;
            }
        }
    }
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        if (measurements[i].d() != d || measurements[i].n() != n) {
            throw std::invalid_argument("measurement " + std::to_string(i) + " must be an n-qudit label in Z_d");
        }
    }
}

OperatorMatrix Circuit::initial_state() const {
    if (initial_density) return *initial_density;
    StateVector psi = stabilizer_spec_vector(initial.at(0), d);
    for (int i = 1; i < n; ++i) psi = tensor(psi, stabilizer_spec_vector(initial.at(static_cast<std::size_t>(i)), d));
    return projector(psi);
}

OperatorMatrix Circuit::gate_unitary(std::size_t i) const {
    const auto& g = gates.at(i);
    OperatorMatrix local;
    switch (g.kind) {
        case GateKind::Hadamard: local = hadamard(d); break;
        case GateKind::PhaseGate: local = phase_gate(d); break;
        case GateKind::WeylGate: local = weyl_matrix(*g.label); break;
        case GateKind::CustomUnitary: local = g.matrix; break;
    }
    return embed_on_targets(local, d, n, g.targets);
}

bool same_circuit(const Circuit& a, const Circuit& b, double tol) {
    if (a.d != b.d || a.n != b.n || a.initial != b.initial || a.measurements != b.measurements) return false;
    if (a.initial_density.has_value() != b.initial_density.has_value()) return false;
    if (a.initial_density && !approx_equal(*a.initial_density, *b.initial_density, tol)) return false;
    if (a.gates.size() != b.gates.size()) return false;
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        const auto& x = a.gates[i];
        const auto& y = b.gates[i];
        if (x.kind != y.kind || x.targets != y.targets || x.label != y.label) return false;
        if (x.matrix.size() != y.matrix.size()) return false;
        if (x.matrix.size() > 0 && !approx_equal(x.matrix, y.matrix, tol)) return false;
    }
    return true;
}

OperatorMatrix embed_on_targets(const OperatorMatrix& gate, std::int64_t d, int n, const std::vector<int>& targets) {
    const std::int64_t dim = hilbert_dim(d, n);
    const auto k = static_cast<int>(targets.size());
    if (gate.rows() != hilbert_dim(d, k) || gate.cols() != gate.rows()) {
        throw std::invalid_argument("embed_on_targets: gate shape does not match the target count");
    }
    std::vector<std::int64_t> weight(static_cast<std::size_t>(n));
    for (int i = n - 1, w = 1; i >= 0; --i, w *= static_cast<int>(d)) weight[static_cast<std::size_t>(i)] = w;
    std::vector<bool> is_target(static_cast<std::size_t>(n), false);
    for (const int t : targets) is_target.at(static_cast<std::size_t>(t)) = true;

    auto split = [&](std::int64_t index, std::int64_t& sub, std::int64_t& rest) {
        sub = 0;
        for (const int t : targets) sub = sub * d + (index / weight[static_cast<std::size_t>(t)]) % d;
        rest = index;
        for (const int t : targets) {
            rest -= ((index / weight[static_cast<std::size_t>(t)]) % d) * weight[static_cast<std::size_t>(t)];
        }
    };
    auto join = [&](std::int64_t sub, std::int64_t rest) {
        std::int64_t index = rest;
        for (int j = k - 1; j >= 0; --j) {
            index += (sub % d) * weight[static_cast<std::size_t>(targets[static_cast<std::size_t>(j)])];
            sub /= d;
        }
        return index;
    };

    OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
    const std::int64_t sub_dim = gate.rows();
    for (std::int64_t col = 0; col < dim; ++col) {
        std::int64_t sub_in = 0, rest = 0;
        split(col, sub_in, rest);
        for (std::int64_t sub_out = 0; sub_out < sub_dim; ++sub_out) {
            out(join(sub_out, rest), col) = gate(sub_out, sub_in);
        }
    }
    return out;
}

OperatorMatrix controlled_sum(std::int64_t d) {
    OperatorMatrix out = OperatorMatrix::Zero(d * d, d * d);
    for (std::int64_t x = 0; x < d; ++x) {
        for (std::int64_t y = 0; y < d; ++y) out(x * d + reduce(x + y, d), x * d + y) = 1.0;
    }
    return out;
}

NegativityError::NegativityError(std::string element, std::int64_t row, std::int64_t col, double value,
                                 std::int64_t d, int n)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg.precision(12);
          msg << element << " is negatively represented: entry " << value << " at phase point "
              << WeylLabel::from_index(d, n, row);
          if (col >= 0) msg << " <- " << WeylLabel::from_index(d, n, col);
          return msg.str();
      }()),
      element_(std::move(element)),
      row_(row),
      col_(col),
      value_(value) {}

CompiledCircuit compile(const Circuit& c) {
    c.validate();
    if (c.d % 2 == 0) {
        const auto verdict = solve(build_constraints(c.d));
        std::string reason = "no nonnegative representation exists in even dimension d=" + std::to_string(c.d) +
                             "; the outcome-assignment system is " + to_string(verdict.kind);
        if (!verdict.witness.empty()) reason += " (witness: " + verdict.witness.front().describe(build_constraints(c.d)) + ")";
        throw std::domain_error(reason);
    }
    CompiledCircuit cc;
    cc.d = c.d;
    cc.n = c.n;
    const auto& [frame, dual] = gross_frame(c.d, c.n);

    cc.initial = rep_state(c.initial_state(), dual);
    if (const auto r = is_nonnegative(cc.initial); !r.nonnegative) {
        throw NegativityError("initial state", r.row, -1, r.extremal, c.d, c.n);
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        auto step = rep_channel(Channel::unitary(c.gate_unitary(i), c.d, c.n), frame, dual);
        if (const auto r = is_nonnegative(step); !r.nonnegative) {
            throw NegativityError("gate " + std::to_string(i) + " (" + to_string(c.gates[i].kind) + ")", r.row, r.col,
                                  r.extremal, c.d, c.n);
        }
        cc.permutations.push_back(step.as_permutation());
        cc.steps.push_back(std::move(step));
    }
    for (std::size_t m = 0; m < c.measurements.size(); ++m) {
        const auto& label = c.measurements[m];
        const auto spectrum = weyl_measurement(label);
        Readout readout{label, std::vector<std::int64_t>(frame.size(), -1)};
        for (const auto& term : spectrum.terms) {
            const auto effect = rep_effect(term.projector, frame);
            const std::int64_t j = outcome_of_exponent(term.exponent);
            for (std::size_t l = 0; l < frame.size(); ++l) {
                const double x = effect(static_cast<Eigen::Index>(l));
                if (x < -kTol) {
                    throw NegativityError("measurement " + std::to_string(m) + " (" + label_text(label) + ")",
                                          static_cast<std::int64_t>(l), -1, x, c.d, c.n);
                }
                if (std::abs(x - 1.0) <= kTol) {
                    if (readout.outcome[l] != -1) throw std::logic_error("readout assigns two outcomes to one point");
                    readout.outcome[l] = j;
                } else if (std::abs(x) > kTol) {
                    throw std::logic_error("measurement response is not outcome-deterministic");
                }
            }
        }
        if (std::find(readout.outcome.begin(), readout.outcome.end(), -1) != readout.outcome.end()) {
            throw std::logic_error("measurement response is not total");
        }
        cc.readout.push_back(std::move(readout));
    }
    return cc;
}

std::map<OutcomeRecord, double> SampleResult::frequencies() const {
    std::map<OutcomeRecord, double> out;
    for (const auto& [record, count] : counts) out[record] = static_cast<double>(count) / static_cast<double>(shots);
    return out;
}

SampleResult sample(const CompiledCircuit& cc, std::uint64_t shots, std::uint64_t seed, unsigned threads) {
    if (shots == 0) throw std::invalid_argument("sample: shots must be positive");
    const auto initial = cumulative_of(cc.initial.values);
    std::vector<std::vector<std::vector<double>>> columns(cc.steps.size());
    for (std::size_t s = 0; s < cc.steps.size(); ++s) {
        if (!cc.permutations[s].empty()) continue;
        for (Eigen::Index col = 0; col < cc.steps[s].matrix.cols(); ++col) {
            columns[s].push_back(cumulative_of(cc.steps[s].matrix.col(col)));
        }
    }
    std::vector<std::vector<std::int64_t>> translations;
    for (const auto& r : cc.readout) {
        std::vector<std::int64_t> moves;
        for (std::int64_t j = 0; j < cc.d; ++j) moves.push_back(r.label.scaled(j).index());
        translations.push_back(std::move(moves));
    }

    auto run = [&](std::uint64_t begin, std::uint64_t end, std::map<OutcomeRecord, std::uint64_t>& counts) {
        OutcomeRecord record(cc.readout.size());
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            auto rng = shot_stream(seed, shot);
            std::size_t lambda = draw(initial, rng.uniform());
            for (std::size_t s = 0; s < cc.steps.size(); ++s) {
                if (!cc.permutations[s].empty()) {
                    lambda = static_cast<std::size_t>(cc.permutations[s][lambda]);
                } else {
                    lambda = draw(columns[s][lambda], rng.uniform());
                }
            }
            for (std::size_t m = 0; m < cc.readout.size(); ++m) {
                record[m] = cc.readout[m].outcome[lambda];
                // Nonselective disturbance: a random translation along the label.
                const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(cc.d)));
                const auto here = WeylLabel::from_index(cc.d, cc.n, static_cast<std::int64_t>(lambda));
                const auto step = WeylLabel::from_index(cc.d, cc.n, translations[m][j]);
                lambda = static_cast<std::size_t>((here + step).index());
            }
            ++counts[record];
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(threads), shots));
    SampleResult result;
    result.shots = shots;
    result.seed = seed;
    std::vector<std::map<OutcomeRecord, std::uint64_t>> partial(workers);
    if (workers == 1) {
        run(0, shots, partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = shots * w / workers;
            const std::uint64_t end = shots * (w + 1) / workers;
            pool.emplace_back(run, begin, end, std::ref(partial[w]));
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& part : partial) {
        for (const auto& [record, count] : part) result.counts[record] += count;
    }
    return result;
}

std::map<OutcomeRecord, double> exact_probabilities(const Circuit& c) {
    c.validate();
    if (c.d % 2 == 0) throw std::domain_error("exact_probabilities reports omega^j outcomes and needs odd d");
    if (hilbert_dim(c.d, c.n) > 1024) throw std::invalid_argument("exact_probabilities: d^n exceeds 1024");
    OperatorMatrix rho = c.initial_state();
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const OperatorMatrix u = c.gate_unitary(i);
        rho = u * rho * u.adjoint();
    }
    std::vector<SpectralDecomposition> spectra;
    for (const auto& label : c.measurements) spectra.push_back(weyl_measurement(label));

    std::map<OutcomeRecord, double> out;
    OutcomeRecord record;
    std::function<void(const OperatorMatrix&, double)> branch = [&](const OperatorMatrix& state, double weight) {
        const std::size_t m = record.size();
        if (m == spectra.size()) {
            out[record] += weight;
            return;
        }
        for (const auto& term : spectra[m].terms) {
            const OperatorMatrix projected = term.projector * state * term.projector;
            const double p = projected.trace().real();
            if (p <= 1e-14) continue;
            record.push_back(outcome_of_exponent(term.exponent));
            branch(projected / p, weight * p);
            record.pop_back();
        }
    };
    branch(rho, 1.0);
    return out;
}

double outcome_probability(const QuasiDistribution& dist, const Readout& readout, std::int64_t outcome) {
    double p = 0.0;
    for (Eigen::Index l = 0; l < dist.values.size(); ++l) {
        if (readout.outcome[static_cast<std::size_t>(l)] == outcome) p += dist.values(l);
    }
    return p;
}

QuasiDistribution post_measurement_update(const QuasiDistribution& dist, const Readout& readout, std::int64_t outcome) {
    const double p = outcome_probability(dist, readout, outcome);
    if (p <= 1e-12) throw std::invalid_argument("post_measurement_update: outcome has zero probability");
    QuasiDistribution out{dist.d, dist.n, Eigen::VectorXd::Zero(dist.values.size())};
    const double share = 1.0 / static_cast<double>(dist.d);
    for (Eigen::Index l = 0; l < dist.values.size(); ++l) {
        const auto point = WeylLabel::from_index(dist.d, dist.n, l);
        for (std::int64_t j = 0; j < dist.d; ++j) {
            out.values((point + readout.label.scaled(j)).index()) += share * dist.values(l);
        }
    }
    for (Eigen::Index l = 0; l < out.values.size(); ++l) {
        if (readout.outcome[static_cast<std::size_t>(l)] != outcome) out.values(l) = 0.0;
    }
    out.values /= p;
    return out;
}

std::map<OutcomeRecord, double> compiled_probabilities(const CompiledCircuit& cc) {
    QuasiDistribution dist = cc.initial;
    for (const auto& step : cc.steps) dist.values = step.matrix * dist.values;
    std::map<OutcomeRecord, double> out;
    OutcomeRecord record;
    std::function<void(const QuasiDistribution&, double)> branch = [&](const QuasiDistribution& state, double weight) {
        const std::size_t m = record.size();
        if (m == cc.readout.size()) {
            out[record] += weight;
            return;
        }
        for (std::int64_t j = 0; j < cc.d; ++j) {
            const double p = outcome_probability(state, cc.readout[m], j);
            if (p <= 1e-12) continue;
            record.push_back(j);
            branch(post_measurement_update(state, cc.readout[m], j), weight * p);
            record.pop_back();
        }
    };
    branch(dist, 1.0);
    return out;
}

Circuit random_stabilizer_circuit(std::int64_t d, int n, int depth, int measurements, std::uint64_t seed) {
    SplitMix64 rng{seed};
    auto pick = [&](std::int64_t bound) { return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(bound))); };
    Circuit c;
    c.d = d;
    c.n = n;
    for (int i = 0; i < n; ++i) {
        const std::int64_t which = pick(d + 1);
        std::string basis = which == 0 ? "Z" : which == 1 ? "X" : "XZ^" + std::to_string(which - 1);
        c.initial.push_back({basis, pick(d)});
    }
    for (int g = 0; g < depth; ++g) {
        const std::int64_t kind = pick(n >= 2 ? 4 : 3);
        const int target = static_cast<int>(pick(n));
        Gate gate;
        gate.targets = {target};
        if (kind == 0) {
            gate.kind = GateKind::Hadamard;
        } else if (kind == 1) {
            gate.kind = GateKind::PhaseGate;
        } else if (kind == 2) {
            gate.kind = GateKind::WeylGate;
            gate.label = WeylLabel(d, pick(d), pick(d));
        } else {
            int other = static_cast<int>(pick(n - 1));
            if (other >= target) ++other;
            gate.kind = GateKind::CustomUnitary;
            gate.targets = {target, other};
            gate.matrix = controlled_sum(d);
        }
        c.gates.push_back(std::move(gate));
    }
    for (int m = 0; m < measurements; ++m) {
        WeylLabel label = WeylLabel::zero(d, n);
        while (label.is_zero()) label = WeylLabel::from_index(d, n, pick(hilbert_dim(d, 2 * n)));
        c.measurements.push_back(label);
    }
    return c;
}

}  // namespace wignerlab
