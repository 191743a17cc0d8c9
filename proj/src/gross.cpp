#include "wignerlab/gross.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace wignerlab {

namespace {

void require_odd(std::int64_t d) {
    if (d % 2 == 0) {
        throw std::domain_error("Gross representation undefined in even dimension d=" + std::to_string(d));
    }
}

OperatorMatrix single_phase_point(std::int64_t d, std::int64_t p, std::int64_t q) {
    const std::int64_t half = inv2(d).value();
    const auto& weyl = weyl_table(d, 1);
    const WeylLabel a(d, p, q);
    OperatorMatrix out = OperatorMatrix::Zero(d, d);
    for (const auto& b : WeylLabel::all(d, 1)) {
        // omega^{-[a,b]} (W^G_b)^dagger = omega^{-[a,b] + 2^{-1} p_b q_b} W_b^dagger
        const std::int64_t exponent = reduce(-symplectic_form(a, b) + half * reduce(b.p() * b.q(), d), d);
        out += omega_power(omega_exponent(exponent, d), d) * weyl[static_cast<std::size_t>(b.index())].adjoint();
    }
    out /= static_cast<double>(d);
    if (!is_hermitian(out) || std::abs(out.trace() - Complex(1.0)) > kTol) {
        throw std::logic_error("phase-point operator failed Hermiticity or unit trace at d=" + std::to_string(d));
    }
    return out;
}

}  // namespace

PhasePointOperator phase_point(const PhasePoint& a) {
    require_odd(a.d());
    OperatorMatrix m = single_phase_point(a.d(), a[0].p, a[0].q);
    for (int i = 1; i < a.n(); ++i) m = tensor(m, single_phase_point(a.d(), a[i].p, a[i].q));
    return {a, std::move(m)};
}

const std::vector<OperatorMatrix>& phase_point_table(std::int64_t d, int n) {
    require_odd(d);
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::unique_ptr<const std::vector<OperatorMatrix>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{d, n}];
    if (!slot) {
        hilbert_dim(d, n);
        std::vector<OperatorMatrix> single;
        for (const auto& a : WeylLabel::all(d, 1)) single.push_back(single_phase_point(d, a.p(), a.q()));
        // Flat indices put the first qudit slowest, matching Kronecker order.
        std::vector<OperatorMatrix> table = single;
        for (int k = 1; k < n; ++k) {
            std::vector<OperatorMatrix> next;
            next.reserve(table.size() * single.size());
            for (const auto& lead : table) {
                for (const auto& tail : single) next.push_back(tensor(lead, tail));
            }
            table = std::move(next);
        }
        slot = std::make_unique<const std::vector<OperatorMatrix>>(std::move(table));
    }
    return *slot;
}

const std::pair<Frame, DualFrame>& gross_frame(std::int64_t d, int n) {
    const auto& table = phase_point_table(d, n);
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::unique_ptr<const std::pair<Frame, DualFrame>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{d, n}];
    if (!slot) {
        const auto dim = static_cast<double>(hilbert_dim(d, n));
        std::vector<OperatorMatrix> duals;
        duals.reserve(table.size());
        for (const auto& a : table) duals.push_back(a / dim);
        Frame frame(d, n, table);
        DualFrame dual(d, n, std::move(duals));
        if (!dual.is_dual_of(frame)) throw std::logic_error("Gross frame failed the duality check");
        slot = std::make_unique<const std::pair<Frame, DualFrame>>(std::move(frame), std::move(dual));
    }
    return *slot;
}

QuasiDistribution wigner(const OperatorMatrix& rho, std::int64_t d, int n) {
    const auto& table = phase_point_table(d, n);
    const std::int64_t dim = hilbert_dim(d, n);
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("wigner: dimension mismatch");
    QuasiDistribution out{d, n, Eigen::VectorXd(static_cast<Eigen::Index>(table.size()))};
    for (std::size_t a = 0; a < table.size(); ++a) {
        out.values(static_cast<Eigen::Index>(a)) = hs_inner(table[a], rho).real() / static_cast<double>(dim);
    }
    return out;
}

QuasiStochasticMap gross_channel(const Channel& channel) {
    const auto& [frame, dual] = gross_frame(channel.d(), channel.n());
    return rep_channel(channel, frame, dual);
}

double negativity(const OperatorMatrix& rho, std::int64_t d, int n) {
    const auto w = wigner(rho, d, n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.values.size(); ++i) total += std::max(0.0, -w.values(i));
    return total;
}

const char* to_string(ResourceClass c) { return c == ResourceClass::Positive ? "positive" : "negative"; }

ResourceVerdict classify_state(const OperatorMatrix& rho, std::int64_t d, int n) {
    const auto w = wigner(rho, d, n);
    ResourceVerdict verdict;
    Eigen::Index idx = 0;
    verdict.witness_value = w.values.minCoeff(&idx);
    verdict.row = idx;
    verdict.kind = verdict.witness_value < -kTol ? ResourceClass::Negative : ResourceClass::Positive;
    return verdict;
}

ResourceVerdict classify_unitary(const OperatorMatrix& u, std::int64_t d, int n) {
    require_odd(d);
    if (!is_unitary(u)) throw std::invalid_argument("classify_unitary: matrix is not unitary");
    const auto rep = gross_channel(Channel::unitary(u, d, n));
    ResourceVerdict verdict;
    Eigen::Index row = 0, col = 0;
    verdict.witness_value = rep.matrix.minCoeff(&row, &col);
    verdict.row = row;
    verdict.col = col;
    verdict.kind = verdict.witness_value < -kTol ? ResourceClass::Negative : ResourceClass::Positive;
    return verdict;
}

}  // namespace wignerlab
