#include "wignerlab/frames.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace wignerlab {

namespace {

Eigen::Map<const Eigen::VectorXcd> vec(const OperatorMatrix& a) { return {a.data(), a.size()}; }

void check_square(const OperatorMatrix& a, std::int64_t dim, const char* what) {
    if (a.rows() != dim || a.cols() != dim) {
        throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + " operator, got " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()));
    }
}

std::int64_t frame_size(std::int64_t dim) { return dim * dim; }

}  // namespace

WeylBasis::WeylBasis(std::int64_t d, int n) : d_(d), n_(n), dim_(hilbert_dim(d, n)) {
    const auto& table = weyl_table(d, n);
    vec_weyl_.resize(dim_ * dim_, static_cast<Eigen::Index>(table.size()));
    for (std::size_t b = 0; b < table.size(); ++b) vec_weyl_.col(static_cast<Eigen::Index>(b)) = vec(table[b]);
}

const WeylBasis& WeylBasis::get(std::int64_t d, int n) {
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::unique_ptr<const WeylBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{d, n}];
    if (!slot) slot.reset(new WeylBasis(d, n));
    return *slot;
}

Eigen::VectorXcd WeylBasis::coords(const OperatorMatrix& a) const {
    check_square(a, dim_, "WeylBasis::coords");
    return vec_weyl_.adjoint() * vec(a) / static_cast<double>(dim_);
}

OperatorMatrix WeylBasis::from_coords(const Eigen::VectorXcd& c) const {
    const Eigen::VectorXcd v = vec_weyl_ * c;
    return Eigen::Map<const OperatorMatrix>(v.data(), dim_, dim_);
}

// ---------------------------------------------------------------------------

Channel::Channel(Eigen::MatrixXcd s, std::int64_t d, int n) : s_(std::move(s)), d_(d), n_(n), dim_(hilbert_dim(d, n)) {
    const std::int64_t size = frame_size(dim_);
    if (s_.rows() != size || s_.cols() != size) {
        throw std::invalid_argument("superoperator must be d^{2n} x d^{2n}");
    }
}

Channel Channel::identity(std::int64_t d, int n) {
    const std::int64_t size = frame_size(hilbert_dim(d, n));
    return {Eigen::MatrixXcd::Identity(size, size), d, n};
}

Channel Channel::unitary(const OperatorMatrix& u, std::int64_t d, int n) {
    return kraus({u}, d, n);
}

Channel Channel::kraus(const std::vector<OperatorMatrix>& ops, std::int64_t d, int n) {
    const auto& basis = WeylBasis::get(d, n);
    if (ops.empty()) throw std::invalid_argument("Kraus list is empty");
    // vec(K A K^dagger) = (conj(K) ⊗ K) vec(A) in column-major order.
    Eigen::MatrixXcd natural = Eigen::MatrixXcd::Zero(basis.dim() * basis.dim(), basis.dim() * basis.dim());
    for (const auto& k : ops) {
        check_square(k, basis.dim(), "Channel::kraus");
        natural += wignerlab::tensor(OperatorMatrix(k.conjugate()), k);
    }
    Eigen::MatrixXcd s = basis.vec_weyl().adjoint() * natural * basis.vec_weyl() / static_cast<double>(basis.dim());
    return {std::move(s), d, n};
}

Channel Channel::from_weyl_superoperator(Eigen::MatrixXcd s, std::int64_t d, int n) { return {std::move(s), d, n}; }

OperatorMatrix Channel::apply(const OperatorMatrix& rho) const {
    const auto& basis = WeylBasis::get(d_, n_);
    return basis.from_coords(s_ * basis.coords(rho));
}

Channel Channel::then(const Channel& next) const {
    if (next.d_ != d_ || next.n_ != n_) throw std::invalid_argument("channels act on different systems");
    return {next.s_ * s_, d_, n_};
}

Channel Channel::tensor(const Channel& other) const {
    if (other.d_ != d_) throw std::invalid_argument("parallel composition needs equal local dimension");
    // Weyl labels of the joint system index as (leading, trailing), so the
    // joint superoperator is the Kronecker product of the factors.
    return {wignerlab::tensor(s_, other.s_), d_, n_ + other.n_};
}

bool Channel::is_trace_preserving(double tol) const {
    for (Eigen::Index c = 0; c < s_.cols(); ++c) {
        const Complex expected = c == 0 ? 1.0 : 0.0;
        if (std::abs(s_(0, c) - expected) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

Frame::Frame(std::int64_t d, int n, std::vector<OperatorMatrix> elements)
    : d_(d), n_(n), dim_(hilbert_dim(d, n)), elements_(std::move(elements)) {
    if (static_cast<std::int64_t>(elements_.size()) != frame_size(dim_)) {
        throw std::invalid_argument("a frame needs d^{2n} elements");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        check_square(elements_[i], dim_, "Frame");
        if (!is_hermitian(elements_[i])) {
            throw std::invalid_argument("frame element " + std::to_string(i) + " is not Hermitian");
        }
        if (std::abs(elements_[i].trace() - Complex(1.0)) > kTol) {
            throw std::invalid_argument("frame element " + std::to_string(i) + " does not have unit trace");
        }
    }
}

DualFrame::DualFrame(std::int64_t d, int n, std::vector<OperatorMatrix> elements)
    : d_(d), n_(n), dim_(hilbert_dim(d, n)), elements_(std::move(elements)) {
    if (static_cast<std::int64_t>(elements_.size()) != frame_size(dim_)) {
        throw std::invalid_argument("a dual frame needs d^{2n} elements");
    }
    for (const auto& e : elements_) check_square(e, dim_, "DualFrame");
}

bool DualFrame::is_dual_of(const Frame& frame, double tol) const {
    if (frame.size() != size() || frame.dim() != dim_) return false;
    OperatorMatrix total = OperatorMatrix::Zero(dim_, dim_);
    for (const auto& e : elements_) total += e;
    if (!approx_equal(total, OperatorMatrix::Identity(dim_, dim_), tol)) return false;
    for (std::size_t mu = 0; mu < size(); ++mu) {
        for (std::size_t lambda = 0; lambda < size(); ++lambda) {
            const Complex overlap = elements_[mu].transpose().cwiseProduct(frame[lambda]).sum();
            if (std::abs(overlap - Complex(mu == lambda ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

std::vector<std::int64_t> QuasiStochasticMap::as_permutation(double tol) const {
    std::vector<std::int64_t> image(static_cast<std::size_t>(matrix.cols()), -1);
    std::vector<bool> hit(static_cast<std::size_t>(matrix.rows()), false);
    for (Eigen::Index col = 0; col < matrix.cols(); ++col) {
        for (Eigen::Index row = 0; row < matrix.rows(); ++row) {
            const double x = matrix(row, col);
            if (std::abs(x - 1.0) <= tol) {
                if (image[static_cast<std::size_t>(col)] != -1 || hit[static_cast<std::size_t>(row)]) return {};
                image[static_cast<std::size_t>(col)] = row;
                hit[static_cast<std::size_t>(row)] = true;
            } else if (std::abs(x) > tol) {
                return {};
            }
        }
        if (image[static_cast<std::size_t>(col)] == -1) return {};
    }
    return image;
}

// ---------------------------------------------------------------------------

DualFrame dual_basis(const Frame& frame) {
    const auto& basis = WeylBasis::get(frame.d(), frame.n());
    const auto size = static_cast<Eigen::Index>(frame.size());
    Eigen::MatrixXcd phi(size, size);
    for (Eigen::Index l = 0; l < size; ++l) phi.col(l) = basis.coords(frame[static_cast<std::size_t>(l)]);

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(phi);
    lu.setThreshold(1e-9);
    if (!lu.isInvertible()) throw std::invalid_argument("not a basis: frame elements are linearly dependent");

    // tr(D_mu F_lambda) = dim * <coords(D_mu), coords(F_lambda)>, so the dual
    // coordinates are the columns of inverse(phi)^dagger / dim.
    const Eigen::MatrixXcd psi = lu.inverse().adjoint() / static_cast<double>(basis.dim());
    std::vector<OperatorMatrix> elements;
    elements.reserve(frame.size());
    for (Eigen::Index l = 0; l < size; ++l) {
        OperatorMatrix d = basis.from_coords(psi.col(l));
        elements.push_back((d + d.adjoint()) / 2.0);
    }
    DualFrame dual(frame.d(), frame.n(), std::move(elements));
    if (!dual.is_dual_of(frame, 1e-8)) {
        throw std::invalid_argument("not a basis: dual frame is numerically unstable");
    }
    return dual;
}

QuasiDistribution rep_state(const OperatorMatrix& rho, const DualFrame& dual) {
    check_square(rho, dual.dim(), "rep_state");
    QuasiDistribution out{dual.d(), dual.n(), Eigen::VectorXd(static_cast<Eigen::Index>(dual.size()))};
    for (std::size_t l = 0; l < dual.size(); ++l) {
        out.values(static_cast<Eigen::Index>(l)) = hs_inner(dual[l], rho).real();
    }
    return out;
}

Eigen::VectorXd rep_effect(const OperatorMatrix& effect, const Frame& frame) {
    check_square(effect, frame.dim(), "rep_effect");
    Eigen::VectorXd out(static_cast<Eigen::Index>(frame.size()));
    for (std::size_t l = 0; l < frame.size(); ++l) out(static_cast<Eigen::Index>(l)) = hs_inner(frame[l], effect).real();
    return out;
}

QuasiStochasticMap rep_channel(const Channel& channel, const Frame& frame, const DualFrame& dual) {
    if (channel.dim() != frame.dim() || dual.dim() != frame.dim()) {
        throw std::invalid_argument("rep_channel: dimension mismatch");
    }
    if (!channel.is_trace_preserving()) throw std::invalid_argument("rep_channel: channel is not trace-preserving");
    const auto& basis = WeylBasis::get(frame.d(), frame.n());
    const auto size = static_cast<Eigen::Index>(frame.size());
    Eigen::MatrixXcd frame_coords(size, size);
    Eigen::MatrixXcd dual_coords(size, size);
    for (Eigen::Index l = 0; l < size; ++l) {
        frame_coords.col(l) = basis.coords(frame[static_cast<std::size_t>(l)]);
        dual_coords.col(l) = basis.coords(dual[static_cast<std::size_t>(l)]);
    }
    // tr(D^dagger A) = dim * <coords(D), coords(A)> and the dual is Hermitian.
    const Eigen::MatrixXcd m = dual_coords.adjoint() * channel.superoperator() * frame_coords;
    return {frame.d(), frame.n(), m.real() * static_cast<double>(basis.dim())};
}

double recover_probability(const Eigen::VectorXd& effect, const QuasiStochasticMap& channel,
                           const QuasiDistribution& state) {
    if (effect.size() != channel.matrix.rows() || state.values.size() != channel.matrix.cols()) {
        throw std::invalid_argument("recover_probability: incompatible index sets");
    }
    return effect.dot(channel.matrix * state.values);
}

NonnegativityReport is_nonnegative(const QuasiDistribution& rep, double tol) {
    NonnegativityReport report;
    if (rep.values.size() == 0) return report;
    Eigen::Index min_idx = 0;
    Eigen::Index max_idx = 0;
    const double lo = rep.values.minCoeff(&min_idx);
    const double hi = rep.values.maxCoeff(&max_idx);
    const double below = -tol - lo;
    const double above = hi - 1.0 - tol;
    report.nonnegative = below < 0.0 && above < 0.0;
    if (above > 0.0 && above > below) {
        report.extremal = hi;
        report.row = max_idx;
    } else {
        report.extremal = lo;
        report.row = min_idx;
    }
    return report;
}

NonnegativityReport is_nonnegative(const QuasiStochasticMap& rep, double tol) {
    NonnegativityReport report;
    if (rep.matrix.size() == 0) return report;
    Eigen::Index min_r = 0, min_c = 0, max_r = 0, max_c = 0;
    const double lo = rep.matrix.minCoeff(&min_r, &min_c);
    const double hi = rep.matrix.maxCoeff(&max_r, &max_c);
    const double below = -tol - lo;
    const double above = hi - 1.0 - tol;
    report.nonnegative = below < 0.0 && above < 0.0;
    if (above > 0.0 && above > below) {
        report.extremal = hi;
        report.row = max_r;
        report.col = max_c;
    } else {
        report.extremal = lo;
        report.row = min_r;
        report.col = min_c;
    }
    return report;
}

}  // namespace wignerlab
