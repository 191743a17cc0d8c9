#include "wignerlab/weyl.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace wignerlab {

WeylLabel::WeylLabel(std::int64_t d, std::int64_t p, std::int64_t q) : d_(d) {
    check_dimension(d);
    parts_.push_back({reduce(p, d), reduce(q, d)});
}

WeylLabel::WeylLabel(std::int64_t d, std::vector<QuditPoint> parts) : d_(d), parts_(std::move(parts)) {
    check_dimension(d);
    if (parts_.empty()) {
        throw std::invalid_argument("WeylLabel needs at least one qudit");
    }
    for (auto& part : parts_) {
        part.p = reduce(part.p, d);
        part.q = reduce(part.q, d);
    }
}

WeylLabel WeylLabel::zero(std::int64_t d, int n) {
    if (n < 1) throw std::invalid_argument("qudit count must be positive");
    return {d, std::vector<QuditPoint>(static_cast<std::size_t>(n))};
}

WeylLabel WeylLabel::from_index(std::int64_t d, int n, std::int64_t index) {
    if (n < 1) throw std::invalid_argument("qudit count must be positive");
    std::vector<QuditPoint> parts(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        auto& part = parts[static_cast<std::size_t>(i)];
        part.q = index % d;
        index /= d;
        part.p = index % d;
        index /= d;
    }
    if (index != 0) throw std::out_of_range("phase-space index out of range");
    return {d, std::move(parts)};
}

std::vector<WeylLabel> WeylLabel::all(std::int64_t d, int n) {
    std::int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= d * d;
    std::vector<WeylLabel> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(from_index(d, n, i));
    return out;
}

std::int64_t WeylLabel::index() const {
    std::int64_t idx = 0;
    for (const auto& part : parts_) idx = (idx * d_ + part.p) * d_ + part.q;
    return idx;
}

bool WeylLabel::is_zero() const {
    for (const auto& part : parts_) {
        if (part.p != 0 || part.q != 0) return false;
    }
    return true;
}

void WeylLabel::check_compatible(const WeylLabel& other) const {
    if (other.d_ != d_ || other.parts_.size() != parts_.size()) {
        throw std::invalid_argument("incompatible Weyl labels");
    }
}

WeylLabel WeylLabel::operator+(const WeylLabel& other) const {
    check_compatible(other);
    auto parts = parts_;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        parts[i].p += other.parts_[i].p;
        parts[i].q += other.parts_[i].q;
    }
    return {d_, std::move(parts)};
}

WeylLabel WeylLabel::operator-(const WeylLabel& other) const { return *this + (-other); }

WeylLabel WeylLabel::operator-() const { return scaled(-1); }

WeylLabel WeylLabel::scaled(std::int64_t factor) const {
    auto parts = parts_;
    const std::int64_t f = reduce(factor, d_);
    for (auto& part : parts) {
        part.p *= f;
        part.q *= f;
    }
    return {d_, std::move(parts)};
}

WeylLabel WeylLabel::concat(const WeylLabel& other) const {
    if (other.d_ != d_) throw std::invalid_argument("mixed-dimension labels");
    auto parts = parts_;
    parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
    return {d_, std::move(parts)};
}

WeylLabel WeylLabel::embed(int n, int position) const {
    if (parts_.size() != 1 || position < 0 || position >= n) {
        throw std::invalid_argument("embed expects a single-qudit label and a valid position");
    }
    std::vector<QuditPoint> parts(static_cast<std::size_t>(n));
    parts[static_cast<std::size_t>(position)] = parts_.front();
    return {d_, std::move(parts)};
}

std::ostream& operator<<(std::ostream& out, const WeylLabel& label) {
    out << "(";
    for (int i = 0; i < label.n(); ++i) {
        if (i > 0) out << "; ";
        out << label[i].p << "," << label[i].q;
    }
    return out << ")";
}

std::int64_t symplectic_form(const WeylLabel& a, const WeylLabel& b) {
    if (a.d() != b.d() || a.n() != b.n()) throw std::invalid_argument("incompatible Weyl labels");
    std::int64_t acc = 0;
    for (int i = 0; i < a.n(); ++i) {
        acc += a[i].p * b[i].q - a[i].q * b[i].p;
        acc = reduce(acc, a.d());
    }
    return acc;
}

std::int64_t hilbert_dim(std::int64_t d, int n) {
    if (n < 1) throw std::invalid_argument("qudit count must be positive");
    std::int64_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= d;
        if (dim > 4096) throw std::invalid_argument("Hilbert-space dimension too large for dense matrices");
    }
    return dim;
}

OperatorMatrix clock_matrix(std::int64_t d) {
    OperatorMatrix z = OperatorMatrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) z(x, x) = omega_power(omega_exponent(x, d), d);
    return z;
}

OperatorMatrix shift_matrix(std::int64_t d) {
    OperatorMatrix x = OperatorMatrix::Zero(d, d);
    for (std::int64_t col = 0; col < d; ++col) x((col + 1) % d, col) = 1.0;
    return x;
}

namespace {

// Z^p X^q |x> = omega^{p(x+q)} |x+q>
OperatorMatrix single_weyl(std::int64_t d, std::int64_t p, std::int64_t q) {
    OperatorMatrix w = OperatorMatrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) {
        const std::int64_t target = (x + q) % d;
        w(target, x) = omega_power(omega_exponent(p * target, d), d);
    }
    return w;
}

}  // namespace

OperatorMatrix weyl_matrix(const WeylLabel& label) {
    OperatorMatrix out = single_weyl(label.d(), label[0].p, label[0].q);
    for (int i = 1; i < label.n(); ++i) {
        out = tensor(out, single_weyl(label.d(), label[i].p, label[i].q));
    }
    return out;
}

LabelProduct compose_labels(const WeylLabel& a, const WeylLabel& b) {
    const std::int64_t d = a.d();
    // Z^p X^q Z^p' X^q' = omega^{-p'q} Z^{p+p'} X^{q+q'} on each factor.
    std::int64_t exponent = 0;
    for (int i = 0; i < a.n(); ++i) exponent = reduce(exponent - b[i].p * a[i].q, d);
    return {a + b, omega_exponent(exponent, d)};
}

OperatorMatrix weyl_superop_apply(const WeylLabel& label, const OperatorMatrix& rho) {
    const std::int64_t dim = hilbert_dim(label.d(), label.n());
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("weyl_superop_apply: dimension mismatch");
    }
    const OperatorMatrix w = weyl_matrix(label);
    return w * rho * w.adjoint();
}

SpectralDecomposition weyl_measurement(const WeylLabel& label) {
    return spectral_decompose(weyl_matrix(label), label.d());
}

const std::vector<OperatorMatrix>& weyl_table(std::int64_t d, int n) {
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::unique_ptr<const std::vector<OperatorMatrix>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{d, n}];
    if (!slot) {
        hilbert_dim(d, n);
        auto table = std::make_unique<std::vector<OperatorMatrix>>();
        for (const auto& label : WeylLabel::all(d, n)) table->push_back(weyl_matrix(label));
        slot = std::move(table);
    }
    return *slot;
}

}  // namespace wignerlab
