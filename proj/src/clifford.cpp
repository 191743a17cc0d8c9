#include "wignerlab/clifford.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wignerlab {

namespace {

std::vector<std::int64_t> label_coords(const WeylLabel& label) {
    std::vector<std::int64_t> coords;
    coords.reserve(static_cast<std::size_t>(2 * label.n()));
    for (const auto& part : label.parts()) {
        coords.push_back(part.p);
        coords.push_back(part.q);
    }
    return coords;
}

WeylLabel coords_label(std::int64_t d, const std::vector<std::int64_t>& coords) {
    std::vector<QuditPoint> parts(coords.size() / 2);
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = {coords[2 * i], coords[2 * i + 1]};
    return {d, std::move(parts)};
}

WeylLabel unit_label(std::int64_t d, int n, int coordinate) {
    std::vector<std::int64_t> coords(static_cast<std::size_t>(2 * n), 0);
    coords[static_cast<std::size_t>(coordinate)] = 1;
    return coords_label(d, coords);
}

std::vector<std::int64_t> mat_vec(const std::vector<std::int64_t>& m, const std::vector<std::int64_t>& v,
                                  std::int64_t d) {
    const std::size_t dim = v.size();
    std::vector<std::int64_t> out(dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < dim; ++c) acc = reduce(acc + m[r * dim + c] * v[c], d);
        out[r] = acc;
    }
    return out;
}

}  // namespace

PhaseSpaceAction PhaseSpaceAction::identity(std::int64_t d, int n) {
    PhaseSpaceAction action;
    action.d = d;
    action.n = n;
    const std::size_t dim = static_cast<std::size_t>(2 * n);
    action.linear.assign(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i) action.linear[i * dim + i] = 1 % d;
    if (d % 2 == 1) action.shift.assign(dim, 0);
    return action;
}

WeylLabel PhaseSpaceAction::map_label(const WeylLabel& label) const {
    if (label.d() != d || label.n() != n) throw std::invalid_argument("label does not match action");
    return coords_label(d, mat_vec(linear, label_coords(label), d));
}

WeylLabel PhaseSpaceAction::apply(const WeylLabel& point) const {
    if (!has_shift()) throw std::logic_error("phase-point action needs a shift (odd d)");
    auto coords = mat_vec(linear, label_coords(point), d);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = reduce(coords[i] + shift[i], d);
    return coords_label(d, coords);
}

PhaseSpaceAction PhaseSpaceAction::then(const PhaseSpaceAction& next) const {
    if (next.d != d || next.n != n) throw std::invalid_argument("incompatible actions");
    const std::size_t dim = static_cast<std::size_t>(2 * n);
    PhaseSpaceAction out;
    out.d = d;
    out.n = n;
    out.linear.assign(dim * dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            std::int64_t acc = 0;
            for (std::size_t k = 0; k < dim; ++k) acc = reduce(acc + next.linear[r * dim + k] * linear[k * dim + c], d);
            out.linear[r * dim + c] = acc;
        }
    }
    if (has_shift() && next.has_shift()) {
        out.shift = mat_vec(next.linear, shift, d);
        for (std::size_t i = 0; i < dim; ++i) out.shift[i] = reduce(out.shift[i] + next.shift[i], d);
    }
    return out;
}

bool PhaseSpaceAction::preserves_symplectic_form() const {
    const int dim = 2 * n;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const auto ei = unit_label(d, n, i);
            const auto ej = unit_label(d, n, j);
            if (symplectic_form(map_label(ei), map_label(ej)) != symplectic_form(ei, ej)) return false;
        }
    }
    return true;
}

bool PhaseSpaceAction::is_bijective() const {
    const auto points = WeylLabel::all(d, n);
    std::vector<bool> hit(points.size(), false);
    for (const auto& point : points) {
        const auto image = has_shift() ? apply(point) : map_label(point);
        const auto idx = static_cast<std::size_t>(image.index());
        if (hit[idx]) return false;
        hit[idx] = true;
    }
    return true;
}

bool PhaseSpaceAction::same_action(const PhaseSpaceAction& other) const {
    return d == other.d && n == other.n && linear == other.linear && shift == other.shift;
}

OperatorMatrix hadamard(std::int64_t d) {
    check_dimension(d);
    OperatorMatrix h(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::int64_t k = 0; k < d; ++k) {
        for (std::int64_t x = 0; x < d; ++x) h(k, x) = norm * omega_power(omega_exponent(x * k, d), d);
    }
    return h;
}

OperatorMatrix phase_gate(std::int64_t d) {
    const ModInt half = inv2(d);
    OperatorMatrix gate = OperatorMatrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) {
        const std::int64_t exponent = reduce(half.value() * reduce(x * (x - 1), d), d);
        gate(x, x) = omega_power(omega_exponent(exponent, d), d);
    }
    return gate;
}

OperatorMatrix embed_gate(const OperatorMatrix& gate, std::int64_t d, int n, int target) {
    if (target < 0 || target >= n) throw std::invalid_argument("gate target out of range");
    if (gate.rows() != d || gate.cols() != d) throw std::invalid_argument("gate must act on one qudit");
    OperatorMatrix out = target == 0 ? gate : OperatorMatrix::Identity(d, d);
    for (int i = 1; i < n; ++i) out = tensor(out, i == target ? gate : OperatorMatrix::Identity(d, d));
    return out;
}

CliffordCheck is_clifford(const OperatorMatrix& u, std::int64_t d, int n) {
    const std::int64_t dim = hilbert_dim(d, n);
    CliffordCheck result;
    if (u.rows() != dim || u.cols() != dim) {
        result.reason = "matrix dimension does not match d^n";
        return result;
    }
    if (!is_unitary(u)) {
        result.reason = "matrix is not unitary";
        return result;
    }
    const auto& table = weyl_table(d, n);
    const int coords = 2 * n;
    const auto ddim = static_cast<double>(dim);

    PhaseSpaceAction action;
    action.d = d;
    action.n = n;
    action.linear.assign(static_cast<std::size_t>(coords * coords), 0);
    std::vector<WeylLabel> images;
    for (int c = 0; c < coords; ++c) {
        const WeylLabel e = unit_label(d, n, c);
        const OperatorMatrix conj = u * table[static_cast<std::size_t>(e.index())] * u.adjoint();
        std::size_t best = 0;
        Complex best_overlap = 0.0;
        for (std::size_t b = 0; b < table.size(); ++b) {
            const Complex overlap = hs_inner(table[b], conj);
            if (std::abs(overlap) > std::abs(best_overlap)) {
                best_overlap = overlap;
                best = b;
            }
        }
        ModInt k(0, 2 * d);
        if (std::abs(std::abs(best_overlap) - ddim) > kSnapTol * ddim || !snap_to_root(best_overlap / ddim, d, k)) {
            std::ostringstream why;
            why << "conjugate of W" << e << " is not proportional to a Weyl operator";
            result.failed_generator = e;
            result.reason = why.str();
            return result;
        }
        const WeylLabel image = WeylLabel::from_index(d, n, static_cast<std::int64_t>(best));
        const auto image_coords = label_coords(image);
        for (int r = 0; r < coords; ++r) {
            action.linear[static_cast<std::size_t>(r * coords + c)] = image_coords[static_cast<std::size_t>(r)];
        }
        action.generator_phases.push_back(k.value());
        images.push_back(image);
    }
    if (!action.preserves_symplectic_form()) {
        result.reason = "label map is not symplectic";
        return result;
    }

    if (d % 2 == 1) {
        // With Gross-phased operators W^G_b = omega^{-2^{-1} p q} W_b, a Clifford acts as
        // U W^G_b U^dagger = omega^{[t, b]} W^G_{S b}, and phase points move by a -> S a + S t.
        const std::int64_t half = inv2(d).value();
        std::vector<std::int64_t> f(static_cast<std::size_t>(coords));
        for (int c = 0; c < coords; ++c) {
            const std::int64_t k = action.generator_phases[static_cast<std::size_t>(c)];
            if (k % 2 != 0) {
                result.failed_generator = unit_label(d, n, c);
                result.reason = "conjugation phase is not a d-th root of unity";
                return result;
            }
            std::int64_t pq = 0;
            for (const auto& part : images[static_cast<std::size_t>(c)].parts()) pq = reduce(pq + part.p * part.q, d);
            f[static_cast<std::size_t>(c)] = reduce(k / 2 + half * pq, d);
        }
        std::vector<std::int64_t> t(static_cast<std::size_t>(coords));
        for (int i = 0; i < n; ++i) {
            const auto pi = static_cast<std::size_t>(2 * i);
            t[pi] = f[pi + 1];
            t[pi + 1] = reduce(-f[pi], d);
        }
        action.shift = mat_vec(action.linear, t, d);
    }
    result.action = std::move(action);
    return result;
}

std::vector<PhaseSpaceAction> clifford_group_elements(std::int64_t d) {
    if (!is_prime(d)) throw std::invalid_argument("clifford_group_elements needs prime d");
    std::vector<PhaseSpaceAction> out;
    for (std::int64_t a = 0; a < d; ++a) {
        for (std::int64_t b = 0; b < d; ++b) {
            for (std::int64_t c = 0; c < d; ++c) {
                for (std::int64_t e = 0; e < d; ++e) {
                    if (reduce(a * e - b * c, d) != 1) continue;
                    for (std::int64_t sp = 0; sp < d; ++sp) {
                        for (std::int64_t sq = 0; sq < d; ++sq) {
                            PhaseSpaceAction action;
                            action.d = d;
                            action.n = 1;
                            action.linear = {a, b, c, e};
                            action.shift = {sp, sq};
                            out.push_back(std::move(action));
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace wignerlab
