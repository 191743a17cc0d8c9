#include "wignerlab/nogo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wignerlab/frames.hpp"
#include "wignerlab/gross.hpp"
#include "wignerlab/modring.hpp"
#include "wignerlab/qmat.hpp"
#include "wignerlab/clifford.hpp"
#include "wignerlab/weyl.hpp"

namespace wignerlab {

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> factorize(std::int64_t m) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        std::int64_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::int64_t ipow(std::int64_t base, std::int64_t e) {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < e; ++i) out *= base;
    return out;
}

// Sparse row over Z_{p^e}; column `width` holds the right-hand side.
using SparseRow = std::vector<std::pair<std::int64_t, std::int64_t>>;

SparseRow axpy(const SparseRow& x, std::int64_t factor, const SparseRow& y, std::int64_t m) {
    // x - factor * y
    SparseRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            const std::int64_t v = reduce(-factor * y[j].second, m);
            if (v != 0) out.emplace_back(y[j].first, v);
            ++j;
        } else {
            const std::int64_t v = reduce(x[i].second - factor * y[j].second, m);
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseRow scale(const SparseRow& x, std::int64_t factor, std::int64_t m) {
    SparseRow out;
    out.reserve(x.size());
    for (const auto& [c, v] : x) {
        const std::int64_t w = reduce(v * factor, m);
        if (w != 0) out.emplace_back(c, w);
    }
    return out;
}

std::int64_t valuation(std::int64_t x, std::int64_t p, std::int64_t e) {
    if (x == 0) return e;
    std::int64_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Row echelon basis over the chain ring Z_{p^e} with the Howell closure: for
// each leading column at most one row, normalized to lead with p^v, and the
// annihilator multiple p^{e-v} row is fed back in. Rows leading in the
// right-hand-side column mean the system is inconsistent.
class HowellBasis {
  public:
    HowellBasis(std::int64_t p, std::int64_t e, std::int64_t width)
        : p_(p), e_(e), m_(ipow(p, e)), width_(width), pivots_(static_cast<std::size_t>(width + 1)) {}

    void insert(SparseRow row) {
        std::vector<SparseRow> pending{std::move(row)};
        while (!pending.empty()) {
            SparseRow r = std::move(pending.back());
            pending.pop_back();
            while (!r.empty()) {
                const std::int64_t c = r.front().first;
                const std::int64_t lead = r.front().second;
                const std::int64_t v = valuation(lead, p_, e_);
                const std::int64_t unit = lead / ipow(p_, v);
                r = scale(r, mod_inverse(reduce(unit, m_), m_), m_);
                auto& slot = pivots_[static_cast<std::size_t>(c)];
                if (slot.empty()) {
                    if (v > 0) pending.push_back(scale(r, ipow(p_, e_ - v), m_));
                    slot = std::move(r);
                    break;
                }
                const std::int64_t w = valuation(slot.front().second, p_, e_);
                if (v >= w) {
                    r = axpy(r, ipow(p_, v - w), slot, m_);
                } else {
                    SparseRow old = std::move(slot);
                    pending.push_back(scale(r, ipow(p_, e_ - v), m_));
                    slot = r;
                    r = axpy(old, ipow(p_, w - v), slot, m_);
                }
            }
        }
    }

    bool consistent() const { return pivots_[static_cast<std::size_t>(width_)].empty(); }

    /// Exponent of p in the number of solutions.
    std::int64_t solution_exponent() const {
        std::int64_t image = 0;
        for (std::int64_t c = 0; c < width_; ++c) {
            const auto& row = pivots_[static_cast<std::size_t>(c)];
            if (!row.empty()) image += e_ - valuation(row.front().second, p_, e_);
        }
        return e_ * width_ - image;
    }

    /// Back-substitution; valid when every column has a unit pivot.
    std::vector<std::int64_t> unique_solution() const {
        std::vector<std::int64_t> x(static_cast<std::size_t>(width_), 0);
        for (std::int64_t c = width_ - 1; c >= 0; --c) {
            const auto& row = pivots_[static_cast<std::size_t>(c)];
            std::int64_t acc = 0;
            for (std::size_t k = 1; k < row.size(); ++k) {
                const auto [col, val] = row[k];
                if (col == width_) {
                    acc += val;
                } else {
                    acc -= val * x[static_cast<std::size_t>(col)];
                }
                acc = reduce(acc, m_);
            }
            x[static_cast<std::size_t>(c)] = acc;  // leading entry is 1
        }
        return x;
    }

  private:
    std::int64_t p_, e_, m_, width_;
    std::vector<SparseRow> pivots_;
};

std::int64_t crt_combine(const std::vector<std::pair<std::int64_t, std::int64_t>>& residues, std::int64_t modulus) {
    // residues: (value mod m_i, m_i) with pairwise coprime m_i multiplying to modulus
    std::int64_t x = 0;
    for (const auto& [r, mi] : residues) {
        const std::int64_t rest = modulus / mi;
        const std::int64_t coeff = reduce(rest * mod_inverse(reduce(rest, mi), mi), modulus);
        x = reduce(x + reduce(r, modulus) * coeff, modulus);
    }
    return x;
}

void require_d(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("constraint system needs d >= 2, got " + std::to_string(d));
    check_dimension(d);
}

Congruence add_rows(const Congruence& a, std::int64_t factor, const Congruence& b, std::int64_t m) {
    Congruence out = a;
    for (const auto& [u, c] : b.terms) out.terms.emplace_back(u, c * factor);
    out.rhs += factor * b.rhs;
    return normalize(std::move(out), m);
}

std::vector<std::int64_t> unknowns_of(const Congruence& row) {
    std::vector<std::int64_t> out;
    for (const auto& t : row.terms) out.push_back(t.first);
    return out;
}

bool single_row_feasible(const Congruence& row, std::int64_t m) {
    std::int64_t g = m;
    for (const auto& t : row.terms) g = std::gcd(g, t.second);
    return row.rhs % g == 0;
}

// Rows re-indexed onto the unknowns they actually mention.
bool small_feasible(const std::vector<const Congruence*>& rows, std::int64_t m) {
    std::vector<std::int64_t> vars;
    for (const auto* r : rows) {
        for (const auto& t : r->terms) vars.push_back(t.first);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Congruence> local;
    local.reserve(rows.size());
    for (const auto* r : rows) {
        Congruence c{{}, r->rhs};
        for (const auto& [u, coeff] : r->terms) {
            const auto pos = std::lower_bound(vars.begin(), vars.end(), u) - vars.begin();
            c.terms.emplace_back(pos, coeff);
        }
        local.push_back(std::move(c));
    }
    return analyze(local, static_cast<std::int64_t>(vars.size()), m).consistent;
}

struct Candidate {
    WitnessRow row;
    std::vector<std::int64_t> vars;
};

std::uint64_t key_of(std::vector<std::int64_t> vars) {
    std::sort(vars.begin(), vars.end());
    std::uint64_t key = 0;
    for (const auto v : vars) key = key * 2097152u + static_cast<std::uint64_t>(v + 1);
    return key;
}

// Subsets of size <= 3 with no solution, among generated rows and certified
// derived rows. A minimal witness has a connected variable graph, so only
// variable sets reachable from a single row plus one neighbour are scanned.
std::optional<std::vector<WitnessRow>> small_witness(const VConstraintSystem& system) {
    const std::int64_t m = system.modulus();
    std::vector<Candidate> rows;
    std::set<std::pair<std::vector<std::pair<std::int64_t, std::int64_t>>, std::int64_t>> seen;
    auto add = [&](WitnessRow w) {
        if (w.row.terms.size() > 3) return;
        if (!seen.insert({w.row.terms, w.row.rhs}).second) return;
        auto vars = unknowns_of(w.row);
        rows.push_back({std::move(w), std::move(vars)});
    };
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
        add({i, std::nullopt, system.constraints[i].row});
    }
    for (std::int64_t p = 0; p < system.d; ++p) {
        for (std::int64_t q = 0; q < system.d; ++q) {
            for (const auto rule : {DerivedRule::TwiceV, DerivedRule::DoubledLabel}) {
                auto derived = derive_row(system, rule, p, q);
                Congruence row = derived.row;
                add({std::nullopt, std::move(derived), std::move(row)});
            }
        }
    }

    for (const auto& c : rows) {
        if (!single_row_feasible(c.row.row, m)) return std::vector<WitnessRow>{c.row};
    }

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_vars;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> by_unknown;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        by_vars[key_of(rows[i].vars)].push_back(i);
        for (const auto v : rows[i].vars) by_unknown[v].push_back(i);
    }

    std::unordered_set<std::uint64_t> visited;
    auto try_set = [&](std::vector<std::int64_t> u) -> std::optional<std::vector<WitnessRow>> {
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        if (u.empty() || u.size() > 3 || !visited.insert(key_of(u)).second) return std::nullopt;
        std::vector<std::size_t> members;
        const std::size_t k = u.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            std::vector<std::int64_t> sub;
            for (std::size_t b = 0; b < k; ++b) {
                if (mask & (std::size_t{1} << b)) sub.push_back(u[b]);
            }
            const auto it = by_vars.find(key_of(sub));
            if (it != by_vars.end()) members.insert(members.end(), it->second.begin(), it->second.end());
        }
        std::sort(members.begin(), members.end());
        std::vector<const Congruence*> all;
        for (const auto i : members) all.push_back(&rows[i].row.row);
        if (small_feasible(all, m)) return std::nullopt;
        const std::size_t n = members.size();
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!small_feasible({all[a], all[b]}, m)) {
                    return std::vector<WitnessRow>{rows[members[a]].row, rows[members[b]].row};
                }
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                for (std::size_t c = b + 1; c < n; ++c) {
                    if (!small_feasible({all[a], all[b], all[c]}, m)) {
                        return std::vector<WitnessRow>{rows[members[a]].row, rows[members[b]].row,
                                                       rows[members[c]].row};
                    }
                }
            }
        }
        return std::nullopt;
    };

    for (const auto& c : rows) {
        if (auto w = try_set(c.vars)) return w;
    }
    for (const auto& c : rows) {
        if (c.vars.size() > 2) continue;
        for (const auto v : c.vars) {
            for (const auto j : by_unknown[v]) {
                std::vector<std::int64_t> u = c.vars;
                u.insert(u.end(), rows[j].vars.begin(), rows[j].vars.end());
                if (auto w = try_set(std::move(u))) return w;
            }
        }
    }
    return std::nullopt;
}

// Deletion filter: drops every row whose removal keeps the set infeasible.
std::vector<WitnessRow> irreducible_subset(const VConstraintSystem& system) {
    std::vector<std::size_t> keep(system.constraints.size());
    std::iota(keep.begin(), keep.end(), 0);
    for (std::size_t i = 0; i < keep.size();) {
        std::vector<Congruence> trial;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (j != i) trial.push_back(system.constraints[keep[j]].row);
        }
        if (!analyze(trial, system.unknown_count(), system.modulus()).consistent) {
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    std::vector<WitnessRow> out;
    for (const auto i : keep) out.push_back({i, std::nullopt, system.constraints[i].row});
    return out;
}

std::string format_row(const Congruence& row, std::int64_t d) {
    std::ostringstream out;
    if (row.terms.empty()) out << "0";
    bool first = true;
    for (const auto& [u, c] : row.terms) {
        const std::int64_t signed_c = c > d ? c - 2 * d : c;
        if (!first) out << (signed_c < 0 ? " - " : " + ");
        else if (signed_c < 0) out << "-";
        const std::int64_t mag = std::abs(signed_c);
        if (mag != 1) out << mag;
        out << "u(" << u / d << "," << u % d << ")";
        first = false;
    }
    out << " = " << row.rhs << " mod " << 2 * d;
    return out.str();
}

}  // namespace

const char* to_string(ConstraintRule rule) {
    switch (rule) {
        case ConstraintRule::Normalization: return "normalization";
        case ConstraintRule::Hermiticity: return "hermiticity";
        case ConstraintRule::HadamardCovariance: return "hadamard-covariance";
        case ConstraintRule::CommutingSum: return "commuting-sum";
    }
    return "?";
}

const char* to_string(DerivedRule rule) {
    return rule == DerivedRule::TwiceV ? "twice-v" : "doubled-label";
}

const char* to_string(NogoVerdict::Kind kind) {
    switch (kind) {
        case NogoVerdict::Kind::Unique: return "unique";
        case NogoVerdict::Kind::Infeasible: return "infeasible";
        case NogoVerdict::Kind::Multiple: return "multiple";
    }
    return "?";
}

Congruence normalize(Congruence row, std::int64_t modulus) {
    std::map<std::int64_t, std::int64_t> merged;
    for (const auto& [u, c] : row.terms) merged[u] = reduce(merged[u] + reduce(c, modulus), modulus);
    Congruence out{{}, reduce(row.rhs, modulus)};
    for (const auto& [u, c] : merged) {
        if (c != 0) out.terms.emplace_back(u, c);
    }
    return out;
}

std::int64_t VConstraintSystem::unknown(std::int64_t p, std::int64_t q) const {
    return reduce(p, d) * d + reduce(q, d);
}

std::size_t VConstraintSystem::hermiticity_index(std::int64_t p, std::int64_t q) const {
    return 1 + static_cast<std::size_t>(unknown(p, q));
}

std::size_t VConstraintSystem::hadamard_index(std::int64_t p, std::int64_t q) const {
    return 1 + static_cast<std::size_t>(d * d + unknown(p, q));
}

std::optional<std::size_t> VConstraintSystem::commuting_sum_index(std::int64_t p, std::int64_t q, std::int64_t pp,
                                                                  std::int64_t qq) const {
    p = reduce(p, d);
    q = reduce(q, d);
    pp = reduce(pp, d);
    qq = reduce(qq, d);
    if (reduce(p * qq - q * pp, d) != 0) return std::nullopt;
    std::size_t index = sum_offsets.at(static_cast<std::size_t>(unknown(p, q)));
    for (std::int64_t b = 0; b < unknown(pp, qq); ++b) {
        if (reduce(p * (b % d) - q * (b / d), d) == 0) ++index;
    }
    return index;
}

bool VConstraintSystem::satisfied_by(const std::vector<std::int64_t>& u) const {
    if (static_cast<std::int64_t>(u.size()) != unknown_count()) return false;
    const std::int64_t m = modulus();
    for (const auto& c : constraints) {
        std::int64_t acc = 0;
        for (const auto& [k, coeff] : c.row.terms) acc = reduce(acc + coeff * u[static_cast<std::size_t>(k)], m);
        if (acc != c.row.rhs) return false;
    }
    return true;
}

VConstraintSystem build_constraints(std::int64_t d) {
    require_d(d);
    VConstraintSystem system;
    system.d = d;
    const std::int64_t m = 2 * d;
    auto push = [&](Congruence row, ConstraintRule rule, std::vector<std::int64_t> params) {
        system.constraints.push_back({normalize(std::move(row), m), rule, std::move(params)});
    };
    push({{{0, 1}}, 0}, ConstraintRule::Normalization, {0, 0});
    for (std::int64_t p = 0; p < d; ++p) {
        for (std::int64_t q = 0; q < d; ++q) {
            push({{{system.unknown(p, q), 1}, {system.unknown(-p, -q), 1}}, 2 * p * q}, ConstraintRule::Hermiticity,
                 {p, q});
        }
    }
    for (std::int64_t p = 0; p < d; ++p) {
        for (std::int64_t q = 0; q < d; ++q) {
            push({{{system.unknown(p, q), 1}, {system.unknown(-q, p), -1}}, 2 * p * q},
                 ConstraintRule::HadamardCovariance, {p, q});
        }
    }
    for (std::int64_t p = 0; p < d; ++p) {
        for (std::int64_t q = 0; q < d; ++q) {
            system.sum_offsets.push_back(system.constraints.size());
            for (std::int64_t pp = 0; pp < d; ++pp) {
                for (std::int64_t qq = 0; qq < d; ++qq) {
                    if (reduce(p * qq - q * pp, d) != 0) continue;
                    push({{{system.unknown(p + pp, q + qq), 1}, {system.unknown(p, q), -1}, {system.unknown(pp, qq), -1}},
                          2 * pp * q},
                         ConstraintRule::CommutingSum, {p, q, pp, qq});
                }
            }
        }
    }
    return system;
}

DerivedRow derive_row(const VConstraintSystem& system, DerivedRule rule, std::int64_t p, std::int64_t q) {
    const std::int64_t d = system.d;
    p = reduce(p, d);
    q = reduce(q, d);
    DerivedRow out;
    out.rule = rule;
    out.p = p;
    out.q = q;
    // 2u_{p,q} = 2pq from Herm(p,q) + Had(p,q) + Had(-q,p)
    Certificate twice{{system.hermiticity_index(p, q), 1},
                      {system.hadamard_index(p, q), 1},
                      {system.hadamard_index(-q, p), 1}};
    if (rule == DerivedRule::TwiceV) {
        out.certificate = std::move(twice);
        out.row = normalize({{{system.unknown(p, q), 2}}, 2 * p * q}, system.modulus());
    } else {
        out.certificate = std::move(twice);
        out.certificate.emplace_back(*system.commuting_sum_index(p, q, p, q), 1);
        out.row = normalize({{{system.unknown(2 * p, 2 * q), 1}}, 4 * p * q}, system.modulus());
    }
    return out;
}

bool certificate_holds(const VConstraintSystem& system, const DerivedRow& derived) {
    const std::int64_t m = system.modulus();
    Congruence acc;
    for (const auto& [index, factor] : derived.certificate) {
        if (index >= system.constraints.size()) return false;
        acc = add_rows(acc, factor, system.constraints[index].row, m);
    }
    const Congruence target = normalize(derived.row, m);
    return acc.terms == target.terms && acc.rhs == target.rhs;
}

std::string WitnessRow::describe(const VConstraintSystem& system) const {
    std::ostringstream out;
    if (constraint) {
        const auto& c = system.constraints[*constraint];
        out << to_string(c.rule) << "(";
        for (std::size_t i = 0; i < c.params.size(); ++i) out << (i ? "," : "") << c.params[i];
        out << ")";
    } else if (derived) {
        out << to_string(derived->rule) << "(" << derived->p << "," << derived->q << ")";
    }
    out << ": " << format_row(row, system.d);
    return out.str();
}

bool SolutionCount::is_one() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second == 0; });
}

double SolutionCount::log2() const {
    double out = 0.0;
    for (const auto& [p, e] : factors) out += static_cast<double>(e) * std::log2(static_cast<double>(p));
    return out;
}

std::string SolutionCount::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, e] : factors) {
        if (e == 0) continue;
        out << (first ? "" : "*") << p << "^" << e;
        first = false;
    }
    return first ? "1" : out.str();
}

std::optional<std::vector<std::int64_t>> NogoVerdict::integer_v() const {
    if (kind != Kind::Unique) return std::nullopt;
    std::vector<std::int64_t> v;
    v.reserve(u.size());
    for (const auto x : u) {
        if (x % 2 != 0) return std::nullopt;
        v.push_back(x / 2);
    }
    return v;
}

CongruenceAnalysis analyze(const std::vector<Congruence>& rows, std::int64_t unknowns, std::int64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("analyze: modulus must be at least 2");
    CongruenceAnalysis out;
    out.consistent = true;
    std::vector<std::vector<std::int64_t>> local_solutions;
    std::vector<std::pair<std::int64_t, std::int64_t>> moduli;
    bool unique = true;
    for (const auto& [p, e] : factorize(modulus)) {
        const std::int64_t pe = ipow(p, e);
        HowellBasis basis(p, e, unknowns);
        for (const auto& row : rows) {
            SparseRow sparse;
            for (const auto& [u, c] : row.terms) {
                if (u < 0 || u >= unknowns) throw std::out_of_range("analyze: unknown index out of range");
                const std::int64_t v = reduce(c, pe);
                if (v != 0) sparse.emplace_back(u, v);
            }
            std::sort(sparse.begin(), sparse.end());
            const std::int64_t r = reduce(row.rhs, pe);
            if (r != 0) sparse.emplace_back(unknowns, r);
            basis.insert(std::move(sparse));
            if (!basis.consistent()) break;
        }
        if (!basis.consistent()) {
            out.consistent = false;
            out.solutions.factors.clear();
            return out;
        }
        const std::int64_t exponent = basis.solution_exponent();
        out.solutions.factors.emplace_back(p, exponent);
        if (exponent == 0) {
            local_solutions.push_back(basis.unique_solution());
            moduli.emplace_back(p, pe);
        } else {
            unique = false;
        }
    }
    if (unique) {
        out.solution.resize(static_cast<std::size_t>(unknowns));
        for (std::int64_t k = 0; k < unknowns; ++k) {
            std::vector<std::pair<std::int64_t, std::int64_t>> residues;
            for (std::size_t f = 0; f < moduli.size(); ++f) {
                residues.emplace_back(local_solutions[f][static_cast<std::size_t>(k)], moduli[f].second);
            }
            out.solution[static_cast<std::size_t>(k)] = crt_combine(residues, modulus);
        }
    }
    return out;
}

bool exhaustive_feasible(const std::vector<Congruence>& rows, std::int64_t modulus) {
    std::vector<std::int64_t> vars;
    for (const auto& r : rows) {
        for (const auto& t : r.terms) vars.push_back(t.first);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    double space = std::pow(static_cast<double>(modulus), static_cast<double>(vars.size()));
    if (space > 5e7) throw std::invalid_argument("exhaustive_feasible: too many unknowns for exhaustive search");
    std::vector<std::int64_t> value(vars.size(), 0);
    auto lookup = [&](std::int64_t u) {
        return value[static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), u) - vars.begin())];
    };
    while (true) {
        bool ok = true;
        for (const auto& r : rows) {
            std::int64_t acc = 0;
            for (const auto& [u, c] : r.terms) acc += c * lookup(u);
            if (reduce(acc - r.rhs, modulus) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        std::size_t k = 0;
        while (k < value.size() && ++value[k] == modulus) value[k++] = 0;
        if (k == value.size()) return false;
    }
}

NogoVerdict solve(const VConstraintSystem& system) {
    std::vector<Congruence> rows;
    rows.reserve(system.constraints.size());
    for (const auto& c : system.constraints) rows.push_back(c.row);
    const auto analysis = analyze(rows, system.unknown_count(), system.modulus());

    NogoVerdict verdict;
    verdict.d = system.d;
    if (!analysis.consistent) {
        verdict.kind = NogoVerdict::Kind::Infeasible;
        if (auto w = small_witness(system)) {
            verdict.witness = std::move(*w);
        } else {
            verdict.witness = irreducible_subset(system);
        }
        return verdict;
    }
    verdict.solutions = analysis.solutions;
    if (analysis.solutions.is_one()) {
        verdict.kind = NogoVerdict::Kind::Unique;
        verdict.u = analysis.solution;
        if (!system.satisfied_by(verdict.u)) {
            throw std::logic_error("solver produced an assignment that violates the constraints");
        }
    } else {
        verdict.kind = NogoVerdict::Kind::Multiple;
    }
    return verdict;
}

NogoVerdict brute_force_verdict(const VConstraintSystem& system) {
    const std::int64_t m = system.modulus();
    const auto n = static_cast<std::size_t>(system.unknown_count());
    if (std::pow(static_cast<double>(m), static_cast<double>(n)) > 2e8) {
        throw std::invalid_argument("brute_force_verdict: search space too large");
    }
    std::vector<std::int64_t> u(n, 0);
    std::uint64_t count = 0;
    std::vector<std::int64_t> first;
    while (true) {
        if (system.satisfied_by(u)) {
            if (count++ == 0) first = u;
        }
        std::size_t k = 0;
        while (k < n && ++u[k] == m) u[k++] = 0;
        if (k == n) break;
    }
    NogoVerdict verdict;
    verdict.d = system.d;
    if (count == 0) {
        verdict.kind = NogoVerdict::Kind::Infeasible;
    } else if (count == 1) {
        verdict.kind = NogoVerdict::Kind::Unique;
        verdict.u = std::move(first);
        verdict.solutions.factors = {};
    } else {
        verdict.kind = NogoVerdict::Kind::Multiple;
        auto c = static_cast<std::int64_t>(count);
        verdict.solutions.factors = factorize(c);
    }
    return verdict;
}

bool verify_against_gross(const NogoVerdict& verdict) {
    const std::int64_t d = verdict.d;
    if (d % 2 == 0) throw std::domain_error("verify_against_gross needs odd d, got " + std::to_string(d));
    const auto v = verdict.integer_v();
    if (!v) throw std::invalid_argument("verify_against_gross needs a Unique verdict with integer v");
    const auto& weyl = weyl_table(d, 1);
    OperatorMatrix f00 = OperatorMatrix::Zero(d, d);
    for (std::int64_t k = 0; k < d * d; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        f00 += omega_power(omega_exponent((*v)[idx], d), d) * weyl[idx].adjoint();
    }
    f00 /= static_cast<double>(d);
    const auto& table = phase_point_table(d, 1);
    for (const auto& a : WeylLabel::all(d, 1)) {
        const auto& w = weyl[static_cast<std::size_t>(a.index())];
        if (!approx_equal(w * f00 * w.adjoint(), table[static_cast<std::size_t>(a.index())])) return false;
    }
    return true;
}

bool verify_against_gross(std::int64_t d) {
    if (d % 2 == 0) throw std::domain_error("verify_against_gross needs odd d, got " + std::to_string(d));
    return verify_against_gross(solve(build_constraints(d)));
}

bool ontic_labelling_check(std::int64_t d) {
    if (d % 2 == 0) throw std::domain_error("ontic_labelling_check needs odd d, got " + std::to_string(d));
    const double share = 1.0 / static_cast<double>(d);
    auto line_check = [&](const WeylLabel& observable, bool vertical) {
        const auto spectrum = weyl_measurement(observable);
        if (static_cast<std::int64_t>(spectrum.terms.size()) != d) return false;
        for (const auto& term : spectrum.terms) {
            if (term.exponent.value() % 2 != 0) return false;
            const std::int64_t j = term.exponent.value() / 2;
            // X has eigenvalue omega^{-p1} on the line p = p1; Z has omega^{q1} on q = q1.
            const std::int64_t line = vertical ? reduce(-j, d) : j;
            const auto w = wigner(term.projector, d, 1);
            for (const auto& a : WeylLabel::all(d, 1)) {
                const bool on = (vertical ? a.p() : a.q()) == line;
                if (std::abs(w.at(a) - (on ? share : 0.0)) > kTol) return false;
            }
        }
        return true;
    };
    if (!line_check(WeylLabel(d, 0, 1), true) || !line_check(WeylLabel(d, 1, 0), false)) return false;

    auto permutation_check = [&](const OperatorMatrix& u, std::int64_t dp, std::int64_t dq) {
        const auto perm = gross_channel(Channel::unitary(u, d, 1)).as_permutation();
        if (perm.empty()) return false;
        for (const auto& a : WeylLabel::all(d, 1)) {
            if (perm[static_cast<std::size_t>(a.index())] != WeylLabel(d, a.p() + dp, a.q() + dq).index()) return false;
        }
        return true;
    };
    if (!permutation_check(shift_matrix(d), 0, 1) || !permutation_check(clock_matrix(d), 1, 0)) return false;

    const auto h = gross_channel(Channel::unitary(hadamard(d), d, 1)).as_permutation();
    return !h.empty() && h[0] == 0;
}

}  // namespace wignerlab
