#include "wignerlab/commands.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "wignerlab/gross.hpp"
#include "wignerlab/nogo.hpp"

namespace wignerlab {

namespace {

using Clock = std::chrono::steady_clock;

class ReportBuilder {
  public:
    ReportBuilder(const std::string& command, Json parameters) : start_(Clock::now()) {
        report_["schema_version"] = kSchemaVersion;
        report_["command"] = command;
        report_["parameters"] = std::move(parameters);
    }

    Json& operator[](const char* key) { return report_[key]; }

    void check(const std::string& name, bool pass) {
        checks_.push_back({{"name", name}, {"pass", pass}});
        all_pass_ = all_pass_ && pass;
    }
    bool all_pass() const { return all_pass_; }

    CommandResult finish(int exit_code, std::string text) {
        report_["checks"] = checks_;
        report_["exit_code"] = exit_code;
        const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        report_["wall_time_seconds"] = round12(seconds);
        return {exit_code, std::move(text), std::move(report_)};
    }

  private:
    Clock::time_point start_;
    Json report_;
    Json checks_ = Json::array();
    bool all_pass_ = true;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

std::string point_text(const WeylLabel& label) {
    std::ostringstream out;
    out << label;
    return out.str();
}

Json point_json(const WeylLabel& label) {
    Json out = Json::array();
    for (const auto& part : label.parts()) out.push_back({part.p, part.q});
    return out;
}

void check_dim(std::int64_t d) {
    if (d < kMinDim || d > kMaxDim) {
        throw UsageError("dimension " + std::to_string(d) + " outside [" + std::to_string(kMinDim) + ", " +
                         std::to_string(kMaxDim) + "]");
    }
}

std::string record_text(const OutcomeRecord& record) {
    std::string out;
    for (std::size_t i = 0; i < record.size(); ++i) out += (i ? "," : "") + std::to_string(record[i]);
    return out.empty() ? "-" : out;
}

}  // namespace

CommandResult cmd_uniqueness(std::int64_t d) {
    check_dim(d);
    ReportBuilder report("uniqueness", Json{{"dim", d}});
    const auto system = build_constraints(d);
    const auto verdict = solve(system);
    report["constraint_count"] = system.constraints.size();
    report["verdict"] = to_string(verdict.kind);
    std::ostringstream text;

    if (d % 2 == 1) {
        report.check("unique", verdict.kind == NogoVerdict::Kind::Unique);
        if (verdict.kind == NogoVerdict::Kind::Unique) {
            const auto v = verdict.integer_v();
            bool half_pq = v.has_value();
            Json table = Json::array();
            const std::int64_t half = inv2(d).value();
            for (std::int64_t p = 0; p < d; ++p) {
                Json row = Json::array();
                for (std::int64_t q = 0; q < d; ++q) {
                    const auto idx = static_cast<std::size_t>(p * d + q);
                    if (v) {
                        row.push_back((*v)[idx]);
                        half_pq = half_pq && (*v)[idx] == reduce(half * p * q, d);
                    }
                }
                table.push_back(std::move(row));
            }
            report["v"] = std::move(table);
            const bool gross = half_pq && verify_against_gross(verdict);
            const bool labelling = ontic_labelling_check(d);
            report.check("v_equals_half_pq", half_pq);
            report.check("matches_gross", gross);
            report.check("ontic_labelling", labelling);
            text << "Unique; " << (gross ? "matches Gross" : "does not match Gross") << "; "
                 << (labelling ? "labelling OK" : "labelling FAILED");
        } else {
            text << to_string(verdict.kind);
        }
    } else {
        report.check("infeasible", verdict.kind == NogoVerdict::Kind::Infeasible);
        if (verdict.kind == NogoVerdict::Kind::Infeasible) {
            std::vector<Congruence> rows;
            Json witness = Json::array();
            bool certified = true;
            text << "Infeasible; witness: {";
            for (std::size_t i = 0; i < verdict.witness.size(); ++i) {
                const auto& w = verdict.witness[i];
                rows.push_back(w.row);
                Json entry;
                entry["row"] = w.describe(system);
                if (w.derived) {
                    const bool ok = certificate_holds(system, *w.derived);
                    certified = certified && ok;
                    Json cert = Json::array();
                    for (const auto& [index, factor] : w.derived->certificate) {
                        cert.push_back({{"constraint", index}, {"factor", factor}});
                    }
                    entry["certificate"] = std::move(cert);
                }
                witness.push_back(std::move(entry));
                text << (i ? "; " : "") << w.describe(system);
            }
            text << "}";
            report["witness"] = std::move(witness);
            report.check("witness_at_most_3_rows", verdict.witness.size() <= 3);
            report.check("witness_exhaustively_infeasible", !exhaustive_feasible(rows, system.modulus()));
            report.check("certificates_hold", certified);
        } else {
            text << to_string(verdict.kind);
        }
    }
    if (verdict.kind == NogoVerdict::Kind::Multiple) report["solution_count"] = verdict.solutions.to_string();
    const int code = report.all_pass() ? kExitOk : kExitUnexpectedVerdict;
    return report.finish(code, text.str());
}

CommandResult cmd_sweep(std::int64_t lo, std::int64_t hi) {
    check_dim(lo);
    check_dim(hi);
    if (lo > hi) throw UsageError("empty dimension range");
    ReportBuilder report("sweep", Json{{"from", lo}, {"to", hi}});
    Json results = Json::array();
    std::ostringstream text;
    for (std::int64_t d = lo; d <= hi; ++d) {
        const auto sub = cmd_uniqueness(d);
        const std::string verdict = sub.report["verdict"].get<std::string>();
        const bool ok = sub.exit_code == kExitOk;
        std::string token = verdict;
        if (ok && d % 2 == 1) token = "unique-gross";
        text << (d == lo ? "" : " ") << d << ":" << token;
        results.push_back({{"dim", d}, {"verdict", token}, {"summary", sub.text}, {"pass", ok}});
        report.check("dim_" + std::to_string(d), ok);
    }
    report["dimensions"] = std::move(results);
    return report.finish(report.all_pass() ? kExitOk : kExitUnexpectedVerdict, text.str());
}

CommandResult cmd_wigner(const std::string& state_path, std::int64_t d, int n) {
    check_dim(d);
    if (d % 2 == 0) throw UsageError("the Wigner function is only defined for odd d");
    if (n < 1) throw UsageError("--qudits must be positive");
    std::int64_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= d;
        if (dim > kMaxDim) throw UsageError("Wigner tables are limited to d^n <= " + std::to_string(kMaxDim));
    }
    OperatorMatrix rho;
    try {
        rho = state_from_json(read_json_file(state_path), d, n);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
    ReportBuilder report("wigner", Json{{"state_file", state_path}, {"dim", d}, {"qudits", n}});
    const auto w = wigner(rho, d, n);
    const auto verdict = classify_state(rho, d, n);
    const double neg = negativity(rho, d, n);

    std::ostringstream text;
    Json table = Json::array();
    for (const auto& point : WeylLabel::all(d, n)) {
        const double value = w.at(point);
        table.push_back({{"point", point_json(point)}, {"value", round12(value)}});
        text << point_text(point) << " " << fmt(value) << "\n";
    }
    const auto min_point = WeylLabel::from_index(d, n, verdict.row);
    report["table"] = std::move(table);
    report["min_entry"] = round12(verdict.witness_value);
    report["min_point"] = point_json(min_point);
    report["negativity"] = round12(neg);
    report["classification"] = to_string(verdict.kind);
    report.check("normalized", std::abs(w.sum() - 1.0) <= 1e-9);
    text << "min " << fmt(verdict.witness_value) << " at " << point_text(min_point) << "\n";
    text << "negativity " << fmt(neg) << "\n";
    text << "classification " << to_string(verdict.kind);
    return report.finish(report.all_pass() ? kExitOk : kExitUnexpectedVerdict, text.str());
}

CommandResult cmd_simulate(const std::string& circuit_path, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw UsageError("--shots must be positive");
    Circuit circuit;
    try {
        circuit = circuit_from_json(read_json_file(circuit_path));
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
    if (circuit.d % 2 == 0) {
        throw UsageError("simulation needs odd d; no nonnegative representation exists for d=" +
                         std::to_string(circuit.d) + " (see: uniqueness --dim " + std::to_string(circuit.d) + ")");
    }
    ReportBuilder report("simulate", Json{{"circuit_file", circuit_path}, {"shots", shots}, {"seed", seed}});
    report["dim"] = circuit.d;
    report["qudits"] = circuit.n;

    CompiledCircuit cc;
    try {
        cc = compile(circuit);
    } catch (const NegativityError& e) {
        report["negativity_witness"] = {
            {"element", e.element()},
            {"point", point_json(WeylLabel::from_index(circuit.d, circuit.n, e.row()))},
            {"value", round12(e.value())},
        };
        if (e.col() >= 0) report["negativity_witness"]["from_point"] = point_json(WeylLabel::from_index(circuit.d, circuit.n, e.col()));
        report.check("compiled_nonnegative", false);
        return report.finish(kExitNegativity, std::string("negativity: ") + e.what());
    }
    report.check("compiled_nonnegative", true);
    std::size_t permutation_steps = 0;
    for (const auto& p : cc.permutations) permutation_steps += p.empty() ? 0 : 1;
    report["steps"] = cc.steps.size();
    report["permutation_steps"] = permutation_steps;

    const auto result = sample(cc, shots, seed);
    const auto freq = result.frequencies();
    const bool exact_ok = hilbert_dim(circuit.d, circuit.n) <= 1024;
    std::map<OutcomeRecord, double> exact;
    if (exact_ok) exact = exact_probabilities(circuit);

    std::set<OutcomeRecord> records;
    for (const auto& [r, c] : result.counts) records.insert(r);
    for (const auto& [r, p] : exact) records.insert(r);

    std::ostringstream text;
    Json counts = Json::array();
    double max_dev = 0.0;
    for (const auto& r : records) {
        const auto it = result.counts.find(r);
        const std::uint64_t count = it == result.counts.end() ? 0 : it->second;
        const double f = static_cast<double>(count) / static_cast<double>(shots);
        Json entry{{"outcomes", r}, {"count", count}, {"frequency", round12(f)}};
        text << "outcomes " << record_text(r) << ": " << count << " (" << fmt(f);
        if (exact_ok) {
            const auto e = exact.find(r);
            const double p = e == exact.end() ? 0.0 : e->second;
            entry["exact"] = round12(p);
            max_dev = std::max(max_dev, std::abs(p - f));
            text << ", exact " << fmt(p);
        }
        text << ")\n";
        counts.push_back(std::move(entry));
    }
    report["counts"] = std::move(counts);
    if (exact_ok) report["max_deviation"] = round12(max_dev);
    if (exact_ok) {
        text << "max deviation " << fmt(max_dev);
    } else {
        text << "exact table skipped (d^n > 1024)";
    }
    return report.finish(kExitOk, text.str());
}

std::pair<std::int64_t, std::int64_t> parse_dim_range(const std::string& text) {
    auto parse = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw UsageError("bad dimension range '" + text + "'");
        }
        if (used != s.size()) throw UsageError("bad dimension range '" + text + "'");
        return static_cast<std::int64_t>(v);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto d = parse(text);
        return {d, d};
    }
    return {parse(text.substr(0, dots)), parse(text.substr(dots + 2))};
}

}  // namespace wignerlab
