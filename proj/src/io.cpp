#include "wignerlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace wignerlab {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t integer_field(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

StabilizerSpec spec_from_json(const Json& j) {
    const auto& basis = field(j, "basis");
    if (!basis.is_string()) throw FormatError("field 'basis' must be a string");
    return {basis.get<std::string>(), integer_field(j, "eigenvalue_exponent")};
}

WeylLabel label_from_json(const Json& j, std::int64_t d) {
    if (!j.is_array() || j.empty()) throw FormatError("a label is a nonempty list of [p, q] pairs");
    std::vector<QuditPoint> parts;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
            throw FormatError("a label part must be [p, q] with integer entries");
        }
        parts.push_back({pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>()});
    }
    return WeylLabel(d, std::move(parts));
}

Json label_to_json(const WeylLabel& label) {
    Json out = Json::array();
    for (const auto& part : label.parts()) out.push_back({part.p, part.q});
    return out;
}

GateKind gate_kind_from(const std::string& name) {
    for (const auto kind : {GateKind::Hadamard, GateKind::PhaseGate, GateKind::WeylGate, GateKind::CustomUnitary}) {
        if (name == to_string(kind)) return kind;
    }
    throw FormatError("unknown gate kind '" + name + "'");
}

}  // namespace

double round12(double x) {
    // Values this small are rounding residue of exact zeros.
    if (!std::isfinite(x) || std::abs(x) < 1e-14) return std::isfinite(x) ? 0.0 : x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double out = std::strtod(buf, nullptr);
    return out == 0.0 ? 0.0 : out;
}

Json matrix_to_json(const OperatorMatrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re_row.push_back(round12(m(r, c).real()));
            im_row.push_back(round12(m(r, c).imag()));
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

OperatorMatrix matrix_from_json(const Json& j) {
    const auto& re = field(j, "re");
    if (!re.is_array() || re.empty()) throw FormatError("'re' must be a nonempty list of rows");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const Json* im = j.contains("im") ? &j.at("im") : nullptr;
    if (im && (!im->is_array() || im->size() != re.size())) throw FormatError("'im' must match the shape of 're'");
    OperatorMatrix out(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = re[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) throw FormatError("matrix must be square");
        const Json* im_row = im ? &(*im)[static_cast<std::size_t>(r)] : nullptr;
        if (im_row && (!im_row->is_array() || im_row->size() != row.size())) {
            throw FormatError("'im' must match the shape of 're'");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            const auto& x = row[static_cast<std::size_t>(c)];
            if (!x.is_number()) throw FormatError("matrix entries must be numbers");
            double y = 0.0;
            if (im_row) {
                const auto& v = (*im_row)[static_cast<std::size_t>(c)];
                if (!v.is_number()) throw FormatError("matrix entries must be numbers");
                y = v.get<double>();
            }
            out(r, c) = Complex(x.get<double>(), y);
        }
    }
    return out;
}

OperatorMatrix state_from_json(const Json& j, std::int64_t d, int n) {
    const auto& kind = field(j, "kind");
    if (kind == "dense") {
        OperatorMatrix rho = matrix_from_json(j);
        if (rho.rows() != hilbert_dim(d, n)) {
            throw FormatError("dense state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.rows()) +
                              " but d^n = " + std::to_string(hilbert_dim(d, n)));
        }
        if (!is_hermitian(rho, 1e-8) || std::abs(rho.trace() - Complex(1.0)) > 1e-8) {
            throw FormatError("dense state must be Hermitian with unit trace");
        }
        return rho;
    }
    if (kind == "stabilizer") {
        std::vector<StabilizerSpec> specs;
        if (j.contains("qudits")) {
            for (const auto& entry : j.at("qudits")) specs.push_back(spec_from_json(entry));
            if (static_cast<int>(specs.size()) != n) throw FormatError("'qudits' needs one entry per qudit");
        } else {
            specs.assign(static_cast<std::size_t>(n), spec_from_json(j));
        }
        try {
            StateVector psi = stabilizer_spec_vector(specs[0], d);
            for (int i = 1; i < n; ++i) psi = tensor(psi, stabilizer_spec_vector(specs[static_cast<std::size_t>(i)], d));
            return projector(psi);
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    throw FormatError("state 'kind' must be \"stabilizer\" or \"dense\"");
}

Json circuit_to_json(const Circuit& c) {
    Json out;
    out["d"] = c.d;
    out["n"] = c.n;
    if (c.initial_density) {
        out["initial_density"] = matrix_to_json(*c.initial_density);
    } else {
        Json initial = Json::array();
        for (const auto& s : c.initial) initial.push_back({{"basis", s.basis}, {"eigenvalue_exponent", s.eigenvalue_exponent}});
        out["initial"] = std::move(initial);
    }
    Json gates = Json::array();
    for (const auto& g : c.gates) {
        Json gate{{"kind", to_string(g.kind)}, {"targets", g.targets}};
        if (g.kind == GateKind::WeylGate) gate["label"] = label_to_json(*g.label);
        if (g.kind == GateKind::CustomUnitary) {
            const Json m = matrix_to_json(g.matrix);
            gate["re"] = m["re"];
            gate["im"] = m["im"];
        }
        gates.push_back(std::move(gate));
    }
    out["gates"] = std::move(gates);
    Json measurements = Json::array();
    for (const auto& m : c.measurements) measurements.push_back(label_to_json(m));
    out["measurements"] = std::move(measurements);
    return out;
}

Circuit circuit_from_json(const Json& j) {
    Circuit c;
    c.d = integer_field(j, "d");
    const std::int64_t n = integer_field(j, "n");
    if (c.d < 2 || c.d > 64) throw FormatError("circuit d must be in [2, 64]");
    if (n < 1 || n > 8) throw FormatError("circuit n must be in [1, 8]");
    c.n = static_cast<int>(n);
    if (j.contains("initial_density")) {
        c.initial_density = matrix_from_json(j.at("initial_density"));
    } else {
        const auto& initial = field(j, "initial");
        if (!initial.is_array()) throw FormatError("'initial' must be a list");
        for (const auto& entry : initial) c.initial.push_back(spec_from_json(entry));
    }
    if (j.contains("gates")) {
        for (const auto& g : j.at("gates")) {
            Gate gate;
            const auto& kind = field(g, "kind");
            if (!kind.is_string()) throw FormatError("gate 'kind' must be a string");
            gate.kind = gate_kind_from(kind.get<std::string>());
            const auto& targets = field(g, "targets");
            if (!targets.is_array()) throw FormatError("gate 'targets' must be a list");
            for (const auto& t : targets) {
                if (!t.is_number_integer()) throw FormatError("targets must be integers");
                gate.targets.push_back(t.get<int>());
            }
            if (gate.kind == GateKind::WeylGate) gate.label = label_from_json(field(g, "label"), c.d);
            if (gate.kind == GateKind::CustomUnitary) gate.matrix = matrix_from_json(g);
            c.gates.push_back(std::move(gate));
        }
    }
    if (j.contains("measurements")) {
        for (const auto& m : j.at("measurements")) c.measurements.push_back(label_from_json(m, c.d));
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return c;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

bool report_matches_schema(const Json& report) {
    static const char* const kLeading[] = {"schema_version", "command", "parameters"};
    if (!report.is_object() || report.size() < 5) return false;
    auto it = report.begin();
    for (const char* key : kLeading) {
        if (it.key() != key) return false;
        ++it;
    }
    if (!report["schema_version"].is_number_integer() || report["schema_version"] != kSchemaVersion) return false;
    if (!report["command"].is_string() || !report["parameters"].is_object()) return false;
    if (!report.contains("checks") || !report["checks"].is_array()) return false;
    for (const auto& check : report["checks"]) {
        if (!check.is_object() || !check.contains("name") || !check.contains("pass") || !check["pass"].is_boolean()) {
            return false;
        }
    }
    if (!report.contains("exit_code") || !report["exit_code"].is_number_integer()) return false;
    const auto& last = report.back();
    return last.is_number() && std::prev(report.end()).key() == "wall_time_seconds";
}

}  // namespace wignerlab
