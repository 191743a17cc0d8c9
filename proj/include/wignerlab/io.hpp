#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "wignerlab/qmat.hpp"
#include "wignerlab/wsim.hpp"

namespace wignerlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Thrown for malformed input files; the CLI maps it to the usage exit code.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits so reports carry no sub-tolerance noise.
double round12(double x);

Json matrix_to_json(const OperatorMatrix& m);
/// {"re": [[...]], "im": [[...]]}; "im" may be omitted for real matrices.
OperatorMatrix matrix_from_json(const Json& j);

/// State files:
///   {"kind": "stabilizer", "basis": "Z" | "X" | "XZ^k", "eigenvalue_exponent": e}
///   {"kind": "stabilizer", "qudits": [{"basis": ..., "eigenvalue_exponent": ...}, ...]}
///   {"kind": "dense", "re": [[...]], "im": [[...]]}
/// A single stabilizer entry is used on every qudit.
OperatorMatrix state_from_json(const Json& j, std::int64_t d, int n);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// True if `report` has the fields every command report carries, in order.
bool report_matches_schema(const Json& report);

}  // namespace wignerlab
