#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wignerlab/commands.hpp"

namespace {

int emit(const wignerlab::CommandResult& result, const std::string& json_path) {
    if (!result.text.empty()) std::cout << result.text << '\n';
    if (json_path == "-") {
        std::cout << result.report.dump(2) << '\n';
    } else if (!json_path.empty()) {
        wignerlab::write_json_file(json_path, result.report);
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stabilizer phase-space toolkit: Weyl/Clifford algebra, Gross's Wigner function, the\n"
                 "outcome-assignment no-go system and a positive-Wigner sampling simulator."};
    app.require_subcommand(1);
    std::string json_path;

    std::int64_t dim = 0;
    auto* uniqueness = app.add_subcommand("uniqueness", "solve the outcome-assignment system for one dimension");
    uniqueness->add_option("--dim", dim, "qudit dimension (2..32)")->required();
    uniqueness->add_option("--json", json_path, "write the report here ('-' for stdout)");

    std::string state_file;
    int qudits = 1;
    auto* wigner = app.add_subcommand("wigner", "Wigner table and negativity of a state file");
    wigner->add_option("state-file", state_file, "state JSON")->required();
    wigner->add_option("--dim", dim, "odd qudit dimension")->required();
    wigner->add_option("--qudits", qudits, "number of qudits");
    wigner->add_option("--json", json_path, "write the report here ('-' for stdout)");

    std::string circuit_file;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "sample a stabilizer circuit in the Gross representation");
    simulate->add_option("circuit-file", circuit_file, "circuit JSON")->required();
    simulate->add_option("--shots", shots, "number of shots")->required();
    simulate->add_option("--seed", seed, "64-bit seed");
    simulate->add_option("--json", json_path, "write the report here ('-' for stdout)");

    std::string range;
    auto* sweep = app.add_subcommand("sweep", "run uniqueness over a range of dimensions");
    sweep->add_option("--dims", range, "range a..b within 2..32")->required();
    sweep->add_option("--json", json_path, "write the report here ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return wignerlab::kExitUsage;
    }

    try {
        if (*uniqueness) return emit(wignerlab::cmd_uniqueness(dim), json_path);
        if (*wigner) return emit(wignerlab::cmd_wigner(state_file, dim, qudits), json_path);
        if (*simulate) return emit(wignerlab::cmd_simulate(circuit_file, shots, seed), json_path);
        const auto [lo, hi] = wignerlab::parse_dim_range(range);
        return emit(wignerlab::cmd_sweep(lo, hi), json_path);
    } catch (const wignerlab::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return wignerlab::kExitUsage;
    }
}
