// igusa_zeta: computes Z(s, h) or Z(s, f/g) for a problem file and prints the report.
//
// Exit status: 0 ok, 1 internal error, 2 invalid input, 3 degenerate input, 4 budget exceeded.

#include <iostream>

#include <CLI11.hpp>

#include "igusa/igusa.hpp"

namespace {

enum Exit { ok = 0, internal = 1, invalid = 2, degenerate = 3, budget = 4 };

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Igusa local zeta functions of non-degenerate polynomial mappings"};
    std::string spec_path;
    std::string format;
    std::optional<unsigned> oracle_level;
    std::optional<std::uint64_t> fan_seed;
    bool override_degenerate = false;
    app.add_option("--spec", spec_path, "problem file (key = value lines)")->required();
    app.add_option("--format", format, "text or json (overrides the file)")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--oracle-level", oracle_level, "truncation level M of the p-adic oracle; 0 disables it");
    app.add_option("--fan-seed", fan_seed, "ray ordering for the simplicial subdivision; 0 is lexicographic");
    app.add_flag("--override-degenerate", override_degenerate,
                 "compute the formula even when the input is degenerate (result is marked uncertified)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid;
    }

    try {
        auto spec = igusa::load_problem(spec_path);
        if (!format.empty()) {
            spec.format = igusa::parse_format(format);
        }
        if (oracle_level) {
            spec.oracle_level = *oracle_level;
        }
        if (fan_seed) {
            spec.fan_seed = *fan_seed;
        }
        spec.override_degenerate = spec.override_degenerate || override_degenerate;
        const auto report = igusa::run(spec);
        std::cout << igusa::print_report(report, spec.format);
        return ok;
    } catch (const igusa::DegenerateInput& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return degenerate;
    } catch (const igusa::BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return budget;
    } catch (const igusa::InputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}
