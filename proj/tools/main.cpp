#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "superkoszul/suites.hpp"

using namespace superkoszul;

int main(int argc, char** argv) {
    CLI::App app{"superkoszul: manifest-driven verification suites"};

    std::string suite, manifest_path, report_format = "text";
    std::optional<unsigned> seed;
    std::optional<int> hbar_order, momentum_order;

    app.add_option("suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    app.add_option("--manifest", manifest_path, "Path to the JSON manifest")
        ->required();
    app.add_option("--seed", seed, "Override the manifest seed");
    app.add_option("--hbar-order", hbar_order, "Override the hbar truncation");
    app.add_option("--momentum-order", momentum_order,
                   "Override the momentum truncation");
    app.add_option("--report", report_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Exit-code contract: 2 for any usage error, 0 for --help and co.
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Manifest m = parse_manifest(manifest_path);
        if (seed) m.budgets.seed = *seed;
        if (hbar_order) m.budgets.hbar_order = *hbar_order;
        if (momentum_order) m.budgets.momentum_order = *momentum_order;

        Report rep = run_suite(m, suite);
        if (report_format == "json") {
            std::cout << rep.render_json();
        } else {
            const char* color = std::getenv("SUPERKOSZUL_COLOR");
            std::cout << rep.render_text(color && *color && *color != '0');
        }
        return rep.all_pass() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
