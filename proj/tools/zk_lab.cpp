// zk_lab: config-driven experiment runner for the ZK perturbation laboratory.
//
// Verbs:
//   run <config>       execute a scenario, write its CSV, exit 0/1 on pass/fail
//   validate <config>  schema-check a config without running it
//   list-scenarios     print the known scenario kinds
//   version            print the tool version
//
// Exit codes: 0 all pass, 1 some flag failed, 2 configuration error,
// 3 divergence during time integration.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zklab/scenarios.hpp"

namespace {

// The only environment override: prepend ZKLAB_OUTPUT_DIR to relative output
// paths.
void apply_output_dir_override(zklab::ScenarioConfig& sc) {
    const char* dir = std::getenv("ZKLAB_OUTPUT_DIR");
    if (dir == nullptr || sc.output_path.empty() || sc.output_path.front() == '/') return;
    std::string d(dir);
    if (!d.empty() && d.back() != '/') d += '/';
    sc.output_path = d + sc.output_path;
}

int do_run(const std::string& path) {
    zklab::ScenarioConfig sc = zklab::ScenarioConfig::load(path);
    apply_output_dir_override(sc);
    const zklab::ScenarioResult res = zklab::run_scenario(sc);
    std::cout << zklab::kind_name(sc.kind) << ": " << res.table.rows.size() << " rows, "
              << (res.pass ? "PASS" : "FAIL") << "\n";
    if (!sc.output_path.empty()) std::cout << "wrote " << sc.output_path << "\n";
    return res.pass ? 0 : 1;
}

int do_validate(const std::string& path) {
    const zklab::ScenarioConfig sc = zklab::ScenarioConfig::load(path);
    std::cout << "ok: scenario '" << zklab::kind_name(sc.kind) << "'\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral laboratory for the 2D Zakharov-Kuznetsov equation "
                 "around bounded backgrounds"};
    app.require_subcommand(1);

    std::string run_config, validate_config;
    CLI::App* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", run_config, "scenario config file")->required();
    CLI::App* validate = app.add_subcommand("validate", "check a scenario config");
    validate->add_option("config", validate_config, "scenario config file")->required();
    CLI::App* list = app.add_subcommand("list-scenarios", "print known scenario kinds");
    CLI::App* version = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return do_run(run_config);
        if (validate->parsed()) return do_validate(validate_config);
        if (list->parsed()) {
            for (const auto& [name, kind] : zklab::scenario_names()) std::cout << name << "\n";
            return 0;
        }
        if (version->parsed()) {
            std::cout << "zk_lab " << zklab::kVersion << "\n";
            return 0;
        }
    } catch (const zklab::divergence_error& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 3;
    } catch (const zklab::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const zklab::invalid_input& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
