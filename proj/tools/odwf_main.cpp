#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "odwf/experiment.hpp"

namespace {

using odwf::experiment::ExperimentSpec;
using odwf::experiment::SpecError;

// Error line format: "error: kind=<kind> line=<n> key=<key> message=<text>".
int fail(const std::string& kind, int line, const std::string& key, const std::string& message) {
    std::cerr << "error: kind=" << kind << " line=" << line << " key=" << (key.empty() ? "-" : key)
              << " message=" << message << '\n';
    return kind == "spec" ? 2 : 1;
}

const char* kSystemKeys[] = {"scenario", "scheme", "K", "N", "p", "beta", "alpha", "M", "q", "R",
                             "warmup_frames", "measure_frames", "replications", "buffer_cap",
                             "exact_positions"};

std::string preset_path(const std::string& name) {
    return std::string(ODWF_PRESET_DIR) + "/" + name + ".ini";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ODWF relay network simulator and closed-form predictor"};
    app.require_subcommand(1);

    std::map<std::string, std::string> common;
    auto add_common = [&](CLI::App* cmd) {
        for (const char* key : {"seed", "out", "format", "threads"}) {
            cmd->add_option_function<std::string>(
                std::string("--") + key, [&common, key](const std::string& v) { common[key] = v; },
                std::string("override output/") + key);
        }
    };

    std::map<std::string, std::string> system;
    auto add_system = [&](CLI::App* cmd) {
        for (const char* key : kSystemKeys) {
            cmd->add_option_function<std::string>(
                std::string("--") + key, [&system, key](const std::string& v) { system[key] = v; },
                std::string("system parameter ") + key);
        }
    };

    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo engine for one point");
    auto* predict = app.add_subcommand("predict", "Evaluate the closed-form analytics for one point");
    auto* both = app.add_subcommand("both", "Simulate and predict one point");
    auto* sweep = app.add_subcommand("sweep", "Run a spec file or a shipped preset");
    for (auto* cmd : {simulate, predict, both}) {
        add_system(cmd);
        add_common(cmd);
    }
    std::string spec_file;
    std::string preset;
    std::vector<std::string> sets;
    auto* spec_opt = sweep->add_option("--spec", spec_file, "spec file path");
    sweep->add_option("--preset", preset, "preset name")->excludes(spec_opt);
    sweep->add_option("--set", sets, "override KEY=VALUE (repeatable)");
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", 0, "", e.what());
    }

    try {
        ExperimentSpec spec;
        if (sweep->parsed()) {
            if (spec_file.empty() && preset.empty()) {
                return fail("usage", 0, "", "sweep needs --spec or --preset");
            }
            const std::string path = spec_file.empty() ? preset_path(preset) : spec_file;
            if (!preset.empty() && !std::filesystem::exists(path)) {
                return fail("usage", 0, "preset", "unknown preset '" + preset + "'");
            }
            spec = odwf::experiment::load_spec(path);
            for (const auto& kv : sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    return fail("usage", 0, kv, "--set expects KEY=VALUE");
                }
                odwf::experiment::apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
            }
            for (const auto& [key, value] : common) {
                odwf::experiment::apply_override(spec, key, value);
            }
        } else {
            spec.mode = simulate->parsed()  ? odwf::experiment::Mode::Simulate
                        : predict->parsed() ? odwf::experiment::Mode::Predict
                                            : odwf::experiment::Mode::Both;
            for (const auto& [key, value] : system) {
                odwf::experiment::set_key(spec, "system", key, value, 0);
            }
            for (const auto& [key, value] : common) {
                if (key == "out") {
                    spec.output_path = value;
                } else {
                    odwf::experiment::set_key(spec, key == "seed" ? "system" : "output", key, value, 0);
                }
            }
            spec.plan();
        }
        const auto table = odwf::experiment::run_experiment(spec);
        odwf::experiment::emit(table, spec.format, spec.output_path);
    } catch (const SpecError& e) {
        return fail("spec", e.line(), e.key(), e.detail());
    } catch (const std::exception& e) {
        return fail("runtime", 0, "", e.what());
    }
    return 0;
}
