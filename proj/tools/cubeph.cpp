// Command-line front end. Talks to the library only through the C API.
#include <algorithm>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cubeph/cubeph.h"

namespace {

int report(cph_status status) {
    const std::string out = cph_last_output();
    if (!out.empty()) std::cout << out << std::flush;
    if (status != CPH_OK) std::cerr << "cubeph: error: " << cph_last_error() << "\n";
    return static_cast<int>(status);
}

struct ConfigHandle {
    cph_config* ptr = nullptr;
    ~ConfigHandle() { cph_config_free(ptr); }
};

int with_config(const std::string& path, const std::function<cph_status(const cph_config*)>& run) {
    ConfigHandle config;
    const cph_status status = cph_config_load(path.c_str(), &config.ptr);
    if (status != CPH_OK) return report(status);
    return report(run(config.ptr));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubical persistent homology of random filtrations"};
    app.require_subcommand(0, 1);
    bool version = false;
    app.add_flag("--version", version, "Print library, config schema and file format versions");

    std::string config_path, out_dir, input, output, which, scale = "default";
    std::vector<std::string> inputs;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "Output directory (default: the config's \"out\", else .)");
        cmd->add_option("--jobs", jobs, "Worker threads; results do not depend on it");
    };

    auto* sample = app.add_subcommand("sample", "Write filtration dumps for every window size and trial");
    sample->add_option("--config", config_path, "Experiment config (JSON)")->required();
    add_common(sample);

    auto* diagram = app.add_subcommand("diagram", "Persistence diagram of a dump, or of every configured sample");
    auto* diagram_input = diagram->add_option("--input", input, "Filtration dump to read");
    diagram->add_option("--output", output, "Diagram file to write (with --input)")->needs(diagram_input);
    auto* diagram_config = diagram->add_option("--config", config_path, "Experiment config (JSON)");
    diagram_input->excludes(diagram_config);
    add_common(diagram);

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimates written as CSV");
    estimate->add_option("which", which, "pb, diagram, mgf or rate")->required();
    estimate->add_option("--config", config_path, "Experiment config (JSON)")->required();
    add_common(estimate);

    auto* verify = app.add_subcommand("verify", "Run the exact property suite");
    verify->add_option("--scale", scale, "smoke, default or deep");
    verify->add_option("--input", inputs, "Filtration dumps to validate before the suite");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : CPH_INVALID_ARGUMENT;
    }

    if (version) {
        std::cout << "cubeph " << cph_version() << " (config schema " << cph_schema_version() << ", file format "
                  << cph_format_version() << ")\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return CPH_INVALID_ARGUMENT;
    }

    const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();
    if (*sample) return with_config(config_path, [&](const cph_config* c) { return cph_run_sample(c, dir, jobs); });
    if (*diagram) {
        if (!input.empty())
            return report(cph_run_diagram_file(input.c_str(), output.empty() ? nullptr : output.c_str()));
        if (config_path.empty()) {
            std::cerr << "cubeph: error: diagram needs --input or --config\n";
            return CPH_INVALID_ARGUMENT;
        }
        return with_config(config_path, [&](const cph_config* c) { return cph_run_diagram(c, dir, jobs); });
    }
    if (*estimate)
        return with_config(config_path,
                           [&](const cph_config* c) { return cph_run_estimate(c, which.c_str(), dir, jobs); });

    std::vector<const char*> paths;
    for (const auto& p : inputs) paths.push_back(p.c_str());
    return report(cph_run_verify(scale.c_str(), dir, jobs, paths.data(), paths.size()));
}
