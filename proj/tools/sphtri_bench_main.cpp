// Benchmark harness over the sphtri shared library. Subcommands mirror the
// experiment runners: synthetic, real, runtime, fwcheck. The experiment
// descriptor is a JSON document; --seed and --methods override its fields.
// Summary CSV goes to --out (default: stdout); progress goes to stderr.
// Exit codes: 0 success, 2 configuration error, 3 dataset error.

#include <sphtri/sphtri.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string methods;
    long long seed = -1;
    bool seed_set = false;
};

int map_exit_code(sphtri_status status) {
    switch (status) {
        case SPHTRI_OK: return 0;
        case SPHTRI_CONFIG_ERROR:
        case SPHTRI_INVALID_ARGUMENT: return 2;
        case SPHTRI_DATASET_ERROR: return 3;
        default: return 1;
    }
}

int run_kind(const std::string& kind, const Options& opt) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open config '" << opt.config_path << "'\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    nlohmann::json descriptor;
    try {
        descriptor = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config parse failed: " << e.what() << "\n";
        return 2;
    }
    if (opt.seed_set) {
        descriptor["seed"] = static_cast<std::uint64_t>(opt.seed);
    }
    if (!opt.methods.empty()) {
        nlohmann::json methods = nlohmann::json::array();
        std::stringstream ss(opt.methods);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                methods.push_back(item);
            }
        }
        descriptor["methods"] = methods;
    }
    const std::string descriptor_text = descriptor.dump();

    char* csv = nullptr;
    sphtri_status status = SPHTRI_INTERNAL_ERROR;
    if (kind == "synthetic") {
        status = sphtri_run_synthetic(descriptor_text.c_str(), &csv);
    } else if (kind == "real") {
        status = sphtri_run_real(descriptor_text.c_str(), &csv);
    } else if (kind == "runtime") {
        status = sphtri_run_runtime(descriptor_text.c_str(), &csv);
    } else if (kind == "fwcheck") {
        status = sphtri_run_fwcheck(descriptor_text.c_str(), &csv);
    }
    if (status != SPHTRI_OK) {
        std::cerr << "error (" << sphtri_status_name(status) << "): " << sphtri_last_error()
                  << "\n";
        return map_exit_code(status);
    }

    if (opt.out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << opt.out_path << "'\n";
            sphtri_free_string(csv);
            return 1;
        }
        out << csv;
    }
    sphtri_free_string(csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-view triangulation benchmark harness"};
    app.require_subcommand(1);

    Options opt;
    for (const char* name : {"synthetic", "real", "runtime", "fwcheck"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "experiment descriptor JSON")
            ->required();
        sub->add_option("--seed", opt.seed, "override the descriptor seed");
        sub->add_option("--out", opt.out_path, "summary CSV path (default: stdout)");
        sub->add_option("--methods", opt.methods,
                        "comma-separated method list overriding the descriptor");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    opt.seed_set = sub->count("--seed") > 0;

    return run_kind(sub->get_name(), opt);
}
