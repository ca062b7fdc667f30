#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "dd/runner.hpp"

namespace {

void usage(std::ostream& out) {
    out << "usage: dd <command> --config <path> [--out <dir>] [--threads <k>]\n"
           "commands:\n"
           "  evolve      propagate data under a profile/symbol, dump trajectory CSV + JSON\n"
           "  verify      run one estimate verifier (lemma_T1_i, corTC2, thm2, gse, sug, ky, w,\n"
           "              sugb, sugf, identity_scaling, rad, conj)\n"
           "  strichartz  run one mixed-norm estimate (wh2, wh3, dwh2, dwh3, wi2, wi3, lwh2,\n"
           "              lwi2, lwi3, wh2.1, wi2.1, wi3.1, wh2_endpoint)\n"
           "  solve       Picard fixed-point solve of the semilinear problem\n"
           "  sweep       repeat an estimate over one parameter grid\n"
           "exit codes: 0 pass/complete, 2 fail, 3 inconclusive, 1 error, 64 usage\n"
           "environment: DD_THREADS overrides --threads\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(std::cerr);
        return dd::kExitUsage;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        usage(std::cout);
        return dd::kExitOk;
    }

    std::string config_path, out_dir = ".";
    int threads = 0;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&](const char* name) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "dd: missing value for " << name << "\n";
                std::exit(dd::kExitUsage);
            }
            return argv[++i];
        };
        if (arg == "--config") {
            config_path = next("--config");
        } else if (arg == "--out") {
            out_dir = next("--out");
        } else if (arg == "--threads") {
            threads = std::atoi(next("--threads").c_str());
        } else {
            std::cerr << "dd: unknown argument '" << arg << "'\n";
            usage(std::cerr);
            return dd::kExitUsage;
        }
    }
    if (config_path.empty()) {
        std::cerr << "dd: --config is required\n";
        return dd::kExitUsage;
    }

    if (const char* env = std::getenv("DD_THREADS")) threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);

    try {
        const dd::RunConfig config = dd::load_config(config_path);
        if (config.has("", "threads") && threads == 0)
            omp_set_num_threads(config.integer("", "threads", 1));
        return dd::run_command(command, config, out_dir);
    } catch (const dd::ConfigError& e) {
        std::cerr << "dd: config error: " << e.what() << "\n";
        return dd::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "dd: error: " << e.what() << "\n";
        return dd::kExitError;
    }
}
