#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpcp/bench/runner.hpp"
#include "dpcp/io/instances.hpp"
#include "dpcp/oracle.hpp"

namespace fs = std::filesystem;
using namespace dpcp;

namespace {

struct Shared {
    std::string problem = "smswt";
    std::string algo = "cabs";
    std::string propagation = "off";
    std::optional<double> time_limit;
    std::optional<double> mem_limit;
    std::optional<std::uint64_t> expansion_cap;
    std::string format = "auto";
    std::string output;
    std::uint64_t seed = 0;
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_option("--problem", s.problem, "smswt, rcpsp or tsptw")
        ->check(CLI::IsMember({"smswt", "rcpsp", "tsptw"}));
    cmd->add_option("--algo", s.algo, "astar or cabs")->check(CLI::IsMember({"astar", "cabs"}));
    cmd->add_option("--propagation", s.propagation, "off, once or fixpoint")
        ->check(CLI::IsMember({"off", "once", "fixpoint"}));
    cmd->add_option("--time-limit", s.time_limit, "wall-clock limit in seconds");
    cmd->add_option("--mem-limit", s.mem_limit, "node storage limit in MB");
    cmd->add_option("--expansion-cap", s.expansion_cap, "maximum number of expansions");
    cmd->add_option("--format", s.format, "auto, json, psplib or tsptw-matrix")
        ->check(CLI::IsMember({"auto", "json", "psplib", "tsptw-matrix"}));
    cmd->add_option("--output", s.output, "output path");
    cmd->add_option("--seed", s.seed, "random seed");
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DP solver with constraint propagation"};
    app.require_subcommand(1);

    Shared solve_opts;
    std::string solve_path;
    std::uint64_t beam_width = 1, beam_growth = 2;
    auto* solve = app.add_subcommand("solve", "solve an instance and print a JSON report");
    add_shared(solve, solve_opts);
    solve->add_option("--beam-width", beam_width, "initial CABS beam width");
    solve->add_option("--beam-growth", beam_growth, "CABS beam growth factor");
    solve->add_option("instance", solve_path, "instance file")->required();

    Shared gen_opts;
    smswt::GeneratorConfig gen_cfg;
    auto* generate = app.add_subcommand("generate", "write random SMS instances");
    add_shared(generate, gen_opts);
    generate->add_option("--n", gen_cfg.n, "jobs per instance");
    generate->add_option("--tau", gen_cfg.tau, "release date spread");
    generate->add_option("--rho", gen_cfg.rho, "due date spread");
    generate->add_option("--phi", gen_cfg.phi, "deadline spread");
    generate->add_option("--count", gen_cfg.count, "number of instances");

    Shared oracle_opts;
    std::string oracle_path;
    auto* oracle = app.add_subcommand("oracle", "exhaustive optimum of a tiny instance");
    add_shared(oracle, oracle_opts);
    oracle->add_option("instance", oracle_path, "instance file")->required();

    std::string manifest_path, bench_output;
    unsigned threads = 1;
    auto* bench = app.add_subcommand("bench", "run a JSON manifest and write CSV");
    bench->add_option("manifest", manifest_path, "manifest file")->required();
    bench->add_option("--output", bench_output, "CSV path (stdout by default)");
    bench->add_option("--threads", threads, "concurrent runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            const auto problem = io::parse_problem(solve_opts.problem);
            const auto inst = io::load_instance(solve_path, problem, io::parse_format(solve_opts.format));
            bench::RunConfig config;
            config.algo = bench::parse_algorithm(solve_opts.algo);
            config.mode = bench::parse_mode(solve_opts.propagation);
            config.limits.time_limit = solve_opts.time_limit;
            if (solve_opts.mem_limit) {
                config.limits.memory_limit = static_cast<std::uint64_t>(*solve_opts.mem_limit * 1024 * 1024);
            }
            config.limits.expansion_cap = solve_opts.expansion_cap;
            config.beam = {beam_width, beam_growth};
            const auto result = bench::solve(inst, config);
            write_out(solve_opts.output, bench::report_json(result).dump(2) + "\n");
            return bench::exit_code(result.status);
        }
        if (*generate) {
            if (gen_opts.problem != "smswt") throw std::invalid_argument("generate supports --problem smswt only");
            gen_cfg.seed = gen_opts.seed;
            const auto instances = smswt::generate(gen_cfg);
            const fs::path dir = gen_opts.output.empty() ? fs::path(".") : fs::path(gen_opts.output);
            fs::create_directories(dir);
            for (std::size_t k = 0; k < instances.size(); ++k) {
                const auto name = "smswt_n" + std::to_string(gen_cfg.n) + "_tau" + fmt(gen_cfg.tau) + "_rho" +
                                  fmt(gen_cfg.rho) + "_phi" + fmt(gen_cfg.phi) + "_s" + std::to_string(gen_cfg.seed) +
                                  "_" + std::to_string(k) + ".json";
                write_out((dir / name).string(), io::dump(instances[k]));
                std::cout << (dir / name).string() << "\n";
            }
            return 0;
        }
        if (*oracle) {
            const auto problem = io::parse_problem(oracle_opts.problem);
            const auto inst = io::load_instance(oracle_path, problem, io::parse_format(oracle_opts.format));
            const auto best = std::visit(
                [](const auto& i) -> std::optional<std::int64_t> {
                    using I = std::decay_t<decltype(i)>;
                    if constexpr (std::is_same_v<I, smswt::Instance>) return oracle::smswt_permutations(i);
                    else if constexpr (std::is_same_v<I, rcpsp::Instance>) return oracle::rcpsp_orderings(i);
                    else return oracle::tsptw_permutations(i);
                },
                inst);
            write_out(oracle_opts.output, best ? std::to_string(*best) + "\n" : "INFEASIBLE\n");
            return 0;
        }
        if (*bench) {
            std::ifstream in(manifest_path);
            if (!in) throw io::ParseError(manifest_path, 0, "cannot open file");
            nlohmann::json manifest;
            try {
                manifest = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw io::ParseError(manifest_path, 0, e.what());
            }
            const auto entries = bench::parse_manifest(manifest, fs::path(manifest_path).parent_path());
            const auto rows = bench::run_manifest(entries, threads);
            std::ostringstream csv;
            bench::write_csv(csv, rows);
            write_out(bench_output, csv.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
