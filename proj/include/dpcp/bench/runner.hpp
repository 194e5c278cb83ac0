#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpcp/io/instances.hpp"
#include "dpcp/model.hpp"
#include "dpcp/search/cabs.hpp"
#include "dpcp/search/propagation.hpp"

namespace dpcp::bench {

enum class Algorithm { AStar, Cabs };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);
search::PropagationMode parse_mode(const std::string& name);

struct RunConfig {
    Algorithm algo = Algorithm::Cabs;
    search::PropagationMode mode = search::PropagationMode::Off;
    SolveLimits limits;
    search::BeamConfig beam;
};

/// Reported solution cost did not survive independent replay.
class ReplayMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Solves with the model matching the instance and replays the incumbent
/// through evaluate_solution before returning.
SolveResult solve(const io::AnyInstance& instance, const RunConfig& config);

/// {status, cost, gap, primal, dual, metrics, solution}
nlohmann::json report_json(const SolveResult& result);

/// Exit code for a finished solve: 0 for Optimal/Infeasible, 2 for limits.
int exit_code(SolveStatus status);

struct ManifestEntry {
    std::filesystem::path instance;
    io::Problem problem = io::Problem::Smswt;
    io::Format format = io::Format::Auto;
    RunConfig config;
    std::uint64_t seed = 0;
};

/// {"runs": [{"instance", "problem", "algo", "propagation", "format"?,
/// "time_limit"?, "mem_limit"? (MB), "expansion_cap"?, "seed"?}, ...]}.
/// Relative instance paths resolve against base_dir.
std::vector<ManifestEntry> parse_manifest(const nlohmann::json& manifest, const std::filesystem::path& base_dir);

struct BenchRow {
    std::size_t index = 0;
    std::string instance;
    std::string problem;
    std::string algo;
    std::string mode;
    std::uint64_t seed = 0;
    std::string status;  // "Error" when the run failed
    std::optional<std::int64_t> cost;
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    double wall_time = 0.0;
    double propagation_time = 0.0;
    double final_gap = 1.0;
    std::string error;
    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Runs every entry; failures become rows with status "Error". Rows come
/// back in manifest order whatever the thread count.
std::vector<BenchRow> run_manifest(const std::vector<ManifestEntry>& entries, unsigned threads = 1);

inline const char* csv_header =
    "index,instance,problem,algo,mode,seed,status,cost,expansions,generated,wall_time,propagation_time,final_gap,"
    "error";

/// Header, one line per row, a blank line, then the summary block
/// "configuration,solved,runs" with one line per problem/algo/mode.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Reads the row section written by write_csv (stops at the blank line).
std::vector<BenchRow> read_csv(std::istream& in);

}  // namespace dpcp::bench
