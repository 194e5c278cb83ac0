#include "dpcp/bench/runner.hpp"

#include <atomic>
#include <charconv>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "dpcp/bench/gap.hpp"
#include "dpcp/evaluate.hpp"
#include "dpcp/search/astar.hpp"

namespace dpcp::bench {

using nlohmann::json;

Algorithm parse_algorithm(const std::string& name) {
    if (name == "astar") return Algorithm::AStar;
    if (name == "cabs") return Algorithm::Cabs;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm a) { return a == Algorithm::AStar ? "astar" : "cabs"; }

search::PropagationMode parse_mode(const std::string& name) {
    if (name == "off") return search::PropagationMode::Off;
    if (name == "once") return search::PropagationMode::Once;
    if (name == "fixpoint") return search::PropagationMode::FixPoint;
    throw std::invalid_argument("unknown propagation mode '" + name + "'");
}

namespace {

template <class M, class A>
SolveResult run_model(const M& model, const RunConfig& config) {
    A adapter(model);
    SolveResult result = config.algo == Algorithm::AStar
                             ? search::astar(model, &adapter, config.limits, config.mode)
                             : search::cabs(model, &adapter, config.limits, config.beam, config.mode);
    if (result.incumbent) {
        const Cost replayed = evaluate_solution(model, result.incumbent->labels);
        if (replayed != result.incumbent->cost) {
            std::ostringstream msg;
            msg << "reported cost " << result.incumbent->cost << " but the solution replays to " << replayed;
            throw ReplayMismatch(msg.str());
        }
    }
    return result;
}

json cost_json(Cost c) { return c.is_finite() ? json(c.value()) : json(nullptr); }

json trace_json(const std::vector<TracePoint>& trace) {
    json out = json::array();
    for (const auto& p : trace) out.push_back({p.seconds, cost_json(p.value)});
    return out;
}

}  // namespace

SolveResult solve(const io::AnyInstance& instance, const RunConfig& config) {
    config.limits.validate();
    config.beam.validate();
    return std::visit(
        [&](const auto& inst) -> SolveResult {
            using I = std::decay_t<decltype(inst)>;
            if constexpr (std::is_same_v<I, smswt::Instance>) {
                return run_model<smswt::Model, smswt::Adapter>(smswt::Model(inst), config);
            } else if constexpr (std::is_same_v<I, rcpsp::Instance>) {
                return run_model<rcpsp::Model, rcpsp::Adapter>(rcpsp::Model(inst), config);
            } else {
                return run_model<tsptw::Model, tsptw::Adapter>(tsptw::Model(inst), config);
            }
        },
        instance);
}

json report_json(const SolveResult& r) {
    const auto& m = r.metrics;
    json metrics = {{"expansions", m.expansions},
                    {"generated", m.generated},
                    {"base_pops", m.base_pops},
                    {"skipped", m.skipped},
                    {"pruned_by_cp", m.pruned_by_cp},
                    {"propagation_calls", m.propagation_calls},
                    {"propagation_time", m.propagation_time},
                    {"wall_time", m.wall_time},
                    {"incumbent_trace", trace_json(m.incumbent_trace)},
                    {"dual_trace", trace_json(m.dual_trace)},
                    {"beam_widths", m.beam_widths},
                    {"final_gap", m.final_gap}};
    json out = {{"status", to_string(r.status)},
                {"cost", r.incumbent ? cost_json(r.incumbent->cost) : json(nullptr)},
                {"gap", m.final_gap},
                {"primal", r.incumbent ? cost_json(r.incumbent->cost) : json(nullptr)},
                {"dual", cost_json(r.final_dual)},
                {"root_dual", cost_json(r.root_dual)},
                {"metrics", metrics},
                {"solution", r.incumbent ? json(r.incumbent->labels) : json(nullptr)}};
    return out;
}

int exit_code(SolveStatus status) { return is_limit(status) ? 2 : 0; }

std::vector<ManifestEntry> parse_manifest(const json& manifest, const std::filesystem::path& base_dir) {
    std::vector<ManifestEntry> out;
    for (const auto& run : manifest.at("runs")) {
        ManifestEntry e;
        std::filesystem::path p = run.at("instance").get<std::string>();
        e.instance = p.is_absolute() ? p : base_dir / p;
        e.problem = io::parse_problem(run.at("problem").get<std::string>());
        e.format = io::parse_format(run.value("format", std::string("auto")));
        e.config.algo = parse_algorithm(run.value("algo", std::string("cabs")));
        e.config.mode = parse_mode(run.value("propagation", std::string("off")));
        if (run.contains("time_limit")) e.config.limits.time_limit = run.at("time_limit").get<double>();
        if (run.contains("mem_limit")) {
            e.config.limits.memory_limit = static_cast<std::uint64_t>(run.at("mem_limit").get<double>() * 1024 * 1024);
        }
        if (run.contains("expansion_cap")) e.config.limits.expansion_cap = run.at("expansion_cap").get<std::uint64_t>();
        e.seed = run.value("seed", std::uint64_t{0});
        e.config.limits.validate();
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

BenchRow run_entry(const ManifestEntry& e, std::size_t index) {
    BenchRow row;
    row.index = index;
    row.instance = e.instance.string();
    row.problem = io::to_string(e.problem);
    row.algo = to_string(e.config.algo);
    row.mode = search::to_string(e.config.mode);
    row.seed = e.seed;
    try {
        const auto inst = io::load_instance(e.instance, e.problem, e.format);
        const auto r = solve(inst, e.config);
        row.status = to_string(r.status);
        if (r.incumbent) row.cost = r.incumbent->cost.value();
        row.expansions = r.metrics.expansions;
        row.generated = r.metrics.generated;
        row.wall_time = r.metrics.wall_time;
        row.propagation_time = r.metrics.propagation_time;
        row.final_gap = r.metrics.final_gap;
    } catch (const std::exception& ex) {
        row.status = "Error";
        row.error = ex.what();
    }
    return row;
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string real(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

// Splits one RFC-4180 record, reading further lines for quoted newlines.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string line;
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) return false;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0;; ++i) {
        if (i == line.size()) {
            if (quoted) {
                field += '\n';
                if (!std::getline(in, line)) throw std::runtime_error("unterminated quoted CSV field");
                i = static_cast<std::size_t>(-1);
                continue;
            }
            fields.push_back(field);
            return true;
        }
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
}

template <class T>
T number(const std::string& s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad CSV number '" + s + "'");
    return v;
}

}  // namespace

std::vector<BenchRow> run_manifest(const std::vector<ManifestEntry>& entries, unsigned threads) {
    std::vector<BenchRow> rows(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < entries.size();) rows[i] = run_entry(entries[i], i);
    };
    threads = std::max(1u, threads);
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << csv_header << "\n";
    std::map<std::string, std::pair<std::size_t, std::size_t>> summary;
    for (const auto& r : rows) {
        out << r.index << ',' << quote(r.instance) << ',' << r.problem << ',' << r.algo << ',' << r.mode << ','
            << r.seed << ',' << r.status << ',' << (r.cost ? std::to_string(*r.cost) : "") << ',' << r.expansions
            << ',' << r.generated << ',' << real(r.wall_time) << ',' << real(r.propagation_time) << ','
            << real(r.final_gap) << ',' << quote(r.error) << "\n";
        auto& [solved, runs] = summary[r.problem + "/" + r.algo + "/" + r.mode];
        ++runs;
        if (r.status == "Optimal" || r.status == "Infeasible") ++solved;
    }
    out << "\nconfiguration,solved,runs\n";
    for (const auto& [config, counts] : summary) out << config << ',' << counts.first << ',' << counts.second << "\n";
}

std::vector<BenchRow> read_csv(std::istream& in) {
    std::vector<std::string> f;
    if (!read_record(in, f)) throw std::runtime_error("missing CSV header");
    std::vector<BenchRow> rows;
    while (read_record(in, f)) {
        if (f.size() != 14) throw std::runtime_error("expected 14 CSV fields, got " + std::to_string(f.size()));
        BenchRow r;
        r.index = number<std::size_t>(f[0]);
        r.instance = f[1];
        r.problem = f[2];
        r.algo = f[3];
        r.mode = f[4];
        r.seed = number<std::uint64_t>(f[5]);
        r.status = f[6];
        if (!f[7].empty()) r.cost = number<std::int64_t>(f[7]);
        r.expansions = number<std::uint64_t>(f[8]);
        r.generated = number<std::uint64_t>(f[9]);
        r.wall_time = std::stod(f[10]);
        r.propagation_time = std::stod(f[11]);
        r.final_gap = std::stod(f[12]);
        r.error = f[13];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace dpcp::bench
