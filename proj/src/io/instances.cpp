#include "dpcp/io/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dpcp::io {

using nlohmann::json;

Problem parse_problem(const std::string& name) {
    if (name == "smswt") return Problem::Smswt;
    if (name == "rcpsp") return Problem::Rcpsp;
    if (name == "tsptw") return Problem::Tsptw;
    throw std::invalid_argument("unknown problem kind '" + name + "'");
}

Format parse_format(const std::string& name) {
    if (name == "auto") return Format::Auto;
    if (name == "json") return Format::Json;
    if (name == "psplib") return Format::Psplib;
    if (name == "tsptw-matrix") return Format::TsptwMatrix;
    throw UnknownFormat(name);
}

std::string to_string(Problem p) {
    switch (p) {
        case Problem::Smswt: return "smswt";
        case Problem::Rcpsp: return "rcpsp";
        case Problem::Tsptw: return "tsptw";
    }
    return "unknown";
}

json to_json(const smswt::Instance& inst) {
    json jobs = json::array();
    for (const auto& j : inst.jobs) jobs.push_back({{"p", j.p}, {"r", j.r}, {"d", j.d}, {"deadline", j.deadline}, {"w", j.w}});
    return {{"n", inst.jobs.size()}, {"jobs", jobs}};
}

json to_json(const rcpsp::Instance& inst) {
    json tasks = json::array();
    for (const auto& t : inst.tasks) tasks.push_back({{"p", t.p}, {"u", t.usage}});
    json prec = json::array();
    for (auto [i, j] : inst.precedences) prec.push_back({i, j});
    return {{"tasks", tasks}, {"capacities", inst.capacities}, {"precedences", prec}};
}

json to_json(const tsptw::Instance& inst) {
    json rows = json::array();
    for (std::size_t i = 0; i < inst.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < inst.n; ++j) {
            const Cost c = inst.c(i, j);
            row.push_back(c.is_finite() ? json(c.value()) : json(nullptr));
        }
        rows.push_back(row);
    }
    json windows = json::array();
    for (const auto& w : inst.windows) windows.push_back({w.open, w.close});
    return {{"n", inst.n}, {"c", rows}, {"windows", windows}};
}

json to_json(const AnyInstance& inst) {
    return std::visit([](const auto& i) { return to_json(i); }, inst);
}

smswt::Instance smswt_from_json(const json& j) {
    smswt::Instance inst;
    for (const auto& job : j.at("jobs")) {
        inst.jobs.push_back({job.at("p").get<std::int64_t>(), job.at("r").get<std::int64_t>(),
                             job.at("d").get<std::int64_t>(), job.at("deadline").get<std::int64_t>(),
                             job.at("w").get<std::int64_t>()});
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != inst.jobs.size()) {
        throw std::invalid_argument("n does not match the number of jobs");
    }
    inst.validate();
    return inst;
}

rcpsp::Instance rcpsp_from_json(const json& j) {
    rcpsp::Instance inst;
    inst.capacities = j.at("capacities").get<std::vector<std::int64_t>>();
    for (const auto& t : j.at("tasks")) {
        inst.tasks.push_back({t.at("p").get<std::int64_t>(), t.at("u").get<std::vector<std::int64_t>>()});
    }
    for (const auto& p : j.at("precedences")) {
        inst.precedences.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    }
    inst.validate();
    return inst;
}

tsptw::Instance tsptw_from_json(const json& j) {
    tsptw::Instance inst;
    inst.n = j.at("n").get<std::size_t>();
    const auto& rows = j.at("c");
    if (rows.size() != inst.n) throw std::invalid_argument("travel matrix must have n rows");
    for (const auto& row : rows) {
        if (row.size() != inst.n) throw std::invalid_argument("travel matrix must have n columns");
        for (const auto& v : row) {
            if (v.is_null()) {
                inst.travel.push_back(Cost::infinity());
            } else if (v.is_number_integer()) {
                inst.travel.push_back(Cost(v.get<std::int64_t>()));
            } else {
                throw std::invalid_argument("travel times must be integers");
            }
        }
    }
    for (const auto& w : j.at("windows")) inst.windows.push_back({w.at(0).get<std::int64_t>(), w.at(1).get<std::int64_t>()});
    inst.validate();
    return inst;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

std::int64_t to_int(const std::string& tok, const std::string& source, std::size_t line) {
    try {
        std::size_t used = 0;
        auto v = std::stoll(tok, &used);
        if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

rcpsp::Instance parse_psplib(std::istream& in, const std::string& source) {
    enum class Section { None, Precedence, Requests, Availability };
    Section section = Section::None;
    std::size_t jobs = 0;
    std::map<std::size_t, std::vector<std::size_t>> successors;
    std::map<std::size_t, std::pair<std::int64_t, std::vector<std::int64_t>>> requests;
    std::vector<std::int64_t> capacities;
    bool header_seen = false;

    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (starts_with(line, "****")) {
            section = Section::None;
            continue;
        }
        if (starts_with(line, "jobs (incl. supersource/sink )")) {
            auto pos = line.find(':');
            if (pos == std::string::npos) throw ParseError(source, lineno, "malformed job count");
            auto toks = split(line.substr(pos + 1));
            if (toks.empty()) throw ParseError(source, lineno, "missing job count");
            jobs = static_cast<std::size_t>(to_int(toks[0], source, lineno));
            continue;
        }
        if (starts_with(line, "PRECEDENCE RELATIONS")) {
            section = Section::Precedence;
            header_seen = false;
            continue;
        }
        if (starts_with(line, "REQUESTS/DURATIONS")) {
            section = Section::Requests;
            header_seen = false;
            continue;
        }
        if (starts_with(line, "RESOURCEAVAILABILITIES")) {
            section = Section::Availability;
            header_seen = false;
            continue;
        }
        auto toks = split(line);
        if (toks.empty() || section == Section::None) continue;
        if (starts_with(toks[0], "---")) continue;
        if (!header_seen) {
            // Column header line of the section.
            header_seen = true;
            continue;
        }
        switch (section) {
            case Section::Precedence: {
                if (toks.size() < 3) throw ParseError(source, lineno, "precedence line needs jobnr, #modes, #successors");
                auto job = static_cast<std::size_t>(to_int(toks[0], source, lineno));
                auto count = static_cast<std::size_t>(to_int(toks[2], source, lineno));
                if (toks.size() != 3 + count) throw ParseError(source, lineno, "successor count mismatch");
                auto& succ = successors[job];
                for (std::size_t k = 0; k < count; ++k) {
                    succ.push_back(static_cast<std::size_t>(to_int(toks[3 + k], source, lineno)));
                }
                break;
            }
            case Section::Requests: {
                if (toks.size() < 3) throw ParseError(source, lineno, "request line needs jobnr, mode, duration");
                auto job = static_cast<std::size_t>(to_int(toks[0], source, lineno));
                auto mode = to_int(toks[1], source, lineno);
                if (mode != 1) throw ParseError(source, lineno, "only single-mode instances are supported");
                std::vector<std::int64_t> usage;
                for (std::size_t k = 3; k < toks.size(); ++k) usage.push_back(to_int(toks[k], source, lineno));
                requests[job] = {to_int(toks[2], source, lineno), std::move(usage)};
                break;
            }
            case Section::Availability: {
                for (const auto& t : toks) capacities.push_back(to_int(t, source, lineno));
                section = Section::None;
                break;
            }
            case Section::None: break;
        }
    }
    if (jobs == 0) throw ParseError(source, 0, "missing 'jobs (incl. supersource/sink )' line");
    if (requests.size() != jobs) throw ParseError(source, 0, "expected durations for " + std::to_string(jobs) + " jobs");
    if (capacities.empty()) throw ParseError(source, 0, "missing resource availabilities");

    // Keep tasks with positive duration; zero-duration tasks are contracted.
    std::map<std::size_t, std::size_t> index;
    rcpsp::Instance inst;
    inst.capacities = capacities;
    for (const auto& [job, req] : requests) {
        if (req.second.size() != capacities.size()) {
            throw ParseError(source, 0, "job " + std::to_string(job) + " has the wrong number of requests");
        }
        if (req.first < 0) throw ParseError(source, 0, "job " + std::to_string(job) + " has a negative duration");
        if (req.first == 0) continue;
        index[job] = inst.tasks.size();
        inst.tasks.push_back({req.first, req.second});
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [from, to] : index) {
        std::vector<std::size_t> stack = successors[from];
        std::vector<std::size_t> seen;
        while (!stack.empty()) {
            auto job = stack.back();
            stack.pop_back();
            if (std::find(seen.begin(), seen.end(), job) != seen.end()) continue;
            seen.push_back(job);
            if (auto it = index.find(job); it != index.end()) {
                edges.emplace_back(to, it->second);
            } else {
                for (auto next : successors[job]) stack.push_back(next);
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    inst.precedences = std::move(edges);
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, 0, e.what());
    }
    return inst;
}

tsptw::Instance parse_tsptw_matrix(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::size_t>> tokens;
    std::vector<std::vector<std::string>> lines;
    std::vector<std::size_t> line_numbers;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        auto toks = split(line);
        if (toks.empty()) continue;
        lines.push_back(toks);
        line_numbers.push_back(lineno);
    }
    if (lines.empty()) throw ParseError(source, 0, "empty file");

    auto integral = [&](const std::string& tok, std::size_t lineno) -> std::int64_t {
        if (tok.find_first_of(".eE") == std::string::npos) return to_int(tok, source, lineno);
        double v = 0;
        try {
            v = std::stod(tok);
        } catch (const std::exception&) {
            throw ParseError(source, lineno, "expected a number, got '" + tok + "'");
        }
        if (std::floor(v) != v) throw ParseError(source, lineno, "fractional value '" + tok + "' is not supported");
        return static_cast<std::int64_t>(v);
    };

    std::size_t li = 0;
    if (lines[0].size() != 1) throw ParseError(source, line_numbers[0], "first line must hold the location count");
    tsptw::Instance inst;
    auto n = integral(lines[0][0], line_numbers[0]);
    if (n < 1) throw ParseError(source, line_numbers[0], "location count must be positive");
    inst.n = static_cast<std::size_t>(n);
    ++li;

    // The matrix may wrap arbitrarily; consume whole lines until n*n values.
    while (inst.travel.size() < inst.n * inst.n) {
        if (li >= lines.size()) throw ParseError(source, 0, "travel matrix is incomplete");
        if (inst.travel.size() + lines[li].size() > inst.n * inst.n) {
            throw ParseError(source, line_numbers[li], "travel matrix row overruns n*n values");
        }
        for (const auto& tok : lines[li]) {
            auto v = integral(tok, line_numbers[li]);
            if (v < 0) throw ParseError(source, line_numbers[li], "negative travel time");
            inst.travel.push_back(Cost(v));
        }
        ++li;
    }
    for (std::size_t i = 0; i < inst.n; ++i) inst.travel[i * inst.n + i] = Cost(0);

    for (std::size_t k = 0; k < inst.n; ++k, ++li) {
        if (li >= lines.size()) throw ParseError(source, 0, "expected " + std::to_string(inst.n) + " time windows");
        const auto& toks = lines[li];
        if (toks.size() != 2 && toks.size() != 3) {
            throw ParseError(source, line_numbers[li], "time window line needs 'r close' or 'id r close'");
        }
        const std::size_t off = toks.size() - 2;
        if (off == 1 && integral(toks[0], line_numbers[li]) != static_cast<std::int64_t>(k + 1)) {
            throw ParseError(source, line_numbers[li], "unexpected node id");
        }
        inst.windows.push_back({integral(toks[off], line_numbers[li]), integral(toks[off + 1], line_numbers[li])});
    }
    if (li < lines.size()) throw ParseError(source, line_numbers[li], "trailing content");
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, 0, e.what());
    }
    return inst;
}

AnyInstance parse_instance(std::istream& in, Problem problem, Format format, const std::string& source) {
    if (format == Format::Auto) {
        char first = 0;
        while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
        }
        if (in) in.unget();
        if (first == '{') {
            format = Format::Json;
        } else if (problem == Problem::Rcpsp) {
            format = Format::Psplib;
        } else if (problem == Problem::Tsptw) {
            format = Format::TsptwMatrix;
        } else {
            throw UnknownFormat("cannot detect the format of " + source);
        }
    }
    if (format == Format::Json) {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ParseError(source, 0, e.what());
        }
        try {
            switch (problem) {
                case Problem::Smswt: return smswt_from_json(j);
                case Problem::Rcpsp: return rcpsp_from_json(j);
                case Problem::Tsptw: return tsptw_from_json(j);
            }
        } catch (const json::exception& e) {
            throw ParseError(source, 0, e.what());
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, 0, e.what());
        }
    }
    if (format == Format::Psplib) {
        if (problem != Problem::Rcpsp) throw UnknownFormat("psplib files hold rcpsp instances only");
        return parse_psplib(in, source);
    }
    if (problem != Problem::Tsptw) throw UnknownFormat("tsptw-matrix files hold tsptw instances only");
    return parse_tsptw_matrix(in, source);
}

AnyInstance load_instance(const std::filesystem::path& path, Problem problem, Format format) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return parse_instance(in, problem, format, path.string());
}

std::string dump(const AnyInstance& inst) { return to_json(inst).dump() + "\n"; }

}  // namespace dpcp::io
