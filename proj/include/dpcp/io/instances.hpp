#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "dpcp/models/rcpsp.hpp"
#include "dpcp/models/smswt.hpp"
#include "dpcp/models/tsptw.hpp"

namespace dpcp::io {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnknownFormat : public std::runtime_error {
public:
    explicit UnknownFormat(const std::string& what) : std::runtime_error("unknown format: " + what) {}
};

enum class Problem { Smswt, Rcpsp, Tsptw };
enum class Format { Auto, Json, Psplib, TsptwMatrix };

Problem parse_problem(const std::string& name);
Format parse_format(const std::string& name);
std::string to_string(Problem p);

using AnyInstance = std::variant<smswt::Instance, rcpsp::Instance, tsptw::Instance>;

nlohmann::json to_json(const smswt::Instance& inst);
nlohmann::json to_json(const rcpsp::Instance& inst);
nlohmann::json to_json(const tsptw::Instance& inst);
nlohmann::json to_json(const AnyInstance& inst);

smswt::Instance smswt_from_json(const nlohmann::json& j);
rcpsp::Instance rcpsp_from_json(const nlohmann::json& j);
tsptw::Instance tsptw_from_json(const nlohmann::json& j);

/// PSPLIB single-mode file. Zero-duration tasks (the dummy source and sink)
/// are removed and precedences through them contracted.
rcpsp::Instance parse_psplib(std::istream& in, const std::string& source = "<psplib>");

/// n, an n x n integer matrix, then n lines "r close" with an optional
/// leading 1-based node id.
tsptw::Instance parse_tsptw_matrix(std::istream& in, const std::string& source = "<tsptw>");

AnyInstance parse_instance(std::istream& in, Problem problem, Format format, const std::string& source);
AnyInstance load_instance(const std::filesystem::path& path, Problem problem, Format format = Format::Auto);

/// Canonical JSON text of an instance, with a trailing newline.
std::string dump(const AnyInstance& inst);

}  // namespace dpcp::io
