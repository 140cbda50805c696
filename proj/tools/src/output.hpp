#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace vmolab::cli {

/// First 16 hex digits of SHA-256 over the canonical (key-sorted, compact) JSON dump.
std::string config_digest(const nlohmann::json& config);

/// Shortest round-trip decimal spelling.
std::string number(double x);
std::string number(std::optional<double> x);

/// Writes `path` through a sibling temporary file that is renamed into place
/// only after `body` returns, so a failed run leaves no output behind.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

/// CSV with a leading `# <command> config_digest=<digest>` row, then the column names.
void write_csv(const std::filesystem::path& path, const std::string& command, const std::string& digest,
               const std::string& columns, const std::function<void(std::ostream&)>& rows);

}  // namespace vmolab::cli
