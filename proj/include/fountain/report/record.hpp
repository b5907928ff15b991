#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fountain/asymptotics/fit.hpp"
#include "json.hpp"

namespace fountain {

inline constexpr const char* kToolVersion = "1.0.0";

/// Missing, unreadable or malformed run record.
class RecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Verdict {
    std::string criterion;  ///< acceptance criterion number, "1".."12"
    std::string name;
    bool pass = false;
    std::string detail;

    bool operator==(const Verdict&) const = default;
};

/// One persisted run: what was asked, what came out, how long it took.
/// Everything except `timings` is a deterministic function of the config.
struct RunRecord {
    std::string tool_version = kToolVersion;
    std::string command;
    nlohmann::json config;
    nlohmann::json outputs = nlohmann::json::object();
    std::vector<Verdict> verdicts;
    std::map<std::string, double> timings;  ///< wall-clock seconds per stage

    bool operator==(const RunRecord&) const = default;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

/// Writes `record-NNNN-<command>.json` with the next free index (records are
/// never overwritten) and returns its path.
std::filesystem::path save_record(const RunRecord& r, const std::filesystem::path& dir);
RunRecord load_record(const std::filesystem::path& path);

/// All records in `dir`, ordered by file name. Throws RecordError for a
/// missing directory or a corrupt record file.
std::vector<std::pair<std::filesystem::path, RunRecord>> load_records(const std::filesystem::path& dir);

/// Equality of everything but the timings.
bool same_results(const RunRecord& a, const RunRecord& b);

nlohmann::json to_json(const ExponentFit& f);
nlohmann::json to_json(const AsymptoticReport& r);

}  // namespace fountain
