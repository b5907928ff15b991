#include "fountain/report/record.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace fountain {

using nlohmann::json;
namespace fs = std::filesystem;

json to_json(const RunRecord& r) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
        verdicts.push_back({{"criterion", v.criterion}, {"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    }
    return {{"tool_version", r.tool_version}, {"command", r.command},   {"config", r.config},
            {"outputs", r.outputs},           {"verdicts", verdicts}, {"timings", r.timings}};
}

RunRecord record_from_json(const json& j) {
    try {
        RunRecord r;
        r.tool_version = j.at("tool_version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.config = j.at("config");
        r.outputs = j.at("outputs");
        for (const auto& v : j.at("verdicts")) {
            r.verdicts.push_back({v.at("criterion").get<std::string>(), v.at("name").get<std::string>(),
                                  v.at("pass").get<bool>(), v.at("detail").get<std::string>()});
        }
        r.timings = j.at("timings").get<std::map<std::string, double>>();
        return r;
    } catch (const json::exception& e) {
        throw RecordError(std::string("malformed run record: ") + e.what());
    }
}

fs::path save_record(const RunRecord& r, const fs::path& dir) {
    fs::create_directories(dir);
    for (int n = 1;; ++n) {
        char name[64];
        std::snprintf(name, sizeof name, "record-%04d-", n);
        const fs::path path = dir / (name + r.command + ".json");
        bool taken = false;
        for (const auto& e : fs::directory_iterator(dir)) {
            if (e.path().filename().string().rfind(name, 0) == 0) taken = true;
        }
        if (taken) continue;
        std::ofstream out(path);
        if (!out) throw RecordError("cannot write " + path.string());
        out << to_json(r).dump(2) << '\n';
        return path;
    }
}

RunRecord load_record(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw RecordError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw RecordError("corrupt record " + path.string() + ": " + e.what());
    }
    try {
        return record_from_json(j);
    } catch (const RecordError& e) {
        throw RecordError(path.string() + ": " + e.what());
    }
}

std::vector<std::pair<fs::path, RunRecord>> load_records(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw RecordError("no such run directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && name.rfind("record-", 0) == 0 && e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<std::pair<fs::path, RunRecord>> out;
    for (const auto& f : files) out.emplace_back(f, load_record(f));
    return out;
}

bool same_results(const RunRecord& a, const RunRecord& b) {
    RunRecord x = a;
    RunRecord y = b;
    x.timings.clear();
    y.timings.clear();
    return x == y;
}

json to_json(const ExponentFit& f) {
    return {{"exponent", f.exponent},       {"constant", f.constant},       {"log_power", f.log_power},
            {"residual", f.residual},       {"points_used", f.points_used}, {"excluded_x", f.excluded_x}};
}

json to_json(const AsymptoticReport& r) {
    json j = {{"name", r.name},         {"criterion", r.criterion}, {"parameter", r.parameter},
              {"x", r.x},               {"measured", r.measured},   {"model", r.model},
              {"target", r.target},     {"tolerance", r.tolerance}, {"pass", r.pass},
              {"notes", r.notes}};
    if (r.has_fit) j["fit"] = to_json(r.fit);
    return j;
}

}  // namespace fountain
