#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fountain/report/commands.hpp"
#include "fountain/report/svg.hpp"

using namespace fountain;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fountain-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const char* kConfig = R"({
  "domain": {"R": 1.0, "eps": 1e-5},
  "sweep": {"eps_list": [1e-4, 1e-5]},
  "tower": {"k": 2, "m": 2, "partition": [[1], [2]]},
  "physics": {"beta": -1.0, "mu": [1.0, 1.0]},
  "rates": {"d": "star"},
  "solver": {"tol": 1e-10, "sigma_min": false},
  "quadrature": {"points_per_decade": 32},
  "seed": 3
})";

}  // namespace

TEST_CASE("config round trip") {
    const auto c = parse_run_config(nlohmann::json::parse(kConfig));
    CHECK(c.k == 2);
    CHECK(c.d_star);
    CHECK(c.eps_list.size() == 2);
    CHECK(c.seed == 3);
    const auto j1 = to_json(c);
    const auto j2 = to_json(parse_run_config(j1));
    CHECK(j1 == j2);
    CHECK(j1.dump() == j2.dump());

    const auto defaults = parse_run_config(nlohmann::json::object());
    CHECK(defaults.points_per_decade == 64);
    CHECK(defaults.solver.tol == 1e-10);
    const auto tc = tower_config(defaults);
    CHECK(tc.d[0] == doctest::Approx(1.04911506342164818).epsilon(1e-14));
}

TEST_CASE("config validation happens before any solve") {
    auto j = nlohmann::json::parse(kConfig);
    j["tower"] = {{"k", 3}, {"m", 2}, {"partition", {{1, 2}, {3}}}};
    CHECK_THROWS_AS(parse_run_config(j), PreconditionError);

    auto unknown = nlohmann::json::parse(kConfig);
    unknown["solver"]["tolerance"] = 1e-9;
    CHECK_THROWS_AS(parse_run_config(unknown), PreconditionError);

    auto tiny = nlohmann::json::parse(kConfig);
    tiny["domain"]["eps"] = 1e-12;
    CHECK_THROWS_AS(parse_run_config(tiny), EnvelopeError);

    auto rising = nlohmann::json::parse(kConfig);
    rising["sweep"]["eps_list"] = {1e-5, 1e-4};
    CHECK_THROWS_AS(parse_run_config(rising), PreconditionError);

    auto d = nlohmann::json::parse(kConfig);
    d["rates"]["d"] = "best";
    CHECK_THROWS_AS(parse_run_config(d), PreconditionError);

    auto attractive = parse_run_config(nlohmann::json::parse(kConfig));
    attractive.beta = 0.0;
    CHECK_THROWS_AS(cmd_minimize(attractive), PreconditionError);
}

TEST_CASE("records persist append-only and reload equal") {
    const auto dir = scratch("records");
    const auto cfg = parse_run_config(nlohmann::json::parse(kConfig));
    const auto rec = cmd_minimize(cfg);
    const auto a = persist_run(rec, dir);
    const auto b = persist_run(rec, dir);
    CHECK(a.record != b.record);
    CHECK(load_record(a.record) == rec);
    CHECK(load_records(dir).size() == 2);

    std::ofstream(dir / "record-0099-broken.json") << "{ not json";
    CHECK_THROWS_AS(load_records(dir), RecordError);
    CHECK_THROWS_AS(load_records(dir / "missing"), RecordError);
}

TEST_CASE("identical config and seed give identical records") {
    const auto cfg = parse_run_config(nlohmann::json::parse(kConfig));
    CHECK(same_results(cmd_minimize(cfg), cmd_minimize(cfg)));
    CHECK(same_results(cmd_solve(cfg), cmd_solve(cfg)));
    auto other = cfg;
    other.seed = 4;
    CHECK_FALSE(same_results(cmd_minimize(cfg), cmd_minimize(other)));
}

TEST_CASE("sweep record, csv and report") {
    const auto dir = scratch("sweep");
    const auto cfg = parse_run_config(nlohmann::json::parse(kConfig));
    const auto rec = cmd_sweep(cfg);
    REQUIRE(rec.outputs.at("points").size() == 2);
    const auto saved = persist_run(rec, dir);
    CHECK(saved.artifacts.size() == 3);

    const auto csv = sweep_csv(rec);
    CHECK(csv.rfind("eps,delta_1,delta_2,d_1,d_2,phi_h1,residual,sigma_min,J,verdicts\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const auto md = cmd_report(dir);
    CHECK(md.find("Sweep trajectory") != std::string::npos);
    CHECK(md.find("Pass/fail matrix") != std::string::npos);
    CHECK(fs::exists(dir / "report.md"));
    for (const auto& v : rec.verdicts) CHECK_FALSE(v.criterion.empty());
}

TEST_CASE("report edge cases") {
    const auto empty = scratch("empty");
    CHECK(cmd_report(empty).find("no records") != std::string::npos);

    const auto mixed = scratch("mixed");
    const auto cfg = parse_run_config(nlohmann::json::parse(kConfig));
    auto rec = cmd_constants(cfg);
    persist_run(rec, mixed);
    rec.tool_version = "0.9.0";
    persist_run(rec, mixed);
    const auto md = cmd_report(mixed);
    CHECK(md.find("Warning") != std::string::npos);
    CHECK(md.find("0.9.0") != std::string::npos);
}

TEST_CASE("svg output is a standalone document") {
    PlotSpec spec;
    spec.title = "a < b & c";
    spec.series.push_back({"y", {1e-3, 1e-2, 1e-1}, {1e-6, 1e-4, 0.0}, true});
    const auto svg = render_svg(spec);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}
