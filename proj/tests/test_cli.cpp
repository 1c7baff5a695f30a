/*
   Copyright 2026 The slabrte Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "slabrte/app.hpp"
#include "slabrte/io.hpp"

using namespace slabrte;
using namespace slabrte::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / "slabrte_test_cli" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Run {
    int code;
    std::string status;
    std::string diag;
};

Run run(const std::string& command, const json& config, const fs::path& dir)
{
    io::write_text(dir / "config.json", config.dump());
    std::ostringstream status, diag;
    const int code = run_command(command, dir / "config.json", dir / "out", status, diag);
    return {code, status.str(), diag.str()};
}

std::string config_error_field(const json& config)
{
    try {
        parse_config(config);
    } catch (const ConfigError& e) {
        return e.path;
    }
    return "";
}

} // namespace

TEST_CASE("config errors carry a field path")
{
    CHECK(config_error_field({{"cross_sections", {{"sigma_s", {0.5, 0.0}}, {"sigma_a", 0.5}}},
                              {"domain", {{"cells", 2}}}}) == "cross_sections.sigma_s[1]");
    CHECK(config_error_field({{"cross_sections", {{"sigma_s", 0.5}, {"sigma_a", -1}}}}) ==
          "cross_sections.sigma_a");
    CHECK(config_error_field({{"cross_sections", {{"sigma_s", {1, 2, 3}}, {"sigma_a", 1}}},
                              {"domain", {{"cells", 2}}}}) == "cross_sections.sigma_s");
    CHECK(config_error_field({{"angles", 7}}) == "angles");
    CHECK(config_error_field({{"bogus", 1}}) == "bogus");
    CHECK(config_error_field({{"solver", {{"tol", 0}}}}) == "solver.tol");
    CHECK(config_error_field({{"domain", {{"breakpoints", {0, 1, 1}}}}}) == "domain");
    CHECK(config_error_field({{"random_field", {{"sigma_s", {{"lo", 0.0}, {"hi", 1}}},
                                                {"sigma_a", {{"lo", 1}, {"hi", 1}}}}}}) ==
          "random_field.sigma_s.lo");
    CHECK(config_error_field({{"uq", {{"qoi", "variance"}}}}) == "uq.qoi");
    CHECK(config_error_field(json::array()) == "<root>");
}

TEST_CASE("config defaults and explicit breakpoints")
{
    const auto cfg = parse_config(json::object());
    CHECK(cfg.domain.n_cells() == 32);
    CHECK(cfg.angles == 128);
    CHECK(cfg.source == GridFunction(32, 1.0));
    CHECK_THROWS_AS(cfg.resolve_cross_sections(), ConfigError);

    const auto c2 = parse_config(
        {{"cross_sections",
          {{"breakpoints", {0.0, 0.2, 1.0}}, {"sigma_s", {0.5, 0.6}}, {"sigma_a", 0.5},
           {"sigma_f", nullptr}}},
         {"source", {1.0, 2.0}}});
    CHECK(c2.domain.n_cells() == 2);
    CHECK(c2.resolve_cross_sections().sigma_s()[1] == 0.6);
}

TEST_CASE("solve: zero source gives a zero flux")
{
    const auto dir = scratch("solve_zero");
    const json cfg = {{"domain", {{"cells", 8}}},
                      {"cross_sections", {{"sigma_s", 0.5}, {"sigma_a", 0.5}}},
                      {"source", 0.0}};
    const auto r = run("solve", cfg, dir);
    CHECK(r.code == kOk);
    std::istringstream phi(slurp(dir / "out" / "phi.csv"));
    std::string line;
    std::getline(phi, line);
    CHECK(line == "x,phi");
    int rows = 0;
    while (std::getline(phi, line)) {
        CHECK(line.substr(line.find(',') + 1) == "0");
        ++rows;
    }
    CHECK(rows == 8);
    const auto bounds = io::read_json(dir / "out" / "bounds.json");
    CHECK(bounds["rte"]["pass"].get<bool>());
    CHECK(bounds["rte"]["lhs"].get<double>() == 0.0);
}

TEST_CASE("solve: constant field shows the sharp rate and paths agree")
{
    const auto dir = scratch("solve_const");
    const json cfg = {{"domain", {{"cells", 32}}},
                      {"cross_sections", {{"sigma_s", 0.5}, {"sigma_a", 0.5}}},
                      {"solver", {{"cross_check", true}, {"tol", 1e-12}}}};
    const auto r = run("solve", cfg, dir);
    CHECK(r.code == kOk);
    const auto status = json::parse(r.status);
    CHECK(status["status"] == "ok");
    CHECK(r.status.find('\n') == r.status.size() - 1);

    std::istringstream trace(slurp(dir / "out" / "trace.csv"));
    std::string line, last;
    std::getline(trace, line);
    CHECK(line == "iter,error_norm,ratio,theoretical_rate,sharp_rate");
    while (std::getline(trace, line)) {
        last = line;
    }
    std::vector<std::string> cols;
    std::istringstream ls(last);
    for (std::string c; std::getline(ls, c, ',');) {
        cols.push_back(c);
    }
    REQUIRE(cols.size() == 5);
    const double ratio = std::stod(cols[2]);
    const double sharp = std::stod(cols[4]);
    CHECK(sharp == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))));
    CHECK(ratio <= sharp + 1e-3);
    CHECK(ratio > 0.2);

    const auto bounds = io::read_json(dir / "out" / "bounds.json");
    CHECK(bounds["cross_check"]["pass"].get<bool>());
    CHECK(bounds["cross_check"]["relative_difference"].get<double>() < 2e-4);
}

TEST_CASE("solve: non-convergence exits 3 and still writes the trace")
{
    const auto dir = scratch("solve_nc");
    const json cfg = {{"domain", {{"cells", 8}}},
                      {"cross_sections", {{"sigma_s", 0.9}, {"sigma_a", 0.1}}},
                      {"solver", {{"max_iter", 2}}}};
    const auto r = run("solve", cfg, dir);
    CHECK(r.code == kSolverFailure);
    CHECK(fs::exists(dir / "out" / "trace.csv"));
    CHECK_FALSE(r.diag.empty());
}

TEST_CASE("config error exits 2")
{
    const auto dir = scratch("bad");
    const json cfg = {{"domain", {{"cells", 2}}},
                      {"cross_sections", {{"sigma_s", {0.5, 0.0}}, {"sigma_a", 0.5}}}};
    for (const char* cmd : {"solve", "verify", "criticality", "uq"}) {
        const auto r = run(cmd, cfg, dir);
        CHECK(r.code == kConfigError);
        CHECK(json::parse(r.status)["field"] == "cross_sections.sigma_s[1]");
    }
    CHECK(run("criticality", {{"cross_sections", {{"sigma_s", 0.5}, {"sigma_a", 0.5}}}}, dir)
              .code == kConfigError);
    CHECK(run("uq", json::object(), dir).code == kConfigError);
    CHECK(run("transmogrify", json::object(), dir).code == kConfigError);
    std::ostringstream s, d;
    CHECK(run_command("solve", dir / "missing.json", dir, s, d) == kConfigError);
}

TEST_CASE("verify: small suite passes with reported margins")
{
    const auto dir = scratch("verify");
    const json cfg = {{"verify",
                       {{"fields", 5}, {"grids", {8}}, {"criticality_fields", 3},
                        {"criticality_cells", 8}, {"sharp_rate_cells", 32}}}};
    const auto r = run("verify", cfg, dir);
    CHECK(r.code == kOk);
    const auto rep = io::read_json(dir / "out" / "verify_report.json");
    CHECK(rep["all_pass"].get<bool>());
    bool found = false;
    for (const auto& c : rep["certificates"]) {
        CHECK(c["pass"].get<bool>());
        CHECK(c["margin"].get<double>() >= 0.0);
        if (c["name"] == "weighted_norm_K_sigma_s") {
            found = true;
            CHECK(c["bound"].get<double>() - c["measured"].get<double>() ==
                  doctest::Approx(c["margin"].get<double>()));
        }
    }
    CHECK(found);
}

TEST_CASE("criticality: result file and positivity sweep")
{
    const auto dir = scratch("crit");
    const json cfg = {
        {"domain", {{"cells", 16}}},
        {"cross_sections", {{"sigma_s", 0.5}, {"sigma_a", 0.2}, {"sigma_f", 0.3}}},
        {"random_field",
         {{"sigma_s", {{"lo", 0.1}, {"hi", 2.0}}},
          {"sigma_a", {{"lo", 0.05}, {"hi", 1.0}}},
          {"sigma_f", {{"distribution", "log_uniform"}, {"lo", 0.05}, {"hi", 0.5}}},
          {"seed", 3}}},
        {"criticality", {{"samples", 50}}}};
    const auto r = run("criticality", cfg, dir);
    CHECK(r.code == kOk);
    const auto j = io::read_json(dir / "out" / "criticality.json");
    const auto spectrum = j["spectrum"].get<std::vector<double>>();
    CHECK(spectrum.size() == 16);
    CHECK(std::is_sorted(spectrum.begin(), spectrum.end()));
    CHECK(spectrum.front() > 0.0);
    CHECK(j["k_effective"].get<double>() == doctest::Approx(spectrum.back()).epsilon(1e-8));
    CHECK(j["lambda"].get<double>() * j["k_effective"].get<double>() ==
          doctest::Approx(1.0));
    CHECK(j["positivity_sweep"]["passed"] == 50);
}

TEST_CASE("uq: repeatable output and degenerate spread")
{
    const json cfg = {{"domain", {{"cells", 16}}},
                      {"random_field",
                       {{"sigma_s", {{"lo", 0.4}, {"hi", 0.6}}},
                        {"sigma_a", {{"lo", 0.4}, {"hi", 0.6}}},
                        {"seed", 11}}},
                      {"uq", {{"samples", 30}}}};
    const auto a = scratch("uq_a");
    const auto b = scratch("uq_b");
    CHECK(run("uq", cfg, a).code == kOk);
    CHECK(run("uq", cfg, b).code == kOk);
    for (const char* f : {"uq_samples.csv", "uq_summary.json"}) {
        CHECK(slurp(a / "out" / f) == slurp(b / "out" / f));
    }
    // Re-running into the same directory overwrites identically.
    const auto first = slurp(a / "out" / "uq_samples.csv");
    CHECK(run("uq", cfg, a).code == kOk);
    CHECK(slurp(a / "out" / "uq_samples.csv") == first);

    auto flat = cfg;
    flat["random_field"]["sigma_s"] = {{"lo", 0.5}, {"hi", 0.5}};
    flat["random_field"]["sigma_a"] = {{"lo", 0.5}, {"hi", 0.5}};
    const auto c = scratch("uq_flat");
    CHECK(run("uq", flat, c).code == kOk);
    const auto summary = io::read_json(c / "out" / "uq_summary.json");
    CHECK(summary["sd"].get<double>() == 0.0);
    CHECK(summary["pass_count"] == 30);
}

TEST_CASE("command-line binary")
{
    const auto dir = scratch("binary");
    io::write_text(dir / "c.json",
                   R"({"domain":{"cells":4},"cross_sections":{"sigma_s":0.5,"sigma_a":0.5}})");
    const std::string exe = SLABRTE_CLI_PATH;
    auto code = [](const std::string& cmd) {
        const int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    const std::string quiet = " > " + (dir / "stdout.txt").string() + " 2> " +
                              (dir / "stderr.txt").string();
    CHECK(code(exe + " solve --config " + (dir / "c.json").string() + " --out " +
               (dir / "o").string() + quiet) == 0);
    CHECK(fs::exists(dir / "o" / "phi.csv"));
    const auto out = slurp(dir / "stdout.txt");
    CHECK(json::parse(out)["status"] == "ok");
    CHECK(std::count(out.begin(), out.end(), '\n') == 1);
    CHECK(code(exe + " solve --out x" + quiet) == 2);
    CHECK(code(exe + quiet) == 2);
    CHECK(code(exe + " solve --config " + (dir / "nope.json").string() + quiet) == 2);
}
