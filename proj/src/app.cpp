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

#include "slabrte/app.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "slabrte/crit.hpp"
#include "slabrte/io.hpp"
#include "slabrte/kernel.hpp"
#include "slabrte/linalg.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/solve.hpp"

namespace slabrte::app {

namespace {

using nlohmann::json;

// Relative L2 tolerance between the dense and sweep solutions at the
// default resolution (32 cells, 128 angles).
constexpr double kCrossCheckTolerance = 2e-4;

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.contains(key)) {
            throw ConfigError(join(path, key), "unknown field");
        }
    }
}

const json& require_object(const json& j, const std::string& path)
{
    if (!j.is_object()) {
        throw ConfigError(path.empty() ? "<root>" : path,
                          "expected a JSON object");
    }
    return j;
}

double get_number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path, "must be finite");
    }
    return v;
}

double get_positive(const json& j, const std::string& path)
{
    const double v = get_number(j, path);
    if (!(v > 0.0)) {
        throw ConfigError(path, "must be > 0");
    }
    return v;
}

long long get_integer(const json& j, const std::string& path, long long lo)
{
    if (!j.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < lo) {
        throw ConfigError(path, "must be >= " + std::to_string(lo));
    }
    return v;
}

// A scalar (constant on every cell) or an array of per-cell values.
std::vector<double> get_cell_values(const json& j, const std::string& path,
                                    int n, bool positive)
{
    std::vector<double> out;
    if (j.is_number()) {
        const double v = positive ? get_positive(j, path) : get_number(j, path);
        out.assign(static_cast<std::size_t>(n), v);
        return out;
    }
    if (!j.is_array()) {
        throw ConfigError(path, "expected a number or an array of numbers");
    }
    if (static_cast<int>(j.size()) != n) {
        throw ConfigError(path, "expected " + std::to_string(n) +
                                    " values (one per cell), got " +
                                    std::to_string(j.size()));
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        out.push_back(positive ? get_positive(j[i], p) : get_number(j[i], p));
    }
    return out;
}

SlabDomain parse_domain(const json& j, const std::string& path)
{
    require_object(j, path);
    reject_unknown(j, path, {"length", "cells", "breakpoints"});
    try {
        if (j.contains("breakpoints")) {
            const auto& bp = j.at("breakpoints");
            if (!bp.is_array()) {
                throw ConfigError(join(path, "breakpoints"), "expected an array");
            }
            std::vector<double> x;
            for (std::size_t i = 0; i < bp.size(); ++i) {
                x.push_back(get_number(bp[i], join(path, "breakpoints") + "[" +
                                                  std::to_string(i) + "]"));
            }
            return SlabDomain(std::move(x));
        }
        const double length =
            j.contains("length") ? get_positive(j.at("length"), join(path, "length"))
                                 : 1.0;
        const int cells =
            j.contains("cells")
                ? static_cast<int>(get_integer(j.at("cells"), join(path, "cells"), 1))
                : 32;
        return SlabDomain::uniform(length, cells);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

CoefficientLaw parse_law(const json& j, const std::string& path)
{
    require_object(j, path);
    reject_unknown(j, path, {"distribution", "lo", "hi"});
    CoefficientLaw law;
    if (j.contains("distribution")) {
        const auto& d = j.at("distribution");
        const std::string p = join(path, "distribution");
        if (!d.is_string()) {
            throw ConfigError(p, "expected a string");
        }
        const auto s = d.get<std::string>();
        if (s == "uniform") {
            law.kind = Distribution::uniform;
        } else if (s == "log_uniform") {
            law.kind = Distribution::log_uniform;
        } else {
            throw ConfigError(p, "expected \"uniform\" or \"log_uniform\"");
        }
    }
    if (!j.contains("lo") || !j.contains("hi")) {
        throw ConfigError(path, "needs both lo and hi");
    }
    law.lo = get_positive(j.at("lo"), join(path, "lo"));
    law.hi = get_positive(j.at("hi"), join(path, "hi"));
    if (law.hi < law.lo) {
        throw ConfigError(join(path, "hi"), "must be >= lo");
    }
    return law;
}

CrossSections parse_cross_sections(const json& j, const std::string& path,
                                   const SlabDomain& domain)
{
    require_object(j, path);
    reject_unknown(j, path, {"breakpoints", "sigma_s", "sigma_a", "sigma_f"});
    SlabDomain grid = domain;
    if (j.contains("breakpoints")) {
        grid = parse_domain(json{{"breakpoints", j.at("breakpoints")}}, path);
    }
    const int n = grid.n_cells();
    for (const char* key : {"sigma_s", "sigma_a"}) {
        if (!j.contains(key)) {
            throw ConfigError(join(path, key), "required");
        }
    }
    auto s = get_cell_values(j.at("sigma_s"), join(path, "sigma_s"), n, true);
    auto a = get_cell_values(j.at("sigma_a"), join(path, "sigma_a"), n, true);
    std::optional<std::vector<double>> f;
    if (j.contains("sigma_f") && !j.at("sigma_f").is_null()) {
        f = get_cell_values(j.at("sigma_f"), join(path, "sigma_f"), n, true);
    }
    return CrossSections(std::move(grid), std::move(s), std::move(a),
                         std::move(f));
}

AngularRule parse_rule(const json& j, const std::string& path)
{
    if (!j.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    try {
        return parse_angular_rule(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

std::string csv_phi(const SlabDomain& domain, const GridFunction& phi)
{
    std::ostringstream os;
    os << "x,phi\n";
    for (int i = 0; i < domain.n_cells(); ++i) {
        os << io::format_double(domain.midpoint(i)) << ','
           << io::format_double(phi[i]) << '\n';
    }
    return os.str();
}

void print_status(std::ostream& status, const json& j)
{
    status << io::dump_json(j, -1) << '\n';
}

} // namespace

CrossSections RunConfig::resolve_cross_sections() const
{
    if (cross_sections) {
        return *cross_sections;
    }
    if (random_field) {
        return sample_xsec(*random_field, sample_index);
    }
    throw ConfigError("cross_sections",
                      "required (or give random_field to sample one)");
}

RunConfig parse_config(const json& j)
{
    require_object(j, "");
    reject_unknown(j, "",
                   {"domain", "cross_sections", "random_field", "sample_index",
                    "angles", "source", "solver", "criticality", "uq",
                    "verify"});
    RunConfig cfg;
    if (j.contains("domain")) {
        cfg.domain = parse_domain(j.at("domain"), "domain");
    }
    if (j.contains("cross_sections")) {
        cfg.cross_sections =
            parse_cross_sections(j.at("cross_sections"), "cross_sections",
                                 cfg.domain);
        cfg.domain = cfg.cross_sections->domain();
    }
    if (j.contains("random_field")) {
        const auto& r = require_object(j.at("random_field"), "random_field");
        reject_unknown(r, "random_field",
                       {"sigma_s", "sigma_a", "sigma_f", "seed"});
        RandomFieldSpec spec;
        spec.domain = cfg.domain;
        for (const char* key : {"sigma_s", "sigma_a"}) {
            if (!r.contains(key)) {
                throw ConfigError(join("random_field", key), "required");
            }
        }
        spec.sigma_s = parse_law(r.at("sigma_s"), "random_field.sigma_s");
        spec.sigma_a = parse_law(r.at("sigma_a"), "random_field.sigma_a");
        if (r.contains("sigma_f") && !r.at("sigma_f").is_null()) {
            spec.sigma_f = parse_law(r.at("sigma_f"), "random_field.sigma_f");
        }
        if (r.contains("seed")) {
            spec.seed = static_cast<std::uint64_t>(
                get_integer(r.at("seed"), "random_field.seed", 0));
        }
        cfg.random_field = spec;
    }
    if (j.contains("sample_index")) {
        cfg.sample_index = static_cast<std::uint64_t>(
            get_integer(j.at("sample_index"), "sample_index", 0));
    }
    if (j.contains("angles")) {
        cfg.angles = static_cast<int>(get_integer(j.at("angles"), "angles", 2));
        if (cfg.angles % 2 != 0) {
            throw ConfigError("angles", "must be even");
        }
    }
    const int n = cfg.domain.n_cells();
    cfg.source = j.contains("source")
                     ? get_cell_values(j.at("source"), "source", n, false)
                     : GridFunction(static_cast<std::size_t>(n), 1.0);

    if (j.contains("solver")) {
        const auto& s = require_object(j.at("solver"), "solver");
        reject_unknown(s, "solver",
                       {"path", "tol", "max_iter", "keff_tol", "cross_check",
                        "quadrature"});
        if (s.contains("path")) {
            if (!s.at("path").is_string()) {
                throw ConfigError("solver.path", "expected a string");
            }
            try {
                cfg.path = parse_solver_path(s.at("path").get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError("solver.path", e.what());
            }
        }
        if (s.contains("quadrature")) {
            cfg.rule = parse_rule(s.at("quadrature"), "solver.quadrature");
        }
        if (s.contains("tol")) {
            cfg.tol = get_positive(s.at("tol"), "solver.tol");
        }
        if (s.contains("max_iter")) {
            cfg.max_iter =
                static_cast<int>(get_integer(s.at("max_iter"), "solver.max_iter", 1));
        }
        if (s.contains("keff_tol")) {
            cfg.keff_tol = get_positive(s.at("keff_tol"), "solver.keff_tol");
        }
        if (s.contains("cross_check")) {
            if (!s.at("cross_check").is_boolean()) {
                throw ConfigError("solver.cross_check", "expected true/false");
            }
            cfg.cross_check = s.at("cross_check").get<bool>();
        }
    }
    if (j.contains("criticality")) {
        const auto& c = require_object(j.at("criticality"), "criticality");
        reject_unknown(c, "criticality", {"samples"});
        if (c.contains("samples")) {
            cfg.criticality_samples = static_cast<int>(
                get_integer(c.at("samples"), "criticality.samples", 0));
        }
    }

    cfg.uq.angles = cfg.angles;
    cfg.uq.rule = cfg.rule;
    cfg.uq.path = cfg.path;
    cfg.uq.tol = cfg.tol;
    cfg.uq.max_iter = cfg.max_iter;
    cfg.uq.keff_tol = cfg.keff_tol;
    if (cfg.random_field) {
        cfg.uq.field = *cfg.random_field;
    }
    if (j.contains("uq")) {
        const auto& u = require_object(j.at("uq"), "uq");
        reject_unknown(u, "uq",
                       {"samples", "qoi", "probe_cell", "threads", "source"});
        if (u.contains("samples")) {
            cfg.uq.samples =
                static_cast<int>(get_integer(u.at("samples"), "uq.samples", 1));
        }
        if (u.contains("qoi")) {
            if (!u.at("qoi").is_string()) {
                throw ConfigError("uq.qoi", "expected a string");
            }
            try {
                cfg.uq.qoi = parse_qoi(u.at("qoi").get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError("uq.qoi", e.what());
            }
        }
        if (u.contains("probe_cell")) {
            cfg.uq.probe_cell = static_cast<int>(
                get_integer(u.at("probe_cell"), "uq.probe_cell", 0));
            if (cfg.uq.probe_cell >= n) {
                throw ConfigError("uq.probe_cell", "outside the grid");
            }
        }
        if (u.contains("threads")) {
            cfg.uq.threads =
                static_cast<int>(get_integer(u.at("threads"), "uq.threads", 0));
        }
        if (u.contains("source")) {
            cfg.uq.source = get_number(u.at("source"), "uq.source");
        }
    }

    if (j.contains("verify")) {
        const auto& v = require_object(j.at("verify"), "verify");
        reject_unknown(v, "verify",
                       {"fields", "grids", "length", "seed", "sigma_s",
                        "sigma_a", "sigma_f", "criticality_fields",
                        "criticality_cells", "sharp_rate_cells",
                        "sharp_rate_angles", "sharp_rate_quadrature"});
        auto& vs = cfg.verify;
        if (v.contains("fields")) {
            vs.fields = static_cast<int>(get_integer(v.at("fields"), "verify.fields", 1));
        }
        if (v.contains("grids")) {
            const auto& g = v.at("grids");
            if (!g.is_array() || g.empty()) {
                throw ConfigError("verify.grids", "expected a nonempty array");
            }
            vs.grids.clear();
            for (std::size_t i = 0; i < g.size(); ++i) {
                vs.grids.push_back(static_cast<int>(get_integer(
                    g[i], "verify.grids[" + std::to_string(i) + "]", 1)));
            }
        }
        if (v.contains("length")) {
            vs.length = get_positive(v.at("length"), "verify.length");
        }
        if (v.contains("seed")) {
            vs.seed = static_cast<std::uint64_t>(
                get_integer(v.at("seed"), "verify.seed", 0));
        }
        if (v.contains("sigma_s")) {
            vs.sigma_s = parse_law(v.at("sigma_s"), "verify.sigma_s");
        }
        if (v.contains("sigma_a")) {
            vs.sigma_a = parse_law(v.at("sigma_a"), "verify.sigma_a");
        }
        if (v.contains("sigma_f")) {
            vs.sigma_f = parse_law(v.at("sigma_f"), "verify.sigma_f");
        }
        if (v.contains("criticality_fields")) {
            vs.criticality_fields = static_cast<int>(get_integer(
                v.at("criticality_fields"), "verify.criticality_fields", 0));
        }
        if (v.contains("criticality_cells")) {
            vs.criticality_cells = static_cast<int>(get_integer(
                v.at("criticality_cells"), "verify.criticality_cells", 1));
            if (vs.criticality_cells > 256) {
                throw ConfigError("verify.criticality_cells", "must be <= 256");
            }
        }
        if (v.contains("sharp_rate_cells")) {
            vs.sharp_rate_cells = static_cast<int>(get_integer(
                v.at("sharp_rate_cells"), "verify.sharp_rate_cells", 1));
        }
        if (v.contains("sharp_rate_angles")) {
            vs.sharp_rate_angles = static_cast<int>(get_integer(
                v.at("sharp_rate_angles"), "verify.sharp_rate_angles", 2));
            if (vs.sharp_rate_angles % 2 != 0) {
                throw ConfigError("verify.sharp_rate_angles", "must be even");
            }
        }
        if (v.contains("sharp_rate_quadrature")) {
            vs.sharp_rate_rule = parse_rule(v.at("sharp_rate_quadrature"),
                                            "verify.sharp_rate_quadrature");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    json j;
    try {
        j = io::read_json(path);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("<file>", e.what());
    }
    return parse_config(j);
}

int cmd_solve(const RunConfig& config, const std::filesystem::path& out,
              std::ostream& status, std::ostream& diag)
{
    const CrossSections xs = config.resolve_cross_sections();
    const int n = xs.n_cells();
    const GridFunction& q = config.source;
    if (static_cast<int>(q.size()) != n) {
        throw ConfigError("source", "length does not match the grid");
    }
    const GridFunction zero(n, 0.0);
    const bool need_dense = config.path == SolverPath::dense || config.cross_check;
    const bool need_sweep = config.path == SolverPath::sweep || config.cross_check;

    std::optional<DenseOperator> k;
    std::optional<GridFunction> direct;
    if (need_dense) {
        k = assemble_k(xs.domain(), xs.total());
        direct = direct_solve(*k, xs, q);
    }
    const ApplyK apply = config.path == SolverPath::dense
                             ? dense_apply(*k)
                             : sweep_apply(xs, make_quadrature(config.rule, config.angles));
    const auto si = source_iteration(xs, apply, q, zero, config.tol,
                                     config.max_iter,
                                     config.path == SolverPath::dense
                                         ? direct
                                         : std::nullopt);

    json bounds;
    bounds["scattering_ratio"] = scattering_ratio(xs);
    bounds["sigma_min"] = xs.sigma_min();
    bounds["rte"] = to_json(check_bound_rte(q, si.phi, xs));
    bounds["pure"] = to_json(check_bound_pure(q, apply(q), xs));
    bool cross_ok = true;
    if (config.cross_check && need_sweep) {
        const auto other =
            config.path == SolverPath::dense
                ? source_iteration(xs,
                                   sweep_apply(xs, make_quadrature(config.rule, config.angles)),
                                   q, zero, config.tol, config.max_iter)
                      .phi
                : *direct;
        GridFunction d(n);
        for (int i = 0; i < n; ++i) {
            d[i] = si.phi[i] - other[i];
        }
        const double ref = l2_norm(xs.domain(), *direct);
        const double rel = ref > 0.0 ? l2_norm(xs.domain(), d) / ref
                                     : l2_norm(xs.domain(), d);
        cross_ok = rel <= kCrossCheckTolerance;
        bounds["cross_check"] = {{"relative_difference", rel},
                                 {"tolerance", kCrossCheckTolerance},
                                 {"pass", cross_ok}};
    }

    io::write_text(out / "phi.csv", csv_phi(xs.domain(), si.phi));
    std::ostringstream trace;
    write_csv(trace, si.trace);
    io::write_text(out / "trace.csv", trace.str());
    io::write_text(out / "bounds.json", io::dump_json(bounds) + "\n");

    if (!si.trace.converged) {
        diag << "solve: source iteration did not reach tol "
             << io::format_double(config.tol) << " in " << config.max_iter
             << " iterations\n";
        print_status(status, {{"command", "solve"},
                              {"status", "not_converged"},
                              {"iterations", si.trace.iterations}});
        return kSolverFailure;
    }
    print_status(status, {{"command", "solve"},
                          {"status", "ok"},
                          {"path", to_string(config.path)},
                          {"iterations", si.trace.iterations},
                          {"bounds_pass", bounds["rte"]["pass"].get<bool>() &&
                                              bounds["pure"]["pass"].get<bool>()},
                          {"cross_check_pass", cross_ok}});
    return kOk;
}

int cmd_verify(const RunConfig& config, const std::filesystem::path& out,
               std::ostream& status, std::ostream& diag)
{
    const VerifyReport report = run_verification(config.verify);
    io::write_text(out / "verify_report.json",
                   io::dump_json(to_json(report)) + "\n");
    int failed = 0;
    for (const auto& c : report.certificates) {
        if (!c.pass) {
            ++failed;
            diag << "verify: FAILED " << c.name << " (" << c.failures << " of "
                 << c.instances << " instances, margin "
                 << io::format_double(c.margin) << ")\n";
        }
    }
    print_status(status, {{"command", "verify"},
                          {"status", failed == 0 ? "ok" : "failed"},
                          {"certificates", report.certificates.size()},
                          {"failed", failed}});
    return failed == 0 ? kOk : kCertificateFailure;
}

int cmd_criticality(const RunConfig& config, const std::filesystem::path& out,
                    std::ostream& status, std::ostream& diag)
{
    const CrossSections xs = config.resolve_cross_sections();
    if (!xs.has_fission()) {
        throw ConfigError("cross_sections.sigma_f",
                          "required for the criticality command");
    }
    if (config.criticality_samples > 0 &&
        (!config.random_field || !config.random_field->sigma_f)) {
        throw ConfigError("random_field.sigma_f",
                          "required for a criticality positivity sweep");
    }
    CriticalityResult result;
    try {
        result = keff_power_iteration(xs, config.keff_tol, config.max_iter,
                                      xs.n_cells() <= 256);
    } catch (const ConvergenceError& e) {
        diag << "criticality: " << e.what() << '\n';
        print_status(status, {{"command", "criticality"},
                              {"status", "not_converged"}});
        return kSolverFailure;
    }
    json j = to_json(result);
    int sweep_failures = 0;
    if (config.criticality_samples > 0) {
        for (int s = 0; s < config.criticality_samples; ++s) {
            const auto rep = verify_spectrum_positive(
                sample_xsec(*config.random_field, static_cast<std::uint64_t>(s)));
            if (!rep.pass) {
                ++sweep_failures;
                diag << "criticality: sample " << s
                     << " failed the positivity check\n";
            }
        }
        j["positivity_sweep"] = {{"samples", config.criticality_samples},
                                 {"passed", config.criticality_samples -
                                                sweep_failures}};
    }
    io::write_text(out / "criticality.json", io::dump_json(j) + "\n");
    print_status(status, {{"command", "criticality"},
                          {"status", sweep_failures == 0 ? "ok" : "failed"},
                          {"k_effective", result.k_effective},
                          {"lambda", result.lambda_fundamental}});
    return sweep_failures == 0 ? kOk : kCertificateFailure;
}

int cmd_uq(const RunConfig& config, const std::filesystem::path& out,
           std::ostream& status, std::ostream& diag)
{
    if (!config.random_field) {
        throw ConfigError("random_field", "required for the uq command");
    }
    try {
        config.uq.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("uq", e.what());
    }
    UqResult result;
    try {
        result = run_uq(config.uq);
    } catch (const UqSampleError& e) {
        diag << "uq: " << e.what() << '\n';
        print_status(status, {{"command", "uq"},
                              {"status", "solver_failure"},
                              {"sample_index", e.sample_index}});
        return kSolverFailure;
    }
    std::ostringstream csv;
    write_samples_csv(csv, result);
    io::write_text(out / "uq_samples.csv", csv.str());
    io::write_text(out / "uq_summary.json",
                   io::dump_json(summary_json(config.uq, result)) + "\n");
    const bool all_pass =
        result.pass_count == static_cast<int>(result.samples.size());
    if (!all_pass) {
        diag << "uq: " << result.samples.size() - result.pass_count
             << " samples failed a per-sample certificate\n";
    }
    print_status(status, {{"command", "uq"},
                          {"status", all_pass ? "ok" : "failed"},
                          {"samples", result.samples.size()},
                          {"mean", result.mean},
                          {"standard_error", result.standard_error},
                          {"pass_count", result.pass_count}});
    return all_pass ? kOk : kCertificateFailure;
}

int run_command(const std::string& command,
                const std::filesystem::path& config_path,
                const std::filesystem::path& out, std::ostream& status,
                std::ostream& diag)
{
    try {
        const RunConfig cfg = load_config(config_path);
        if (command == "solve") {
            return cmd_solve(cfg, out, status, diag);
        }
        if (command == "verify") {
            return cmd_verify(cfg, out, status, diag);
        }
        if (command == "criticality") {
            return cmd_criticality(cfg, out, status, diag);
        }
        if (command == "uq") {
            return cmd_uq(cfg, out, status, diag);
        }
        throw ConfigError("<command>", "unknown command '" + command + "'");
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << '\n';
        print_status(status, {{"command", command},
                              {"status", "config_error"},
                              {"field", e.path}});
        return kConfigError;
    } catch (const std::exception& e) {
        diag << command << ": " << e.what() << '\n';
        print_status(status, {{"command", command}, {"status", "solver_failure"}});
        return kSolverFailure;
    }
}

} // namespace slabrte::app
