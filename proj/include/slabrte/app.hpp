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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "slabrte/uq.hpp"
#include "slabrte/verify.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte::app {

/// Exit codes shared by all commands.
enum ExitCode : int {
    kOk = 0,
    kCertificateFailure = 1,
    kConfigError = 2,
    kSolverFailure = 3,
};

/// Invalid configuration; `path` locates the offending field, e.g.
/// "cross_sections.sigma_s[3]".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path(std::move(path))
    {
    }
    std::string path;
};

struct RunConfig {
    SlabDomain domain = SlabDomain::uniform(1.0, 32);
    std::optional<CrossSections> cross_sections;
    std::optional<RandomFieldSpec> random_field;
    std::uint64_t sample_index = 0; // realization used when only random_field
    int angles = 128;
    AngularRule rule = AngularRule::double_gauss_legendre;
    GridFunction source;            // one value per cell
    SolverPath path = SolverPath::dense;
    bool cross_check = false;       // also run the other solver path
    double tol = 1e-10;
    int max_iter = 10000;
    double keff_tol = 1e-12;
    int criticality_samples = 0;    // positivity sweep over random_field
    UqConfig uq;
    VerifySettings verify;

    /// Explicit cross-sections, else realization `sample_index`.
    CrossSections resolve_cross_sections() const;
};

/// Parses and validates a configuration; throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Commands write their files into `out`, print one JSON status line on
/// `status` and human diagnostics on `diag`, and return an exit code.
int cmd_solve(const RunConfig& config, const std::filesystem::path& out,
              std::ostream& status, std::ostream& diag);
int cmd_verify(const RunConfig& config, const std::filesystem::path& out,
               std::ostream& status, std::ostream& diag);
int cmd_criticality(const RunConfig& config, const std::filesystem::path& out,
                    std::ostream& status, std::ostream& diag);
int cmd_uq(const RunConfig& config, const std::filesystem::path& out,
           std::ostream& status, std::ostream& diag);

/// Loads `config_path` and dispatches on `command`
/// (solve | verify | criticality | uq).
int run_command(const std::string& command,
                const std::filesystem::path& config_path,
                const std::filesystem::path& out, std::ostream& status,
                std::ostream& diag);

} // namespace slabrte::app
