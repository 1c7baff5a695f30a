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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

struct VerifySettings {
    int fields = 100;                  // random fields per grid
    std::vector<int> grids{8, 16, 32}; // uniform cell counts on [0, length]
    double length = 1.0;
    CoefficientLaw sigma_s{Distribution::uniform, 0.1, 2.0};
    CoefficientLaw sigma_a{Distribution::uniform, 0.05, 1.0};
    CoefficientLaw sigma_f{Distribution::uniform, 0.05, 0.5};
    std::uint64_t seed = 2026;
    int criticality_fields = 50;
    int criticality_cells = 16;
    int sharp_rate_cells = 64;
    int sharp_rate_angles = 128;
    AngularRule sharp_rate_rule = AngularRule::double_gauss_legendre;
};

/// One certified inequality: `measured` is the worst case over all
/// instances and `margin` = bound - measured (>= 0 when it holds).
struct Certificate {
    std::string name;
    std::string statement;
    bool pass = false;
    int instances = 0;
    int failures = 0;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct VerifyReport {
    std::vector<Certificate> certificates;
    bool all_pass() const;
};

/// Runs every certificate over randomized fields:
///  - discrete sigma^{1/2} K sigma^{1/2} is positive definite with norm <= 1
///  - ||K sigma_s|| in the sigma-weighted norm <= max sigma_s / sigma
///  - source iteration error ratios <= c and iteration counts
///  - flux bounds for the pure transport problem and for the RTE
///  - constant-coefficient contraction rate c (1 - e^{-sigma d})
///  - real, positive criticality spectrum and its mapping from L_sigma_s
VerifyReport run_verification(const VerifySettings& settings);

nlohmann::json to_json(const VerifyReport& r);

} // namespace slabrte
