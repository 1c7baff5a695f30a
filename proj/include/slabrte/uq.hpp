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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

enum class Qoi { mean_flux, probe_flux, k_effective };
enum class SolverPath { dense, sweep };

Qoi parse_qoi(const std::string& s);
std::string to_string(Qoi q);
SolverPath parse_solver_path(const std::string& s);
std::string to_string(SolverPath p);

struct UqConfig {
    RandomFieldSpec field;      // grid and coefficient laws
    int angles = 128;           // used by the sweep path
    AngularRule rule = AngularRule::double_gauss_legendre;
    Qoi qoi = Qoi::mean_flux;
    int probe_cell = 0;
    int samples = 100;
    double source = 1.0;        // constant Q
    double tol = 1e-10;         // source iteration, sigma-weighted norm
    int max_iter = 10000;
    double keff_tol = 1e-12;
    SolverPath path = SolverPath::dense;
    int threads = 0;            // 0: hardware concurrency

    void validate() const;
};

struct UqSample {
    std::uint64_t index = 0;
    double qoi = 0.0;
    double c = 0.0;              // scattering ratio of the realization
    double bound_ratio = 0.0;    // flux bound lhs / rhs
    double max_obs_ratio = 0.0;  // largest source-iteration error ratio
    int iterations = 0;
    bool bound_pass = false;
    bool ratio_pass = false;
};

struct UqResult {
    std::vector<UqSample> samples; // index order
    double mean = 0.0;
    double sd = 0.0;               // sample standard deviation (N - 1)
    double standard_error = 0.0;   // sd / sqrt(N)
    int pass_count = 0;            // samples passing both certificates
    double worst_ratio_margin = 0.0; // min over samples of c - max_obs_ratio
};

/// A realization failed to solve. Reproducible from (seed, sample_index).
class UqSampleError : public std::runtime_error {
public:
    UqSampleError(std::uint64_t index, const std::string& what)
        : std::runtime_error("sample " + std::to_string(index) + ": " + what),
          sample_index(index)
    {
    }
    std::uint64_t sample_index;
};

/// Evaluates one realization: sample, solve, certify.
UqSample evaluate_sample(const UqConfig& config, std::uint64_t index);

/// Plain Monte Carlo over sample indices 0..N-1. Samples may run on
/// several threads; aggregation is index-ordered so the result does not
/// depend on scheduling. Throws UqSampleError for the lowest failing index.
UqResult run_uq(const UqConfig& config);

/// Aggregates already evaluated samples (sorted by index first).
UqResult aggregate(std::vector<UqSample> samples);

/// Header: index,qoi,c,bound_ratio,max_obs_ratio
void write_samples_csv(std::ostream& os, const UqResult& r);
nlohmann::json summary_json(const UqConfig& config, const UqResult& r);

} // namespace slabrte
