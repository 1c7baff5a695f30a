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

#include <optional>
#include <vector>

#include "slabrte/kernel.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

// Criticality problem
//
//   mu psi' + sigma psi = sigma_s phi + lambda sigma_f phi,  vacuum inflow,
//
// recast with v = sigma_s^{1/2} phi as
//
//   (I - L_s) v = lambda L_s (sigma_f / sigma_s) v,  L_s = sigma_s^{1/2} K sigma_s^{1/2},
//
// and with w = sigma_f^{1/2} phi as the symmetric problem (1/lambda) w = N w,
//
//   M = (I - L_s)^{-1} L_s,  N = (sigma_f/sigma_s)^{1/2} M (sigma_f/sigma_s)^{1/2}.
//
// All operators here are returned h-balanced (see h_balanced()), which makes
// them symmetric on any grid and leaves them unchanged on uniform grids.

/// L_s for a field with fission. Throws std::invalid_argument without
/// sigma_f.
DenseOperator build_lsigs(const CrossSections& xs);

/// M = (I - L_s)^{-1} L_s by columnwise solves, symmetrized.
DenseOperator build_m(const DenseOperator& lsigs);

/// N = R^{1/2} M R^{1/2} with R = sigma_f / sigma_s. Throws
/// std::runtime_error if the formed N is asymmetric beyond 1e-8.
DenseOperator build_n(const CrossSections& xs);
DenseOperator build_n(const DenseOperator& lsigs, const CrossSections& xs);

struct CriticalityResult {
    double lambda_fundamental = 0.0;
    double k_effective = 0.0;
    GridFunction eigenvector; // phi, unit L2 norm, positive sum
    std::optional<std::vector<double>> full_spectrum_of_n;
    double residual = 0.0;    // ||N w - k w|| / ||w||
    int iterations = 0;
};

/// Power iteration on N from the all-ones vector until the eigen-residual
/// is <= tol. Throws ConvergenceError (carrying the best Rayleigh quotient
/// in its message) after max_iter iterations. With `with_spectrum` the
/// full spectrum of N is attached (n <= 256).
CriticalityResult keff_power_iteration(const CrossSections& xs, double tol,
                                       int max_iter,
                                       bool with_spectrum = false);

struct GeneralizedPair {
    double lambda = 0.0;
    double residual = 0.0; // ||(I - K s_s) phi - lambda K s_f phi||, ||phi|| = 1
};

struct SpectrumReport {
    std::vector<double> spectrum; // eigenvalues of N, ascending
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    std::vector<GeneralizedPair> top_pairs; // three largest of N first
    bool all_positive = false;
    bool residuals_ok = false;
    bool pass = false;
};

/// Full spectrum of N: passes iff every eigenvalue is > 1e-12 * max and the
/// top three generalized eigenpairs have residual <= 1e-6. n <= 256.
SpectrumReport verify_spectrum_positive(const CrossSections& xs);

/// {"lambda", "k_effective", "residual", "spectrum", "eigenvector"}
nlohmann::json to_json(const CriticalityResult& r);

} // namespace slabrte
