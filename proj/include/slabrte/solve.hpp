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

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "slabrte/kernel.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

/// Maps a source g to the pure-transport scalar flux K g.
using ApplyK = std::function<GridFunction(std::span<const double>)>;

/// Dense route: multiplication by an assembled K.
ApplyK dense_apply(DenseOperator k);

/// Matrix-free route: one transport sweep per quadrature direction.
ApplyK sweep_apply(CrossSections xs, AngularQuadrature quad);

/// (sum_i h_i w_i v_i^2)^{1/2}.
double weighted_norm(const SlabDomain& domain, std::span<const double> v,
                     std::span<const double> w);

/// Plain discrete L2 norm (w = 1).
double l2_norm(const SlabDomain& domain, std::span<const double> v);

struct IterationRecord {
    int iter = 0;
    double error_norm = 0.0;
    std::optional<double> ratio; // error_norm / previous error_norm
};

/// Error history of a source iteration, measured in the norm weighted by
/// the total cross-section. With a reference solution the errors are
/// phi - phi^i; without, successive differences phi^{i+1} - phi^i.
struct IterationTrace {
    std::vector<IterationRecord> records;
    double theoretical_rate = 0.0;               // max sigma_s / sigma
    std::optional<double> sharp_rate_constant_case; // c (1 - e^{-sigma d})
    bool errors_vs_reference = false;
    bool converged = false;
    int iterations = 0; // applications of K performed

    double max_ratio() const;
    /// Ratio of the last recorded pair, if any.
    std::optional<double> last_ratio() const;
};

struct SourceIterationResult {
    GridFunction phi;
    IterationTrace trace;
};

/// phi^{i+1} = K(sigma_s phi^i + Q) until ||phi^{i+1} - phi^i|| <= tol in
/// the sigma-weighted norm, or max_iter iterations. Exhausting max_iter is
/// reported through trace.converged, not thrown.
SourceIterationResult source_iteration(
    const CrossSections& xs, const ApplyK& apply_k, std::span<const double> q,
    std::span<const double> phi0, double tol, int max_iter,
    std::optional<GridFunction> reference = std::nullopt);

/// Solves (I - K D_{sigma_s}) phi = K Q by pivoted elimination, with one
/// step of iterative refinement. Throws SingularMatrixError on an
/// internal-consistency failure.
GridFunction direct_solve(const DenseOperator& k, const CrossSections& xs,
                          std::span<const double> q);

/// ||(I - K D_{sigma_s}) phi - K Q|| / ||K Q|| in the discrete L2 norm
/// (0 when K Q = 0 and the residual vanishes).
double direct_residual(const DenseOperator& k, const CrossSections& xs,
                       std::span<const double> q,
                       std::span<const double> phi);

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0; // lhs / rhs, 0 when both vanish
    bool pass = false;
};

/// ||phi||_{L2} <= ||g||_{L2} / sigma_min for phi = K g.
BoundReport check_bound_pure(std::span<const double> g,
                             std::span<const double> phi,
                             const CrossSections& xs);

/// ||phi||_{L2} <= ||Q||_{L2} / (sigma_min (1 - c)) for the RTE solution.
BoundReport check_bound_rte(std::span<const double> q,
                            std::span<const double> phi,
                            const CrossSections& xs);

nlohmann::json to_json(const BoundReport& r);

/// Header: iter,error_norm,ratio,theoretical_rate,sharp_rate
void write_csv(std::ostream& os, const IterationTrace& trace);

} // namespace slabrte
