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

#include <iosfwd>
#include <span>
#include <vector>

#include "slabrte/linalg.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

/// A dense operator on cell-average values of a slab grid.
///
/// Operators built here act on piecewise-constant functions: row i of the
/// matrix returns the average over cell i. In the discrete L2 inner product
/// sum_i h_i u_i v_i they are self-adjoint, so the h-weighted matrix
/// diag(h) A is symmetric. `symmetric` records whether the stored matrix
/// itself is symmetric (uniform grids, or after h_balanced()).
struct DenseOperator {
    SlabDomain domain;
    Matrix matrix;
    bool symmetric = false;

    int size() const { return matrix.size(); }
    double operator()(int i, int j) const { return matrix(i, j); }
    GridFunction apply(std::span<const double> v) const
    {
        return matrix.apply(v);
    }
};

/// Galerkin matrix of the slab transport integral operator
///   (K g)(x) = 1/2 int E1(tau(x, y)) g(y) dy
/// in the piecewise-constant basis:
///   K[i][j] = (1/h_i) 1/2 int_{cell i} int_{cell j} E1(tau(x, y)) dy dx.
/// Each cell pair reduces to a second difference of E3 in optical
/// coordinates; well-separated pairs use adaptive tensor Gauss-Legendre
/// (relative tolerance 1e-12) instead to avoid cancellation. Throws
/// ConvergenceError if the subdivision budget is exhausted.
DenseOperator assemble_k(const SlabDomain& domain,
                         std::span<const double> sigma);

/// sigma^{1/2} K sigma^{1/2}, entrywise.
DenseOperator symmetrize(const DenseOperator& k,
                         std::span<const double> sigma);

/// H^{1/2} A H^{-1/2} with H = diag(h): the symmetric representative of a
/// self-adjoint cell-average operator on any grid. The identity on uniform
/// grids.
DenseOperator h_balanced(const DenseOperator& a);

/// Full spectrum of a symmetric operator, ascending. Rejects operators
/// not flagged symmetric or with asymmetry above 1e-8, and verifies
/// ||A v - lambda v|| <= 1e-10 ||A|| for every pair.
std::vector<double> sym_eigenvalues(const DenseOperator& a);

/// As sym_eigenvalues, with eigenvectors (columns).
SymmetricEigen sym_eigen(const DenseOperator& a);

/// Operator norm of K sigma* on L2 weighted by the total cross-section,
/// i.e. the largest singular value of W^{1/2} K D_{sigma*} W^{-1/2} with
/// W = diag(h_i sigma_i).
double weighted_opnorm_ksigma(const CrossSections& xs,
                              std::span<const double> sigstar);

/// Same, reusing an already assembled K for xs.total().
double weighted_opnorm_ksigma(const DenseOperator& k, const CrossSections& xs,
                              std::span<const double> sigstar);

/// Row-major CSV, 17 significant digits, no header.
void write_csv(std::ostream& os, const DenseOperator& a);

} // namespace slabrte
