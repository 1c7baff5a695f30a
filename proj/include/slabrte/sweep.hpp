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

#include <array>
#include <span>
#include <vector>

#include "slabrte/quad.hpp"
#include "slabrte/xsec.hpp"

namespace slabrte {

using Point3 = std::array<double, 3>;

/// Angular flux psi(x_i, mu_k) at the n+1 cell interfaces for each node.
/// Inflow values are zero: psi(x_0, mu > 0) = psi(x_n, mu < 0) = 0.
struct AngularFlux {
    std::vector<double> mu;
    std::vector<std::vector<double>> interface_values; // [k][i]
};

/// Integral of sigma over the segment between x and y. Exact for
/// piecewise-constant sigma; symmetric in (x, y).
double optical_path(const SlabDomain& domain, std::span<const double> sigma,
                    double x, double y);

/// Integral of a piecewise-constant sigma along the segment r -> rp.
/// `breakpoints` are arc-length positions 0 = s_0 < ... < s_m = |r - rp|
/// and `sigma_line` holds the m values between them. A degenerate segment
/// takes an empty partition (or {0}) and returns 0.
double optical_path_segment(const Point3& r, const Point3& rp,
                            std::span<const double> breakpoints,
                            std::span<const double> sigma_line);

/// exp(-tau) / (4 pi |r - rp|^2).
double kernel3d_eval(const Point3& r, const Point3& rp, double tau);

/// Interface values of the exact solution of mu psi' + sigma psi = g with
/// vacuum inflow, for piecewise-constant sigma and g.
std::vector<double> sweep_one_direction(const SlabDomain& domain,
                                        std::span<const double> sigma,
                                        std::span<const double> g, double mu);

/// Same march, returning the exact cell averages of psi instead.
std::vector<double> sweep_cell_averages(const SlabDomain& domain,
                                        std::span<const double> sigma,
                                        std::span<const double> g, double mu);

/// Interface values for every quadrature direction.
AngularFlux sweep_all(const SlabDomain& domain, std::span<const double> sigma,
                      const AngularQuadrature& quad, std::span<const double> g);

/// Scalar flux phi = P psi of the pure transport problem with source g,
/// as exact cell averages in space and the quadrature rule in angle.
GridFunction transport_apply(const SlabDomain& domain,
                             std::span<const double> sigma,
                             const AngularQuadrature& quad,
                             std::span<const double> g);

} // namespace slabrte
