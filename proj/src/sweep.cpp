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

#include "slabrte/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slabrte {

namespace {

void check_sizes(const SlabDomain& domain, std::span<const double> sigma,
                 std::span<const double> g)
{
    const auto n = static_cast<std::size_t>(domain.n_cells());
    if (sigma.size() != n || g.size() != n) {
        throw std::invalid_argument("sweep: sigma and source must have one "
                                    "value per cell");
    }
    for (double s : sigma) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("sweep: sigma must be > 0");
        }
    }
}

double norm3(const Point3& r, const Point3& rp)
{
    const double dx = r[0] - rp[0];
    const double dy = r[1] - rp[1];
    const double dz = r[2] - rp[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// (1 - e^{-t}) / t for t > 0.
double escape_fraction(double t) { return -std::expm1(-t) / t; }

// Marches along mu from the vacuum face. Calls visit(cell, psi_in, psi_out,
// t) in the order cells are traversed; t is the cell optical thickness
// along the ray.
template <typename Visit>
void march(const SlabDomain& domain, std::span<const double> sigma,
           std::span<const double> g, double mu, Visit&& visit)
{
    if (mu == 0.0 || !std::isfinite(mu)) {
        throw std::invalid_argument("sweep: direction cosine must be nonzero");
    }
    check_sizes(domain, sigma, g);
    const int n = domain.n_cells();
    const double amu = std::abs(mu);
    double psi = 0.0;
    for (int step = 0; step < n; ++step) {
        const int i = mu > 0.0 ? step : n - 1 - step;
        const double t = sigma[i] * domain.width(i) / amu;
        const double q = g[i] / sigma[i];
        const double out = psi * std::exp(-t) - q * std::expm1(-t);
        visit(i, psi, out, t);
        psi = out;
    }
}

} // namespace

double optical_path(const SlabDomain& domain, std::span<const double> sigma,
                    double x, double y)
{
    if (sigma.size() != static_cast<std::size_t>(domain.n_cells())) {
        throw std::invalid_argument("optical_path: one sigma per cell");
    }
    if (x < domain.left() || x > domain.right() || y < domain.left() ||
        y > domain.right()) {
        throw std::invalid_argument("optical_path: point outside the slab");
    }
    const double a = std::min(x, y);
    const double b = std::max(x, y);
    if (a == b) {
        return 0.0;
    }
    const auto bp = domain.breakpoints();
    double tau = 0.0;
    for (int i = domain.locate(a); i < domain.n_cells() && bp[i] < b; ++i) {
        const double overlap = std::min(b, bp[i + 1]) - std::max(a, bp[i]);
        if (overlap > 0.0) {
            tau += sigma[i] * overlap;
        }
    }
    return tau;
}

double optical_path_segment(const Point3& r, const Point3& rp,
                            std::span<const double> breakpoints,
                            std::span<const double> sigma_line)
{
    const double len = norm3(r, rp);
    if (len == 0.0) {
        if (sigma_line.empty() &&
            (breakpoints.empty() ||
             (breakpoints.size() == 1 && breakpoints[0] == 0.0))) {
            return 0.0;
        }
    }
    if (breakpoints.size() != sigma_line.size() + 1 || sigma_line.empty()) {
        throw std::invalid_argument(
            "optical_path_segment: need one sigma per partition piece");
    }
    const double tol = 1e-12 * std::max(1.0, len);
    if (std::abs(breakpoints.front()) > tol ||
        std::abs(breakpoints.back() - len) > tol) {
        throw std::invalid_argument(
            "optical_path_segment: partition must cover [0, |r - rp|]");
    }
    double tau = 0.0;
    for (std::size_t k = 0; k < sigma_line.size(); ++k) {
        const double ds = breakpoints[k + 1] - breakpoints[k];
        if (!(ds > 0.0) || !(sigma_line[k] >= 0.0)) {
            throw std::invalid_argument(
                "optical_path_segment: partition must be increasing and "
                "sigma nonnegative");
        }
        tau += sigma_line[k] * ds;
    }
    return tau;
}

double kernel3d_eval(const Point3& r, const Point3& rp, double tau)
{
    const double dist = norm3(r, rp);
    if (dist == 0.0) {
        throw std::invalid_argument("kernel3d_eval: coincident points");
    }
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("kernel3d_eval: tau must be >= 0");
    }
    return std::exp(-tau) / (4.0 * std::numbers::pi * dist * dist);
}

std::vector<double> sweep_one_direction(const SlabDomain& domain,
                                        std::span<const double> sigma,
                                        std::span<const double> g, double mu)
{
    const int n = domain.n_cells();
    std::vector<double> psi(n + 1, 0.0);
    march(domain, sigma, g, mu,
          [&](int i, double, double out, double) {
              psi[mu > 0.0 ? i + 1 : i] = out;
          });
    return psi;
}

std::vector<double> sweep_cell_averages(const SlabDomain& domain,
                                        std::span<const double> sigma,
                                        std::span<const double> g, double mu)
{
    std::vector<double> avg(domain.n_cells(), 0.0);
    march(domain, sigma, g, mu, [&](int i, double in, double, double t) {
        const double q = g[i] / sigma[i];
        avg[i] = q + (in - q) * escape_fraction(t);
    });
    return avg;
}

AngularFlux sweep_all(const SlabDomain& domain, std::span<const double> sigma,
                      const AngularQuadrature& quad, std::span<const double> g)
{
    AngularFlux flux;
    flux.mu = quad.nodes;
    flux.interface_values.reserve(quad.nodes.size());
    for (double mu : quad.nodes) {
        flux.interface_values.push_back(
            sweep_one_direction(domain, sigma, g, mu));
    }
    return flux;
}

GridFunction transport_apply(const SlabDomain& domain,
                             std::span<const double> sigma,
                             const AngularQuadrature& quad,
                             std::span<const double> g)
{
    check_sizes(domain, sigma, g);
    GridFunction phi(domain.n_cells(), 0.0);
    // Angles summed in node order, so the result is independent of how
    // the individual sweeps are scheduled.
    for (int k = 0; k < quad.size(); ++k) {
        const auto avg = sweep_cell_averages(domain, sigma, g, quad.nodes[k]);
        const double w = 0.5 * quad.weights[k];
        for (std::size_t i = 0; i < phi.size(); ++i) {
            phi[i] += w * avg[i];
        }
    }
    return phi;
}

} // namespace slabrte
