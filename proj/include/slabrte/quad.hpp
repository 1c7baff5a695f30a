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

#include <string>
#include <vector>

namespace slabrte {

/// Direction cosines and weights for the angular average
/// (1/2) * integral over (-1, 1). Weights sum to 2 and the node set is
/// symmetric about zero with no node at zero.
struct AngularQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }

    /// (1/2) sum_k w_k f(mu_k)
    template <typename F>
    double average(F&& f) const
    {
        double s = 0.0;
        for (int k = 0; k < size(); ++k) {
            s += weights[k] * f(nodes[k]);
        }
        return 0.5 * s;
    }
};

/// n-point Gauss-Legendre rule on (-1, 1), nodes ascending. n must be even
/// and >= 2 (odd rules put a node at mu = 0).
AngularQuadrature gauss_legendre(int n);

/// n/2-point Gauss-Legendre rules on (-1, 0) and on (0, 1). The slab
/// angular flux jumps at mu = 0, so the full-range rule converges only
/// algebraically there while this one keeps spectral accuracy. n even, >= 2.
AngularQuadrature double_gauss_legendre(int n);

enum class AngularRule { gauss_legendre, double_gauss_legendre };

AngularQuadrature make_quadrature(AngularRule rule, int n);
AngularRule parse_angular_rule(const std::string& s);
std::string to_string(AngularRule rule);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0, relative
/// accuracy ~1e-15. Power series for x <= 1, continued fraction above.
double e1(double x);

namespace detail {

/// E_n(x) for n >= 1, x > 0 (n = 0 and x = 0 handled for n >= 2).
double expint(int n, double x);

/// E2(x) = e^{-x} - x E1(x), with E2(0) = 1.
inline double e2(double x) { return expint(2, x); }

/// E3(x), with E3(0) = 1/2.
inline double e3(double x) { return expint(3, x); }

/// E3(x) - 1/2 + x. The constant and linear parts of E3 removed, so that
/// second differences of E3 on short intervals are formed without
/// cancellation. Behaves like (x^2/2)(3/2 - gamma - ln x) near zero.
double e3_remainder(double x);

} // namespace detail

} // namespace slabrte
