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

#include "slabrte/quad.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slabrte {

namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 1000;

// Legendre P_n(z) and P_{n-1}(z) by the three-term recurrence.
void legendre(int n, double z, double& pn, double& pnm1)
{
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pn = p1;
    pnm1 = p2;
}

// n-point Gauss-Legendre rule on (-1, 1) for any n >= 1, nodes ascending.
AngularQuadrature legendre_rule(int n)
{
    AngularQuadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess for the i-th largest root, then Newton.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pn = 0.0, pnm1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, z, pn, pnm1);
            dp = n * (z * pn - pnm1) / (z * z - 1.0);
            const double dz = pn / dp;
            z -= dz;
            if (std::abs(dz) <= 4.0 * kEps * std::max(std::abs(z), kEps)) {
                break;
            }
        }
        if (2 * i + 1 == n) {
            z = 0.0;
        }
        legendre(n, z, pn, pnm1);
        dp = n * (z * pn - pnm1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        q.nodes[i] = -z;
        q.nodes[n - 1 - i] = z;
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

void require_even(int n, const char* who)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument(std::string(who) +
                                    ": n must be even and >= 2, got " +
                                    std::to_string(n));
    }
}

} // namespace

AngularQuadrature gauss_legendre(int n)
{
    require_even(n, "gauss_legendre");
    return legendre_rule(n);
}

AngularQuadrature double_gauss_legendre(int n)
{
    require_even(n, "double_gauss_legendre");
    const int m = n / 2;
    const AngularQuadrature half = legendre_rule(m);
    AngularQuadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int k = 0; k < m; ++k) {
        // node k of (-1, 1) mapped to (0, 1), mirrored onto (-1, 0)
        const double mu = 0.5 * (half.nodes[k] + 1.0);
        const double w = 0.5 * half.weights[k];
        q.nodes[m + k] = mu;
        q.weights[m + k] = w;
        q.nodes[m - 1 - k] = -mu;
        q.weights[m - 1 - k] = w;
    }
    return q;
}

AngularQuadrature make_quadrature(AngularRule rule, int n)
{
    return rule == AngularRule::gauss_legendre ? gauss_legendre(n)
                                               : double_gauss_legendre(n);
}

AngularRule parse_angular_rule(const std::string& s)
{
    if (s == "gauss_legendre") {
        return AngularRule::gauss_legendre;
    }
    if (s == "double_gauss_legendre") {
        return AngularRule::double_gauss_legendre;
    }
    throw std::invalid_argument("unknown angular rule '" + s +
                                "' (gauss_legendre | double_gauss_legendre)");
}

std::string to_string(AngularRule rule)
{
    return rule == AngularRule::gauss_legendre ? "gauss_legendre"
                                               : "double_gauss_legendre";
}

double e1(double x)
{
    if (!(x > 0.0)) {
        throw std::invalid_argument("e1: argument must be > 0");
    }
    return detail::expint(1, x);
}

namespace detail {

double expint(int n, double x)
{
    if (n < 1 || x < 0.0 || (x == 0.0 && n == 1)) {
        throw std::invalid_argument("expint: bad arguments");
    }
    if (x == 0.0) {
        return 1.0 / (n - 1);
    }
    if (x > 745.0) {
        return 0.0;
    }
    const int nm1 = n - 1;
    if (x > 1.0) {
        // Modified Lentz evaluation of the continued fraction.
        const double tiny = std::numeric_limits<double>::min() / kEps;
        double b = x + n;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i <= kMaxTerms; ++i) {
            const double an = -static_cast<double>(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) <= kEps) {
                return h * std::exp(-x);
            }
        }
        throw std::runtime_error("expint: continued fraction did not converge");
    }
    // Power series; the k = n-1 term carries the logarithm.
    double psi = -kEuler;
    for (int i = 1; i <= nm1; ++i) {
        psi += 1.0 / i;
    }
    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - kEuler;
    double fact = 1.0;
    for (int i = 1; i <= kMaxTerms; ++i) {
        fact *= -x / i;
        const double del = i != nm1 ? -fact / (i - nm1)
                                    : fact * (-std::log(x) + psi);
        ans += del;
        if (std::abs(del) < std::abs(ans) * kEps) {
            return ans;
        }
    }
    throw std::runtime_error("expint: series did not converge");
}

double e3_remainder(double x)
{
    if (x < 0.0) {
        throw std::invalid_argument("e3_remainder: argument must be >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x > 1.0) {
        return expint(3, x) - 0.5 + x;
    }
    // E3(x) = 1/2 - x + (x^2/2)(3/2 - gamma - ln x)
    //         - sum_{k>=3} (-x)^k / ((k-2) k!)
    double ans = 0.5 * x * x * (1.5 - kEuler - std::log(x));
    double fact = 0.5 * x * x; // (-x)^2 / 2!
    for (int k = 3; k <= kMaxTerms; ++k) {
        fact *= -x / k;
        const double del = -fact / (k - 2);
        ans += del;
        if (std::abs(del) < std::abs(ans) * kEps) {
            return ans;
        }
    }
    throw std::runtime_error("e3_remainder: series did not converge");
}

} // namespace detail

} // namespace slabrte
