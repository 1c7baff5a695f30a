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

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "slabrte/kernel.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/sweep.hpp"
#include "slabrte/xsec.hpp"

using namespace slabrte;

namespace {

double rel_l2(const GridFunction& a, const GridFunction& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("optical path")
{
    const auto d = SlabDomain::uniform(1.0, 2);
    const std::vector<double> two{2.0, 2.0};
    CHECK(optical_path(d, two, 0.25, 0.75) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> mixed{1.0, 3.0};
    CHECK(optical_path(d, mixed, 0.25, 0.75) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(optical_path(d, mixed, 0.75, 0.25) == optical_path(d, mixed, 0.25, 0.75));
    CHECK(optical_path(d, mixed, 0.3, 0.3) == 0.0);
    CHECK(optical_path(d, mixed, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(optical_path(d, mixed, -0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(optical_path(d, mixed, 0.5, 1.1), std::invalid_argument);
}

TEST_CASE("optical path along a 3D segment")
{
    const Point3 o{0, 0, 0};
    const std::vector<double> bp2{0.0, 2.0};
    const std::vector<double> one{1.0};
    CHECK(optical_path_segment(o, {0, 2, 0}, bp2, one) == doctest::Approx(2.0));
    const std::vector<double> bp{0.0, 0.5, 1.0};
    const std::vector<double> s{1.0, 3.0};
    CHECK(optical_path_segment(o, {0, 0, 1}, bp, s) == doctest::Approx(2.0));
    CHECK(optical_path_segment(o, o, {}, {}) == 0.0);
    CHECK_THROWS_AS(optical_path_segment(o, {0, 0, 1}, bp2, one),
                    std::invalid_argument);
    CHECK_THROWS_AS(optical_path_segment(o, {0, 0, 1}, bp, one),
                    std::invalid_argument);

    // On the x-axis it agrees with the slab optical path.
    const auto d = SlabDomain({0.0, 0.5, 1.0});
    const std::vector<double> seg{0.0, 0.3, 0.6};
    const std::vector<double> line{1.0, 3.0};
    CHECK(optical_path_segment({0.2, 0, 0}, {0.8, 0, 0}, seg, line) ==
          doctest::Approx(optical_path(d, s, 0.2, 0.8)).epsilon(1e-14));
}

TEST_CASE("3D kernel point values")
{
    CHECK(kernel3d_eval({0, 0, 0}, {1, 0, 0}, 0.0) ==
          doctest::Approx(0.0795774715459477).epsilon(1e-14));
    CHECK(kernel3d_eval({0, 0, 0}, {0, 1, 0}, 1.0) ==
          doctest::Approx(std::exp(-1.0) / (4.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(kernel3d_eval({0, 0, 0}, {0, 0, 2}, 0.0) ==
          doctest::Approx(kernel3d_eval({0, 0, 0}, {0, 0, 1}, 0.0) / 4.0));
    CHECK_THROWS_AS(kernel3d_eval({1, 2, 3}, {1, 2, 3}, 0.0), std::invalid_argument);
}

TEST_CASE("sweep reproduces the constant-coefficient solution")
{
    const auto d = SlabDomain::uniform(1.0, 10);
    const double sigma = 1.3, g = 0.7, mu = 0.4;
    const std::vector<double> s(10, sigma), q(10, g);
    const auto psi = sweep_one_direction(d, s, q, mu);
    const auto bp = d.breakpoints();
    for (int i = 0; i <= 10; ++i) {
        const double exact = g / sigma * (1.0 - std::exp(-sigma * bp[i] / mu));
        CHECK(psi[i] == doctest::Approx(exact).epsilon(1e-14));
    }
    // Backward direction: vacuum at the right face.
    const auto back = sweep_one_direction(d, s, q, -mu);
    for (int i = 0; i <= 10; ++i) {
        const double exact = g / sigma * (1.0 - std::exp(-sigma * (1.0 - bp[i]) / mu));
        CHECK(back[i] == doctest::Approx(exact).epsilon(1e-14));
    }
    // Cell averages match the integral of the exact profile.
    const auto avg = sweep_cell_averages(d, s, q, mu);
    for (int i = 0; i < 10; ++i) {
        const double a = bp[i], b = bp[i + 1];
        const double integral =
            g / sigma * ((b - a) + mu / sigma *
                                       (std::exp(-sigma * b / mu) - std::exp(-sigma * a / mu)));
        CHECK(avg[i] == doctest::Approx(integral / (b - a)).epsilon(1e-13));
    }
}

TEST_CASE("zero source, zero flux; mu = 0 rejected")
{
    const auto d = SlabDomain::uniform(1.0, 5);
    const std::vector<double> s(5, 1.0), z(5, 0.0);
    for (double v : sweep_one_direction(d, s, z, 0.3)) {
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(sweep_one_direction(d, s, z, 0.0), std::invalid_argument);
    for (double v : transport_apply(d, s, gauss_legendre(8), z)) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("mirror symmetry")
{
    const auto d = SlabDomain({0.0, 0.1, 0.4, 0.5, 1.0});
    const auto m = SlabDomain({0.0, 0.5, 0.6, 0.9, 1.0});
    const std::vector<double> s{0.5, 2.0, 1.0, 3.0}, g{1.0, 0.2, 0.7, 0.1};
    const std::vector<double> sr(s.rbegin(), s.rend()), gr(g.rbegin(), g.rend());
    const auto a = sweep_one_direction(d, s, g, 0.6);
    const auto b = sweep_one_direction(m, sr, gr, -0.6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[a.size() - 1 - i]).epsilon(1e-13));
    }
}

TEST_CASE("transport_apply is linear and positive")
{
    const auto d = SlabDomain::uniform(1.0, 12);
    RandomFieldSpec spec;
    spec.domain = d;
    spec.sigma_s = {Distribution::uniform, 0.1, 2.0};
    spec.sigma_a = {Distribution::uniform, 0.05, 1.0};
    spec.seed = 11;
    const auto xs = sample_xsec(spec, 0);
    const auto sigma = xs.total();
    const auto quad = gauss_legendre(16);
    std::vector<double> g1(12), g2(12), mix(12);
    for (int i = 0; i < 12; ++i) {
        g1[i] = 1.0 + std::sin(i);
        g2[i] = 0.5 + 0.1 * i;
        mix[i] = 2.0 * g1[i] - 3.0 * g2[i];
    }
    const auto a = transport_apply(d, sigma, quad, g1);
    const auto b = transport_apply(d, sigma, quad, g2);
    const auto c = transport_apply(d, sigma, quad, mix);
    double gmax = 0.0;
    for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(c[i] - (2.0 * a[i] - 3.0 * b[i])) < 1e-13);
        CHECK(a[i] > 0.0);
        gmax = std::max(gmax, g1[i]);
    }
    // sigma_min phi <= max g
    CHECK(xs.sigma_min() * *std::max_element(a.begin(), a.end()) <=
          gmax * (1.0 + 1e-12));
    for (const auto& psi : sweep_all(d, sigma, quad, g1).interface_values) {
        for (double v : psi) {
            CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("midpoint cell of K 1 at 64 angles")
{
    const auto d = SlabDomain::uniform(1.0, 16);
    const std::vector<double> s(16, 1.0), g(16, 1.0);
    const auto phi = transport_apply(d, s, double_gauss_legendre(64), g);
    const double ref = oracle::k_row_sum(1.0, d.breakpoints()[8], d.breakpoints()[9]);
    const auto k = assemble_k(d, s);
    double row = 0.0;
    for (int j = 0; j < 16; ++j) {
        row += k(8, j);
    }
    CHECK(std::abs(row - ref) < 1e-10 * ref);
    CHECK(std::abs(phi[8] - row) < 1e-6 * row);
}

TEST_CASE("angular refinement")
{
    const auto d = SlabDomain::uniform(1.0, 16);
    std::vector<double> s(16), g(16);
    for (int i = 0; i < 16; ++i) {
        s[i] = 1.0 + 0.5 * std::sin(3.0 * d.midpoint(i));
        g[i] = std::exp(-d.midpoint(i));
    }
    for (auto rule : {AngularRule::gauss_legendre, AngularRule::double_gauss_legendre}) {
        double prev = INFINITY;
        for (int n : {8, 16, 32, 64}) {
            const auto a = transport_apply(d, s, make_quadrature(rule, n), g);
            const auto b = transport_apply(d, s, make_quadrature(rule, 2 * n), g);
            const double diff = rel_l2(a, b);
            CAPTURE(to_string(rule));
            CAPTURE(n);
            CHECK(diff < prev);
            prev = diff;
        }
    }
}

TEST_CASE("sweep agrees with the dense operator")
{
    const auto d = SlabDomain::uniform(1.0, 32);
    RandomFieldSpec spec;
    spec.domain = d;
    spec.sigma_s = {Distribution::uniform, 0.1, 2.0};
    spec.sigma_a = {Distribution::uniform, 0.05, 1.0};
    spec.seed = 4;
    for (int f = 0; f < 3; ++f) {
        const auto sigma = f == 0 ? std::vector<double>(32, 1.0)
                                  : sample_xsec(spec, f).total();
        const std::vector<double> g(32, 1.0);
        const auto sweep = transport_apply(d, sigma, double_gauss_legendre(128), g);
        const auto dense = assemble_k(d, sigma).apply(g);
        CHECK(rel_l2(sweep, dense) < 1e-4);
    }
}

TEST_CASE("full-range rule converges only algebraically")
{
    // psi jumps at mu = 0; a rule with a node cluster on each side of the
    // jump converges much faster than one straddling it.
    const auto d = SlabDomain::uniform(1.0, 32);
    const std::vector<double> s(32, 1.0), g(32, 1.0);
    const auto dense = assemble_k(d, s).apply(g);
    const double gl64 = rel_l2(transport_apply(d, s, gauss_legendre(64), g), dense);
    const double gl128 = rel_l2(transport_apply(d, s, gauss_legendre(128), g), dense);
    const double dgl128 =
        rel_l2(transport_apply(d, s, double_gauss_legendre(128), g), dense);
    // second order: doubling the angles divides the error by about four
    CHECK(gl64 / gl128 == doctest::Approx(4.0).epsilon(0.2));
    CHECK(dgl128 < 1e-8);
}
