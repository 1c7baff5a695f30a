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

#include "slabrte/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "slabrte/io.hpp"
#include "slabrte/quad.hpp"

namespace slabrte {

namespace {

constexpr double kPairTolerance = 1e-12;
constexpr int kMaxDepth = 12;

void check_sigma(const SlabDomain& domain, std::span<const double> sigma)
{
    if (sigma.size() != static_cast<std::size_t>(domain.n_cells())) {
        throw std::invalid_argument("kernel: one sigma value per cell");
    }
    for (double s : sigma) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("kernel: sigma must be finite and > 0");
        }
    }
}

// Tensor Gauss-Legendre of E1(t0 + u + v) over [u0,u1] x [v0,v1].
double tensor_gauss(const AngularQuadrature& rule, double t0, double u0,
                    double u1, double v0, double v1)
{
    const double hu = 0.5 * (u1 - u0);
    const double cu = 0.5 * (u1 + u0);
    const double hv = 0.5 * (v1 - v0);
    const double cv = 0.5 * (v1 + v0);
    double s = 0.0;
    for (int p = 0; p < rule.size(); ++p) {
        const double u = cu + hu * rule.nodes[p];
        double row = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
            row += rule.weights[q] * e1(t0 + u + cv + hv * rule.nodes[q]);
        }
        s += rule.weights[p] * row;
    }
    return s * hu * hv;
}

double adaptive_box(double t0, double u0, double u1, double v0, double v1,
                    int depth)
{
    static const AngularQuadrature coarse = gauss_legendre(8);
    static const AngularQuadrature fine = gauss_legendre(16);
    const double lo = tensor_gauss(coarse, t0, u0, u1, v0, v1);
    const double hi = tensor_gauss(fine, t0, u0, u1, v0, v1);
    if (std::abs(hi - lo) <= kPairTolerance * std::abs(hi)) {
        return hi;
    }
    if (depth >= kMaxDepth) {
        throw ConvergenceError(
            "assemble_k: cell-pair quadrature missed tolerance (t0 = " +
            io::format_double(t0) + ", box " + io::format_double(u1 - u0) +
            " x " + io::format_double(v1 - v0) + ")");
    }
    const double um = 0.5 * (u0 + u1);
    const double vm = 0.5 * (v0 + v1);
    return adaptive_box(t0, u0, um, v0, vm, depth + 1) +
           adaptive_box(t0, um, u1, v0, vm, depth + 1) +
           adaptive_box(t0, u0, um, vm, v1, depth + 1) +
           adaptive_box(t0, um, u1, vm, v1, depth + 1);
}

// int_0^a int_0^a E1(|u - v|) du dv = 2 (a - 1/2 + E3(a)).
double self_pair(double a) { return 2.0 * detail::e3_remainder(a); }

// int_0^a int_0^b E1(t + u + v) dv du for cells separated by optical
// thickness t.
double separated_pair(double t, double a, double b)
{
    if (t < a + b) {
        // Second difference of E3; linear part dropped.
        using detail::e3_remainder;
        return e3_remainder(t) - e3_remainder(t + a) - e3_remainder(t + b) +
               e3_remainder(t + a + b);
    }
    return adaptive_box(t, 0.0, a, 0.0, b, 0);
}

} // namespace

DenseOperator assemble_k(const SlabDomain& domain,
                         std::span<const double> sigma)
{
    check_sigma(domain, sigma);
    const int n = domain.n_cells();
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) {
        a[i] = sigma[i] * domain.width(i);
    }

    // Pair integrals in optical coordinates, then scaled:
    // K[i][j] = pair(i,j) / (2 h_i sigma_i sigma_j).
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = self_pair(a[i]) /
                  (2.0 * domain.width(i) * sigma[i] * sigma[i]);
        double gap = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double pair = separated_pair(gap, a[i], a[j]);
            m(i, j) = pair / (2.0 * domain.width(i) * sigma[i] * sigma[j]);
            m(j, i) = pair / (2.0 * domain.width(j) * sigma[i] * sigma[j]);
            gap += a[j];
        }
    }
    return DenseOperator{domain, std::move(m), domain.is_uniform()};
}

DenseOperator symmetrize(const DenseOperator& k, std::span<const double> sigma)
{
    if (static_cast<int>(sigma.size()) != k.size()) {
        throw std::invalid_argument("symmetrize: size mismatch");
    }
    std::vector<double> root(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] > 0.0)) {
            throw std::invalid_argument("symmetrize: sigma must be > 0");
        }
        root[i] = std::sqrt(sigma[i]);
    }
    DenseOperator l = k;
    for (int i = 0; i < k.size(); ++i) {
        for (int j = 0; j < k.size(); ++j) {
            l.matrix(i, j) = root[i] * k(i, j) * root[j];
        }
    }
    return l;
}

DenseOperator h_balanced(const DenseOperator& a)
{
    DenseOperator b = a;
    b.symmetric = true;
    if (a.domain.is_uniform()) {
        return b;
    }
    const int n = a.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            b.matrix(i, j) = std::sqrt(a.domain.width(i) / a.domain.width(j)) *
                             a(i, j);
        }
    }
    return b;
}

SymmetricEigen sym_eigen(const DenseOperator& a)
{
    const double asym = a.matrix.asymmetry();
    if (!a.symmetric || asym > 1e-8) {
        throw std::invalid_argument(
            "sym_eigenvalues: operator is not symmetric (asymmetry " +
            io::format_double(asym) + ")");
    }
    SymmetricEigen eig = jacobi_eigen(a.matrix);
    const int n = a.size();
    const double bound = 1e-10 * a.matrix.norm();
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            v[i] = eig.vectors(i, k);
        }
        const auto av = a.apply(v);
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = av[i] - eig.values[k] * v[i];
            r += d * d;
        }
        if (std::sqrt(r) > bound) {
            throw ConvergenceError("sym_eigenvalues: eigenpair residual " +
                                   io::format_double(std::sqrt(r)) +
                                   " above tolerance");
        }
    }
    return eig;
}

std::vector<double> sym_eigenvalues(const DenseOperator& a)
{
    return sym_eigen(a).values;
}

double weighted_opnorm_ksigma(const DenseOperator& k, const CrossSections& xs,
                              std::span<const double> sigstar)
{
    const int n = xs.n_cells();
    if (k.size() != n || static_cast<int>(sigstar.size()) != n) {
        throw std::invalid_argument("weighted_opnorm_ksigma: size mismatch");
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        if (!(sigstar[i] > 0.0)) {
            throw std::invalid_argument(
                "weighted_opnorm_ksigma: sigma* must be > 0");
        }
        w[i] = std::sqrt(xs.domain().width(i) * xs.total(i));
    }
    Matrix b(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            b(i, j) = w[i] * k(i, j) * sigstar[j] / w[j];
        }
    }
    const Matrix gram = b.transpose() * b;
    const auto eig = jacobi_eigen(gram);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

double weighted_opnorm_ksigma(const CrossSections& xs,
                              std::span<const double> sigstar)
{
    const auto sigma = xs.total();
    return weighted_opnorm_ksigma(assemble_k(xs.domain(), sigma), xs, sigstar);
}

void write_csv(std::ostream& os, const DenseOperator& a)
{
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            if (j > 0) {
                os << ',';
            }
            os << io::format_double(a(i, j));
        }
        os << '\n';
    }
}

} // namespace slabrte
