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

#include "slabrte/crit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slabrte/io.hpp"
#include "slabrte/solve.hpp"

namespace slabrte {

namespace {

constexpr int kMaxSpectrumCells = 256;

void require_fission(const CrossSections& xs)
{
    if (!xs.has_fission()) {
        throw std::invalid_argument(
            "criticality: cross-sections must include sigma_f");
    }
}

// Averages with the transpose after checking the asymmetry is round-off.
void make_symmetric(Matrix& m, const char* what)
{
    const double asym = m.asymmetry();
    if (asym > 1e-8) {
        throw std::runtime_error(std::string(what) +
                                 ": asymmetry " + io::format_double(asym) +
                                 " exceeds 1e-8");
    }
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = m(j, i) = avg;
        }
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Cell values phi from an eigenvector w of the balanced N.
GridFunction flux_from_w(const CrossSections& xs, std::span<const double> w)
{
    const int n = xs.n_cells();
    GridFunction phi(n);
    for (int i = 0; i < n; ++i) {
        phi[i] = w[i] / std::sqrt(xs.domain().width(i) * (*xs.sigma_f())[i]);
    }
    const double norm = l2_norm(xs.domain(), phi);
    double sum = 0.0;
    for (double v : phi) {
        sum += v;
    }
    const double scale = (sum < 0.0 ? -1.0 : 1.0) / norm;
    for (double& v : phi) {
        v *= scale;
    }
    return phi;
}

} // namespace

DenseOperator build_lsigs(const CrossSections& xs)
{
    require_fission(xs);
    const auto k = assemble_k(xs.domain(), xs.total());
    return h_balanced(symmetrize(k, xs.sigma_s()));
}

DenseOperator build_m(const DenseOperator& lsigs)
{
    const int n = lsigs.size();
    Matrix a = Matrix::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) -= lsigs(i, j);
        }
    }
    const LuFactorization lu(a);
    DenseOperator m{lsigs.domain, Matrix(n), true};
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            col[i] = lsigs(i, j);
        }
        const auto x = lu.solve(col);
        for (int i = 0; i < n; ++i) {
            m.matrix(i, j) = x[i];
        }
    }
    make_symmetric(m.matrix, "build_m");
    return m;
}

DenseOperator build_n(const DenseOperator& lsigs, const CrossSections& xs)
{
    require_fission(xs);
    const int n = xs.n_cells();
    if (lsigs.size() != n) {
        throw std::invalid_argument("build_n: operator/grid mismatch");
    }
    const DenseOperator m = build_m(lsigs);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = std::sqrt((*xs.sigma_f())[i] / xs.sigma_s()[i]);
    }
    DenseOperator out{xs.domain(), Matrix(n), true};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.matrix(i, j) = r[i] * m(i, j) * r[j];
        }
    }
    make_symmetric(out.matrix, "build_n");
    return out;
}

DenseOperator build_n(const CrossSections& xs)
{
    return build_n(build_lsigs(xs), xs);
}

CriticalityResult keff_power_iteration(const CrossSections& xs, double tol,
                                       int max_iter, bool with_spectrum)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("keff_power_iteration: tol must be > 0");
    }
    const DenseOperator nop = build_n(xs);
    const int n = nop.size();

    std::vector<double> w(n, 1.0);
    double nw = std::sqrt(dot(w, w));
    for (double& v : w) {
        v /= nw;
    }
    CriticalityResult res;
    double best = 0.0;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        const auto y = nop.apply(w);
        const double rq = dot(w, y); // ||w|| = 1
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            r2 += (y[i] - rq * w[i]) * (y[i] - rq * w[i]);
        }
        best = rq;
        res.residual = std::sqrt(r2);
        res.iterations = it;
        if (res.residual <= tol) {
            converged = true;
            break;
        }
        nw = std::sqrt(dot(y, y));
        for (int i = 0; i < n; ++i) {
            w[i] = y[i] / nw;
        }
    }
    if (!converged) {
        throw ConvergenceError(
            "keff_power_iteration: no convergence in " +
            std::to_string(max_iter) + " iterations; best k_effective " +
            io::format_double(best) + ", residual " +
            io::format_double(res.residual));
    }
    if (!(best > 0.0)) {
        throw std::runtime_error(
            "keff_power_iteration: nonpositive dominant eigenvalue");
    }
    res.k_effective = best;
    res.lambda_fundamental = 1.0 / best;
    res.eigenvector = flux_from_w(xs, w);
    if (with_spectrum) {
        if (n > kMaxSpectrumCells) {
            throw std::invalid_argument(
                "keff_power_iteration: full spectrum limited to 256 cells");
        }
        res.full_spectrum_of_n = sym_eigenvalues(nop);
    }
    return res;
}

SpectrumReport verify_spectrum_positive(const CrossSections& xs)
{
    require_fission(xs);
    const int n = xs.n_cells();
    if (n > kMaxSpectrumCells) {
        throw std::invalid_argument(
            "verify_spectrum_positive: at most 256 cells");
    }
    const DenseOperator lsigs = build_lsigs(xs);
    const DenseOperator nop = build_n(lsigs, xs);
    const SymmetricEigen eig = sym_eigen(nop);

    SpectrumReport rep;
    rep.spectrum = eig.values;
    rep.min_eigenvalue = eig.values.front();
    rep.max_eigenvalue = eig.values.back();
    rep.all_positive =
        rep.min_eigenvalue > 0.0 && rep.min_eigenvalue > 1e-12 * rep.max_eigenvalue;

    // Residuals in the original (unsymmetrized) generalized form.
    const DenseOperator k = assemble_k(xs.domain(), xs.total());
    const auto& ss = xs.sigma_s();
    const auto& sf = *xs.sigma_f();
    rep.residuals_ok = true;
    const int pairs = std::min(3, n);
    for (int p = 0; p < pairs; ++p) {
        const int col = n - 1 - p;
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) {
            w[i] = eig.vectors(i, col);
        }
        const GridFunction phi = flux_from_w(xs, w);
        GeneralizedPair gp;
        gp.lambda = 1.0 / eig.values[col];
        GridFunction sphi(n), fphi(n);
        for (int i = 0; i < n; ++i) {
            sphi[i] = ss[i] * phi[i];
            fphi[i] = sf[i] * phi[i];
        }
        const auto ks = k.apply(sphi);
        const auto kf = k.apply(fphi);
        GridFunction r(n);
        for (int i = 0; i < n; ++i) {
            r[i] = phi[i] - ks[i] - gp.lambda * kf[i];
        }
        gp.residual = l2_norm(xs.domain(), r);
        rep.residuals_ok = rep.residuals_ok && gp.residual <= 1e-6;
        rep.top_pairs.push_back(gp);
    }
    rep.pass = rep.all_positive && rep.residuals_ok;
    return rep;
}

nlohmann::json to_json(const CriticalityResult& r)
{
    nlohmann::json j;
    j["lambda"] = r.lambda_fundamental;
    j["k_effective"] = r.k_effective;
    j["residual"] = r.residual;
    j["spectrum"] = r.full_spectrum_of_n ? nlohmann::json(*r.full_spectrum_of_n)
                                         : nlohmann::json::array();
    j["eigenvector"] = r.eigenvector;
    return j;
}

} // namespace slabrte
