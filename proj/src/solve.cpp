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

#include "slabrte/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "slabrte/io.hpp"
#include "slabrte/sweep.hpp"

namespace slabrte {

namespace {

void check_length(const CrossSections& xs, std::span<const double> v,
                  const char* what)
{
    if (static_cast<int>(v.size()) != xs.n_cells()) {
        throw std::invalid_argument(std::string(what) +
                                    ": expected one value per cell");
    }
}

bool is_constant(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(),
                       [&](double x) { return x == v.front(); });
}

BoundReport make_report(double lhs, double rhs)
{
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0) {
        r.ratio = lhs / rhs;
    } else {
        r.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    r.pass = r.ratio <= 1.0 + 1e-10;
    return r;
}

} // namespace

ApplyK dense_apply(DenseOperator k)
{
    return [k = std::move(k)](std::span<const double> g) { return k.apply(g); };
}

ApplyK sweep_apply(CrossSections xs, AngularQuadrature quad)
{
    auto sigma = xs.total();
    return [domain = xs.domain(), sigma = std::move(sigma),
            quad = std::move(quad)](std::span<const double> g) {
        return transport_apply(domain, sigma, quad, g);
    };
}

double weighted_norm(const SlabDomain& domain, std::span<const double> v,
                     std::span<const double> w)
{
    const auto n = static_cast<std::size_t>(domain.n_cells());
    if (v.size() != n || w.size() != n) {
        throw std::invalid_argument("weighted_norm: length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w[i] > 0.0)) {
            throw std::invalid_argument("weighted_norm: weights must be > 0");
        }
        s += domain.width(static_cast<int>(i)) * w[i] * v[i] * v[i];
    }
    return std::sqrt(s);
}

double l2_norm(const SlabDomain& domain, std::span<const double> v)
{
    const std::vector<double> ones(v.size(), 1.0);
    return weighted_norm(domain, v, ones);
}

double IterationTrace::max_ratio() const
{
    double m = 0.0;
    for (const auto& r : records) {
        if (r.ratio) {
            m = std::max(m, *r.ratio);
        }
    }
    return m;
}

std::optional<double> IterationTrace::last_ratio() const
{
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        if (it->ratio) {
            return it->ratio;
        }
    }
    return std::nullopt;
}

SourceIterationResult source_iteration(const CrossSections& xs,
                                       const ApplyK& apply_k,
                                       std::span<const double> q,
                                       std::span<const double> phi0, double tol,
                                       int max_iter,
                                       std::optional<GridFunction> reference)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("source_iteration: tol must be > 0");
    }
    if (max_iter < 0) {
        throw std::invalid_argument("source_iteration: max_iter must be >= 0");
    }
    check_length(xs, q, "source_iteration: Q");
    check_length(xs, phi0, "source_iteration: phi0");
    if (reference) {
        check_length(xs, *reference, "source_iteration: reference");
    }

    const auto& domain = xs.domain();
    const auto sigma = xs.total();
    const auto& sigma_s = xs.sigma_s();
    const int n = xs.n_cells();

    SourceIterationResult out;
    IterationTrace& trace = out.trace;
    trace.theoretical_rate = scattering_ratio(xs);
    if (is_constant(sigma) && is_constant(sigma_s)) {
        trace.sharp_rate_constant_case =
            trace.theoretical_rate * -std::expm1(-sigma[0] * domain.diameter());
    }
    trace.errors_vs_reference = reference.has_value();

    auto record = [&](double err) {
        IterationRecord r;
        r.iter = static_cast<int>(trace.records.size());
        r.error_norm = err;
        if (!trace.records.empty() && trace.records.back().error_norm > 0.0) {
            r.ratio = err / trace.records.back().error_norm;
        }
        trace.records.push_back(r);
    };
    auto distance = [&](std::span<const double> a, std::span<const double> b) {
        GridFunction d(n);
        for (int i = 0; i < n; ++i) {
            d[i] = a[i] - b[i];
        }
        return weighted_norm(domain, d, sigma);
    };

    GridFunction phi(phi0.begin(), phi0.end());
    if (reference) {
        record(distance(*reference, phi));
    }
    GridFunction rhs(n);
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < n; ++i) {
            rhs[i] = sigma_s[i] * phi[i] + q[i];
        }
        GridFunction next = apply_k(rhs);
        if (static_cast<int>(next.size()) != n) {
            throw std::invalid_argument(
                "source_iteration: operator returned wrong length");
        }
        const double step = distance(next, phi);
        phi = std::move(next);
        trace.iterations = it + 1;
        record(reference ? distance(*reference, phi) : step);
        if (step <= tol) {
            trace.converged = true;
            break;
        }
    }
    out.phi = std::move(phi);
    return out;
}

GridFunction direct_solve(const DenseOperator& k, const CrossSections& xs,
                          std::span<const double> q)
{
    const int n = xs.n_cells();
    if (k.size() != n) {
        throw std::invalid_argument("direct_solve: operator/grid mismatch");
    }
    check_length(xs, q, "direct_solve: Q");
    Matrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) - k(i, j) * xs.sigma_s()[j];
        }
    }
    const GridFunction b = k.apply(q);
    const LuFactorization lu(a);
    GridFunction phi = lu.solve(b);
    const auto ax = a.apply(phi);
    GridFunction r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = b[i] - ax[i];
    }
    const auto dx = lu.solve(r);
    for (int i = 0; i < n; ++i) {
        phi[i] += dx[i];
    }
    return phi;
}

double direct_residual(const DenseOperator& k, const CrossSections& xs,
                       std::span<const double> q, std::span<const double> phi)
{
    const int n = xs.n_cells();
    const auto kq = k.apply(q);
    GridFunction sp(n);
    for (int i = 0; i < n; ++i) {
        sp[i] = xs.sigma_s()[i] * phi[i];
    }
    const auto ksp = k.apply(sp);
    GridFunction r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = phi[i] - ksp[i] - kq[i];
    }
    const double rn = l2_norm(xs.domain(), r);
    const double bn = l2_norm(xs.domain(), kq);
    if (bn == 0.0) {
        return rn;
    }
    return rn / bn;
}

BoundReport check_bound_pure(std::span<const double> g,
                             std::span<const double> phi,
                             const CrossSections& xs)
{
    check_length(xs, g, "check_bound_pure: g");
    check_length(xs, phi, "check_bound_pure: phi");
    return make_report(l2_norm(xs.domain(), phi),
                       l2_norm(xs.domain(), g) / xs.sigma_min());
}

BoundReport check_bound_rte(std::span<const double> q,
                            std::span<const double> phi,
                            const CrossSections& xs)
{
    check_length(xs, q, "check_bound_rte: Q");
    check_length(xs, phi, "check_bound_rte: phi");
    const double c = scattering_ratio(xs);
    return make_report(l2_norm(xs.domain(), phi),
                       l2_norm(xs.domain(), q) / (xs.sigma_min() * (1.0 - c)));
}

nlohmann::json to_json(const BoundReport& r)
{
    return {{"lhs", r.lhs},
            {"rhs", r.rhs},
            {"ratio", r.ratio},
            {"pass", r.pass}};
}

void write_csv(std::ostream& os, const IterationTrace& trace)
{
    os << "iter,error_norm,ratio,theoretical_rate,sharp_rate\n";
    for (const auto& r : trace.records) {
        os << r.iter << ',' << io::format_double(r.error_norm) << ','
           << (r.ratio ? io::format_double(*r.ratio) : std::string()) << ','
           << io::format_double(trace.theoretical_rate) << ','
           << (trace.sharp_rate_constant_case
                   ? io::format_double(*trace.sharp_rate_constant_case)
                   : std::string())
           << '\n';
    }
}

} // namespace slabrte
