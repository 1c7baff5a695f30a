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

// Acceptance suite. Runs each acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "slabrte/crit.hpp"
#include "slabrte/io.hpp"
#include "slabrte/kernel.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/random.hpp"
#include "slabrte/solve.hpp"
#include "slabrte/uq.hpp"

using namespace slabrte;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const std::vector<int> kGrids{8, 16, 32};
constexpr int kFields = 100;

RandomFieldSpec sweep_spec(int n)
{
    RandomFieldSpec spec;
    spec.domain = SlabDomain::uniform(1.0, n);
    spec.sigma_s = {Distribution::uniform, 0.1, 2.0};
    spec.sigma_a = {Distribution::uniform, 0.05, 1.0};
    spec.seed = derive_seed(20260601, n);
    return spec;
}

GridFunction random_source(std::uint64_t seed, int n)
{
    SplitMix64 rng(seed);
    GridFunction g(n);
    for (double& v : g) {
        v = rng.uniform(0.0, 1.0);
    }
    return g;
}

// Calls body(xs, k, field index) for every field of the randomized sweep.
void for_each_field(
    const std::function<void(const CrossSections&, const DenseOperator&, int)>& body)
{
    for (int n : kGrids) {
        const auto spec = sweep_spec(n);
        for (int f = 0; f < kFields; ++f) {
            const auto xs = sample_xsec(spec, f);
            body(xs, assemble_k(xs.domain(), xs.total()), f);
        }
    }
}

Outcome positive_definite()
{
    double lo = INFINITY, hi = -INFINITY;
    int count = 0;
    for_each_field([&](const CrossSections& xs, const DenseOperator& k, int) {
        const auto ev = sym_eigenvalues(symmetrize(k, xs.total()));
        lo = std::min(lo, ev.front());
        hi = std::max(hi, ev.back());
        ++count;
    });
    return {lo > 0.0 && hi <= 1.0 + 1e-8,
            std::to_string(count) + " fields, min eig " + fmt("%.3e", lo) +
                " > 0, max eig " + fmt("%.6f", hi) + " <= 1 + 1e-8"};
}

Outcome weighted_norm_bound()
{
    double worst = INFINITY;
    for_each_field([&](const CrossSections& xs, const DenseOperator& k, int) {
        const double m = weighted_opnorm_ksigma(k, xs, xs.sigma_s());
        worst = std::min(worst, scattering_ratio(xs) + 1e-8 - m);
    });
    return {worst >= 0.0, "min margin (c + 1e-8) - ||K sigma_s|| = " + fmt("%.3e", worst)};
}

Outcome contraction()
{
    const double tol = 1e-10;
    double ratio_margin = INFINITY;
    double count_margin = INFINITY;
    bool all_converged = true;
    for_each_field([&](const CrossSections& xs, const DenseOperator& k, int f) {
        const int n = xs.n_cells();
        const auto q = random_source(derive_seed(n, f), n);
        const auto phi = direct_solve(k, xs, q);
        const GridFunction zero(n, 0.0);
        const auto si = source_iteration(xs, dense_apply(k), q, zero, tol, 100000, phi);
        const double c = scattering_ratio(xs);
        ratio_margin = std::min(ratio_margin, c + 1e-10 - si.trace.max_ratio());
        const double e0 = weighted_norm(xs.domain(), phi, xs.total());
        const double allowed = std::ceil(std::log(tol / e0) / std::log(c)) + 2.0;
        all_converged = all_converged && si.trace.converged;
        count_margin = std::min(count_margin, allowed - si.trace.iterations);
    });
    return {all_converged && ratio_margin >= 0.0 && count_margin >= 0.0,
            "min ratio margin " + fmt("%.3e", ratio_margin) +
                ", min iteration-count slack " + fmt("%.0f", count_margin)};
}

Outcome sharp_rate()
{
    const auto xs = CrossSections::constant(SlabDomain::uniform(1.0, 64), 0.5, 0.5);
    const GridFunction q(64, 1.0), zero(64, 0.0);
    const auto si = source_iteration(
        xs, sweep_apply(xs, double_gauss_legendre(128)), q, zero, 1e-12, 10000);
    // Ratio at the last step still well above round-off.
    double observed = 0.0;
    for (const auto& r : si.trace.records) {
        if (r.ratio && r.error_norm >= 1e-10) {
            observed = *r.ratio;
        }
    }
    const double bound = 0.5 * (1.0 - std::exp(-1.0)) + 1e-3;
    return {si.trace.converged && observed <= bound && observed > 0.2,
            "asymptotic ratio " + fmt("%.6f", observed) + " in (0.2, " +
                fmt("%.6f", bound) + "]"};
}

Outcome equivalence()
{
    double worst_direct = 0.0;
    double worst_mf = 0.0;
    bool converged = true;
    auto rel_diff = [](const CrossSections& xs, const GridFunction& a,
                       const GridFunction& b, bool weighted) {
        GridFunction d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            d[i] = a[i] - b[i];
        }
        return weighted ? weighted_norm(xs.domain(), d, xs.total())
                        : l2_norm(xs.domain(), d) / l2_norm(xs.domain(), b);
    };
    const auto spec = sweep_spec(32);
    for (int f = -1; f < 10; ++f) {
        const auto xs = f < 0 ? CrossSections::constant(spec.domain, 0.5, 0.5)
                              : sample_xsec(spec, f);
        const auto k = assemble_k(xs.domain(), xs.total());
        const GridFunction q(32, 1.0), zero(32, 0.0);
        const auto direct = direct_solve(k, xs, q);
        const auto si = source_iteration(xs, dense_apply(k), q, zero, 1e-12, 100000);
        const auto mf = source_iteration(
            xs, sweep_apply(xs, double_gauss_legendre(128)), q, zero, 1e-12, 100000);
        converged = converged && si.trace.converged && mf.trace.converged;
        worst_direct = std::max(worst_direct, rel_diff(xs, si.phi, direct, true));
        worst_mf = std::max(worst_mf, rel_diff(xs, mf.phi, si.phi, false));
    }
    return {converged && worst_direct <= 1e-10 && worst_mf <= 2e-4,
            "iteration vs direct " + fmt("%.3e", worst_direct) +
                " <= 1e-10 (sigma-weighted), matrix-free vs dense " +
                fmt("%.3e", worst_mf) + " <= 2e-4 (relative)"};
}

Outcome flux_bounds()
{
    double worst_pure = 0.0, worst_rte = 0.0;
    int instances = 0;
    for_each_field([&](const CrossSections& xs, const DenseOperator& k, int f) {
        const int n = xs.n_cells();
        const auto g = random_source(derive_seed(1000 + n, f), n);
        worst_pure = std::max(worst_pure, check_bound_pure(g, k.apply(g), xs).ratio);
        const auto q = random_source(derive_seed(2000 + n, f), n);
        worst_rte = std::max(worst_rte, check_bound_rte(q, direct_solve(k, xs, q), xs).ratio);
        ++instances;
    });
    return {worst_pure <= 1.0 + 1e-10 && worst_rte <= 1.0 + 1e-10,
            std::to_string(instances) + " instances, worst ratio pure " +
                fmt("%.6f", worst_pure) + ", rte " + fmt("%.6f", worst_rte) +
                " <= 1 + 1e-10"};
}

Outcome criticality()
{
    RandomFieldSpec spec;
    spec.domain = SlabDomain::uniform(1.0, 16);
    spec.sigma_s = {Distribution::uniform, 0.1, 2.0};
    spec.sigma_a = {Distribution::uniform, 0.05, 1.0};
    spec.sigma_f = CoefficientLaw{Distribution::uniform, 0.05, 0.5};
    spec.seed = 4242;
    int positive = 0;
    double keff_err = 0.0, map_err = 0.0, residual = 0.0;
    for (int f = 0; f < 50; ++f) {
        const auto xs = sample_xsec(spec, f);
        const auto rep = verify_spectrum_positive(xs);
        if (rep.min_eigenvalue > 0.0 && rep.all_positive) {
            ++positive;
        }
        for (const auto& p : rep.top_pairs) {
            residual = std::max(residual, p.residual);
        }
        const auto power = keff_power_iteration(xs, 1e-12, 100000);
        keff_err = std::max(keff_err, std::abs(power.k_effective - rep.max_eigenvalue));
        const auto ls = build_lsigs(xs);
        const auto mu = sym_eigenvalues(ls);
        const auto m = sym_eigenvalues(build_m(ls));
        for (std::size_t i = 0; i < mu.size(); ++i) {
            map_err = std::max(map_err, std::abs(m[i] - mu[i] / (1.0 - mu[i])));
        }
    }
    return {positive == 50 && keff_err <= 1e-8 && map_err <= 1e-8 && residual <= 1e-6,
            std::to_string(positive) + "/50 spectra positive, |k_eff - max eig| " +
                fmt("%.2e", keff_err) + ", spectral mapping " + fmt("%.2e", map_err) +
                ", generalized residual " + fmt("%.2e", residual)};
}

Outcome e1_accuracy()
{
    double worst = 0.0;
    int bracket_fail = 0;
    for (int k = 0; k < 200; ++k) {
        const double x = 1e-6 * std::pow(50.0 / 1e-6, k / 199.0);
        const double ref = boost::math::expint(1, x);
        const double got = e1(x);
        worst = std::max(worst, std::abs(got - ref) / ref);
        const double b = x * std::exp(x) * got;
        if (!(b > x / (x + 1.0) && b < 1.0)) {
            ++bracket_fail;
        }
    }
    return {worst <= 1e-12 && bracket_fail == 0,
            "max relative error " + fmt("%.2e", worst) + " <= 1e-12, bracketing failures " +
                std::to_string(bracket_fail)};
}

Outcome uq_determinism()
{
    UqConfig c;
    c.field.domain = SlabDomain::uniform(1.0, 16);
    c.field.sigma_s = {Distribution::uniform, 0.4, 0.6};
    c.field.sigma_a = {Distribution::uniform, 0.4, 0.6};
    c.field.seed = 77;
    c.samples = 200;
    c.source = 1.0;
    auto render = [&](const UqResult& r) {
        std::ostringstream os;
        write_samples_csv(os, r);
        return os.str() + io::dump_json(summary_json(c, r));
    };
    const auto a = run_uq(c);
    const auto b = run_uq(c);
    const bool same = render(a) == render(b);
    return {same && a.pass_count == 200,
            std::string(same ? "byte-identical" : "DIFFERENT") + " repeated output, " +
                std::to_string(a.pass_count) + "/200 samples pass"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"operator L positive definite, norm <= 1", positive_definite},
        {"weighted norm of K sigma_s <= max sigma_s/sigma", weighted_norm_bound},
        {"source iteration ratios and iteration counts", contraction},
        {"constant-coefficient contraction rate", sharp_rate},
        {"fixed-point / direct / matrix-free equivalence", equivalence},
        {"flux bounds for pure transport and the RTE", flux_bounds},
        {"criticality spectrum real and positive", criticality},
        {"E1 accuracy and bracketing", e1_accuracy},
        {"UQ determinism and per-sample certificates", uq_determinism},
    };
    int passed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        passed += o.pass;
        std::printf("%s criterion %d: %s -- %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index,
                    name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
