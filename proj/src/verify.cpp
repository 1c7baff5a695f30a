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

#include "slabrte/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slabrte/crit.hpp"
#include "slabrte/kernel.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/random.hpp"
#include "slabrte/solve.hpp"

namespace slabrte {

namespace {

enum class Sense { at_most, at_least };

// Tracks the worst instance of `measured (<= | >=) bound`.
class Tracker {
public:
    Tracker(std::string name, std::string statement, Sense sense)
        : sense_(sense)
    {
        cert_.name = std::move(name);
        cert_.statement = std::move(statement);
        cert_.margin = std::numeric_limits<double>::infinity();
    }

    void observe(double measured, double bound)
    {
        const double margin =
            sense_ == Sense::at_most ? bound - measured : measured - bound;
        ++cert_.instances;
        if (!(margin >= 0.0)) {
            ++cert_.failures;
        }
        if (!(margin >= cert_.margin)) {
            cert_.margin = margin;
            cert_.measured = measured;
            cert_.bound = bound;
        }
    }

    Certificate finish() const
    {
        Certificate c = cert_;
        c.pass = c.instances > 0 && c.failures == 0;
        return c;
    }

private:
    Sense sense_;
    Certificate cert_;
};

GridFunction random_source(std::uint64_t seed, int n)
{
    SplitMix64 rng(seed);
    GridFunction g(n);
    for (double& v : g) {
        v = rng.uniform(0.0, 1.0);
    }
    return g;
}

} // namespace

bool VerifyReport::all_pass() const
{
    return !certificates.empty() &&
           std::all_of(certificates.begin(), certificates.end(),
                       [](const Certificate& c) { return c.pass; });
}

VerifyReport run_verification(const VerifySettings& settings)
{
    Tracker pd("operator_L_positive_definite",
               "min eig of sigma^1/2 K sigma^1/2 > 0", Sense::at_least);
    Tracker lnorm("operator_L_norm_bound",
                  "max eig of sigma^1/2 K sigma^1/2 <= 1 + 1e-8",
                  Sense::at_most);
    Tracker knorm("weighted_norm_K_sigma_s",
                  "||K sigma_s||_{L2(sigma)} <= ||sigma_s/sigma||_inf + 1e-8",
                  Sense::at_most);
    Tracker ratios("source_iteration_contraction",
                   "every observed error ratio <= c + 1e-10", Sense::at_most);
    Tracker counts("source_iteration_count",
                   "iterations to tol 1e-10 <= ceil(log(tol/||e0||)/log c) + 2",
                   Sense::at_most);
    Tracker pure("pure_transport_flux_bound",
                 "||K g|| / (||g|| / sigma_min) <= 1 + 1e-10", Sense::at_most);
    Tracker rte("rte_flux_bound",
                "||phi|| / (||Q|| / (sigma_min (1 - c))) <= 1 + 1e-10",
                Sense::at_most);
    Tracker sharp("constant_coefficient_rate",
                  "asymptotic ratio <= c (1 - e^{-sigma d}) + 1e-3",
                  Sense::at_most);
    Tracker sharp_floor("constant_coefficient_rate_nonvacuous",
                        "asymptotic ratio > 0.2", Sense::at_least);
    Tracker crit("criticality_spectrum_positive",
                 "min eig of N > 1e-12 max eig; top-3 generalized residuals "
                 "<= 1e-6",
                 Sense::at_least);
    Tracker mapping("criticality_spectral_mapping",
                    "spectrum of M = mu / (1 - mu) over spectrum of L_sigma_s "
                    "within 1e-8",
                    Sense::at_most);
    Tracker keff("keff_power_iteration_matches_spectrum",
                 "|k_eff - max eig N| <= 1e-8", Sense::at_most);

    const double tol = 1e-10;
    for (int n : settings.grids) {
        RandomFieldSpec spec;
        spec.domain = SlabDomain::uniform(settings.length, n);
        spec.sigma_s = settings.sigma_s;
        spec.sigma_a = settings.sigma_a;
        spec.seed = derive_seed(settings.seed, static_cast<std::uint64_t>(n));
        for (int f = 0; f < settings.fields; ++f) {
            const CrossSections xs = sample_xsec(spec, f);
            const auto sigma = xs.total();
            const double c = scattering_ratio(xs);
            const DenseOperator k = assemble_k(xs.domain(), sigma);

            const auto eig = sym_eigenvalues(h_balanced(symmetrize(k, sigma)));
            pd.observe(eig.front(), 0.0);
            lnorm.observe(eig.back(), 1.0 + 1e-8);

            knorm.observe(weighted_opnorm_ksigma(k, xs, xs.sigma_s()),
                          c + 1e-8);

            const auto q_seed = derive_seed(spec.seed ^ 0x5eedULL, f);
            const GridFunction q = random_source(q_seed, n);
            const GridFunction phi = direct_solve(k, xs, q);
            const GridFunction zero(n, 0.0);
            const auto si = source_iteration(xs, dense_apply(k), q, zero, tol,
                                             100000, phi);
            for (const auto& r : si.trace.records) {
                if (r.ratio) {
                    ratios.observe(*r.ratio, c + 1e-10);
                }
            }
            const double e0 = weighted_norm(xs.domain(), phi, sigma);
            const double allowed =
                std::ceil(std::log(tol / e0) / std::log(c)) + 2.0;
            counts.observe(si.trace.converged ? si.trace.iterations
                                              : std::numeric_limits<double>::infinity(),
                           allowed);

            const GridFunction g = random_source(derive_seed(q_seed, 1), n);
            pure.observe(check_bound_pure(g, k.apply(g), xs).ratio,
                         1.0 + 1e-10);
            rte.observe(check_bound_rte(q, phi, xs).ratio, 1.0 + 1e-10);
        }
    }

    {
        const auto xs = CrossSections::constant(
            SlabDomain::uniform(1.0, settings.sharp_rate_cells), 0.5, 0.5);
        const int n = xs.n_cells();
        const GridFunction q(n, 1.0);
        const GridFunction zero(n, 0.0);
        const auto si = source_iteration(
            xs, sweep_apply(xs, make_quadrature(settings.sharp_rate_rule,
                                            settings.sharp_rate_angles)), q,
            zero, 1e-12, 10000);
        const double observed = si.trace.last_ratio().value_or(0.0);
        sharp.observe(observed, *si.trace.sharp_rate_constant_case + 1e-3);
        sharp_floor.observe(observed, 0.2);
    }

    RandomFieldSpec cspec;
    cspec.domain = SlabDomain::uniform(settings.length, settings.criticality_cells);
    cspec.sigma_s = settings.sigma_s;
    cspec.sigma_a = settings.sigma_a;
    cspec.sigma_f = settings.sigma_f;
    cspec.seed = derive_seed(settings.seed, 0xc417ULL);
    for (int f = 0; f < settings.criticality_fields; ++f) {
        const CrossSections xs = sample_xsec(cspec, f);
        const SpectrumReport rep = verify_spectrum_positive(xs);
        // Failing residuals are folded in as a negative measurement.
        crit.observe(rep.residuals_ok ? rep.min_eigenvalue : -1.0,
                     1e-12 * rep.max_eigenvalue);
        const DenseOperator ls = build_lsigs(xs);
        const auto mu = sym_eigenvalues(ls);
        const auto m_eig = sym_eigenvalues(build_m(ls));
        double worst = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            worst = std::max(worst, std::abs(m_eig[i] - mu[i] / (1.0 - mu[i])));
        }
        mapping.observe(worst, 1e-8);
        const auto res = keff_power_iteration(xs, 1e-12, 100000);
        keff.observe(std::abs(res.k_effective - rep.max_eigenvalue), 1e-8);
    }

    VerifyReport report;
    for (const Tracker* t : {&pd, &lnorm, &knorm, &ratios, &counts, &pure, &rte,
                             &sharp, &sharp_floor, &crit, &mapping,
                             &keff}) {
        report.certificates.push_back(t->finish());
    }
    return report;
}

nlohmann::json to_json(const VerifyReport& r)
{
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : r.certificates) {
        certs.push_back({{"name", c.name},
                         {"statement", c.statement},
                         {"pass", c.pass},
                         {"instances", c.instances},
                         {"failures", c.failures},
                         {"measured", c.measured},
                         {"bound", c.bound},
                         {"margin", c.margin}});
    }
    return {{"all_pass", r.all_pass()}, {"certificates", certs}};
}

} // namespace slabrte
