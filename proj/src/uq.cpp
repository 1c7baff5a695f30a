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

#include "slabrte/uq.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "slabrte/crit.hpp"
#include "slabrte/io.hpp"
#include "slabrte/kernel.hpp"
#include "slabrte/quad.hpp"
#include "slabrte/solve.hpp"

namespace slabrte {

Qoi parse_qoi(const std::string& s)
{
    if (s == "mean_flux") {
        return Qoi::mean_flux;
    }
    if (s == "probe_flux") {
        return Qoi::probe_flux;
    }
    if (s == "k_effective") {
        return Qoi::k_effective;
    }
    throw std::invalid_argument("unknown qoi '" + s +
                                "' (mean_flux | probe_flux | k_effective)");
}

std::string to_string(Qoi q)
{
    switch (q) {
    case Qoi::mean_flux:
        return "mean_flux";
    case Qoi::probe_flux:
        return "probe_flux";
    case Qoi::k_effective:
        return "k_effective";
    }
    return "?";
}

SolverPath parse_solver_path(const std::string& s)
{
    if (s == "dense") {
        return SolverPath::dense;
    }
    if (s == "sweep") {
        return SolverPath::sweep;
    }
    throw std::invalid_argument("unknown solver path '" + s +
                                "' (dense | sweep)");
}

std::string to_string(SolverPath p)
{
    return p == SolverPath::dense ? "dense" : "sweep";
}

void UqConfig::validate() const
{
    field.validate();
    if (samples < 1) {
        throw std::invalid_argument("uq: samples must be >= 1");
    }
    if (qoi == Qoi::probe_flux &&
        (probe_cell < 0 || probe_cell >= field.domain.n_cells())) {
        throw std::invalid_argument("uq: probe_cell outside the grid");
    }
    if (qoi == Qoi::k_effective && !field.sigma_f) {
        throw std::invalid_argument("uq: k_effective needs a sigma_f law");
    }
    if (path == SolverPath::sweep && (angles < 2 || angles % 2 != 0)) {
        throw std::invalid_argument("uq: angles must be even and >= 2");
    }
    if (!(tol > 0.0) || !(keff_tol > 0.0) || max_iter < 1) {
        throw std::invalid_argument("uq: tolerances must be > 0");
    }
    if (!std::isfinite(source)) {
        throw std::invalid_argument("uq: source must be finite");
    }
}

UqSample evaluate_sample(const UqConfig& config, std::uint64_t index)
{
    try {
        const CrossSections xs = sample_xsec(config.field, index);
        const int n = xs.n_cells();
        const GridFunction q(n, config.source);
        const GridFunction zero(n, 0.0);

        const DenseOperator k = assemble_k(xs.domain(), xs.total());
        const GridFunction direct = direct_solve(k, xs, q);

        SourceIterationResult si;
        if (config.path == SolverPath::dense) {
            si = source_iteration(xs, dense_apply(k), q, zero, config.tol,
                                  config.max_iter, direct);
        } else {
            si = source_iteration(
                xs, sweep_apply(xs, make_quadrature(config.rule, config.angles)), q, zero,
                config.tol, config.max_iter);
        }
        if (!si.trace.converged) {
            throw ConvergenceError("source iteration did not reach tol in " +
                                   std::to_string(config.max_iter) +
                                   " iterations");
        }

        UqSample s;
        s.index = index;
        s.c = scattering_ratio(xs);
        s.iterations = si.trace.iterations;
        s.max_obs_ratio = si.trace.max_ratio();
        s.ratio_pass = s.max_obs_ratio <= s.c + 1e-10;
        const GridFunction& phi =
            config.path == SolverPath::dense ? direct : si.phi;
        const BoundReport bound = check_bound_rte(q, phi, xs);
        s.bound_ratio = bound.ratio;
        s.bound_pass = bound.pass;

        switch (config.qoi) {
        case Qoi::mean_flux: {
            double integral = 0.0;
            for (int i = 0; i < n; ++i) {
                integral += xs.domain().width(i) * phi[i];
            }
            s.qoi = integral / xs.domain().diameter();
            break;
        }
        case Qoi::probe_flux:
            s.qoi = phi[config.probe_cell];
            break;
        case Qoi::k_effective:
            s.qoi = keff_power_iteration(xs, config.keff_tol, config.max_iter)
                        .k_effective;
            break;
        }
        return s;
    } catch (const UqSampleError&) {
        throw;
    } catch (const std::exception& e) {
        throw UqSampleError(index, e.what());
    }
}

UqResult aggregate(std::vector<UqSample> samples)
{
    std::sort(samples.begin(), samples.end(),
              [](const UqSample& a, const UqSample& b) {
                  return a.index < b.index;
              });
    UqResult r;
    r.samples = std::move(samples);
    const auto n = static_cast<double>(r.samples.size());
    if (r.samples.empty()) {
        return r;
    }
    // Shifted by the first value: a constant sample has exactly zero spread.
    const double shift = r.samples.front().qoi;
    double sum = 0.0;
    for (const auto& s : r.samples) {
        sum += s.qoi - shift;
    }
    r.mean = shift + sum / n;
    double ss = 0.0;
    r.worst_ratio_margin = r.samples.front().c - r.samples.front().max_obs_ratio;
    for (const auto& s : r.samples) {
        ss += (s.qoi - r.mean) * (s.qoi - r.mean);
        if (s.bound_pass && s.ratio_pass) {
            ++r.pass_count;
        }
        r.worst_ratio_margin =
            std::min(r.worst_ratio_margin, s.c - s.max_obs_ratio);
    }
    r.sd = r.samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    r.standard_error = r.sd / std::sqrt(n);
    return r;
}

UqResult run_uq(const UqConfig& config)
{
    config.validate();
    const auto total = static_cast<std::size_t>(config.samples);
    unsigned threads = config.threads > 0
                           ? static_cast<unsigned>(config.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    std::vector<UqSample> out(total);
    std::map<std::uint64_t, std::exception_ptr> failures;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                out[i] = evaluate_sample(config, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                failures.emplace(i, std::current_exception());
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (!failures.empty()) {
        std::rethrow_exception(failures.begin()->second);
    }
    return aggregate(std::move(out));
}

void write_samples_csv(std::ostream& os, const UqResult& r)
{
    os << "index,qoi,c,bound_ratio,max_obs_ratio\n";
    for (const auto& s : r.samples) {
        os << s.index << ',' << io::format_double(s.qoi) << ','
           << io::format_double(s.c) << ',' << io::format_double(s.bound_ratio)
           << ',' << io::format_double(s.max_obs_ratio) << '\n';
    }
}

nlohmann::json summary_json(const UqConfig& config, const UqResult& r)
{
    nlohmann::json j;
    j["qoi"] = to_string(config.qoi);
    j["samples"] = r.samples.size();
    j["seed"] = config.field.seed;
    j["cells"] = config.field.domain.n_cells();
    j["solver_path"] = to_string(config.path);
    if (config.path == SolverPath::sweep) {
        j["angles"] = config.angles;
        j["angular_rule"] = to_string(config.rule);
    }
    j["mean"] = r.mean;
    j["sd"] = r.sd;
    j["standard_error"] = r.standard_error;
    j["pass_count"] = r.pass_count;
    j["worst_ratio_margin"] = r.worst_ratio_margin;
    return j;
}

} // namespace slabrte
