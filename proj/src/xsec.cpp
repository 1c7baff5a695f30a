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

#include "slabrte/xsec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slabrte/random.hpp"

namespace slabrte {

namespace {

void require_positive(const std::vector<double>& v, int n, const char* name)
{
    if (static_cast<int>(v.size()) != n) {
        throw std::invalid_argument(std::string(name) + ": expected " +
                                    std::to_string(n) + " cell values, got " +
                                    std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
            throw std::invalid_argument(std::string(name) + "[" +
                                        std::to_string(i) +
                                        "] must be finite and > 0");
        }
    }
}

double draw(const CoefficientLaw& law, SplitMix64& rng)
{
    const double u = rng.unit();
    if (law.lo == law.hi) {
        return law.lo;
    }
    if (law.kind == Distribution::uniform) {
        return law.lo + (law.hi - law.lo) * u;
    }
    const double a = std::log(law.lo);
    const double b = std::log(law.hi);
    return std::exp(a + (b - a) * u);
}

void validate_law(const CoefficientLaw& law, const char* name)
{
    if (!(law.lo > 0.0) || !(law.lo <= law.hi) || !std::isfinite(law.hi)) {
        throw std::invalid_argument(std::string(name) +
                                    ": bounds must satisfy 0 < lo <= hi");
    }
}

std::vector<double> json_array(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw std::invalid_argument(std::string(key) +
                                    ": expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string(key) +
                                        ": expected an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

SlabDomain::SlabDomain(std::vector<double> breakpoints)
    : breakpoints_(std::move(breakpoints))
{
    if (breakpoints_.size() < 2) {
        throw std::invalid_argument("SlabDomain: need at least one cell");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i])) {
            throw std::invalid_argument("SlabDomain: non-finite breakpoint");
        }
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
            throw std::invalid_argument(
                "SlabDomain: breakpoints must be strictly increasing");
        }
    }
}

SlabDomain SlabDomain::uniform(double length, int n_cells)
{
    if (n_cells < 1 || !(length > 0.0)) {
        throw std::invalid_argument(
            "SlabDomain::uniform: need length > 0 and n_cells >= 1");
    }
    std::vector<double> x(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) {
        x[i] = length * static_cast<double>(i) / n_cells;
    }
    return SlabDomain(std::move(x));
}

std::vector<double> SlabDomain::widths() const
{
    std::vector<double> h(n_cells());
    for (int i = 0; i < n_cells(); ++i) {
        h[i] = width(i);
    }
    return h;
}

bool SlabDomain::is_uniform() const
{
    const double h0 = width(0);
    for (int i = 1; i < n_cells(); ++i) {
        if (std::abs(width(i) - h0) > 1e-12 * h0) {
            return false;
        }
    }
    return true;
}

int SlabDomain::locate(double x) const
{
    if (x < left() || x > right()) {
        throw std::invalid_argument("SlabDomain::locate: point outside domain");
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    int i = static_cast<int>(it - breakpoints_.begin()) - 1;
    return std::min(i, n_cells() - 1);
}

CrossSections::CrossSections(SlabDomain domain, std::vector<double> sigma_s,
                             std::vector<double> sigma_a,
                             std::optional<std::vector<double>> sigma_f)
    : domain_(std::move(domain)), sigma_s_(std::move(sigma_s)),
      sigma_a_(std::move(sigma_a)), sigma_f_(std::move(sigma_f))
{
    const int n = domain_.n_cells();
    require_positive(sigma_s_, n, "sigma_s");
    require_positive(sigma_a_, n, "sigma_a");
    if (sigma_f_) {
        require_positive(*sigma_f_, n, "sigma_f");
    }
}

CrossSections CrossSections::constant(SlabDomain domain, double sigma_s,
                                      double sigma_a,
                                      std::optional<double> sigma_f)
{
    const auto n = static_cast<std::size_t>(domain.n_cells());
    std::optional<std::vector<double>> f;
    if (sigma_f) {
        f = std::vector<double>(n, *sigma_f);
    }
    return CrossSections(std::move(domain), std::vector<double>(n, sigma_s),
                         std::vector<double>(n, sigma_a), std::move(f));
}

double CrossSections::total(int i) const
{
    double s = sigma_s_[i] + sigma_a_[i];
    if (sigma_f_) {
        s = sigma_s_[i] + (*sigma_f_)[i] + sigma_a_[i];
    }
    return s;
}

GridFunction CrossSections::total() const
{
    GridFunction s(n_cells());
    for (int i = 0; i < n_cells(); ++i) {
        s[i] = total(i);
    }
    return s;
}

double CrossSections::sigma_min() const
{
    double m = total(0);
    for (int i = 1; i < n_cells(); ++i) {
        m = std::min(m, total(i));
    }
    return m;
}

double scattering_ratio(const CrossSections& xs)
{
    double c = 0.0;
    for (int i = 0; i < xs.n_cells(); ++i) {
        c = std::max(c, xs.sigma_s()[i] / xs.total(i));
    }
    return c;
}

void RandomFieldSpec::validate() const
{
    validate_law(sigma_s, "sigma_s");
    validate_law(sigma_a, "sigma_a");
    if (sigma_f) {
        validate_law(*sigma_f, "sigma_f");
    }
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index)
{
    return mix64(mix64(base_seed) ^ (index + 0x632be59bd9b4e019ULL));
}

CrossSections sample_xsec(const RandomFieldSpec& spec,
                          std::uint64_t sample_index)
{
    spec.validate();
    SplitMix64 rng(derive_seed(spec.seed, sample_index));
    const auto n = static_cast<std::size_t>(spec.domain.n_cells());
    std::vector<double> s(n), a(n);
    std::optional<std::vector<double>> f;
    if (spec.sigma_f) {
        f.emplace(n);
    }
    // Fixed draw order: cell by cell, then s, a, f within a cell.
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = draw(spec.sigma_s, rng);
        a[i] = draw(spec.sigma_a, rng);
        if (f) {
            (*f)[i] = draw(*spec.sigma_f, rng);
        }
    }
    return CrossSections(spec.domain, std::move(s), std::move(a), std::move(f));
}

nlohmann::json to_json(const CrossSections& xs)
{
    nlohmann::json j;
    j["breakpoints"] = std::vector<double>(xs.domain().breakpoints().begin(),
                                           xs.domain().breakpoints().end());
    j["sigma_s"] = xs.sigma_s();
    j["sigma_a"] = xs.sigma_a();
    j["sigma_f"] = xs.sigma_f() ? nlohmann::json(*xs.sigma_f())
                                : nlohmann::json(nullptr);
    return j;
}

CrossSections cross_sections_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("cross sections: expected a JSON object");
    }
    SlabDomain domain(json_array(j, "breakpoints"));
    std::optional<std::vector<double>> f;
    if (j.contains("sigma_f") && !j.at("sigma_f").is_null()) {
        f = json_array(j, "sigma_f");
    }
    return CrossSections(std::move(domain), json_array(j, "sigma_s"),
                         json_array(j, "sigma_a"), std::move(f));
}

} // namespace slabrte
