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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

namespace slabrte {

/// Per-cell values on a slab grid: sources, scalar fluxes, coefficients.
/// Length always equals the cell count of the grid it lives on.
using GridFunction = std::vector<double>;

/// The interval [x_0, x_n] partitioned into n cells.
class SlabDomain {
public:
    /// Throws std::invalid_argument unless the breakpoints are strictly
    /// increasing and describe at least one cell.
    explicit SlabDomain(std::vector<double> breakpoints);

    /// n equal cells on [0, length].
    static SlabDomain uniform(double length, int n_cells);

    int n_cells() const { return static_cast<int>(breakpoints_.size()) - 1; }
    double left() const { return breakpoints_.front(); }
    double right() const { return breakpoints_.back(); }
    double diameter() const { return right() - left(); }

    double width(int i) const { return breakpoints_[i + 1] - breakpoints_[i]; }
    double midpoint(int i) const
    {
        return 0.5 * (breakpoints_[i] + breakpoints_[i + 1]);
    }
    std::vector<double> widths() const;
    std::span<const double> breakpoints() const { return breakpoints_; }

    /// Cell widths agree to a relative 1e-12.
    bool is_uniform() const;

    /// Index of the cell containing x; interior breakpoints belong to the
    /// cell on their right, the right end to the last cell.
    int locate(double x) const;

    bool operator==(const SlabDomain&) const = default;

private:
    std::vector<double> breakpoints_;
};

/// Piecewise-constant cross-sections. The total is always derived from
/// its parts: sigma = sigma_s + sigma_a (+ sigma_f when fission is present).
class CrossSections {
public:
    CrossSections(SlabDomain domain, std::vector<double> sigma_s,
                  std::vector<double> sigma_a,
                  std::optional<std::vector<double>> sigma_f = std::nullopt);

    /// Constant coefficients on every cell of `domain`.
    static CrossSections constant(SlabDomain domain, double sigma_s,
                                  double sigma_a,
                                  std::optional<double> sigma_f = std::nullopt);

    const SlabDomain& domain() const { return domain_; }
    int n_cells() const { return domain_.n_cells(); }

    const std::vector<double>& sigma_s() const { return sigma_s_; }
    const std::vector<double>& sigma_a() const { return sigma_a_; }
    const std::optional<std::vector<double>>& sigma_f() const
    {
        return sigma_f_;
    }
    bool has_fission() const { return sigma_f_.has_value(); }

    double total(int i) const;
    GridFunction total() const;
    double sigma_min() const;

    bool operator==(const CrossSections&) const = default;

private:
    SlabDomain domain_;
    std::vector<double> sigma_s_;
    std::vector<double> sigma_a_;
    std::optional<std::vector<double>> sigma_f_;
};

/// max_i sigma_s[i] / sigma[i]; lies in (0, 1) for any valid field.
double scattering_ratio(const CrossSections& xs);

enum class Distribution { uniform, log_uniform };

struct CoefficientLaw {
    Distribution kind = Distribution::uniform;
    double lo = 1.0;
    double hi = 1.0;
};

/// Independent per-cell random cross-sections on a fixed grid.
struct RandomFieldSpec {
    SlabDomain domain = SlabDomain::uniform(1.0, 16);
    CoefficientLaw sigma_s;
    CoefficientLaw sigma_a;
    std::optional<CoefficientLaw> sigma_f;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless 0 < lo <= hi for every law.
    void validate() const;
};

/// Stream seed for sample `index`; a pure function of both arguments.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Realization `sample_index` of `spec`. Pure in (spec, sample_index).
CrossSections sample_xsec(const RandomFieldSpec& spec,
                          std::uint64_t sample_index);

/// {"breakpoints":[...], "sigma_s":[...], "sigma_a":[...], "sigma_f":[...]|null}
nlohmann::json to_json(const CrossSections& xs);
CrossSections cross_sections_from_json(const nlohmann::json& j);

} // namespace slabrte
