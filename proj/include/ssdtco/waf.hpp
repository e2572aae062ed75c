/* Copyright 2026 The ssdtco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <span>
#include <string>
#include <vector>

namespace ssdtco {

// Raw write amplification as a piecewise function of the write sequential
// ratio S: linear up to the turning point, quadratic beyond it.
//
//   A(S) = alpha*S + beta                 S in [0, turning_point]
//   A(S) = eta*S^2 + mu*S + gamma         S in (turning_point, 1]
//
// Values are raw (>= 1), never normalized.
struct WafModel
{
    double alpha = 0.0;
    double beta = 1.0;
    double eta = 0.0;
    double mu = 0.0;
    double gamma = 1.0;
    double turning_point = 0.5;

    /// Sequentiality-independent model, A(S) = value everywhere.
    static WafModel constant(double value, double turning_point = 0.5);

    bool operator==(const WafModel&) const = default;
};

struct WafSample
{
    double seq_ratio = 0.0;
    double waf = 1.0;
};

/// Evaluates the model at \p s. Throws ErrorKind::domain for s outside
/// [0,1] and ErrorKind::ill_formed_model when the result is below 1.
double waf_eval(const WafModel& model, double s);

/// Unchecked evaluation, for plotting and model validation.
double waf_eval_unchecked(const WafModel& model, double s) noexcept;

/// Gap between the two branches at the turning point.
double continuity_gap(const WafModel& model) noexcept;

/// Smallest value of the model over [0,1] (closed form).
double waf_min(const WafModel& model) noexcept;

/// Largest value of the model over [0,1] (closed form).
double waf_max(const WafModel& model) noexcept;

/// True when the quadratic branch does not increase on (turning_point, 1].
bool quadratic_branch_decreasing(const WafModel& model, double tol = 1e-12) noexcept;

/// Human-readable list of violated model invariants; empty when well formed.
std::vector<std::string> model_violations(const WafModel& model);

/// Model value divided by its maximum over [0,1]; presentation only.
double normalized_waf(const WafModel& model, double s);

/// Default turning point grid {0.30, 0.35, ..., 0.70}.
std::vector<double> default_turning_grid();

struct WafFitOptions
{
    // Reject candidates whose quadratic branch increases instead of warning.
    bool strict = false;
};

struct WafCandidateFit
{
    double turning_point = 0.0;
    bool feasible = false;
    double sse = 0.0;
    WafModel model;
    std::string note;
};

struct WafFitResult
{
    WafModel model;
    double sse = 0.0;
    std::vector<WafCandidateFit> candidates;
    std::vector<std::string> warnings;
};

/// Least-squares fit of the piecewise model, one continuity-constrained fit
/// per candidate turning point; returns the candidate with the smallest
/// squared residual.
WafFitResult waf_fit_detailed(std::span<const WafSample> samples,
                              std::span<const double> turning_candidates,
                              const WafFitOptions& options = {});

WafModel waf_fit(std::span<const WafSample> samples,
                 std::span<const double> turning_candidates);

} // namespace ssdtco
