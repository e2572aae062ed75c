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
#include "ssdtco/waf.hpp"

#include "ssdtco/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ssdtco {

namespace {

constexpr double kMinWafTolerance = 1e-12;
constexpr double kContinuityTolerance = 1e-9;
constexpr double kMonotoneTolerance = 1e-9; // slope

double quadratic(const WafModel& m, double s) noexcept
{
    return (m.eta * s + m.mu) * s + m.gamma;
}

double linear(const WafModel& m, double s) noexcept
{
    return m.alpha * s + m.beta;
}

// Extremes of the quadratic branch over (tp, 1]; the branch value at tp is
// the left limit, which continuity makes equal to the linear branch there.
template <class Pick>
double quadratic_extreme(const WafModel& m, Pick pick) noexcept
{
    double best = pick(quadratic(m, m.turning_point), quadratic(m, 1.0));
    if (m.eta != 0.0)
    {
        const double vertex = -m.mu / (2.0 * m.eta);
        if (vertex > m.turning_point && vertex < 1.0)
            best = pick(best, quadratic(m, vertex));
    }
    return best;
}

} // namespace

WafModel WafModel::constant(double value, double turning_point)
{
    return WafModel{0.0, value, 0.0, 0.0, value, turning_point};
}

double waf_eval_unchecked(const WafModel& model, double s) noexcept
{
    return s <= model.turning_point ? linear(model, s) : quadratic(model, s);
}

double waf_eval(const WafModel& model, double s)
{
    if (!(s >= 0.0 && s <= 1.0))
    {
        std::ostringstream msg;
        msg << "sequential ratio " << s << " outside [0,1]";
        throw Error(ErrorKind::domain, msg.str());
    }
    const double value = waf_eval_unchecked(model, s);
    if (value < 1.0 - kMinWafTolerance)
    {
        std::ostringstream msg;
        msg << "WAF model evaluates to " << value << " < 1 at S=" << s;
        throw Error(ErrorKind::ill_formed_model, msg.str());
    }
    return value;
}

double continuity_gap(const WafModel& model) noexcept
{
    return std::abs(linear(model, model.turning_point) - quadratic(model, model.turning_point));
}

double waf_min(const WafModel& m) noexcept
{
    const auto pick = [](double a, double b) { return std::min(a, b); };
    double lo = std::min(linear(m, 0.0), linear(m, m.turning_point));
    if (m.turning_point < 1.0)
        lo = std::min(lo, quadratic_extreme(m, pick));
    return lo;
}

double waf_max(const WafModel& m) noexcept
{
    const auto pick = [](double a, double b) { return std::max(a, b); };
    double hi = std::max(linear(m, 0.0), linear(m, m.turning_point));
    if (m.turning_point < 1.0)
        hi = std::max(hi, quadratic_extreme(m, pick));
    return hi;
}

bool quadratic_branch_decreasing(const WafModel& m, double tol) noexcept
{
    // The derivative 2*eta*s + mu is linear, so checking both ends suffices.
    const double d_lo = 2.0 * m.eta * m.turning_point + m.mu;
    const double d_hi = 2.0 * m.eta + m.mu;
    return d_lo <= tol && d_hi <= tol;
}

std::vector<std::string> model_violations(const WafModel& m)
{
    std::vector<std::string> out;
    if (!(m.turning_point >= 0.0 && m.turning_point <= 1.0))
        out.emplace_back("turning point outside [0,1]");
    if (continuity_gap(m) > kContinuityTolerance)
        out.emplace_back("branches disagree at the turning point");
    if (waf_min(m) < 1.0 - kMinWafTolerance)
        out.emplace_back("WAF below 1 inside [0,1]");
    if (waf_eval_unchecked(m, 1.0) > waf_eval_unchecked(m, 0.0) + kContinuityTolerance)
        out.emplace_back("WAF at S=1 exceeds WAF at S=0");
    return out;
}

double normalized_waf(const WafModel& model, double s)
{
    return waf_eval(model, s) / waf_max(model);
}

std::vector<double> default_turning_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i)
        grid.push_back(0.30 + 0.05 * i);
    return grid;
}

namespace {

// Substituting gamma = alpha*tp + beta - eta*tp^2 - mu*tp turns both branches
// into one linear model in (alpha, beta, eta, mu):
//   left : alpha*s  + beta
//   right: alpha*tp + beta + eta*(s^2 - tp^2) + mu*(s - tp)
// When beta is pinned the beta column moves to the right-hand side.
struct Design
{
    Eigen::MatrixXd a;
    Eigen::VectorXd y;
};

Design build_design(std::span<const WafSample> samples, double tp, bool pin_beta)
{
    const auto n = static_cast<Eigen::Index>(samples.size());
    Design d{Eigen::MatrixXd::Zero(n, pin_beta ? 3 : 4), Eigen::VectorXd::Zero(n)};
    for (Eigen::Index r = 0; r < n; ++r)
    {
        const double s = samples[static_cast<size_t>(r)].seq_ratio;
        const bool left = s <= tp;
        const double c_alpha = left ? s : tp;
        const double c_eta = left ? 0.0 : s * s - tp * tp;
        const double c_mu = left ? 0.0 : s - tp;
        double y = samples[static_cast<size_t>(r)].waf;
        if (pin_beta)
        {
            d.a.row(r) << c_alpha, c_eta, c_mu;
            y -= 1.0;
        }
        else
        {
            d.a.row(r) << c_alpha, 1.0, c_eta, c_mu;
        }
        d.y(r) = y;
    }
    return d;
}

WafModel model_from(const Eigen::VectorXd& x, double tp, bool pin_beta)
{
    WafModel m;
    m.turning_point = tp;
    m.alpha = x(0);
    m.beta = pin_beta ? 1.0 : x(1);
    m.eta = pin_beta ? x(1) : x(2);
    m.mu = pin_beta ? x(2) : x(3);
    m.gamma = m.alpha * tp + m.beta - m.eta * tp * tp - m.mu * tp;
    return m;
}

double sse_of(const WafModel& m, std::span<const WafSample> samples)
{
    double sse = 0.0;
    for (const auto& p : samples)
    {
        const double r = waf_eval_unchecked(m, p.seq_ratio) - p.waf;
        sse += r * r;
    }
    return sse;
}

// Returns false when the design is rank deficient.
bool solve(const Design& d, Eigen::VectorXd& x)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.a);
    if (qr.rank() < d.a.cols())
        return false;
    x = qr.solve(d.y);
    return true;
}

} // namespace

WafFitResult waf_fit_detailed(std::span<const WafSample> samples,
                              std::span<const double> turning_candidates,
                              const WafFitOptions& options)
{
    if (turning_candidates.empty())
        throw Error(ErrorKind::domain, "no turning point candidates");
    for (double tp : turning_candidates)
    {
        if (!(tp > 0.0 && tp < 1.0))
            throw Error(ErrorKind::domain, "turning point candidate outside (0,1)");
    }
    for (const auto& p : samples)
    {
        if (!(p.seq_ratio >= 0.0 && p.seq_ratio <= 1.0) || !(p.waf >= 1.0))
            throw Error(ErrorKind::malformed_input, "WAF sample outside seq_ratio in [0,1], waf >= 1");
    }
    if (samples.size() < 5)
        throw Error(ErrorKind::insufficient_data, "at least 5 WAF samples are required");

    WafFitResult result;
    bool any_determined = false;
    double best_sse = std::numeric_limits<double>::infinity();
    const WafCandidateFit* best = nullptr;

    for (double tp : turning_candidates)
    {
        WafCandidateFit cand;
        cand.turning_point = tp;

        const auto n_left = std::count_if(samples.begin(), samples.end(),
                                          [tp](const WafSample& p) { return p.seq_ratio <= tp; });
        const auto n_right = static_cast<std::ptrdiff_t>(samples.size()) - n_left;
        Eigen::VectorXd x;
        if (n_left < 2 || n_right < 2 || !solve(build_design(samples, tp, false), x))
        {
            cand.note = "insufficient samples on one side";
            result.candidates.push_back(cand);
            continue;
        }
        any_determined = true;

        cand.model = model_from(x, tp, false);
        if (cand.model.beta < 1.0)
        {
            if (!solve(build_design(samples, tp, true), x))
            {
                cand.note = "rank deficient after pinning beta";
                result.candidates.push_back(cand);
                continue;
            }
            cand.model = model_from(x, tp, true);
            cand.note = "beta clamped to 1";
        }
        cand.sse = sse_of(cand.model, samples);

        const auto violations = model_violations(cand.model);
        if (!violations.empty())
        {
            cand.note = violations.front();
            result.candidates.push_back(cand);
            continue;
        }
        if (!quadratic_branch_decreasing(cand.model, kMonotoneTolerance))
        {
            std::ostringstream msg;
            msg << "quadratic branch increases past turning point " << tp;
            cand.note = msg.str();
            if (options.strict)
            {
                result.candidates.push_back(cand);
                continue;
            }
        }
        cand.feasible = true;
        result.candidates.push_back(cand);
    }

    for (const auto& cand : result.candidates)
    {
        if (cand.feasible && cand.sse < best_sse)
        {
            best_sse = cand.sse;
            best = &cand;
        }
    }

    if (!any_determined)
        throw Error(ErrorKind::insufficient_data,
                    "every turning point candidate leaves fewer than 2 samples on one side");
    if (best == nullptr)
        throw Error(ErrorKind::infeasible_fit, "no candidate turning point yields a valid WAF model");

    result.model = best->model;
    result.sse = best->sse;
    if (!quadratic_branch_decreasing(result.model, kMonotoneTolerance))
        result.warnings.push_back(best->note);
    return result;
}

WafModel waf_fit(std::span<const WafSample> samples, std::span<const double> turning_candidates)
{
    return waf_fit_detailed(samples, turning_candidates).model;
}

} // namespace ssdtco
