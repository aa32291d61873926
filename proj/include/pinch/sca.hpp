// pinch: simulation library for dielectric-waveguide pinching-antenna systems
// Copyright (C) 2026 The pinch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Safeguarded successive convex approximation for max-min objectives over
// pinch positions on one waveguide.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pinch/types.hpp"

namespace pinch {

/// Euclidean projection onto {x : lo <= x_1, x_n - x_{n-1} >= spacing, x_N <= hi}.
/// Throws InfeasibleError when (N - 1) spacing exceeds hi - lo.
Eigen::VectorXd project_spaced(const Eigen::VectorXd &z, double spacing, double lo, double hi);

/// True when `x` is inside the spaced set up to `slack`.
bool is_spaced(const Eigen::VectorXd &x, double spacing, double lo, double hi, double slack = 1e-12);

struct ScaOptions
{
    int max_iterations = 200;
    double initial_step = 1e-3;  // m, largest coordinate move of the first trial step
    double max_step = 0.5;       // m
    double min_step = 1e-10;     // m, stop once trial moves shrink below this
    double tolerance = 1e-12;    // relative improvement below which a step counts as stalled
    int stall_limit = 8;
    int dual_iterations = 60;
};

struct ScaResult
{
    Eigen::VectorXd x;
    double objective;
    std::vector<double> history; // objective after every iteration, non-decreasing
    bool converged;
};

/// Maximise min_m f_m(x) over the spaced set. `eval(x)` returns the pair
/// (values f(x), Jacobian rows df_m/dx). Each iteration solves the proximal
/// linearised surrogate
///   max_x min_m [f_m(x0) + g_m (x - x0)] - |x - x0|^2 / (2 rho)
/// through its dual over the simplex, where x(lambda) = Proj(x0 + rho G^T lambda).
/// A trial point is accepted only if the true objective improves; otherwise
/// the step is halved.
template <typename Eval>
ScaResult sca_maxmin(Eval &&eval, Eigen::VectorXd x0, double spacing, double lo, double hi,
                     const ScaOptions &opt = {})
{
    x0 = project_spaced(x0, spacing, lo, hi);
    auto [f0, G] = eval(x0);
    double best = f0.minCoeff();
    ScaResult out{x0, best, {best}, false};
    double step = opt.initial_step;
    int stalled = 0;

    for (int it = 0; it < opt.max_iterations; ++it)
    {
        const double gmax = G.cwiseAbs().maxCoeff();
        if (!(gmax > 0) || step < opt.min_step)
        {
            out.converged = true;
            break;
        }
        const double rho = step / gmax;
        const Eigen::Index M = f0.size();

        auto surrogate = [&](const Eigen::VectorXd &x)
        { return (f0 + G * (x - x0)).minCoeff() - (x - x0).squaredNorm() / (2.0 * rho); };

        // Candidate from the currently weakest component, then the dual iterates.
        Eigen::Index weakest = 0;
        f0.minCoeff(&weakest);
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(M);
        lambda(weakest) = 1.0;
        Eigen::VectorXd cand = project_spaced(x0 + rho * G.transpose() * lambda, spacing, lo, hi);
        double cand_val = surrogate(cand);
        if (M > 1)
        {
            lambda.setConstant(1.0 / double(M));
            for (int k = 0; k < opt.dual_iterations; ++k)
            {
                const Eigen::VectorXd x = project_spaced(x0 + rho * G.transpose() * lambda, spacing, lo, hi);
                const double v = surrogate(x);
                if (v > cand_val)
                {
                    cand_val = v;
                    cand = x;
                }
                const Eigen::VectorXd lin = f0 + G * (x - x0);
                const double scale = std::max(lin.maxCoeff() - lin.minCoeff(), 1e-300);
                lambda = (lambda.array() * (-(lin.array() - lin.minCoeff()) / scale * 2.0).exp()).matrix();
                lambda /= lambda.sum();
            }
        }

        auto [f1, G1] = eval(cand);
        const double trial = f1.minCoeff();
        if (trial > best)
        {
            const double gain = (trial - best) / std::max(std::abs(best), 1e-300);
            x0 = cand;
            f0 = std::move(f1);
            G = std::move(G1);
            best = trial;
            step = std::min(2.0 * step, opt.max_step);
            stalled = gain < opt.tolerance ? stalled + 1 : 0;
        }
        else
        {
            step *= 0.5;
            ++stalled;
        }
        out.history.push_back(best);
        if (stalled >= opt.stall_limit && step < opt.min_step * 1e3)
        {
            out.converged = true;
            break;
        }
    }
    out.x = x0;
    out.objective = best;
    return out;
}

} // namespace pinch
