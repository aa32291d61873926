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

#include "pinch/sca.hpp"

#include <stdexcept>

namespace pinch {

Eigen::VectorXd project_spaced(const Eigen::VectorXd &z, double spacing, double lo, double hi)
{
    const Eigen::Index N = z.size();
    if (N == 0)
        throw std::invalid_argument("Nothing to project.");
    if (!(spacing >= 0))
        throw std::invalid_argument("Spacing cannot be negative.");
    const double span = double(N - 1) * spacing;
    if (span > hi - lo)
        throw InfeasibleError("Spaced positions do not fit between the bounds.");

    // With w_n = x_n - (n-1) spacing the set becomes a bounded monotone cone:
    // isotonic regression (pool adjacent violators) followed by clipping.
    std::vector<double> mean;
    std::vector<Eigen::Index> size;
    for (Eigen::Index n = 0; n < N; ++n)
    {
        mean.push_back(z(n) - double(n) * spacing);
        size.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back())
        {
            const auto k = mean.size() - 1;
            const double total = mean[k - 1] * double(size[k - 1]) + mean[k] * double(size[k]);
            size[k - 1] += size[k];
            mean[k - 1] = total / double(size[k - 1]);
            mean.pop_back();
            size.pop_back();
        }
    }
    Eigen::VectorXd x(N);
    Eigen::Index n = 0;
    for (std::size_t b = 0; b < mean.size(); ++b)
    {
        const double w = std::clamp(mean[b], lo, hi - span);
        for (Eigen::Index k = 0; k < size[b]; ++k, ++n)
            x(n) = w + double(n) * spacing;
    }
    return x;
}

bool is_spaced(const Eigen::VectorXd &x, double spacing, double lo, double hi, double slack)
{
    if (x.size() == 0)
        return false;
    if (x(0) < lo - slack || x(x.size() - 1) > hi + slack)
        return false;
    for (Eigen::Index n = 1; n < x.size(); ++n)
        if (x(n) - x(n - 1) < spacing - slack)
            return false;
    return true;
}

} // namespace pinch
