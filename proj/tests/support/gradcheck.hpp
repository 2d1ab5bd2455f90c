// Copyright 2026 The krklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Central finite differences for gradient checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace krk::testing {

/// Relative error with a small absolute floor, so exact zeros compare cleanly.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-4});
}

/// Largest relative error over all parameters. `param(i)` exposes the i-th
/// parameter by reference; `loss()` evaluates the objective.
inline double max_gradient_error(std::size_t n, const std::function<double&(std::size_t)>& param,
                                 const std::function<double()>& loss,
                                 const std::vector<double>& analytic, double h = 1e-5) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double& p = param(i);
    const double saved = p;
    p = saved + h;
    const double up = loss();
    p = saved - h;
    const double down = loss();
    p = saved;
    worst = std::max(worst, relative_error(analytic[i], (up - down) / (2 * h)));
  }
  return worst;
}

}  // namespace krk::testing
