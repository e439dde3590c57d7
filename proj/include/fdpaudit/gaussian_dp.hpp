// Copyright 2026 The fdpaudit Authors
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

#ifndef FDPAUDIT_GAUSSIAN_DP_HPP_
#define FDPAUDIT_GAUSSIAN_DP_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdpaudit/normal.hpp"

namespace fdpaudit {

// Exact delta of the sensitivity-1 Gaussian mechanism at a given epsilon:
//   delta = Phi(-eps*sigma + 1/(2 sigma)) - e^eps Phi(-eps*sigma - 1/(2 sigma)).
inline double DeltaFromEpsGaussian(double sigma, double eps) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("DeltaFromEpsGaussian: sigma must be positive");
  }
  if (!(eps >= 0.0)) {
    throw std::domain_error("DeltaFromEpsGaussian: eps must be >= 0");
  }
  double half = 1.0 / (2.0 * sigma);
  double d = NormalCdf(-eps * sigma + half) - std::exp(eps) * NormalCdf(-eps * sigma - half);
  return std::clamp(d, 0.0, 1.0);
}

struct EpsAtDelta {
  double eps = 0.0;
  // True when even eps at the search ceiling does not reach the requested
  // delta (delta below DeltaFromEpsGaussian(sigma, ceiling)).
  bool saturated = false;
};

inline constexpr double kEpsSearchCeiling = 100.0;
inline constexpr double kEpsSearchWidth = 1e-3;

// Inverts DeltaFromEpsGaussian by bisection on [0, 100] until the interval
// width drops below 1e-3, returning the upper endpoint. The lattice and the
// returned endpoint match the reference search exactly.
inline EpsAtDelta EpsFromDeltaGaussianChecked(double sigma, double delta) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("EpsFromDeltaGaussian: sigma must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("EpsFromDeltaGaussian: delta must be in (0, 1)");
  }
  EpsAtDelta out;
  out.saturated = delta < DeltaFromEpsGaussian(sigma, kEpsSearchCeiling);
  double lo = 0.0, hi = kEpsSearchCeiling;
  while (hi - lo > kEpsSearchWidth) {
    double mid = 0.5 * (lo + hi);
    if (DeltaFromEpsGaussian(sigma, mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.eps = hi;
  return out;
}

inline double EpsFromDeltaGaussian(double sigma, double delta) {
  return EpsFromDeltaGaussianChecked(sigma, delta).eps;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_GAUSSIAN_DP_HPP_
