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

#ifndef FDPAUDIT_EMPIRICAL_PRIVACY_HPP_
#define FDPAUDIT_EMPIRICAL_PRIVACY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fdpaudit/audit.hpp"
#include "fdpaudit/gaussian_dp.hpp"
#include "fdpaudit/tradeoff_curve.hpp"

namespace fdpaudit {

// Totally ordered hypothesis family, weakest privacy first. Either a Gaussian
// noise grid sigma_i = base_sigma + i * step, or an explicit curve list whose
// dominance order is spot-checked on construction.
class HypothesisFamily {
 public:
  static HypothesisFamily GaussianGrid(double base_sigma, double step,
                                       std::int64_t count) {
    if (!(base_sigma > 0.0) || !(step > 0.0) || count <= 0) {
      throw std::invalid_argument("HypothesisFamily: need base_sigma > 0, step > 0, count > 0");
    }
    HypothesisFamily f;
    f.base_sigma_ = base_sigma;
    f.step_ = step;
    f.count_ = count;
    return f;
  }

  static HypothesisFamily Explicit(std::vector<TradeoffCurve> curves) {
    if (curves.empty()) {
      throw std::invalid_argument("HypothesisFamily: empty curve list");
    }
    CheckDominanceOrder(curves);
    HypothesisFamily f;
    f.curves_ = std::move(curves);
    f.count_ = static_cast<std::int64_t>(f.curves_.size());
    return f;
  }

  std::int64_t size() const { return count_; }
  bool is_gaussian_grid() const { return curves_.empty(); }

  double SigmaAt(std::int64_t i) const {
    if (!is_gaussian_grid()) {
      throw std::logic_error("HypothesisFamily: sigma only defined for Gaussian grids");
    }
    return base_sigma_ + static_cast<double>(i) * step_;
  }

  TradeoffCurve CurveAt(std::int64_t i) const {
    if (i < 0 || i >= count_) throw std::out_of_range("HypothesisFamily: index");
    if (is_gaussian_grid()) return TradeoffCurve::Gaussian(SigmaAt(i));
    return curves_[static_cast<size_t>(i)];
  }

 private:
  HypothesisFamily() = default;

  // Successive curves must dominate their predecessor on a 101-point grid.
  static void CheckDominanceOrder(const std::vector<TradeoffCurve>& curves) {
    for (size_t j = 0; j + 1 < curves.size(); ++j) {
      for (int i = 0; i <= 100; ++i) {
        double x = static_cast<double>(i) / 100.0;
        if (curves[j + 1].F(x) < curves[j].F(x) - 1e-12) {
          throw std::invalid_argument(
              "HypothesisFamily: curves are not ordered by dominance");
        }
      }
    }
  }

  double base_sigma_ = 0.0;
  double step_ = 0.0;
  std::int64_t count_ = 0;
  std::vector<TradeoffCurve> curves_;
};

// Result of a refutation sweep. transition_index is the first rejected
// hypothesis (the conservative, reference-compatible choice); eps_at_delta is
// the epsilon of that hypothesis at the requested delta, or 0 when nothing
// was rejected.
struct EmpiricalPrivacyReport {
  std::optional<std::int64_t> transition_index;
  std::optional<double> sigma_star;
  double eps_at_delta = 0.0;
  bool eps_saturated = false;
  double delta = 0.0;
  double tau = 0.0;
};

// Empirical epsilon of a single curve at delta,
//   eps(delta) = log(max_x (1 - f(x) - delta) / x), floored at 0.
// The max is taken over a 2000-point log grid on [1e-18, 1] and refined by a
// ternary search around the grid argmax. Grid points where fbar(x) - delta
// underflows relative to delta are skipped; the difference there is dominated
// by rounding of fbar and only ever over-reports.
inline double CurveEpsilonAt(const TradeoffCurve& curve, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::domain_error("CurveEpsilonAt: delta must be in [0, 1)");
  }
  constexpr int kPoints = 2000;
  const double log_lo = std::log(1e-18);
  auto slope_at_log = [&](double lx) {
    double x = std::exp(lx);
    return (curve.Blowup(x) - delta) / x;
  };
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i < kPoints; ++i) {
    double lx = log_lo * (1.0 - static_cast<double>(i) / (kPoints - 1));
    double x = std::exp(lx);
    double num = curve.Blowup(x) - delta;
    if (delta > 0.0 && num <= 1e-8 * delta) continue;
    double v = num / x;
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best <= 0.0) return 0.0;
  double a = log_lo * (1.0 - static_cast<double>(std::max(0, best_i - 1)) / (kPoints - 1));
  double b = log_lo * (1.0 - static_cast<double>(std::min(kPoints - 1, best_i + 1)) / (kPoints - 1));
  for (int it = 0; it < 100; ++it) {
    double m1 = a + (b - a) / 3.0;
    double m2 = b - (b - a) / 3.0;
    if (slope_at_log(m1) < slope_at_log(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  best = std::max(best, slope_at_log(0.5 * (a + b)));
  return std::max(0.0, std::log(best));
}

namespace internal {

inline EmpiricalPrivacyReport MakeReport(const HypothesisFamily& family,
                                         std::optional<std::int64_t> index, double tau,
                                         double delta) {
  EmpiricalPrivacyReport report;
  report.delta = delta;
  report.tau = tau;
  if (!index.has_value()) return report;
  report.transition_index = index;
  if (family.is_gaussian_grid()) {
    report.sigma_star = family.SigmaAt(*index);
    EpsAtDelta e = EpsFromDeltaGaussianChecked(*report.sigma_star, delta);
    report.eps_at_delta = e.eps;
    report.eps_saturated = e.saturated;
  } else {
    report.eps_at_delta = CurveEpsilonAt(family.CurveAt(*index), delta);
  }
  return report;
}

}  // namespace internal

// Scans the family in ascending privacy strength and reports the first
// rejected hypothesis. A linear scan stays correct even if the verdict
// sequence had more than one transition.
inline EmpiricalPrivacyReport SweepEmpirical(const Observation& obs,
                                             const HypothesisFamily& family, double tau,
                                             double delta) {
  obs.Validate();
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("SweepEmpirical: delta must be in (0, 1)");
  }
  std::optional<std::int64_t> index;
  for (std::int64_t i = 0; i < family.size(); ++i) {
    if (AuditRejects(obs, family.CurveAt(i), tau)) {
      index = i;
      break;
    }
  }
  return internal::MakeReport(family, index, tau, delta);
}

// Binary-search variant. Valid only under the single-transition property;
// tests assert agreement with the linear scan.
inline EmpiricalPrivacyReport SweepEmpiricalBisect(const Observation& obs,
                                                   const HypothesisFamily& family,
                                                   double tau, double delta) {
  obs.Validate();
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("SweepEmpiricalBisect: delta must be in (0, 1)");
  }
  std::optional<std::int64_t> index;
  std::int64_t n = family.size();
  if (AuditRejects(obs, family.CurveAt(n - 1), tau)) {
    std::int64_t lo = 0, hi = n - 1;  // hi always rejected
    if (AuditRejects(obs, family.CurveAt(0), tau)) {
      hi = 0;
    } else {
      while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (AuditRejects(obs, family.CurveAt(mid), tau)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    index = hi;
  }
  return internal::MakeReport(family, index, tau, delta);
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_EMPIRICAL_PRIVACY_HPP_
